#include "crcalc/sphere.hpp"

namespace crcalc {

template <class K>
void SpherePoly<K>::add_term(const SphereMono& m, K coeff) {
    if (traits::is_zero(coeff)) return;
    if (m.a > 0 && m.b > 0) {
        // z^a zbar^b = (z zbar)^mu z^(a-mu) zbar^(b-mu), z zbar -> 1 - w wbar
        int mu = std::min(m.a, m.b);
        K binom(1);
        for (int k = 0; k <= mu; ++k) {
            if (k > 0) binom *= K(-(mu - k + 1)) / K(k);
            add_term({m.a - mu, m.b - mu, m.c + k, m.d + k}, coeff * binom);
        }
        return;
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(coeff));
    } else {
        it->second += coeff;
        if (traits::is_zero(it->second)) terms_.erase(it);
    }
}

template <class K>
SpherePoly<K>& SpherePoly<K>::operator*=(const K& s) {
    if (traits::is_zero(s)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

template <class K>
bool SpherePoly<K>::is_real() const {
    return (*this - crcalc::conj(*this)).is_zero();
}

template <class K>
Cplx SpherePoly<K>::evaluate(Cplx zv, Cplx wv) const {
    auto cpow = [](Cplx b, int e) {
        Cplx r(1.0);
        for (int k = 0; k < e; ++k) r *= b;
        return r;
    };
    Cplx acc(0.0);
    for (const auto& [m, c] : terms_) {
        Cplx t(traits::real_to_double(traits::real_part(c)),
               traits::real_to_double(traits::imag_part(c)));
        acc += t * cpow(zv, m.a) * cpow(std::conj(zv), m.b) * cpow(wv, m.c) * cpow(std::conj(wv), m.d);
    }
    return acc;
}

template <class K>
SpherePoly<K> frame_apply(FrameDir dir, const SpherePoly<K>& p) {
    SpherePoly<K> r;
    for (const auto& [m, c] : p.terms()) {
        switch (dir) {
        case FrameDir::Z1: // wbar d/dz - zbar d/dw
            if (m.a > 0) r.add_term({m.a - 1, m.b, m.c, m.d + 1}, c * K(m.a));
            if (m.c > 0) r.add_term({m.a, m.b + 1, m.c - 1, m.d}, -(c * K(m.c)));
            break;
        case FrameDir::Z1bar: // w d/dzbar - z d/dwbar
            if (m.b > 0) r.add_term({m.a, m.b - 1, m.c + 1, m.d}, c * K(m.b));
            if (m.d > 0) r.add_term({m.a + 1, m.b, m.c, m.d - 1}, -(c * K(m.d)));
            break;
        case FrameDir::T: // i(z dz + w dw) - i(zbar dzbar + wbar dwbar)
            r.add_term(m, c * field_traits<K>::i_unit() * K(m.a - m.b + m.c - m.d));
            break;
        }
    }
    return r;
}

template <class K>
Density<K> tw_apply(TwOp op, const Density<K>& d) {
    switch (op) {
    case TwOp::Lower1:
        return Density<K>(frame_apply(FrameDir::Z1, d.comp), d.w - 2, d.wp + 1);
    case TwOp::Lower1bar:
        return Density<K>(frame_apply(FrameDir::Z1bar, d.comp), d.w + 1, d.wp - 2);
    case TwOp::Upper1:
        return Density<K>(frame_apply(FrameDir::Z1bar, d.comp), d.w + 2, d.wp - 1);
    case TwOp::Upper1bar:
        return Density<K>(frame_apply(FrameDir::Z1, d.comp), d.w - 1, d.wp + 2);
    case TwOp::Reeb: {
        // nabla_0 = T - (2i/3)(w - w') on the standard coframe
        Rational diff = d.w - d.wp;
        SpherePoly<K> comp = frame_apply(FrameDir::T, d.comp);
        K twist = field_traits<K>::from_rational(Rational(0), Rational(-2, 3) * diff);
        comp += d.comp * twist;
        return Density<K>(std::move(comp), d.w, d.wp);
    }
    }
    fail(ErrorKind::BadInput, "unreachable");
}

template <class K>
K integrate_poly(const SpherePoly<K>& p) {
    // int w^c wbar^c theta ^ dtheta = 4 pi^2 / (c+1); result in units of pi^2
    K acc(0);
    for (const auto& [m, c] : p.terms()) {
        if (m.a != m.b || m.c != m.d) continue;
        if (m.a != 0) fail(ErrorKind::ConsistencyFailure, "sphere normal form violated");
        acc += c * K(4) / K(m.c + 1);
    }
    return acc;
}

template class SpherePoly<GaussQ>;
template class SpherePoly<Cplx>;
template SpherePoly<GaussQ> frame_apply(FrameDir, const SpherePoly<GaussQ>&);
template SpherePoly<Cplx> frame_apply(FrameDir, const SpherePoly<Cplx>&);
template Density<GaussQ> tw_apply(TwOp, const Density<GaussQ>&);
template Density<Cplx> tw_apply(TwOp, const Density<Cplx>&);
template GaussQ integrate_poly(const SpherePoly<GaussQ>&);
template Cplx integrate_poly(const SpherePoly<Cplx>&);

} // namespace crcalc
