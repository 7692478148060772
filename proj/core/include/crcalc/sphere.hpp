#ifndef CRCALC_SPHERE_HPP
#define CRCALC_SPHERE_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "crcalc/error.hpp"
#include "crcalc/scalar.hpp"

namespace crcalc {

// Exact function algebra on the unit sphere S^3 in C^2 with its standard
// pseudohermitian structure:
//   theta  = i(z dzbar + w dwbar),   dtheta = i theta^1 ^ theta^1bar
//   Z_1    = wbar d/dz - zbar d/dw,  theta^1 = w dz - z dw
//   omega_1^1 = -2i theta,           A_11 = 0,  R = 2,  h_11bar = 1.
// Functions live in C[z,zbar,w,wbar]/(z zbar + w wbar - 1); the normal form
// eliminates z zbar via the confluent rewrite z zbar -> 1 - w wbar, so no
// monomial contains both z and zbar.

struct SphereMono {
    int a = 0, b = 0, c = 0, d = 0; // z^a zbar^b w^c wbar^d
    friend bool operator<(const SphereMono& x, const SphereMono& y) {
        return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    }
    friend bool operator==(const SphereMono& x, const SphereMono& y) {
        return std::tie(x.a, x.b, x.c, x.d) == std::tie(y.a, y.b, y.c, y.d);
    }
};

template <class K>
class SpherePoly {
public:
    using traits = field_traits<K>;

    SpherePoly() = default;

    static SpherePoly constant(K v) {
        SpherePoly p;
        p.add_term({0, 0, 0, 0}, std::move(v));
        return p;
    }
    static SpherePoly monomial(SphereMono m, K v = K(1)) {
        SpherePoly p;
        p.add_term(m, std::move(v));
        return p;
    }
    static SpherePoly z() { return monomial({1, 0, 0, 0}); }
    static SpherePoly zbar() { return monomial({0, 1, 0, 0}); }
    static SpherePoly w() { return monomial({0, 0, 1, 0}); }
    static SpherePoly wbar() { return monomial({0, 0, 0, 1}); }

    const std::map<SphereMono, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.a + m.b + m.c + m.d);
        return d;
    }
    double max_abs() const {
        double r = 0;
        for (const auto& [m, c] : terms_) r = std::max(r, traits::abs_approx(c));
        return r;
    }

    // Inserts c * z^a zbar^b w^c wbar^d, applying the sphere rewrite to
    // exhaustion so the stored form stays normal.
    void add_term(const SphereMono& m, K coeff);

    SpherePoly& operator+=(const SpherePoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SpherePoly& operator-=(const SpherePoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SpherePoly& operator*=(const K& s);

    friend SpherePoly operator+(SpherePoly x, const SpherePoly& y) { x += y; return x; }
    friend SpherePoly operator-(SpherePoly x, const SpherePoly& y) { x -= y; return x; }
    friend SpherePoly operator-(SpherePoly x) {
        for (auto& [m, c] : x.terms_) c = -c;
        return x;
    }
    friend SpherePoly operator*(const SpherePoly& x, const SpherePoly& y) {
        SpherePoly r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_)
                r.add_term({mx.a + my.a, mx.b + my.b, mx.c + my.c, mx.d + my.d}, cx * cy);
        return r;
    }
    friend SpherePoly operator*(SpherePoly x, const K& s) { x *= s; return x; }
    friend SpherePoly operator*(const K& s, SpherePoly x) { x *= s; return x; }
    friend bool operator==(const SpherePoly& x, const SpherePoly& y) {
        return (x - y).is_zero();
    }

    Cplx evaluate(Cplx zv, Cplx wv) const;

private:
    std::map<SphereMono, K> terms_;
};

template <class K>
SpherePoly<K> conj(const SpherePoly<K>& p) {
    SpherePoly<K> r;
    for (const auto& [m, c] : p.terms())
        r.add_term({m.b, m.a, m.d, m.c}, field_traits<K>::conj(c));
    return r;
}

// Global frame fields as derivations of the quotient ring. T acts diagonally
// on monomials with eigenvalue i(a - b + c - d).
enum class FrameDir { Z1, Z1bar, T };

template <class K>
SpherePoly<K> frame_apply(FrameDir dir, const SpherePoly<K>& p);

// A weighted density on the sphere backbone: a polynomial component in the
// theta-trivialization plus a CR weight (w,w'). Covariant derivatives follow
// the standard coframe; with omega_1^1 = -2i theta only the Reeb direction
// picks up weight terms.
template <class K>
struct Density {
    SpherePoly<K> comp;
    Rational w{0}, wp{0};

    Density() = default;
    Density(SpherePoly<K> c, Rational w_, Rational wp_) : comp(std::move(c)), w(std::move(w_)), wp(std::move(wp_)) {}
};

template <class K>
Density<K> conj(const Density<K>& d) {
    return Density<K>(conj(d.comp), d.wp, d.w);
}

// Covariant derivative steps. Lower1/Lower1bar are nabla_1, nabla_1bar;
// Upper1/Upper1bar are the Levi-raised nabla^1 = h^{11b} nabla_1bar and
// nabla^1bar = h^{1b1} nabla_1 (h = 1 here, so only the weight bookkeeping
// distinguishes them). Reeb is nabla_0.
enum class TwOp { Lower1, Lower1bar, Upper1, Upper1bar, Reeb };

template <class K>
Density<K> tw_apply(TwOp op, const Density<K>& d);

template <class K>
Density<K> tw_chain(const Density<K>& d, const std::vector<TwOp>& ops) {
    Density<K> r = d;
    for (auto op : ops) r = tw_apply(op, r);
    return r;
}

// Exact integral of a theta-trivialized polynomial against theta ^ dtheta,
// returned as the rational multiple of pi^2. Monomial table:
// int z^a zbar^a w^c wbar^c = 4 pi^2 a! c! / (a+c+1)!; everything else is 0.
template <class K>
K integrate_poly(const SpherePoly<K>& p);

// Weight-checked integral of a (-2,-2) density.
template <class K>
K integrate(const Density<K>& d) {
    if (d.w != Rational(-2) || d.wp != Rational(-2))
        fail(ErrorKind::WeightError, "integrate: density weight must be (-2,-2)");
    return integrate_poly(d.comp);
}

extern template class SpherePoly<GaussQ>;
extern template class SpherePoly<Cplx>;
extern template SpherePoly<GaussQ> frame_apply(FrameDir, const SpherePoly<GaussQ>&);
extern template SpherePoly<Cplx> frame_apply(FrameDir, const SpherePoly<Cplx>&);
extern template Density<GaussQ> tw_apply(TwOp, const Density<GaussQ>&);
extern template Density<Cplx> tw_apply(TwOp, const Density<Cplx>&);
extern template GaussQ integrate_poly(const SpherePoly<GaussQ>&);
extern template Cplx integrate_poly(const SpherePoly<Cplx>&);

} // namespace crcalc

#endif
