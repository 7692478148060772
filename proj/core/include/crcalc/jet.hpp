#ifndef CRCALC_JET_HPP
#define CRCALC_JET_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "crcalc/error.hpp"
#include "crcalc/scalar.hpp"

namespace crcalc {

// Shared coefficient layout for truncated multivariate Taylor expansions.
// Monomials are enumerated in graded order (total degree, then lex) and
// addressed through nibble-packed exponent keys. The last variable may carry
// a tighter degree cap (`tcap`) than the total order; family scans use this
// to truncate in the deformation parameter t without paying for a full
// extra order.
class JetShape {
public:
    int nvars;
    int order; // total-degree truncation
    int tcap;  // cap on the exponent of the last variable (== order if unused)

    std::vector<std::uint64_t> keys;  // packed exponents, graded order
    std::vector<std::uint8_t> degs;   // total degree per slot
    std::vector<std::array<std::uint8_t, 8>> exps;
    std::unordered_map<std::uint64_t, std::int32_t> index;

    static std::shared_ptr<const JetShape> get(int nvars, int order, int tcap = -1);

    std::int32_t find(std::uint64_t key) const {
        auto it = index.find(key);
        return it == index.end() ? -1 : it->second;
    }

    static std::uint64_t pack(const std::vector<int>& e) {
        std::uint64_t k = 0;
        for (std::size_t v = 0; v < e.size(); ++v) k |= (std::uint64_t(e[v] & 0xF)) << (4 * v);
        return k;
    }
};

// Truncated Taylor expansion of a scalar function about a basepoint, with
// coefficients in K (exact Gaussian rationals or complex doubles). The
// variables are real offsets from the basepoint. Arithmetic is exact modulo
// total degree > order; `order` degrades under differentiation and is the
// validity guarantee, not the storage size.
template <class K>
class Jet {
public:
    using traits = field_traits<K>;
    using real_type = typename traits::real_type;

    Jet() = default;

    Jet(std::shared_ptr<const JetShape> shape, std::vector<real_type> basepoint)
        : shape_(std::move(shape)), base_(std::move(basepoint)), order_(shape_->order),
          c_(shape_->keys.size()) {}

    static Jet constant(std::shared_ptr<const JetShape> shape, std::vector<real_type> basepoint, K value) {
        Jet j(std::move(shape), std::move(basepoint));
        j.c_[0] = std::move(value);
        return j;
    }

    // The coordinate offset x_v - p_v as a jet.
    static Jet generator(std::shared_ptr<const JetShape> shape, std::vector<real_type> basepoint, int var) {
        Jet j(shape, std::move(basepoint));
        if (shape->order < 1) fail(ErrorKind::OrderExhausted, "generator needs order >= 1");
        std::vector<int> e(shape->nvars, 0);
        e[var] = 1;
        j.c_[shape->find(JetShape::pack(e))] = K(1);
        return j;
    }

    const std::shared_ptr<const JetShape>& shape() const { return shape_; }
    int nvars() const { return shape_->nvars; }
    int order() const { return order_; }
    void set_order(int o) { order_ = o; }
    const std::vector<real_type>& basepoint() const { return base_; }
    const std::vector<K>& coeffs() const { return c_; }
    std::vector<K>& coeffs() { return c_; }

    K value() const { return c_.empty() ? K(0) : c_[0]; }

    K coeff(const std::vector<int>& e) const {
        auto i = shape_->find(JetShape::pack(e));
        return i < 0 ? K(0) : c_[i];
    }
    void set_coeff(const std::vector<int>& e, K v) {
        auto i = shape_->find(JetShape::pack(e));
        if (i < 0) fail(ErrorKind::ShapeMismatch, "exponent outside jet shape");
        c_[i] = std::move(v);
    }

    bool is_zero() const {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (int(shape_->degs[i]) > order_) continue;
            if (!traits::is_zero(c_[i])) return false;
        }
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (int(shape_->degs[i]) > order_) continue;
            m = std::max(m, traits::abs_approx(c_[i]));
        }
        return m;
    }

    Jet& operator+=(const Jet& o) {
        check_compat(o);
        order_ = std::min(order_, o.order_);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check_compat(o);
        order_ = std::min(order_, o.order_);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator*=(const K& s) {
        for (auto& c : c_) c *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator*(Jet a, const K& s) { a *= s; return a; }
    friend Jet operator*(const K& s, Jet a) { a *= s; return a; }
    friend Jet operator-(Jet a) {
        for (auto& c : a.c_) c = -std::move(c);
        return a;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check_compat(b);
        Jet r(a.shape_, a.base_);
        int ord = std::min(a.order_, b.order_);
        r.order_ = ord;
        const auto& sh = *a.shape_;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            int da = sh.degs[i];
            if (da > ord) break;
            if (traits::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                int db = sh.degs[j];
                if (da + db > ord) break;
                if (traits::is_zero(b.c_[j])) continue;
                auto slot = sh.find(sh.keys[i] + sh.keys[j]);
                if (slot >= 0) r.c_[slot] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    void check_compat(const Jet& o) const {
        if (shape_ != o.shape_ || base_ != o.base_)
            fail(ErrorKind::ShapeMismatch, "jet operands have different shape or basepoint");
    }

private:
    std::shared_ptr<const JetShape> shape_;
    std::vector<real_type> base_;
    int order_ = 0;
    std::vector<K> c_;
};

// Multiplicative inverse by Newton iteration on the truncated ring;
// requires a nonzero constant term.
template <class K>
Jet<K> inverse(const Jet<K>& b) {
    if (field_traits<K>::is_zero(b.value()))
        fail(ErrorKind::DivisionByZeroConstantTerm, "jet inverse: zero constant term");
    Jet<K> x = Jet<K>::constant(b.shape(), b.basepoint(), K(1) / b.value());
    Jet<K> two = Jet<K>::constant(b.shape(), b.basepoint(), K(2));
    int steps = 1;
    for (int reach = 1; reach <= b.order(); reach *= 2) ++steps;
    for (int k = 0; k < steps; ++k) x = x * (two - b * x);
    x.set_order(b.order());
    return x;
}

template <class K>
Jet<K> operator/(const Jet<K>& a, const Jet<K>& b) {
    return a * inverse(b);
}

// Formal partial derivative; the valid order drops by one.
template <class K>
Jet<K> partial(const Jet<K>& f, int var) {
    if (f.order() <= 0) fail(ErrorKind::OrderExhausted, "jet order exhausted by differentiation");
    Jet<K> r(f.shape(), f.basepoint());
    r.set_order(f.order() - 1);
    const auto& sh = *f.shape();
    std::uint64_t dec = std::uint64_t(1) << (4 * var);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        int e = (sh.keys[i] >> (4 * var)) & 0xF;
        if (e == 0 || field_traits<K>::is_zero(f.coeffs()[i])) continue;
        auto slot = sh.find(sh.keys[i] - dec);
        r.coeffs()[slot] += f.coeffs()[i] * K(e);
    }
    return r;
}

template <class K>
Jet<K> conj(const Jet<K>& f) {
    Jet<K> r = f;
    for (auto& c : r.coeffs()) c = field_traits<K>::conj(c);
    return r;
}

template <class K>
Jet<K> real_part(const Jet<K>& f) {
    Jet<K> r = f + conj(f);
    r *= K(1) / K(2);
    return r;
}

template <class K>
Jet<K> imag_part(const Jet<K>& f) {
    Jet<K> r = f - conj(f);
    r *= K(1) / (K(2) * field_traits<K>::i_unit());
    return r;
}

// Substitute the series `g_offset` (in the remaining variables, zero constant
// term) for variable `var` of f, dropping that variable. Evaluated by Horner
// on the bucketed coefficients, so only O(order) jet products are needed.
template <class K>
Jet<K> collapse_var(const Jet<K>& f, int var, const Jet<K>& g_offset) {
    if (g_offset.nvars() != f.nvars() - 1)
        fail(ErrorKind::ShapeMismatch, "collapse_var: wrong target arity");
    if (!field_traits<K>::is_zero(g_offset.value()))
        fail(ErrorKind::ShapeMismatch, "collapse_var: substituted series must have zero constant term");
    const auto& sh = *f.shape();
    const auto tgt = g_offset.shape();
    int maxk = 0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        if (!field_traits<K>::is_zero(f.coeffs()[i]))
            maxk = std::max(maxk, int((sh.keys[i] >> (4 * var)) & 0xF));

    std::vector<Jet<K>> bucket(maxk + 1, Jet<K>(tgt, g_offset.basepoint()));
    std::vector<int> e(tgt->nvars, 0);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (int(sh.degs[i]) > f.order()) continue;
        if (field_traits<K>::is_zero(f.coeffs()[i])) continue;
        int k = (sh.keys[i] >> (4 * var)) & 0xF;
        for (int v = 0, w = 0; v < sh.nvars; ++v)
            if (v != var) e[w++] = sh.exps[i][v];
        auto slot = tgt->find(JetShape::pack(e));
        if (slot >= 0) bucket[k].coeffs()[slot] += f.coeffs()[i];
    }
    Jet<K> r = bucket[maxk];
    for (int k = maxk - 1; k >= 0; --k) r = r * g_offset + bucket[k];
    r.set_order(std::min(f.order(), g_offset.order()));
    return r;
}

// Jet-level implicit function theorem: given rho with rho(basepoint)=0 and a
// nonsingular partial in `solve_var`, produce the graph series g with
// rho(x', g(x')) = O(order+1). Newton iteration; exact in exact mode.
template <class K>
Jet<K> graph_solve(const Jet<K>& rho, int solve_var, double float_tol = 1e-12) {
    using traits = field_traits<K>;
    const auto& sh = *rho.shape();
    auto tgt = JetShape::get(sh.nvars - 1, sh.order, sh.tcap < sh.order ? sh.tcap : -1);
    std::vector<typename traits::real_type> base;
    for (int v = 0; v < sh.nvars; ++v)
        if (v != solve_var) base.push_back(rho.basepoint()[v]);

    if (traits::abs_approx(rho.value()) > (traits::exact ? 0.0 : float_tol))
        fail(ErrorKind::BadInput, "graph_solve: basepoint does not lie on the hypersurface");

    Jet<K> drho = partial(rho, solve_var);
    {
        K d0 = drho.value();
        bool singular = traits::exact ? traits::is_zero(d0) : traits::abs_approx(d0) < float_tol;
        if (singular) fail(ErrorKind::SingularGradient, "graph_solve: solve direction is degenerate at basepoint");
    }

    Jet<K> g(tgt, base); // offset series, starts at 0
    int steps = 1;
    for (int reach = 1; reach <= rho.order(); reach *= 2) ++steps;
    for (int k = 0; k < steps; ++k) {
        Jet<K> num = collapse_var(rho, solve_var, g);
        if (num.is_zero()) break;
        Jet<K> den = collapse_var(drho, solve_var, g);
        den.set_order(num.order());
        g -= num / den;
    }
    g += Jet<K>::constant(tgt, base, traits::from_real(rho.basepoint()[solve_var]));
    return g;
}

// exp of a jet with zero constant term (finite sum in the truncated ring).
template <class K>
Jet<K> exp_nilpotent(const Jet<K>& u) {
    if (!field_traits<K>::is_zero(u.value()))
        fail(ErrorKind::BadInput, "exp_nilpotent: nonzero constant term");
    Jet<K> r = Jet<K>::constant(u.shape(), u.basepoint(), K(1));
    for (int k = u.order(); k >= 1; --k) {
        r = r * u;
        r *= K(1) / K(k);
        r += Jet<K>::constant(u.shape(), u.basepoint(), K(1));
    }
    return r;
}

// Integer power by repeated squaring.
template <class K>
Jet<K> pow(const Jet<K>& b, unsigned e) {
    Jet<K> r = Jet<K>::constant(b.shape(), b.basepoint(), K(1));
    r.set_order(b.order());
    Jet<K> sq = b;
    unsigned k = e;
    while (k) {
        if (k & 1u) r = r * sq;
        k >>= 1;
        if (k) sq = sq * sq;
    }
    return r;
}

// Coefficient of the pure power var^k.
template <class K>
K pure_coeff(const Jet<K>& f, int var, int k) {
    std::vector<int> e(f.nvars(), 0);
    e[var] = k;
    return f.coeff(e);
}

// Polynomial evaluation at real offsets from the basepoint.
template <class K>
K evaluate(const Jet<K>& f, const std::vector<typename field_traits<K>::real_type>& offset) {
    const auto& sh = *f.shape();
    K acc(0);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (int(sh.degs[i]) > f.order()) continue;
        if (field_traits<K>::is_zero(f.coeffs()[i])) continue;
        K term = f.coeffs()[i];
        for (int v = 0; v < sh.nvars; ++v)
            for (int e = 0; e < sh.exps[i][v]; ++e) term *= field_traits<K>::from_real(offset[v]);
        acc += term;
    }
    return acc;
}

} // namespace crcalc

#endif
