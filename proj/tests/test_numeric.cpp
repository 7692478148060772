#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crcalc/jet.hpp"

using namespace crcalc;

namespace {

using JQ = Jet<GaussQ>;
using JD = Jet<Cplx>;

std::vector<Rational> zeros(int n) { return std::vector<Rational>(n, Rational(0)); }

JQ random_jet(std::mt19937_64& rng, const std::shared_ptr<const JetShape>& sh,
              const std::vector<Rational>& base, int degree_cap) {
    JQ j(sh, base);
    std::uniform_int_distribution<int> num(-8, 8), den(1, 4);
    for (std::size_t i = 0; i < sh->keys.size(); ++i) {
        if (sh->degs[i] > degree_cap) continue;
        j.coeffs()[i] = GaussQ(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    }
    return j;
}

JD to_float(const JQ& j) {
    JD r(j.shape(), std::vector<double>(j.basepoint().size(), 0.0));
    // basepoints are re-derived; tests only use zero basepoints here
    for (std::size_t i = 0; i < j.coeffs().size(); ++i) r.coeffs()[i] = to_cplx(j.coeffs()[i]);
    r.set_order(j.order());
    return r;
}

} // namespace

TEST_CASE("jet identity division (1+x)/(1+x) == 1") {
    auto sh = JetShape::get(1, 6);
    auto base = zeros(1);
    JQ one = JQ::constant(sh, base, GaussQ(1));
    JQ x = JQ::generator(sh, base, 0);
    JQ q = (one + x) / (one + x);
    CHECK((q - one).is_zero());
}

TEST_CASE("geometric series (1-x)^{-1} at order 3") {
    auto sh = JetShape::get(1, 3);
    auto base = zeros(1);
    JQ one = JQ::constant(sh, base, GaussQ(1));
    JQ x = JQ::generator(sh, base, 0);
    JQ inv = inverse(one - x);
    for (int k = 0; k <= 3; ++k) CHECK(pure_coeff(inv, 0, k) == GaussQ(1));
}

TEST_CASE("jet of z*zbar at (z,w)=(0,1): x1^2 + x2^2") {
    auto sh = JetShape::get(4, 2);
    std::vector<Rational> base = {Rational(0), Rational(0), Rational(1), Rational(0)};
    GaussQ i = GaussQ::i_unit();
    JQ x1 = JQ::generator(sh, base, 0), x2 = JQ::generator(sh, base, 1);
    JQ z = x1 + i * x2;
    JQ p = z * conj(z);
    JQ expect = x1 * x1 + x2 * x2;
    CHECK((p - expect).is_zero());
}

TEST_CASE("partial derivatives") {
    auto sh = JetShape::get(2, 4);
    auto base = zeros(2);
    JQ x = JQ::generator(sh, base, 0), y = JQ::generator(sh, base, 1);

    JQ d = partial(x * x, 0);
    CHECK((d - (x + x)).is_zero());

    CHECK(partial(JQ::constant(sh, base, GaussQ(7)), 0).is_zero());

    JQ m = x * y * y;
    JQ dxy = partial(partial(m, 0), 1);
    CHECK((dxy - (y + y)).is_zero());
}

TEST_CASE("partial on order-0 jet throws OrderExhausted") {
    auto sh = JetShape::get(1, 0);
    JQ c = JQ::constant(sh, zeros(1), GaussQ(3));
    CHECK_THROWS_AS(partial(c, 0), Error);
}

TEST_CASE("division by zero constant term") {
    auto sh = JetShape::get(1, 3);
    JQ x = JQ::generator(sh, zeros(1), 0);
    CHECK_THROWS_AS(inverse(x), Error);
}

TEST_CASE("ring axioms on random exact jets") {
    std::mt19937_64 rng(12345);
    auto sh = JetShape::get(3, 6);
    auto base = zeros(3);
    for (int trial = 0; trial < 5; ++trial) {
        JQ a = random_jet(rng, sh, base, 3);
        JQ b = random_jet(rng, sh, base, 3);
        JQ c = random_jet(rng, sh, base, 3);
        CHECK(((a * b) * c - a * (b * c)).is_zero());
        CHECK((a * (b + c) - (a * b + a * c)).is_zero());
        CHECK((a * b - b * a).is_zero());
    }
}

TEST_CASE("mixed partials commute on random jets") {
    std::mt19937_64 rng(777);
    auto sh = JetShape::get(3, 6);
    auto base = zeros(3);
    for (int trial = 0; trial < 4; ++trial) {
        JQ a = random_jet(rng, sh, base, 6);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                CHECK((partial(partial(a, i), j) - partial(partial(a, j), i)).is_zero());
    }
}

TEST_CASE("graph_solve trivial parabola") {
    auto sh = JetShape::get(4, 6);
    auto base = zeros(4);
    JQ x1 = JQ::generator(sh, base, 0), x4 = JQ::generator(sh, base, 3);
    JQ rho = x4 - x1 * x1;
    JQ g = graph_solve(rho, 3);
    auto tgt = g.shape();
    JQ u1 = JQ::generator(tgt, g.basepoint(), 0);
    CHECK((g - u1 * u1).is_zero());
}

TEST_CASE("graph_solve on the sphere matches the binomial series") {
    const int N = 8;
    auto sh = JetShape::get(4, N);
    std::vector<Rational> base = {Rational(0), Rational(0), Rational(0), Rational(1)};
    JQ one = JQ::constant(sh, base, GaussQ(1));
    JQ rho = one;
    for (int v = 0; v < 4; ++v) {
        JQ xv = JQ::generator(sh, base, v);
        xv += JQ::constant(sh, base, GaussQ(base[v]));
        rho -= xv * xv;
    }
    JQ g = graph_solve(rho, 3);

    // independent oracle: sqrt(1-u) = sum_k binom(1/2,k)(-u)^k with u = x1^2+x2^2+x3^2
    auto tgt = g.shape();
    auto cb = g.basepoint();
    JQ u(tgt, cb);
    for (int v = 0; v < 3; ++v) {
        JQ xv = JQ::generator(tgt, cb, v);
        u += xv * xv;
    }
    JQ expect = JQ::constant(tgt, cb, GaussQ(0));
    Rational coeff(1);
    JQ upow = JQ::constant(tgt, cb, GaussQ(1));
    for (int k = 0; k <= N / 2; ++k) {
        if (k > 0) {
            // binom(1/2,k) = binom(1/2,k-1) * (1/2 - (k-1)) / k
            coeff *= (Rational(1, 2) - Rational(k - 1)) / Rational(k);
            upow = upow * u;
        }
        JQ term = upow;
        term *= GaussQ(coeff * ((k % 2) ? Rational(-1) : Rational(1)));
        expect += term;
    }
    CHECK((g - expect).is_zero());

    // residual property: substituting g back into rho gives the zero jet
    JQ goff = g - JQ::constant(tgt, cb, GaussQ(1));
    CHECK(collapse_var(rho, 3, goff).is_zero());
}

TEST_CASE("graph_solve singular gradient") {
    auto sh = JetShape::get(4, 4);
    auto base = zeros(4);
    JQ x1 = JQ::generator(sh, base, 0), x4 = JQ::generator(sh, base, 3);
    JQ rho = x4 * x4 - x1;
    CHECK_THROWS_AS(graph_solve(rho, 3), Error);
}

TEST_CASE("float mode agrees with exact mode to 1e-10 relative") {
    std::mt19937_64 rng(2024);
    auto sh = JetShape::get(3, 6);
    auto base = zeros(3);
    for (int trial = 0; trial < 4; ++trial) {
        JQ a = random_jet(rng, sh, base, 6);
        JQ b = random_jet(rng, sh, base, 6);
        b += JQ::constant(sh, base, GaussQ(3)); // keep b invertible
        JQ q = a / b;
        JD qf = to_float(a) / to_float(b);
        JD diff = qf - to_float(q);
        double scale = std::max(1.0, to_float(q).max_abs());
        CHECK(diff.max_abs() / scale < 1e-10);
    }
}

TEST_CASE("exp_nilpotent inverse identity") {
    auto sh = JetShape::get(2, 7);
    auto base = zeros(2);
    JQ x = JQ::generator(sh, base, 0), y = JQ::generator(sh, base, 1);
    JQ u = x + y * y;
    JQ e = exp_nilpotent(u) * exp_nilpotent(-u);
    CHECK((e - JQ::constant(sh, base, GaussQ(1))).is_zero());
}

TEST_CASE("t-cap truncation keeps arithmetic consistent with the full ring") {
    auto shc = JetShape::get(3, 6, 2); // capped in the last variable
    auto shf = JetShape::get(3, 6);
    auto base = zeros(3);
    std::mt19937_64 rng(99);
    JQ a = random_jet(rng, shf, base, 3), b = random_jet(rng, shf, base, 3);
    JQ ac(shc, base), bc(shc, base);
    for (std::size_t i = 0; i < shc->keys.size(); ++i) {
        auto k = shf->find(shc->keys[i]);
        ac.coeffs()[i] = a.coeffs()[k];
        bc.coeffs()[i] = b.coeffs()[k];
    }
    JQ full = a * b, capped = ac * bc;
    for (std::size_t i = 0; i < shc->keys.size(); ++i) {
        auto k = shf->find(shc->keys[i]);
        CHECK(capped.coeffs()[i] == full.coeffs()[k]);
    }
}
