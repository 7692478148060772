#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crcalc/expr.hpp"

using namespace crcalc;

namespace {

std::vector<Rational> point(long a, long b, long c, long d) {
    return {Rational(a), Rational(b), Rational(c), Rational(d)};
}

// grammar-shaped random trees: nonnegative literals, explicit Neg nodes
Expr::Ptr random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 10);
    switch (pick(rng)) {
    case 0: return Expr::symbol(Expr::Op::Z);
    case 1: return Expr::symbol(Expr::Op::W);
    case 2: {
        std::uniform_int_distribution<int> num(0, 6), den(1, 4);
        Rational r(num(rng), den(rng));
        r.canonicalize();
        return Expr::literal(GaussQ(r));
    }
    case 3: return Expr::param("a");
    case 4: return Expr::add(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return Expr::sub(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return Expr::mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: {
        std::uniform_int_distribution<int> e(0, 3);
        return Expr::pow(random_tree(rng, depth - 1), unsigned(e(rng)));
    }
    case 8: return Expr::neg(random_tree(rng, depth - 1));
    case 9: return Expr::apply("conj", random_tree(rng, depth - 1), 0);
    default: return Expr::apply("abs2", random_tree(rng, depth - 1), 0);
    }
}

} // namespace

TEST_CASE("parse the sphere defining function") {
    auto e = parse("1 - abs2(z) - abs2(w)");
    CHECK(e->op == Expr::Op::Sub);
    CHECK(e->a->op == Expr::Op::Sub);
    CHECK(e->b->op == Expr::Op::Abs2);
    CHECK(e->b->a->op == Expr::Op::W);
}

TEST_CASE("parse the ellipsoid family") {
    auto e = parse("1 - (abs2(z)+abs2(w)) - t*(2*re(z)^2 + 3*re(w)^2)");
    CHECK(mentions_t(e));
    auto f = parse(format(e));
    CHECK(structurally_equal(e, f));
}

TEST_CASE("parse the normal-form probe with a free parameter") {
    auto e = parse("2*im(w) - abs2(z) - a*z^4*conj(z)^4");
    std::vector<std::string> params;
    collect_params(e, params);
    REQUIRE(params.size() == 1);
    CHECK(params[0] == "a");
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse("1 + * z");
        FAIL("expected SyntaxError");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(err.what()).find("position") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("re z"), Error);
    CHECK_THROWS_AS(parse("(1+z"), Error);
}

TEST_CASE("round trip parse(format(e)) on a generated corpus") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        auto e = random_tree(rng, 4);
        auto back = parse(format(e));
        CHECK(structurally_equal(e, back));
    }
}

TEST_CASE("to_jet of the sphere at (0,0,1,0): hand expansion") {
    auto e = parse("1 - abs2(z) - abs2(w)");
    EvalConfig cfg;
    cfg.order = 2;
    auto j = to_jet<GaussQ>(e, point(0, 0, 1, 0), cfg);
    CHECK(j.value() == GaussQ(0));
    // rho = -2 x3 - x1^2 - x2^2 - x3^2 - x4^2 in offsets from the basepoint
    CHECK(j.coeff({0, 0, 1, 0}) == GaussQ(-2));
    CHECK(j.coeff({1, 0, 0, 0}) == GaussQ(0));
    CHECK(j.coeff({0, 1, 0, 0}) == GaussQ(0));
    CHECK(j.coeff({0, 0, 0, 1}) == GaussQ(0));
    for (int v = 0; v < 4; ++v) {
        std::vector<int> ex(4, 0);
        ex[v] = 2;
        CHECK(j.coeff(ex) == GaussQ(-1));
    }
}

TEST_CASE("literal to_jet") {
    auto e = parse("5");
    EvalConfig cfg;
    cfg.order = 3;
    auto j = to_jet<GaussQ>(e, point(0, 0, 0, 0), cfg);
    CHECK(j.value() == GaussQ(5));
    JetShape::get(4, 3);
    CHECK((j - Jet<GaussQ>::constant(j.shape(), j.basepoint(), GaussQ(5))).is_zero());
}

TEST_CASE("ellipsoid with t adjoined is linear in t with the right coefficient") {
    auto e = parse("1 - (abs2(z)+abs2(w)) - t*(2*re(z)^2 + 3*re(w)^2)");
    EvalConfig cfg;
    cfg.order = 4;
    cfg.adjoin_t = true;
    cfg.tcap = 2;
    auto base = point(0, 0, 1, 0);
    auto j = to_jet<GaussQ>(e, base, cfg);

    // coefficient of t as a function of the spatial offsets must equal
    // -(2 re(z)^2 + 3 re(w)^2); check a few Taylor slots by hand
    CHECK(j.coeff({0, 0, 0, 0, 1}) == GaussQ(-3));  // -(3 re(w)^2) at w=1
    CHECK(j.coeff({0, 0, 1, 0, 1}) == GaussQ(-6));  // d/dx3 of -3(1+x3)^2
    CHECK(j.coeff({2, 0, 0, 0, 1}) == GaussQ(-2));  // -(2 x1^2) t
    CHECK(j.coeff({0, 0, 0, 0, 2}) == GaussQ(0));   // family is linear in t
    // unbound t must be rejected
    EvalConfig plain;
    plain.order = 2;
    CHECK_THROWS_AS(to_jet<GaussQ>(e, base, plain), Error);
}

TEST_CASE("unbound parameter is reported") {
    auto e = parse("a*z");
    EvalConfig cfg;
    cfg.order = 2;
    try {
        to_jet<GaussQ>(e, point(0, 0, 0, 0), cfg);
        FAIL("expected UnboundSymbol");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::UnboundSymbol);
    }
    cfg.params["a"] = Rational(1, 3);
    auto j = to_jet<GaussQ>(e, point(0, 0, 0, 0), cfg);
    CHECK(j.coeff({1, 0, 0, 0}) == GaussQ(Rational(1, 3)));
}

TEST_CASE("conjugation symmetry of evaluation") {
    std::mt19937_64 rng(31337);
    EvalConfig cfg;
    cfg.order = 4;
    cfg.params["a"] = Rational(2, 3);
    auto base = point(1, 0, 0, 1);
    for (int trial = 0; trial < 25; ++trial) {
        auto e = random_tree(rng, 3);
        auto j1 = to_jet<GaussQ>(conjugate(e), base, cfg);
        auto j2 = conj(to_jet<GaussQ>(e, base, cfg));
        CHECK((j1 - j2).is_zero());
    }
}

TEST_CASE("re/im/abs2 expressions evaluate to real jets") {
    std::mt19937_64 rng(888);
    EvalConfig cfg;
    cfg.order = 4;
    cfg.params["a"] = Rational(-1, 2);
    auto base = point(0, 1, 1, 0);
    const char* wrappers[] = {"re", "im", "abs2"};
    for (int trial = 0; trial < 25; ++trial) {
        auto e = Expr::apply(wrappers[trial % 3], random_tree(rng, 3), 0);
        auto j = to_jet<GaussQ>(e, base, cfg);
        CHECK(imag_part(j).is_zero());
    }
}

TEST_CASE("double conjugation is the identity") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        auto e = random_tree(rng, 4);
        CHECK(structurally_equal(expand(conjugate(conjugate(e))), expand(e)));
    }
}
