#ifndef CRCALC_EXPR_HPP
#define CRCALC_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crcalc/jet.hpp"
#include "crcalc/scalar.hpp"

namespace crcalc {

// AST for defining functions and auxiliary scalars. Grammar (infix,
// whitespace-insignificant, ^ binds tightest, unary minus allowed):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)? | '-' factor
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//   ident  in {z, w, t, conj, re, im, abs2} or a user parameter.
// Literals are integers, decimals or rationals "p/q", all kept exact.
class Expr {
public:
    enum class Op { Lit, Z, W, Zbar, Wbar, T, Param, Add, Sub, Mul, Pow, Neg, Conj, Re, Im, Abs2 };

    using Ptr = std::shared_ptr<const Expr>;

    Op op = Op::Lit;
    GaussQ lit;            // Op::Lit
    std::string name;      // Op::Param
    unsigned exponent = 0; // Op::Pow
    Ptr a, b;

    static Ptr literal(GaussQ v);
    static Ptr symbol(Op which);
    static Ptr param(std::string name);
    static Ptr add(Ptr x, Ptr y);
    static Ptr sub(Ptr x, Ptr y);
    static Ptr mul(Ptr x, Ptr y);
    static Ptr pow(Ptr x, unsigned e);
    static Ptr neg(Ptr x);
    static Ptr apply(const std::string& fn, Ptr x, std::size_t pos);
};

Expr::Ptr parse(const std::string& text);

// Pretty-print with minimal parentheses; parse(format(e)) == e structurally.
std::string format(const Expr::Ptr& e);

bool structurally_equal(const Expr::Ptr& a, const Expr::Ptr& b);

// Eliminate re/im/abs2/conj: the result contains only literals, z, w, zbar,
// wbar, t, parameters and {+,-,*,^}.
Expr::Ptr expand(const Expr::Ptr& e);

// Structural conjugation (used by the expansion and by reality checks).
Expr::Ptr conjugate(const Expr::Ptr& e);

bool mentions_t(const Expr::Ptr& e);
void collect_params(const Expr::Ptr& e, std::vector<std::string>& out);

// Evaluation of an expanded AST into a jet. The basepoint is the ambient
// point (x1,x2,x3,x4) = (Re z, Im z, Re w, Im w); if `adjoin_t` the jet gains
// t as a trailing variable with cap `tcap`, otherwise any t in the expression
// must be bound by `t_value`.
struct EvalConfig {
    int order = 10;
    bool adjoin_t = false;
    int tcap = -1;
    const Rational* t_value = nullptr;
    std::map<std::string, Rational> params;
};

template <class K>
Jet<K> to_jet(const Expr::Ptr& e, const std::vector<typename field_traits<K>::real_type>& basepoint,
              const EvalConfig& cfg);

extern template Jet<GaussQ> to_jet<GaussQ>(const Expr::Ptr&, const std::vector<Rational>&, const EvalConfig&);
extern template Jet<Cplx> to_jet<Cplx>(const Expr::Ptr&, const std::vector<double>&, const EvalConfig&);

} // namespace crcalc

#endif
