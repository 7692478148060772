#include "crcalc/expr.hpp"

#include <cctype>
#include <sstream>

namespace crcalc {

Expr::Ptr Expr::literal(GaussQ v) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Lit;
    e->lit = std::move(v);
    return e;
}
Expr::Ptr Expr::symbol(Op which) {
    auto e = std::make_shared<Expr>();
    e->op = which;
    return e;
}
Expr::Ptr Expr::param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Param;
    e->name = std::move(name);
    return e;
}
Expr::Ptr Expr::add(Ptr x, Ptr y) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Add;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}
Expr::Ptr Expr::sub(Ptr x, Ptr y) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Sub;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}
Expr::Ptr Expr::mul(Ptr x, Ptr y) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Mul;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}
Expr::Ptr Expr::pow(Ptr x, unsigned p) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Pow;
    e->a = std::move(x);
    e->exponent = p;
    return e;
}
Expr::Ptr Expr::neg(Ptr x) {
    auto e = std::make_shared<Expr>();
    e->op = Op::Neg;
    e->a = std::move(x);
    return e;
}
Expr::Ptr Expr::apply(const std::string& fn, Ptr x, std::size_t pos) {
    auto e = std::make_shared<Expr>();
    if (fn == "conj") e->op = Op::Conj;
    else if (fn == "re") e->op = Op::Re;
    else if (fn == "im") e->op = Op::Im;
    else if (fn == "abs2") e->op = Op::Abs2;
    else fail(ErrorKind::SyntaxError, "position " + std::to_string(pos) + ": unknown function '" + fn + "'");
    e->a = std::move(x);
    return e;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr::Ptr run() {
        auto e = expr();
        skip_ws();
        if (pos_ != s_.size()) err("end of input or operator");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void err(const std::string& expected) {
        fail(ErrorKind::SyntaxError,
             "position " + std::to_string(pos_) + ": expected " + expected);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }

    Expr::Ptr expr() {
        auto e = term();
        for (;;) {
            if (eat('+')) e = Expr::add(e, term());
            else if (eat('-')) e = Expr::sub(e, term());
            else return e;
        }
    }

    Expr::Ptr term() {
        auto e = factor();
        while (eat('*')) e = Expr::mul(e, factor());
        return e;
    }

    Expr::Ptr factor() {
        if (eat('-')) return Expr::neg(factor());
        auto e = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) err("nonnegative integer exponent");
            e = Expr::pow(e, unsigned(std::stoul(s_.substr(start, pos_ - start))));
        }
        return e;
    }

    Expr::Ptr atom() {
        skip_ws();
        if (pos_ >= s_.size()) err("number, identifier or '('");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            if (!eat(')')) err("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (peek('(')) {
                ++pos_;
                auto arg = expr();
                if (!eat(')')) err("')'");
                return Expr::apply(id, arg, start);
            }
            if (id == "z") return Expr::symbol(Expr::Op::Z);
            if (id == "w") return Expr::symbol(Expr::Op::W);
            if (id == "t") return Expr::symbol(Expr::Op::T);
            if (id == "conj" || id == "re" || id == "im" || id == "abs2")
                fail(ErrorKind::SyntaxError,
                     "position " + std::to_string(start) + ": expected '(' after '" + id + "'");
            return Expr::param(id);
        }
        err("number, identifier or '('");
    }

    Expr::Ptr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        // rational literal p/q at the lexer level (the grammar has no division)
        if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        return Expr::literal(GaussQ(parse_rational(s_.substr(start, pos_ - start))));
    }
};

int precedence(Expr::Op op) {
    switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul: return 2;
    case Expr::Op::Neg: return 3;
    case Expr::Op::Pow: return 4;
    default: return 5;
    }
}

void fmt(const Expr::Ptr& e, std::ostream& os, int parent_prec) {
    int prec = precedence(e->op);
    bool paren = prec < parent_prec;
    if (paren) os << '(';
    switch (e->op) {
    case Expr::Op::Lit:
        if (e->lit.im == 0) {
            if (e->lit.re < 0) os << '(' << rational_str(e->lit.re) << ')';
            else os << rational_str(e->lit.re);
        } else {
            // only produced by expansion, never needs reparsing
            os << "(" << rational_str(e->lit.re) << "+" << rational_str(e->lit.im) << "i)";
        }
        break;
    case Expr::Op::Z: os << 'z'; break;
    case Expr::Op::W: os << 'w'; break;
    case Expr::Op::Zbar: os << "conj(z)"; break;
    case Expr::Op::Wbar: os << "conj(w)"; break;
    case Expr::Op::T: os << 't'; break;
    case Expr::Op::Param: os << e->name; break;
    case Expr::Op::Add: fmt(e->a, os, 1); os << " + "; fmt(e->b, os, 2); break;
    case Expr::Op::Sub: fmt(e->a, os, 1); os << " - "; fmt(e->b, os, 2); break;
    case Expr::Op::Mul: fmt(e->a, os, 2); os << "*"; fmt(e->b, os, 3); break;
    case Expr::Op::Pow: fmt(e->a, os, 5); os << '^' << e->exponent; break;
    case Expr::Op::Neg: os << '-'; fmt(e->a, os, 3); break;
    case Expr::Op::Conj: os << "conj("; fmt(e->a, os, 0); os << ')'; break;
    case Expr::Op::Re: os << "re("; fmt(e->a, os, 0); os << ')'; break;
    case Expr::Op::Im: os << "im("; fmt(e->a, os, 0); os << ')'; break;
    case Expr::Op::Abs2: os << "abs2("; fmt(e->a, os, 0); os << ')'; break;
    }
    if (paren) os << ')';
}

} // namespace

Expr::Ptr parse(const std::string& text) { return Parser(text).run(); }

std::string format(const Expr::Ptr& e) {
    std::ostringstream os;
    fmt(e, os, 0);
    return os.str();
}

bool structurally_equal(const Expr::Ptr& x, const Expr::Ptr& y) {
    if (x->op != y->op) return false;
    switch (x->op) {
    case Expr::Op::Lit: return x->lit == y->lit;
    case Expr::Op::Param: return x->name == y->name;
    case Expr::Op::Pow: return x->exponent == y->exponent && structurally_equal(x->a, y->a);
    default: break;
    }
    if (x->a && !structurally_equal(x->a, y->a)) return false;
    if (x->b && !structurally_equal(x->b, y->b)) return false;
    return true;
}

Expr::Ptr conjugate(const Expr::Ptr& e) {
    using Op = Expr::Op;
    switch (e->op) {
    case Op::Lit: return Expr::literal(conj(e->lit));
    case Op::Z: return Expr::symbol(Op::Zbar);
    case Op::W: return Expr::symbol(Op::Wbar);
    case Op::Zbar: return Expr::symbol(Op::Z);
    case Op::Wbar: return Expr::symbol(Op::W);
    case Op::T: return e;      // deformation parameter is real
    case Op::Param: return e;  // named parameters are bound to real rationals
    case Op::Add: return Expr::add(conjugate(e->a), conjugate(e->b));
    case Op::Sub: return Expr::sub(conjugate(e->a), conjugate(e->b));
    case Op::Mul: return Expr::mul(conjugate(e->a), conjugate(e->b));
    case Op::Pow: return Expr::pow(conjugate(e->a), e->exponent);
    case Op::Neg: return Expr::neg(conjugate(e->a));
    case Op::Conj: return e->a;
    case Op::Re: return e;     // re/im/abs2 are real-valued
    case Op::Im: return e;
    case Op::Abs2: return e;
    }
    return e;
}

Expr::Ptr expand(const Expr::Ptr& e) {
    using Op = Expr::Op;
    switch (e->op) {
    case Op::Add: return Expr::add(expand(e->a), expand(e->b));
    case Op::Sub: return Expr::sub(expand(e->a), expand(e->b));
    case Op::Mul: return Expr::mul(expand(e->a), expand(e->b));
    case Op::Pow: return Expr::pow(expand(e->a), e->exponent);
    case Op::Neg: return Expr::neg(expand(e->a));
    case Op::Conj: return expand(conjugate(e->a));
    case Op::Re: {
        auto a = expand(e->a);
        auto s = Expr::add(a, expand(conjugate(e->a)));
        return Expr::mul(Expr::literal(GaussQ::ratio(1, 2)), s);
    }
    case Op::Im: {
        auto a = expand(e->a);
        auto d = Expr::sub(a, expand(conjugate(e->a)));
        return Expr::mul(Expr::literal(GaussQ(Rational(0), Rational(-1, 2))), d);
    }
    case Op::Abs2: {
        auto a = expand(e->a);
        return Expr::mul(a, expand(conjugate(e->a)));
    }
    default: return e;
    }
}

bool mentions_t(const Expr::Ptr& e) {
    if (e->op == Expr::Op::T) return true;
    if (e->a && mentions_t(e->a)) return true;
    if (e->b && mentions_t(e->b)) return true;
    return false;
}

void collect_params(const Expr::Ptr& e, std::vector<std::string>& out) {
    if (e->op == Expr::Op::Param) {
        for (const auto& s : out)
            if (s == e->name) return;
        out.push_back(e->name);
        return;
    }
    if (e->a) collect_params(e->a, out);
    if (e->b) collect_params(e->b, out);
}

namespace {

template <class K>
Jet<K> eval_node(const Expr::Ptr& e, const std::vector<Jet<K>>& sym, const EvalConfig& cfg,
                 const std::shared_ptr<const JetShape>& shape,
                 const std::vector<typename field_traits<K>::real_type>& base) {
    using Op = Expr::Op;
    using traits = field_traits<K>;
    switch (e->op) {
    case Op::Lit: return Jet<K>::constant(shape, base, traits::from_rational(e->lit.re, e->lit.im));
    case Op::Z: return sym[0];
    case Op::Zbar: return sym[1];
    case Op::W: return sym[2];
    case Op::Wbar: return sym[3];
    case Op::T: return sym[4];
    case Op::Param: {
        auto it = cfg.params.find(e->name);
        if (it == cfg.params.end())
            fail(ErrorKind::UnboundSymbol, "unbound parameter '" + e->name + "' (bind it with name=value)");
        return Jet<K>::constant(shape, base, traits::from_rational(it->second, Rational(0)));
    }
    case Op::Add: return eval_node(e->a, sym, cfg, shape, base) + eval_node(e->b, sym, cfg, shape, base);
    case Op::Sub: return eval_node(e->a, sym, cfg, shape, base) - eval_node(e->b, sym, cfg, shape, base);
    case Op::Mul: return eval_node(e->a, sym, cfg, shape, base) * eval_node(e->b, sym, cfg, shape, base);
    case Op::Pow: return pow(eval_node(e->a, sym, cfg, shape, base), e->exponent);
    case Op::Neg: return -eval_node(e->a, sym, cfg, shape, base);
    default:
        fail(ErrorKind::BadInput, "to_jet requires an expanded expression tree");
    }
}

} // namespace

template <class K>
Jet<K> to_jet(const Expr::Ptr& e, const std::vector<typename field_traits<K>::real_type>& basepoint,
              const EvalConfig& cfg) {
    using traits = field_traits<K>;
    if (basepoint.size() != 4) fail(ErrorKind::BadInput, "ambient basepoint must have 4 real coordinates");
    auto expanded = expand(e);
    bool has_t = mentions_t(expanded);
    if (has_t && !cfg.adjoin_t && cfg.t_value == nullptr)
        fail(ErrorKind::UnboundSymbol, "expression mentions t: bind a value or adjoin t as a jet variable");

    int nvars = cfg.adjoin_t ? 5 : 4;
    auto shape = JetShape::get(nvars, cfg.order, cfg.adjoin_t ? cfg.tcap : -1);
    std::vector<typename traits::real_type> base = basepoint;
    if (cfg.adjoin_t) base.push_back(traits::real_zero());

    std::vector<Jet<K>> x;
    for (int v = 0; v < 4; ++v) {
        auto g = Jet<K>::generator(shape, base, v);
        g += Jet<K>::constant(shape, base, traits::from_real(basepoint[v]));
        x.push_back(g);
    }
    std::vector<Jet<K>> sym;
    sym.push_back(x[0] + traits::i_unit() * x[1]); // z
    sym.push_back(x[0] - traits::i_unit() * x[1]); // zbar
    sym.push_back(x[2] + traits::i_unit() * x[3]); // w
    sym.push_back(x[2] - traits::i_unit() * x[3]); // wbar
    if (cfg.adjoin_t) {
        sym.push_back(Jet<K>::generator(shape, base, 4));
    } else if (cfg.t_value) {
        sym.push_back(Jet<K>::constant(shape, base, traits::from_rational(*cfg.t_value, Rational(0))));
    } else {
        sym.push_back(Jet<K>::constant(shape, base, K(0)));
    }
    return eval_node(expanded, sym, cfg, shape, base);
}

template Jet<GaussQ> to_jet<GaussQ>(const Expr::Ptr&, const std::vector<Rational>&, const EvalConfig&);
template Jet<Cplx> to_jet<Cplx>(const Expr::Ptr&, const std::vector<double>&, const EvalConfig&);

} // namespace crcalc
