#ifndef CRCALC_SCALAR_HPP
#define CRCALC_SCALAR_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

#include <gmpxx.h>

#include "crcalc/error.hpp"

namespace crcalc {

using Rational = mpq_class;
using Cplx = std::complex<double>;

// Gaussian rational: exact complex number with rational real and imaginary
// parts. Closed under +, -, *, / (nonzero divisor); conjugation is exact.
struct GaussQ {
    Rational re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(long v) : re(v), im(0) {}
    GaussQ(const Rational& r) : re(r), im(0) {}
    GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussQ ratio(long p, long q) {
        Rational r(p, q);
        r.canonicalize();
        return GaussQ(r);
    }
    static GaussQ i_unit() { return GaussQ(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussQ operator-() const { return GaussQ(-re, -im); }
    GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
    GaussQ& operator-=(const GaussQ& o) { re -= o.re; im -= o.im; return *this; }
    GaussQ& operator*=(const GaussQ& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r); im = std::move(i);
        return *this;
    }
    GaussQ& operator/=(const GaussQ& o) {
        Rational d = o.re * o.re + o.im * o.im;
        if (d == 0) fail(ErrorKind::DivisionByZeroConstantTerm, "division by zero scalar");
        Rational r = (re * o.re + im * o.im) / d;
        Rational i = (im * o.re - re * o.im) / d;
        re = std::move(r); im = std::move(i);
        return *this;
    }

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { a += b; return a; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { a -= b; return a; }
    friend GaussQ operator*(GaussQ a, const GaussQ& b) { a *= b; return a; }
    friend GaussQ operator/(GaussQ a, const GaussQ& b) { a /= b; return a; }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

inline GaussQ conj(const GaussQ& s) { return GaussQ(s.re, -s.im); }
inline double to_double(const Rational& r) { return r.get_d(); }
inline Cplx to_cplx(const GaussQ& s) { return Cplx(s.re.get_d(), s.im.get_d()); }

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Parse "p/q", a plain integer, or a decimal like "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);

template <class K> struct field_traits;

template <> struct field_traits<GaussQ> {
    using real_type = Rational;
    static constexpr bool exact = true;
    static GaussQ from_rational(const Rational& re, const Rational& im) { return GaussQ(re, im); }
    static GaussQ from_real(const Rational& r) { return GaussQ(r); }
    static real_type real_part(const GaussQ& s) { return s.re; }
    static real_type imag_part(const GaussQ& s) { return s.im; }
    static bool is_zero(const GaussQ& s) { return s.is_zero(); }
    static double abs_approx(const GaussQ& s) { return std::abs(to_cplx(s)); }
    static GaussQ conj(const GaussQ& s) { return crcalc::conj(s); }
    static GaussQ i_unit() { return GaussQ::i_unit(); }
    static real_type real_zero() { return Rational(0); }
    static double real_to_double(const real_type& r) { return r.get_d(); }
};

template <> struct field_traits<Cplx> {
    using real_type = double;
    static constexpr bool exact = false;
    static Cplx from_rational(const Rational& re, const Rational& im) { return Cplx(re.get_d(), im.get_d()); }
    static Cplx from_real(double r) { return Cplx(r, 0.0); }
    static real_type real_part(const Cplx& s) { return s.real(); }
    static real_type imag_part(const Cplx& s) { return s.imag(); }
    static bool is_zero(const Cplx& s) { return s.real() == 0.0 && s.imag() == 0.0; }
    static double abs_approx(const Cplx& s) { return std::abs(s); }
    static Cplx conj(const Cplx& s) { return std::conj(s); }
    static Cplx i_unit() { return Cplx(0.0, 1.0); }
    static real_type real_zero() { return 0.0; }
    static double real_to_double(double r) { return r; }
};

} // namespace crcalc

#endif
