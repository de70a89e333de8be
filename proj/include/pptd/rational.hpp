#pragma once

// Exact rational scalars (GMP-backed) and complex values built from them.
//
// Two scalar modes exist throughout the library: exact rationals for
// constructions and certificate verification, double precision for the
// iterative SDP solver. Mixing the two in one operation is an error,
// never a silent coercion; conversions are explicit (exact -> float only).

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace pptd {

using Rat = mpq_class;
using Cx = std::complex<double>;

enum class ScalarMode { Exact, Float };

inline const char* to_string(ScalarMode m) {
    return m == ScalarMode::Exact ? "exact" : "float";
}

// Canonical rational from integer numerator/denominator (lowest terms,
// positive denominator).
inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p". Throws on malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

// Lowest-terms "p/q" ("p" when q == 1).
std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// Complex number over exact rationals.
struct CRat {
    Rat re;
    Rat im;

    CRat() : re(0), im(0) {}
    CRat(Rat r) : re(std::move(r)), im(0) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    CRat conj() const { return CRat(re, -im); }

    CRat operator-() const { return CRat(-re, -im); }
    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }

    friend CRat operator+(const CRat& a, const CRat& b) { return CRat(a.re + b.re, a.im + b.im); }
    friend CRat operator-(const CRat& a, const CRat& b) { return CRat(a.re - b.re, a.im - b.im); }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend CRat operator*(const Rat& s, const CRat& a) { return CRat(s * a.re, s * a.im); }
    friend CRat operator/(const CRat& a, const Rat& s) {
        if (sgn(s) == 0) throw std::invalid_argument("CRat: division by zero");
        return CRat(a.re / s, a.im / s);
    }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    // |z|^2, exact.
    Rat norm2() const { return re * re + im * im; }

    Cx to_cx() const { return Cx(re.get_d(), im.get_d()); }
};

// Uniform helpers so tensor/matrix code can be written once for both modes.
inline CRat conj_of(const CRat& z) { return z.conj(); }
inline Cx conj_of(const Cx& z) { return std::conj(z); }
inline bool is_zero(const CRat& z) { return z.is_zero(); }
inline bool is_zero(const Cx& z) { return z == Cx(0.0, 0.0); }
inline double abs2_of(const CRat& z) { return z.norm2().get_d(); }
inline double abs2_of(const Cx& z) { return std::norm(z); }

}  // namespace pptd
