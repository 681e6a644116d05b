#pragma once

// Scalar layer. Two coefficient fields share one interface: exact complex
// rationals on top of GMP, and std::complex<double> for the float-mode
// experiment code. Everything the templated form/matrix code needs from a
// scalar type goes through ScalarOps<S>.

#include <gmpxx.h>

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qf {

using Rat = mpq_class;

// mpq_class(string) accepts "p/q" but does not reduce; it also accepts some
// junk silently, so validate first.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (slash != std::string::npos || i == 0 || i + 1 == s.size())
                throw std::invalid_argument("bad rational literal: " + s);
            slash = i;
        } else if (c == '-' || c == '+') {
            if (i != 0 && i != slash + 1)
                throw std::invalid_argument("bad rational literal: " + s);
        } else if (c < '0' || c > '9') {
            throw std::invalid_argument("bad rational literal: " + s);
        }
    }
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

struct ExactComplex {
    Rat re, im;

    ExactComplex() : re(0), im(0) {}
    ExactComplex(int v) : re(v), im(0) {}
    ExactComplex(const Rat& r) : re(r), im(0) {}
    ExactComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static ExactComplex i() { return ExactComplex(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    ExactComplex conj() const { return ExactComplex(re, -im); }
    Rat norm2() const { return re * re + im * im; }

    ExactComplex operator-() const { return ExactComplex(-re, -im); }
    ExactComplex& operator+=(const ExactComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return ExactComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        Rat n = b.norm2();
        if (n == 0) throw std::domain_error("division by zero");
        ExactComplex num = a * b.conj();
        return ExactComplex(num.re / n, num.im / n);
    }
    ExactComplex& operator/=(const ExactComplex& o) { return *this = *this / o; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    std::string str() const {
        if (im == 0) return rat_to_string(re);
        std::string s = rat_to_string(re);
        s += (im > 0 ? "+" : "-");
        Rat a = abs(im);
        if (a != 1) s += rat_to_string(a) + "*";
        s += "i";
        return s;
    }
};

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<ExactComplex> {
    static ExactComplex zero() { return ExactComplex(); }
    static ExactComplex one() { return ExactComplex(1); }
    static ExactComplex imag_unit() { return ExactComplex::i(); }
    static ExactComplex conj(const ExactComplex& x) { return x.conj(); }
    static bool is_zero(const ExactComplex& x) { return x.is_zero(); }
    static ExactComplex from_rat(const Rat& r) { return ExactComplex(r); }
    static ExactComplex from_int(long v) { return ExactComplex(Rat(v)); }
};

template <>
struct ScalarOps<std::complex<double>> {
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> imag_unit() { return {0.0, 1.0}; }
    static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
    static bool is_zero(const std::complex<double>& x) { return x.real() == 0.0 && x.imag() == 0.0; }
    static std::complex<double> from_rat(const Rat& r) { return {r.get_d(), 0.0}; }
    static std::complex<double> from_int(long v) { return {double(v), 0.0}; }
};

inline Rat binom_rat(unsigned long a, unsigned long b) {
    if (b > a) return Rat(0);
    mpz_class v;
    mpz_bin_uiui(v.get_mpz_t(), a, b);
    return Rat(v);
}

// Exact lift of a double (doubles are dyadic rationals).
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite float");
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

}  // namespace qf
