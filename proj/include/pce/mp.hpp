#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "pce/poly.hpp"

namespace pce {

// High-precision real backed by GMP floats. Precision is process-global and
// applies to values constructed after set_working_digits().
using Real = mpf_class;

inline void set_working_digits(unsigned digits) {
    // bits ~ digits * log2(10), plus guard bits
    mpf_set_default_prec(static_cast<mp_bitcnt_t>(digits * 3.3219280948873626) + 32);
}

inline unsigned working_digits() {
    return static_cast<unsigned>((mpf_get_default_prec() - 32) / 3.3219280948873626);
}

inline Real real_from_rational(const Rational& q) {
    return Real(mpq_class(q));
}

inline double to_double(const Real& x) { return x.get_d(); }

std::string real_to_string(const Real& x, unsigned digits = 0);
Real real_from_string(const std::string& s);

// Minimal complex over Real; std::complex over a class type is not portable.
struct MpComplex {
    Real re{0};
    Real im{0};

    MpComplex() = default;
    MpComplex(int v) : re(v) {}
    MpComplex(double v) : re(v) {}
    MpComplex(Real r) : re(std::move(r)) {}
    MpComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    MpComplex conj() const { return {re, -im}; }
    Real abs2() const { return re * re + im * im; }

    MpComplex operator-() const { return {-re, -im}; }
    friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
        Real n = b.abs2();
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    MpComplex& operator+=(const MpComplex& o) { return *this = *this + o; }
    MpComplex& operator-=(const MpComplex& o) { return *this = *this - o; }
};

template <>
struct ScalarConvert<std::complex<double>> {
    static std::complex<double> from(const Gaussian& g) {
        return {g.re.get_d(), g.im.get_d()};
    }
};

// Double-precision complex with the same member interface as MpComplex, so
// the recursion templates instantiate for both.
struct DComplex {
    double re = 0;
    double im = 0;

    DComplex() = default;
    DComplex(int v) : re(v) {}
    DComplex(double v) : re(v) {}
    DComplex(double r, double i) : re(r), im(i) {}

    DComplex conj() const { return {re, -im}; }
    DComplex operator-() const { return {-re, -im}; }
    friend DComplex operator+(const DComplex& a, const DComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend DComplex operator-(const DComplex& a, const DComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend DComplex operator*(const DComplex& a, const DComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend DComplex operator/(const DComplex& a, const DComplex& b) {
        double n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
};

template <>
struct ScalarConvert<DComplex> {
    static DComplex from(const Gaussian& g) {
        return {g.re.get_d(), g.im.get_d()};
    }
};

template <>
struct ScalarConvert<MpComplex> {
    static MpComplex from(const Gaussian& g) {
        return {real_from_rational(g.re), real_from_rational(g.im)};
    }
};

template <>
struct ScalarConvert<double> {
    static double from(const Gaussian& g) {
        if (g.im != 0) throw std::domain_error("complex coefficient in real context");
        return g.re.get_d();
    }
};

template <>
struct ScalarConvert<Real> {
    static Real from(const Gaussian& g) {
        if (g.im != 0) throw std::domain_error("complex coefficient in real context");
        return real_from_rational(g.re);
    }
};

}  // namespace pce
