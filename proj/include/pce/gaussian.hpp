#pragma once

#include <string>

#include "pce/rational.hpp"

namespace pce {

// Gaussian rational re + im*i with exact components. Parameters of the
// systems we handle are real, so conjugation touches only these scalars.
struct Gaussian {
    Rational re{0};
    Rational im{0};

    Gaussian() = default;
    Gaussian(Rational r) : re(std::move(r)) {}
    Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Gaussian(long n) : re(make_rational(n)) {}

    static Gaussian i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Gaussian conj() const { return {re, -im}; }

    Gaussian operator-() const { return {-re, -im}; }
    Gaussian& operator+=(const Gaussian& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero Gaussian rational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline std::string to_string(const Gaussian& g) {
    if (g.im == 0) return rational_to_string(g.re);
    std::string s = "(" + rational_to_string(g.re);
    s += (sign(g.im) >= 0 ? "+" : "-");
    Rational ai = abs(g.im);
    s += rational_to_string(ai) + "i)";
    return s;
}

}  // namespace pce
