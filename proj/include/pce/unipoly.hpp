#pragma once

#include <string>
#include <vector>

#include "pce/poly.hpp"

namespace pce {

// Dense univariate polynomial with exact rational coefficients, ascending
// powers, no trailing zero. The workhorse of Sturm-chain real root work.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    // Extracts p as univariate in var; every other variable must be absent.
    static UniPoly from_poly(const Poly& p, const std::string& var);

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return (long)c_.size() - 1; }  // -1 when zero
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const;

    UniPoly derivative() const;
    UniPoly negate() const;
    UniPoly scale(const Rational& s) const;
    // Primitive part with positive leading coefficient.
    UniPoly primitive() const;

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

    // Euclidean remainder over the rationals.
    static UniPoly rem(const UniPoly& a, const UniPoly& b);
    static UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic-free, primitive
    // Exact quotient; throws if b does not divide a.
    static UniPoly divexact(const UniPoly& a, const UniPoly& b);

    UniPoly squarefree_part() const;

  private:
    std::vector<Rational> c_;
    void trim();
};

// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
struct SturmChain {
    std::vector<UniPoly> chain;

    static SturmChain build(const UniPoly& p);
    // Number of sign changes of the chain at x.
    int sign_changes_at(const Rational& x) const;
    // Distinct real roots in (a, b]; p must be squarefree for exact counts.
    int count_roots(const Rational& a, const Rational& b) const;
};

struct RootInterval {
    Rational lo;
    Rational hi;  // lo < root <= hi; lo == hi for an exact rational root
};

// Cauchy bound: all real roots lie in [-B, B].
Rational cauchy_root_bound(const UniPoly& p);

// Disjoint isolating intervals for the distinct real roots of p (squarefree
// part is taken internally), sorted increasingly, each refined to width at
// most `width`.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p,
                                             const Rational& width = make_rational(1, 1u << 20));

// Shrinks an isolating interval below `width` by Sturm bisection.
RootInterval refine_root(const SturmChain& sturm, RootInterval iv, const Rational& width);

}  // namespace pce
