#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pce/gaussian.hpp"

namespace pce {

using Expvec = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Expvec& e) {
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

// Graded lexicographic term order on exponent vectors over a fixed variable
// list. Equal polynomials therefore serialize identically.
struct GrlexLess {
    bool operator()(const Expvec& a, const Expvec& b) const {
        auto da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;  // lexicographic tie-break
    }
};

// Sparse exact multivariate polynomial over Gaussian rationals in a named
// parameter set. Zero coefficients are never stored. Immutable in spirit:
// every operation returns a fresh value.
class Poly {
  public:
    using TermMap = std::map<Expvec, Gaussian, GrlexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, Gaussian c);
    static Poly variable(std::vector<std::string> vars, const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (the whole value when is_constant()).
    Gaussian constant_value() const;
    std::size_t var_index(const std::string& name) const;  // throws on miss
    bool has_var(const std::string& name) const;

    long total_deg() const;  // -1 for the zero polynomial
    long degree_in(const std::string& var) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);
    Poly scale(const Gaussian& c) const;
    Poly pow(unsigned n) const;
    Poly conj_coeffs() const;

    Poly diff(const std::string& var) const;
    // Replaces var by a polynomial (promoted to the union variable set).
    Poly substitute(const std::string& var, const Poly& value) const;
    // Exact partial evaluation; unbound variables survive.
    Poly eval_partial(const std::map<std::string, Gaussian>& assignment) const;
    Gaussian eval_exact(const std::map<std::string, Gaussian>& assignment) const;

    // Numeric evaluation; C needs +,*,= from double-ish scalars plus a
    // from_rational hook (see mp.hpp for the high-precision instantiation).
    template <class C>
    C eval_numeric(const std::vector<C>& values) const;  // values per vars()

    // p = content * primitive with integer-content-1 primitive whose leading
    // term has positive real part (or positive imaginary part when the real
    // part vanishes). Throws on the zero polynomial.
    struct Normalized;
    Normalized normalize() const;

    // Coefficients [c0..cd] of p viewed as a polynomial in var; cd != 0.
    // Empty vector for the zero polynomial (degree "minus infinity").
    std::vector<Poly> coeffs_in(const std::string& var) const;
    static Poly assemble(const std::vector<Poly>& coeffs, const std::string& var);

    // Keeps only terms, drops variables absent from the term support; used
    // to compare polynomials living in different declared variable sets.
    Poly drop_unused_vars() const;
    Poly with_vars(const std::vector<std::string>& vars) const;  // reorder/extend

    nlohmann::json to_json() const;
    static Poly from_json(const nlohmann::json& j);
    std::string to_string() const;

    void add_term(const Expvec& e, const Gaussian& c);  // builder helper

  private:
    std::vector<std::string> vars_;
    TermMap terms_;

    static void align(const Poly& a, const Poly& b, Poly& a2, Poly& b2);
};

struct Poly::Normalized {
    Poly primitive;
    Rational content;
};

// Conversion hook from exact Gaussian coefficients into a numeric scalar
// type; specialized for std::complex<double> here and MpComplex in mp.hpp.
template <class C>
struct ScalarConvert;

template <class C>
C Poly::eval_numeric(const std::vector<C>& values) const {
    if (values.size() != vars_.size())
        throw std::invalid_argument("eval_numeric arity mismatch");
    C acc = C(0);
    for (const auto& [e, c] : terms_) {
        C m = ScalarConvert<C>::from(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) m = m * values[i];
        acc = acc + m;
    }
    return acc;
}

// Multivariate division remainder of p by the divisor list under the lex
// order induced by var_order (highest first). Divisor leading coefficients
// must be nonzero constants. Returns remainder and one quotient per divisor
// with p = sum q_i d_i + r.
struct DivisionResult {
    Poly remainder;
    std::vector<Poly> quotients;
};
DivisionResult lex_divide(const Poly& p, const std::vector<Poly>& divisors,
                          const std::vector<std::string>& var_order);

// Exact division in the full ring; nullopt when q does not divide p.
std::optional<Poly> divide_exact(const Poly& p, const Poly& q);

}  // namespace pce
