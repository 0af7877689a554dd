#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pce/poly.hpp"

namespace pce {

// Resultant of p and q with respect to var: the determinant of their
// Sylvester matrix, computed by the subresultant polynomial remainder
// sequence (fraction-free; exact over the Gaussian rationals).
// Both inputs must have positive degree in var.
Poly resultant(const Poly& p, const Poly& q, const std::string& var);

// Same value via Bareiss fraction-free elimination of the Sylvester matrix.
// Exponential-free but dense; kept as an independent cross-check for small
// degrees.
Poly resultant_bareiss(const Poly& p, const Poly& q, const std::string& var);

// Greatest common divisor over the rationals, primitive with the leading
// coefficient sign convention of Poly::normalize. gcd(0, b) = primitive b.
Poly gcd_poly(const Poly& a, const Poly& b);

struct SquarefreeResult {
    Rational content;  // rational content of p (sign carries the orientation)
    Expvec monomial;   // exponents of the extracted monomial factor, per p.vars()
    Poly squarefree;   // squarefree part w.r.t. var of the remaining factor, primitive
};

// Splits p = content * monomial * rest and returns the squarefree part of
// rest with respect to var (rest / gcd(rest, d rest/d var)). p must be nonzero.
SquarefreeResult squarefree_and_content(const Poly& p, const std::string& var);

struct EliminationStep {
    std::string lhs, rhs;    // identifiers of the two inputs
    std::string var;         // eliminated variable
    std::string output_id;
    Poly raw;                // raw resultant before extraction
    Rational content{0};     // rational content stripped from raw
    Expvec monomial;         // monomial factor stripped from raw
    Poly output;             // squarefree primitive survivor fed forward
    bool degenerate = false; // one input had degree 0 in var (power convention)
    double wall_ms = 0.0;
    std::size_t raw_terms = 0;
    std::size_t max_coeff_bits = 0;

    nlohmann::json to_json() const;
};

struct EliminationBudget {
    double max_wall_ms = 0.0;   // 0 = unlimited
    std::size_t max_terms = 0;  // 0 = unlimited; checked on each raw resultant
};

struct EliminationTrace {
    std::vector<EliminationStep> steps;
    std::vector<std::string> order;  // eliminated variables, in order
    std::vector<Poly> terminal;      // univariate in the surviving variable
    bool completed = false;
    std::string halt_reason;  // empty iff completed

    nlohmann::json to_json() const;
};

// Pairwise tower elimination: at each level the first polynomial is paired
// against every other one, the eliminated variable advances through `order`,
// and every resultant is content/monomial-stripped and made squarefree
// before feeding the next level. Degree-0 degeneracies use the power
// convention res(p, q) = q^deg(p). A vanishing resultant or an exceeded
// budget halts the chain with the partial trace.
EliminationTrace run_elimination_chain(const std::vector<Poly>& polys,
                                       const std::vector<std::string>& order,
                                       const EliminationBudget& budget = {});

}  // namespace pce
