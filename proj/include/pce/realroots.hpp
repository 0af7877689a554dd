#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pce/elimination.hpp"
#include "pce/mp.hpp"
#include "pce/poly.hpp"
#include "pce/unipoly.hpp"

namespace pce {

// Vector-valued residual maps: fast double phase and high-precision phase.
using VecFnD = std::function<std::vector<double>(const std::vector<double>&)>;
using VecFnMp = std::function<std::vector<Real>(const std::vector<Real>&)>;

struct SolutionPoint {
    std::vector<Real> x;         // high-precision parameter vector
    std::vector<Real> residual;  // residual of the polished point
    Real jacobian_det{0};        // finite-difference Jacobian determinant
    bool polished = false;
};

struct MultistartOptions {
    std::size_t num_starts = 4000;
    unsigned seed = 1;
    double box_lo = -20.0;
    double box_hi = 20.0;
    double tol = 1e-8;           // double-phase acceptance on the residual
    int max_iter = 120;
    double dedup_radius = 1e-8;  // max-norm radius for duplicate merging
    unsigned digits = 60;        // polish precision (decimal digits)
    double max_coord = 1e3;      // reject runaway quasi-solutions
};

// Damped-Newton multistart over a box; double-precision search followed by a
// high-precision Newton polish with central-difference Jacobians. Results are
// deduplicated and sorted lexicographically.
std::vector<SolutionPoint> multistart_solve(std::size_t dim, const VecFnD& f,
                                            const VecFnMp& fmp,
                                            const MultistartOptions& opt = {});

// Central-difference Jacobian determinant of a square map at x.
Real fd_jacobian_det(std::size_t dim, const VecFnMp& f, const std::vector<Real>& x,
                     unsigned digits);

// Determinant of the exact symbolic Jacobian of the polynomial map evaluated
// at x (real coefficients required).
Real symbolic_jacobian_det(const std::vector<Poly>& polys,
                           const std::vector<std::string>& vars,
                           const std::vector<Real>& x);

enum class RootCountStrategy { elimination, multistart, both };

struct RootCountResult {
    long count = -1;
    std::string verdict;  // "resolved" or "unresolved"
    std::string note;
    std::vector<SolutionPoint> roots;  // multistart evidence
    EliminationTrace trace;            // elimination evidence
    long terminal_real_roots = -1;     // Sturm count on the chain terminal
};

// Counts common real roots of a square/overdetermined polynomial system.
// Elimination strategy: chain + Sturm count on the terminal, filtered for
// consistency against lifted solutions; multistart: dense search with dedup.
// Disagreement between requested strategies is reported, never hidden.
RootCountResult count_common_real_roots(const std::vector<Poly>& polys,
                                        const std::vector<std::string>& vars,
                                        RootCountStrategy strategy,
                                        const MultistartOptions& opt = {});

}  // namespace pce
