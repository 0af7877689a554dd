#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pce/elimination.hpp"
#include "pce/engine.hpp"
#include "pce/oracle.hpp"
#include "pce/realroots.hpp"
#include "pce/system.hpp"

namespace pce {

// Full specification of one case analysis; builtin() fills the per-case
// defaults (free-parameter tuple, pinned parameters, solve depth).
struct CaseSpec {
    std::string name;  // lambda1..lambda4, or "linear"
    std::string system = "z2-quintic";
    CenterConditionSet condition;             // empty set => no substitution
    std::vector<std::string> free_order;      // reduction/elimination order
    int n_symbolic = 3;                       // symbolic tau depth
    int n_numeric = 5;                        // numeric-instantiated tau depth
    std::map<std::string, Rational> pinned;   // fixed parameters during solving
    std::size_t solve_k = 4;                  // taus solved simultaneously
    MultistartOptions multistart;
    bool run_elimination = false;             // stretch-tier symbolic chain
    EliminationBudget budget;

    static CaseSpec builtin(const std::string& case_name);
    void validate() const;
};

struct CaseVerdict {
    std::string claim;
    std::string tier;  // "proof" | "symbolic+isolation" | "numeric-evidence"
    std::string evidence;
};

struct CaseSolution {
    std::vector<Real> x;    // free (unpinned) parameters, in free_order order
    std::vector<Real> tau;  // tau_1..n_numeric at the point
    Real jacobian_det{0};
    std::vector<Real> residual;
};

struct CaseReport {
    std::string name;
    std::vector<std::string> free_order;
    std::vector<std::string> solve_vars;  // free_order minus pinned
    PeriodConstantSequence taus;          // symbolic raw/reduced/certificates
    std::vector<CaseSolution> solutions;
    long solution_count = -1;
    bool elimination_attempted = false;
    EliminationTrace trace;
    long terminal_real_roots = -1;
    std::vector<CaseVerdict> verdicts;
    double wall_ms = 0;
    std::string notes;
};

CaseReport run_case(const CaseSpec& spec);

// System file I/O: {state_vars, parameters, xdot: [terms], ydot: [terms]}
// with terms in the {exponents, re, im} serialization over state variables
// followed by parameters. Errors carry the offending location.
nlohmann::json system_to_json(const PlanarPolySystem& s);
PlanarPolySystem system_from_json(const nlohmann::json& j);
PlanarPolySystem load_system(const std::string& path);
void save_system(const PlanarPolySystem& s, const std::string& path);

// Condition file I/O: {name, free_parameters, substitutions: {param: poly}}.
CenterConditionSet condition_from_json(const nlohmann::json& j);
CenterConditionSet load_condition(const std::string& path);

nlohmann::json report_to_json(const CaseReport& r);
std::string emit_report(const CaseReport& r, const std::string& format);

}  // namespace pce
