// pce: period-constant engine CLI.
//
// Subcommands: tau, eliminate, solve, verify, case.
// Exit codes: 0 success, 2 validation error, 3 budget exceeded,
// 4 indeterminate (precision/conditioning).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pce/pipeline.hpp"

using namespace pce;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIndeterminate = 4;

PlanarPolySystem resolve_system(const std::string& spec) {
    if (std::filesystem::exists(spec)) return load_system(spec);
    return builtin_system(spec);
}

CenterConditionSet resolve_condition(const std::string& spec) {
    if (std::filesystem::exists(spec)) return load_condition(spec);
    return builtin_condition(spec);
}

// Point file: {"a3": "-1.5", ...}; values are decimal or rational strings.
std::map<std::string, Real> load_point(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open point file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("point file parse error: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("point file: expected an object of parameter values");
    std::map<std::string, Real> out;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_string())
            throw std::invalid_argument("point file: value of " + k +
                                        " must be a numeric string");
        out[k] = real_from_string(v.get<std::string>());
    }
    return out;
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
    out << text;
}

std::vector<Real> point_to_vector(const std::map<std::string, Real>& pt,
                                  const std::vector<std::string>& params,
                                  const ComplexSystemCoefficients& coeffs) {
    std::vector<Real> v;
    for (const auto& p : params) {
        auto it = pt.find(p);
        if (it != pt.end()) {
            v.push_back(it->second);
            continue;
        }
        bool used = false;
        for (const auto& [kj, poly] : coeffs.a)
            if (poly.has_var(p) && poly.degree_in(p) > 0) used = true;
        if (used)
            throw std::invalid_argument("point file does not assign parameter " + p);
        v.push_back(Real(0));
    }
    return v;
}

json tau_sequence_json(const PeriodConstantSequence& seq) {
    json arr = json::array();
    for (std::size_t k = 0; k < seq.raw.size(); ++k) {
        json t;
        t["k"] = k + 1;
        t["raw"] = seq.raw[k].to_json();
        if (k < seq.reduced.size()) {
            t["reduced"] = seq.reduced[k].to_json();
            json cert;
            cert["s"] = rational_to_string(seq.certificates[k].s);
            cert["multipliers"] = json::array();
            for (const auto& m : seq.certificates[k].multipliers)
                cert["multipliers"].push_back(m.to_json());
            t["certificate"] = cert;
        }
        arr.push_back(t);
    }
    return arr;
}

int run_tau(const std::string& system_spec, const std::string& condition_spec,
            int max_k, bool reduce, const std::string& numeric_at, unsigned precision,
            const std::string& out_path, const std::string& format) {
    set_working_digits(precision);
    PlanarPolySystem sys = resolve_system(system_spec);
    CenterConditionSet cond;
    if (!condition_spec.empty()) {
        cond = resolve_condition(condition_spec);
        sys = apply_center_condition(sys, cond);
    }
    ComplexSystemCoefficients coeffs = complexify(sys);
    PeriodConstantSequence seq = compute_tau(coeffs, max_k);
    if (reduce) {
        if (cond.free_parameters.empty())
            throw std::invalid_argument(
                "--reduce needs a condition with a free-parameter order");
        seq = reduce_tau_sequence(seq, cond.free_parameters);
    }

    json j;
    j["schema"] = "pce-tau/1";
    j["system"] = system_spec;
    j["condition"] = condition_spec;
    j["parameters"] = coeffs.parameters;
    j["max_k"] = max_k;
    j["taus"] = tau_sequence_json(seq);
    if (!numeric_at.empty()) {
        auto pt = load_point(numeric_at);
        auto v = point_to_vector(pt, coeffs.parameters, coeffs);
        auto vals = tau_at_point(coeffs, v, max_k);
        json nj;
        nj["precision_digits"] = precision;
        nj["point"] = json::object();
        for (std::size_t i = 0; i < coeffs.parameters.size(); ++i)
            nj["point"][coeffs.parameters[i]] = real_to_string(v[i], precision);
        nj["values"] = json::array();
        for (const auto& t : vals) nj["values"].push_back(real_to_string(t, precision));
        j["numeric"] = nj;
    }

    if (format == "structured") {
        write_out(j.dump(2) + "\n", out_path);
    } else if (format == "markdown") {
        std::ostringstream os;
        os << "# Period constants\n\nSystem: " << system_spec;
        if (!condition_spec.empty()) os << " under condition " << condition_spec;
        os << "\n\n";
        for (std::size_t k = 0; k < seq.raw.size(); ++k) {
            os << "- tau_" << k + 1 << " (raw): `" << seq.raw[k].to_string() << "`\n";
            if (k < seq.reduced.size())
                os << "  - reduced: `" << seq.reduced[k].to_string() << "`\n";
        }
        if (j.contains("numeric")) {
            os << "\n## Numeric instantiation (" << precision << " digits)\n\n";
            for (std::size_t k = 0; k < j["numeric"]["values"].size(); ++k)
                os << "- tau_" << k + 1 << " = "
                   << j["numeric"]["values"][k].get<std::string>() << "\n";
        }
        write_out(os.str(), out_path);
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    return kExitOk;
}

int run_eliminate(const std::string& case_name, const std::string& order_csv,
                  double budget_seconds, std::size_t budget_bytes,
                  const std::string& out_path) {
    CaseSpec spec = CaseSpec::builtin(case_name);
    std::vector<std::string> order;
    {
        std::stringstream ss(order_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) order.push_back(tok);
    }
    if (order.empty()) throw std::invalid_argument("--order must list variables");
    for (const auto& v : order)
        if (std::find(spec.free_order.begin(), spec.free_order.end(), v) ==
            spec.free_order.end())
            throw std::invalid_argument("order variable " + v +
                                        " is not free in case " + case_name);

    PlanarPolySystem sys =
        apply_center_condition(builtin_system(spec.system), spec.condition);
    ComplexSystemCoefficients coeffs = complexify(sys);
    int n = (int)order.size() + 1;
    PeriodConstantSequence seq =
        reduce_tau_sequence(compute_tau(coeffs, n), spec.free_order);

    EliminationBudget budget;
    budget.max_wall_ms = budget_seconds * 1000.0;
    // Term budget derived from the byte budget: a sparse term costs on the
    // order of 64 bytes of exponents/limb overhead before coefficients.
    budget.max_terms = budget_bytes ? std::max<std::size_t>(1, budget_bytes / 64) : 0;
    EliminationTrace trace = run_elimination_chain(seq.reduced, order, budget);

    json j;
    j["schema"] = "pce-eliminate/1";
    j["case"] = case_name;
    j["trace"] = trace.to_json();
    if (trace.completed && !trace.terminal.empty()) {
        std::string last;
        for (const auto& v : spec.free_order)
            if (std::find(order.begin(), order.end(), v) == order.end()) last = v;
        Poly term = trace.terminal.front();
        if (!last.empty() && term.has_var(last) && term.degree_in(last) > 0) {
            UniPoly u = UniPoly::from_poly(term.drop_unused_vars().with_vars({last}), last);
            j["terminal_variable"] = last;
            j["terminal_real_roots"] = (long)isolate_real_roots(u).size();
        }
    }
    write_out(j.dump(2) + "\n", out_path);
    if (!trace.completed && trace.halt_reason.find("budget exceeded") != std::string::npos) return kExitBudget;
    return kExitOk;
}

int run_solve(const std::string& case_name, int k, std::size_t starts,
              const std::string& box, unsigned precision, unsigned seed,
              const std::string& out_path) {
    CaseSpec spec = CaseSpec::builtin(case_name);
    if (k > 0) {
        spec.solve_k = (std::size_t)k;
        spec.n_numeric = std::max(spec.n_numeric, k + 1);
    }
    if (starts) spec.multistart.num_starts = starts;
    if (!box.empty()) {
        auto colon = box.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--box expects LO:HI");
        spec.multistart.box_lo = std::stod(box.substr(0, colon));
        spec.multistart.box_hi = std::stod(box.substr(colon + 1));
        if (!(spec.multistart.box_lo < spec.multistart.box_hi))
            throw std::invalid_argument("--box expects LO < HI");
    }
    spec.multistart.digits = precision;
    spec.multistart.seed = seed;
    spec.n_symbolic = 0;  // numeric-only subcommand
    set_working_digits(precision);

    CaseReport rep = run_case(spec);
    json j;
    j["schema"] = "pce-solve/1";
    j["case"] = case_name;
    j["solve_vars"] = rep.solve_vars;
    j["k"] = spec.solve_k;
    j["seed"] = seed;
    j["solution_count"] = rep.solution_count;
    j["solutions"] = report_to_json(rep)["solutions"];
    write_out(j.dump(2) + "\n", out_path);
    return kExitOk;
}

int run_verify(const std::string& system_spec, const std::string& condition_spec,
               const std::string& params_path, int K, double h_min, double h_max,
               double tol, const std::string& out_path) {
    PlanarPolySystem sys = resolve_system(system_spec);
    if (!condition_spec.empty())
        sys = apply_center_condition(sys, resolve_condition(condition_spec));
    ComplexSystemCoefficients coeffs = complexify(sys);

    std::map<std::string, double> params;
    std::map<std::string, Real> pt;
    if (!params_path.empty()) pt = load_point(params_path);
    for (const auto& [k2, v] : pt) params[k2] = to_double(v);
    for (const auto& p : sys.parameters()) {
        if (params.count(p)) continue;
        if (sys.xdot.degree_in(p) > 0 || sys.ydot.degree_in(p) > 0)
            throw std::invalid_argument("point file does not assign parameter " + p);
        params[p] = 0.0;  // substituted-away leftover in the variable list
    }

    OracleOptions opt;
    opt.tol = tol;
    auto samples = sample_period_ladder(sys, params, h_min, h_max, 12, opt);
    auto fit = fit_period_series(samples, K);

    set_working_digits(40);
    auto v = point_to_vector(pt, coeffs.parameters, coeffs);
    auto taus = tau_at_point(coeffs, v, K);

    // Theorem 2.2 relates the FIRST nonzero pair only: p_{2m} = -pi tau_m.
    int first = -1;
    for (int i = 0; i < (int)taus.size(); ++i) {
        Real a = taus[i] < Real(0) ? Real(-taus[i]) : Real(taus[i]);
        if (a > Real(1e-25)) {
            first = i;
            break;
        }
    }
    json j;
    j["schema"] = "pce-verify/1";
    j["samples"] = json::array();
    for (const auto& s : samples)
        j["samples"].push_back({{"h", s.h}, {"period", s.period}});
    j["fit"] = {{"coeffs", fit.coeffs},
                {"residual_norm", fit.residual_norm},
                {"condition", fit.condition}};
    j["tau"] = json::array();
    for (const auto& t : taus) j["tau"].push_back(to_double(t));
    int rc = kExitOk;
    if (first >= 0 && first < (int)fit.coeffs.size()) {
        double predicted = -M_PI * to_double(taus[first]);
        double measured = fit.coeffs[first];
        double rel = std::abs(measured - predicted) /
                     std::max(1e-300, std::abs(predicted));
        j["first_nonzero_index"] = first + 1;
        j["predicted_p"] = predicted;
        j["measured_p"] = measured;
        j["rel_error"] = rel;
        j["agrees"] = rel < 1e-3;
        if (fit.condition > 1e12 || fit.residual_norm > 1e-2) {
            j["verdict"] = "indeterminate: ill-conditioned period fit";
            rc = kExitIndeterminate;
        } else {
            j["verdict"] = rel < 1e-3 ? "agrees" : "disagrees";
        }
    } else {
        j["first_nonzero_index"] = nullptr;
        j["verdict"] = "all computed tau vanish at this point";
    }
    write_out(j.dump(2) + "\n", out_path);
    return rc;
}

int run_case_cmd(const std::string& name, std::size_t starts, unsigned seed,
                 int n_symbolic, int n_numeric, bool with_elimination,
                 double budget_seconds, const std::string& out_path,
                 const std::string& format, unsigned precision) {
    set_working_digits(precision);
    CaseSpec spec = CaseSpec::builtin(name);
    if (starts) spec.multistart.num_starts = starts;
    spec.multistart.seed = seed;
    spec.multistart.digits = precision;
    if (n_symbolic >= 0) spec.n_symbolic = n_symbolic;
    if (n_numeric >= 0) {
        spec.n_numeric = n_numeric;
        if (n_numeric == 0) spec.solve_k = 0;
    }
    spec.run_elimination = with_elimination;
    if (budget_seconds > 0) spec.budget.max_wall_ms = budget_seconds * 1000.0;
    CaseReport rep = run_case(spec);
    write_out(emit_report(rep, format), out_path);
    if (rep.elimination_attempted && !rep.trace.completed &&
        rep.trace.halt_reason.find("budget exceeded") != std::string::npos)
        return kExitBudget;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pce: exact period constants of planar polynomial systems"};
    app.require_subcommand(1);

    // tau
    auto* tau = app.add_subcommand("tau", "compute tau_1..tau_N symbolically");
    std::string t_system = "z2-quintic", t_condition, t_numeric_at, t_out,
                t_format = "structured";
    int t_maxk = 3;
    bool t_reduce = false;
    unsigned t_precision = 40;
    tau->add_option("--system", t_system, "system file or builtin name");
    tau->add_option("--condition", t_condition, "condition name or file");
    tau->add_option("--max-k", t_maxk, "depth N")->check(CLI::Range(1, 12));
    tau->add_flag("--reduce", t_reduce, "reduce modulo earlier constants");
    tau->add_option("--numeric-at", t_numeric_at, "point file for evaluation");
    tau->add_option("--precision", t_precision, "decimal digits for --numeric-at");
    tau->add_option("--out", t_out, "output path (default stdout)");
    tau->add_option("--format", t_format)->check(CLI::IsMember({"structured", "markdown"}));

    // eliminate
    auto* elim = app.add_subcommand("eliminate", "run the resultant chain for a case");
    std::string e_case, e_order, e_out;
    double e_budget_s = 0;
    std::size_t e_budget_b = 0;
    elim->add_option("--case", e_case, "lambda1..lambda4")->required();
    elim->add_option("--order", e_order, "comma-separated elimination variables")->required();
    elim->add_option("--budget-seconds", e_budget_s, "wall-clock budget");
    elim->add_option("--budget-bytes", e_budget_b, "memory budget for raw resultants");
    elim->add_option("--out", e_out, "output path (default stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "multistart common zeros of tau_1..tau_k");
    std::string s_case, s_box, s_out;
    int s_k = 0;
    std::size_t s_starts = 0;
    unsigned s_precision = 60, s_seed = 1;
    solve->add_option("--case", s_case, "lambda1..lambda4")->required();
    solve->add_option("--k", s_k, "number of taus solved simultaneously");
    solve->add_option("--starts", s_starts, "multistart count");
    solve->add_option("--box", s_box, "search box LO:HI");
    solve->add_option("--precision", s_precision, "polish precision (digits)");
    solve->add_option("--seed", s_seed, "RNG seed");
    solve->add_option("--out", s_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "ODE-integration period oracle");
    std::string v_system = "z2-quintic", v_condition, v_params, v_out;
    int v_k = 2;
    double v_hmin = 0.05, v_hmax = 0.35, v_tol = 1e-12;
    verify->add_option("--system", v_system, "system file or builtin name");
    verify->add_option("--condition", v_condition, "condition name or file");
    verify->add_option("--params", v_params, "point file of parameter values");
    verify->add_option("--k", v_k, "fit order K (powers h^2..h^2K)");
    verify->add_option("--h-min", v_hmin, "smallest sampled amplitude");
    verify->add_option("--h-max", v_hmax, "largest sampled amplitude");
    verify->add_option("--tol", v_tol, "integrator tolerance");
    verify->add_option("--out", v_out, "output path (default stdout)");

    // case
    auto* cs = app.add_subcommand("case", "full per-case workflow");
    std::string c_name, c_out, c_format = "structured";
    std::size_t c_starts = 0;
    unsigned c_seed = 1, c_precision = 60;
    int c_nsym = -1, c_nnum = -1;
    bool c_elim = false;
    double c_budget_s = 0;
    cs->add_option("--name", c_name, "lambda1..lambda4 or linear")->required();
    cs->add_option("--starts", c_starts, "multistart count override");
    cs->add_option("--seed", c_seed, "RNG seed");
    cs->add_option("--symbolic-depth", c_nsym, "symbolic tau depth override");
    cs->add_option("--numeric-depth", c_nnum, "numeric tau depth override (0 disables)");
    cs->add_flag("--eliminate", c_elim, "also run the stretch-tier elimination chain");
    cs->add_option("--budget-seconds", c_budget_s, "elimination budget");
    cs->add_option("--precision", c_precision, "working precision (digits)");
    cs->add_option("--out", c_out, "output path (default stdout)");
    cs->add_option("--format", c_format)->check(CLI::IsMember({"structured", "markdown"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        if (tau->parsed())
            return run_tau(t_system, t_condition, t_maxk, t_reduce, t_numeric_at,
                           t_precision, t_out, t_format);
        if (elim->parsed())
            return run_eliminate(e_case, e_order, e_budget_s, e_budget_b, e_out);
        if (solve->parsed())
            return run_solve(s_case, s_k, s_starts, s_box, s_precision, s_seed, s_out);
        if (verify->parsed())
            return run_verify(v_system, v_condition, v_params, v_k, v_hmin, v_hmax,
                              v_tol, v_out);
        if (cs->parsed())
            return run_case_cmd(c_name, c_starts, c_seed, c_nsym, c_nnum, c_elim,
                                c_budget_s, c_out, c_format, c_precision);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
