#include "pce/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pce {

CaseSpec CaseSpec::builtin(const std::string& case_name) {
    CaseSpec s;
    s.name = case_name;
    if (case_name == "linear") {
        s.system = "linear";
        s.solve_k = 0;
        s.n_symbolic = 5;
        s.n_numeric = 0;
        return s;
    }
    s.condition = builtin_condition(case_name);
    s.free_order = s.condition.free_parameters;
    if (case_name == "lambda1") {
        s.pinned["a4"] = Rational(0);
        s.solve_k = 3;
        s.n_numeric = 4;
        s.multistart.num_starts = 4000;
        s.multistart.box_lo = -20;
        s.multistart.box_hi = 20;
    } else if (case_name == "lambda2" || case_name == "lambda3") {
        s.solve_k = 4;
        s.n_numeric = 5;
        s.multistart.num_starts = 60000;
        s.multistart.box_lo = -6;
        s.multistart.box_hi = 6;
    } else if (case_name == "lambda4") {
        s.solve_k = 4;
        s.n_numeric = 5;
        s.multistart.num_starts = 20000;
        s.multistart.box_lo = -10;
        s.multistart.box_hi = 10;
    } else {
        throw std::invalid_argument("unknown builtin case: " + case_name);
    }
    return s;
}

void CaseSpec::validate() const {
    if (!condition.substitutions.empty()) {
        condition.validate();
        auto a = free_order, b = condition.free_parameters;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw std::invalid_argument(
                "free-parameter order must be a permutation of the condition's "
                "free parameters");
    }
    for (const auto& [p, v] : pinned)
        if (std::find(free_order.begin(), free_order.end(), p) == free_order.end())
            throw std::invalid_argument("pinned parameter " + p + " is not free");
    if (solve_k > 0 && free_order.size() - pinned.size() != solve_k)
        throw std::invalid_argument(
            "solve_k must equal the number of unpinned free parameters");
}

CaseReport run_case(const CaseSpec& spec) {
    spec.validate();
    auto t0 = std::chrono::steady_clock::now();
    CaseReport rep;
    rep.name = spec.name;
    rep.free_order = spec.free_order;

    PlanarPolySystem sys = builtin_system(spec.system);
    if (!spec.condition.substitutions.empty())
        sys = apply_center_condition(sys, spec.condition);
    ComplexSystemCoefficients coeffs = complexify(sys);

    // Symbolic tier.
    if (spec.n_symbolic > 0) {
        PeriodConstantSequence raw = compute_tau(coeffs, spec.n_symbolic);
        rep.taus = spec.free_order.empty()
                       ? raw
                       : reduce_tau_sequence(raw, spec.free_order);
    }

    bool all_zero = true;
    for (const auto& p : rep.taus.raw)
        if (!p.is_zero()) all_zero = false;
    if (all_zero && spec.n_symbolic > 0) {
        rep.verdicts.push_back({"all tau_k vanish identically for k <= " +
                                    std::to_string(spec.n_symbolic) +
                                    ": isochronous to this depth",
                                "proof", "symbolic tau sequence"});
    }

    // Numeric tier: common zeros of tau_1..tau_solve_k over the unpinned
    // parameters, then tau and Jacobian data at each recovered point.
    if (spec.solve_k > 0) {
        for (const auto& p : spec.free_order)
            if (!spec.pinned.count(p)) rep.solve_vars.push_back(p);
        const std::size_t dim = rep.solve_vars.size();

        int depth = std::max<int>(spec.n_numeric, (int)spec.solve_k + 1);
        CompiledTauMap ctm(coeffs, depth);
        // Shallower map for the hot search phase: only tau_1..tau_solve_k.
        CompiledTauMap ctm_search(coeffs, (int)spec.solve_k);
        // Slot map: coeffs.parameters -> pinned constant or solve index.
        std::vector<double> fixed_d(ctm.parameters().size(), 0.0);
        std::vector<Rational> fixed_q(ctm.parameters().size(), Rational(0));
        std::vector<long> slot(ctm.parameters().size(), -1);
        for (std::size_t i = 0; i < ctm.parameters().size(); ++i) {
            const std::string& p = ctm.parameters()[i];
            auto it = spec.pinned.find(p);
            if (it != spec.pinned.end()) {
                fixed_q[i] = it->second;
                fixed_d[i] = it->second.get_d();
                continue;
            }
            auto pos = std::find(rep.solve_vars.begin(), rep.solve_vars.end(), p);
            if (pos == rep.solve_vars.end()) {
                // Substituted-away parameters can linger in variable lists
                // with no occurrences; anything actually used must be mapped.
                for (const auto& [kj, poly] : coeffs.a)
                    if (poly.has_var(p) && poly.degree_in(p) > 0)
                        throw std::invalid_argument(
                            "parameter " + p + " is neither pinned nor in the free order");
                continue;
            }
            slot[i] = pos - rep.solve_vars.begin();
        }
        auto assemble_d = [&](const std::vector<double>& x) {
            std::vector<double> full = fixed_d;
            for (std::size_t i = 0; i < slot.size(); ++i)
                if (slot[i] >= 0) full[i] = x[(std::size_t)slot[i]];
            return full;
        };
        auto assemble_mp = [&](const std::vector<Real>& x) {
            std::vector<Real> full;
            full.reserve(slot.size());
            for (std::size_t i = 0; i < slot.size(); ++i)
                full.push_back(slot[i] >= 0 ? x[(std::size_t)slot[i]]
                                            : real_from_rational(fixed_q[i]));
            return full;
        };
        VecFnD f = [&](const std::vector<double>& x) {
            return ctm_search.eval(assemble_d(x));
        };
        VecFnMp fmp = [&](const std::vector<Real>& x) {
            return ctm_search.eval_mp(assemble_mp(x));
        };
        auto sols = multistart_solve(dim, f, fmp, spec.multistart);
        rep.solution_count = (long)sols.size();
        for (auto& sp : sols) {
            CaseSolution cs;
            cs.x = sp.x;
            cs.jacobian_det = sp.jacobian_det;
            cs.residual = sp.residual;
            cs.tau = ctm.eval_mp(assemble_mp(sp.x));
            rep.solutions.push_back(std::move(cs));
        }

        std::ostringstream ev;
        ev << "multistart: " << spec.multistart.num_starts << " starts in ["
           << spec.multistart.box_lo << ", " << spec.multistart.box_hi << "]^" << dim
           << ", seed " << spec.multistart.seed;
        rep.verdicts.push_back(
            {"tau_1..tau_" + std::to_string(spec.solve_k) +
                 " vanish simultaneously at " + std::to_string(rep.solution_count) +
                 " recovered parameter point(s); recovered count is evidence, "
                 "not a certified census",
             "numeric-evidence", ev.str()});
        if (rep.solution_count > 0) {
            bool next_nonzero = true, det_nonzero = true;
            for (const auto& cs : rep.solutions) {
                if ((int)cs.tau.size() > (int)spec.solve_k) {
                    Real t = cs.tau[spec.solve_k];
                    if (!(t > Real(1e-30) || t < Real(-1e-30))) next_nonzero = false;
                }
                Real d = cs.jacobian_det;
                if (!(d > Real(1e-30) || d < Real(-1e-30))) det_nonzero = false;
            }
            if (next_nonzero && det_nonzero)
                rep.verdicts.push_back(
                    {"at every recovered point tau_" +
                         std::to_string(spec.solve_k + 1) +
                         " != 0 and the Jacobian of (tau_1..tau_" +
                         std::to_string(spec.solve_k) +
                         ") is nonsingular: weak bi-center of order " +
                         std::to_string(spec.solve_k) + " there, and " +
                         std::to_string(spec.solve_k) +
                         " local critical periods can bifurcate under perturbation",
                     "numeric-evidence", "solution table of this report"});
        } else {
            rep.verdicts.push_back(
                {"no common real zero of tau_1..tau_" + std::to_string(spec.solve_k) +
                     " found inside the search box",
                 "numeric-evidence", ev.str()});
        }
    }

    // Stretch tier: symbolic elimination chain over the reduced sequence.
    if (spec.run_elimination && !rep.taus.reduced.empty() &&
        spec.free_order.size() >= 2) {
        rep.elimination_attempted = true;
        std::vector<std::string> order(spec.free_order.begin(),
                                       spec.free_order.end() - 1);
        order.resize(std::min(order.size(), rep.taus.reduced.size() - 1));
        rep.trace = run_elimination_chain(rep.taus.reduced, order, spec.budget);
        if (rep.trace.completed && !rep.trace.terminal.empty()) {
            const std::string& last = spec.free_order[order.size()];
            Poly term = rep.trace.terminal.front().drop_unused_vars();
            if (term.is_constant() || !term.has_var(last)) {
                rep.notes += "elimination terminal degenerate; ";
            } else {
                UniPoly u = UniPoly::from_poly(term.with_vars({last}), last);
                rep.terminal_real_roots =
                    u.degree() <= 0 ? 0 : (long)isolate_real_roots(u).size();
                rep.verdicts.push_back(
                    {"elimination terminal in " + last + " has exactly " +
                         std::to_string(rep.terminal_real_roots) +
                         " distinct real root(s) by Sturm count",
                     "symbolic+isolation", "elimination trace of this report"});
            }
        } else if (!rep.trace.completed) {
            rep.notes += "elimination halted: " + rep.trace.halt_reason + "; ";
        }
    }

    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

// ---------- file formats ----------

namespace {

Gaussian gaussian_from_json(const nlohmann::json& t, const std::string& where) {
    Gaussian g;
    try {
        g.re = parse_rational(t.at("re").get<std::string>());
        g.im = t.contains("im") ? parse_rational(t.at("im").get<std::string>())
                                : Rational(0);
    } catch (const std::exception& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
    return g;
}

Poly poly_from_terms(const nlohmann::json& terms, const std::vector<std::string>& vars,
                     const std::string& where) {
    if (!terms.is_array())
        throw std::invalid_argument(where + ": expected an array of terms");
    Poly p(vars);
    std::size_t idx = 0;
    for (const auto& t : terms) {
        std::string loc = where + ", term " + std::to_string(idx++);
        if (!t.contains("exponents"))
            throw std::invalid_argument(loc + ": missing exponents");
        Expvec e = t.at("exponents").get<Expvec>();
        if (e.size() != vars.size())
            throw std::invalid_argument(loc + ": exponent vector length " +
                                        std::to_string(e.size()) + " != " +
                                        std::to_string(vars.size()) + " variables");
        p.add_term(e, gaussian_from_json(t, loc));
    }
    return p;
}

nlohmann::json poly_terms_json(const Poly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        nlohmann::json t;
        t["exponents"] = it->first;
        t["re"] = rational_to_string(it->second.re);
        t["im"] = rational_to_string(it->second.im);
        arr.push_back(t);
    }
    return arr;
}

}  // namespace

nlohmann::json system_to_json(const PlanarPolySystem& s) {
    nlohmann::json j;
    j["state_vars"] = {"x", "y"};
    j["parameters"] = s.parameters();
    j["xdot"] = poly_terms_json(s.xdot);
    j["ydot"] = poly_terms_json(s.ydot);
    return j;
}

PlanarPolySystem system_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("system file: expected an object");
    auto sv = j.at("state_vars").get<std::vector<std::string>>();
    if (sv != std::vector<std::string>{"x", "y"})
        throw std::invalid_argument("system file: state_vars must be [\"x\", \"y\"]");
    auto params = j.at("parameters").get<std::vector<std::string>>();
    std::vector<std::string> vars = {"x", "y"};
    for (const auto& p : params) {
        if (p == "x" || p == "y")
            throw std::invalid_argument("system file: parameter shadows a state variable");
        vars.push_back(p);
    }
    PlanarPolySystem s;
    s.xdot = poly_from_terms(j.at("xdot"), vars, "xdot");
    s.ydot = poly_from_terms(j.at("ydot"), vars, "ydot");
    for (const Poly* comp : {&s.xdot, &s.ydot})
        for (const auto& [e, g] : comp->terms())
            if (g.im != 0)
                throw std::invalid_argument(
                    "system file: coefficients must be purely real");
    return s;
}

PlanarPolySystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open system file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("system file parse error: ") + e.what());
    }
    return system_from_json(j);
}

void save_system(const PlanarPolySystem& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write system file: " + path);
    out << system_to_json(s).dump(2) << "\n";
}

CenterConditionSet condition_from_json(const nlohmann::json& j) {
    CenterConditionSet c;
    c.name = j.value("name", "user-condition");
    c.free_parameters = j.at("free_parameters").get<std::vector<std::string>>();
    for (const auto& [param, terms] : j.at("substitutions").items())
        c.substitutions[param] =
            poly_from_terms(terms, c.free_parameters, "substitution for " + param);
    c.validate();
    return c;
}

CenterConditionSet load_condition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open condition file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("condition file parse error: ") +
                                    e.what());
    }
    return condition_from_json(j);
}

// ---------- reports ----------

namespace {
constexpr unsigned kReportDigits = 40;

std::string fmt(const Real& x) { return real_to_string(x, kReportDigits); }
}  // namespace

nlohmann::json report_to_json(const CaseReport& r) {
    nlohmann::json j;
    j["schema"] = "pce-case-report/1";
    j["name"] = r.name;
    j["free_order"] = r.free_order;
    j["solve_vars"] = r.solve_vars;

    nlohmann::json taus = nlohmann::json::array();
    for (std::size_t k = 0; k < r.taus.raw.size(); ++k) {
        nlohmann::json t;
        t["k"] = k + 1;
        t["raw"] = r.taus.raw[k].to_json();
        if (k < r.taus.reduced.size()) {
            t["reduced"] = r.taus.reduced[k].to_json();
            nlohmann::json cert;
            cert["s"] = rational_to_string(r.taus.certificates[k].s);
            cert["multipliers"] = nlohmann::json::array();
            for (const auto& m : r.taus.certificates[k].multipliers)
                cert["multipliers"].push_back(m.to_json());
            t["certificate"] = cert;
        }
        taus.push_back(t);
    }
    j["taus"] = taus;

    j["solution_count"] = r.solution_count;
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& s : r.solutions) {
        nlohmann::json e;
        e["x"] = nlohmann::json::array();
        for (const auto& v : s.x) e["x"].push_back(fmt(v));
        e["tau"] = nlohmann::json::array();
        for (const auto& v : s.tau) e["tau"].push_back(fmt(v));
        e["jacobian_det"] = fmt(s.jacobian_det);
        e["residual"] = nlohmann::json::array();
        for (const auto& v : s.residual) e["residual"].push_back(fmt(v));
        sols.push_back(e);
    }
    j["solutions"] = sols;

    if (r.elimination_attempted) {
        j["elimination"] = r.trace.to_json();
        j["terminal_real_roots"] = r.terminal_real_roots;
    }

    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : r.verdicts)
        vs.push_back({{"claim", v.claim}, {"tier", v.tier}, {"evidence", v.evidence}});
    j["verdicts"] = vs;
    j["notes"] = r.notes;
    j["timings"] = {{"wall_ms", r.wall_ms}};
    return j;
}

std::string emit_report(const CaseReport& r, const std::string& format) {
    if (format == "structured") return report_to_json(r).dump(2) + "\n";
    if (format != "markdown")
        throw std::invalid_argument("unknown report format: " + format);

    std::ostringstream os;
    os << "# Case report: " << r.name << "\n\n";
    if (!r.free_order.empty()) {
        os << "Free parameters (reduction order): ";
        for (std::size_t i = 0; i < r.free_order.size(); ++i)
            os << (i ? ", " : "") << r.free_order[i];
        os << "\n\n";
    }
    if (!r.taus.raw.empty()) {
        os << "## Period constants\n\n";
        for (std::size_t k = 0; k < r.taus.raw.size(); ++k) {
            os << "- tau_" << k + 1 << " (raw): `" << r.taus.raw[k].to_string()
               << "`\n";
            if (k < r.taus.reduced.size())
                os << "  - reduced: `" << r.taus.reduced[k].to_string() << "`\n";
        }
        os << "\n";
    }
    if (r.solution_count >= 0) {
        os << "## Common zeros (multistart evidence)\n\n";
        os << "Recovered " << r.solution_count << " solution point(s) over (";
        for (std::size_t i = 0; i < r.solve_vars.size(); ++i)
            os << (i ? ", " : "") << r.solve_vars[i];
        os << ").\n\n";
        for (const auto& s : r.solutions) {
            os << "- x = (";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                os << (i ? ", " : "") << fmt(s.x[i]);
            os << ")\n  tau = (";
            for (std::size_t i = 0; i < s.tau.size(); ++i)
                os << (i ? ", " : "") << fmt(s.tau[i]);
            os << ")\n  det J = " << fmt(s.jacobian_det) << "\n";
        }
        os << "\n";
    }
    if (r.elimination_attempted) {
        os << "## Elimination\n\n";
        os << (r.trace.completed ? "Chain completed.\n" : "Chain halted: " +
                                                              r.trace.halt_reason + "\n");
        if (r.terminal_real_roots >= 0)
            os << "Terminal real-root count (Sturm): " << r.terminal_real_roots
               << "\n";
        os << "\n";
    }
    os << "## Verdicts\n\n";
    for (const auto& v : r.verdicts)
        os << "- [" << v.tier << "] " << v.claim << " (evidence: " << v.evidence
           << ")\n";
    if (!r.notes.empty()) os << "\nNotes: " << r.notes << "\n";
    os << "\nWall time: " << r.wall_ms << " ms\n";
    return os.str();
}

}  // namespace pce
