// pybind11 bindings: the main engine operations with JSON-string bridging
// for structured results (the Python wrapper decodes them into dicts).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "pce/pipeline.hpp"

namespace py = pybind11;
using namespace pce;

namespace {

ComplexSystemCoefficients make_coeffs(const std::string& system,
                                      const std::string& condition) {
    PlanarPolySystem sys = builtin_system(system);
    if (!condition.empty())
        sys = apply_center_condition(sys, builtin_condition(condition));
    return complexify(sys);
}

std::string tau_json(const std::string& system, const std::string& condition,
                     int max_k, bool reduce) {
    ComplexSystemCoefficients c = make_coeffs(system, condition);
    PeriodConstantSequence seq = compute_tau(c, max_k);
    if (reduce) {
        if (condition.empty())
            throw std::invalid_argument("reduce requires a condition");
        seq = reduce_tau_sequence(seq, builtin_condition(condition).free_parameters);
    }
    nlohmann::json j;
    j["parameters"] = c.parameters;
    j["taus"] = nlohmann::json::array();
    for (std::size_t k = 0; k < seq.raw.size(); ++k) {
        nlohmann::json t;
        t["k"] = k + 1;
        t["raw"] = seq.raw[k].to_json();
        t["raw_str"] = seq.raw[k].to_string();
        if (k < seq.reduced.size()) {
            t["reduced"] = seq.reduced[k].to_json();
            t["reduced_str"] = seq.reduced[k].to_string();
        }
        j["taus"].push_back(t);
    }
    return j.dump();
}

std::vector<double> tau_at(const std::string& system, const std::string& condition,
                           const std::map<std::string, double>& point, int max_k,
                           unsigned digits) {
    set_working_digits(digits);
    ComplexSystemCoefficients c = make_coeffs(system, condition);
    std::vector<Real> v;
    for (const auto& p : c.parameters) {
        auto it = point.find(p);
        if (it != point.end()) {
            v.push_back(Real(it->second));
            continue;
        }
        for (const auto& [kj, poly] : c.a)
            if (poly.has_var(p) && poly.degree_in(p) > 0)
                throw std::invalid_argument("point does not assign parameter " + p);
        v.push_back(Real(0));
    }
    auto taus = tau_at_point(c, v, max_k);
    std::vector<double> out;
    for (const auto& t : taus) out.push_back(to_double(t));
    return out;
}

std::string run_case_json(const std::string& name, std::size_t starts, unsigned seed,
                          unsigned digits) {
    set_working_digits(digits);
    CaseSpec spec = CaseSpec::builtin(name);
    if (starts) spec.multistart.num_starts = starts;
    spec.multistart.seed = seed;
    spec.multistart.digits = digits;
    return report_to_json(run_case(spec)).dump();
}

double period(const std::string& system, const std::string& condition,
              const std::map<std::string, double>& params, double h, double tol) {
    PlanarPolySystem sys = builtin_system(system);
    if (!condition.empty())
        sys = apply_center_condition(sys, builtin_condition(condition));
    std::map<std::string, double> full = params;
    for (const auto& p : sys.parameters()) {
        if (full.count(p)) continue;
        if (sys.xdot.degree_in(p) > 0 || sys.ydot.degree_in(p) > 0)
            throw std::invalid_argument("params does not assign parameter " + p);
        full[p] = 0.0;
    }
    OracleOptions opt;
    opt.tol = tol;
    return integrate_return_time(sys, full, h, opt).period;
}

std::string resultant_json(const std::string& p_json, const std::string& q_json,
                           const std::string& var) {
    Poly p = Poly::from_json(nlohmann::json::parse(p_json));
    Poly q = Poly::from_json(nlohmann::json::parse(q_json));
    return resultant(p, q, var).to_json().dump();
}

long real_root_count(const std::vector<std::string>& coeffs) {
    std::vector<Rational> c;
    for (const auto& s : coeffs) c.push_back(parse_rational(s));
    UniPoly p(c);
    if (p.degree() < 1) return p.is_zero() ? -1 : 0;
    return (long)isolate_real_roots(p).size();
}

}  // namespace

PYBIND11_MODULE(_pce, m) {
    m.doc() = "exact period constants of planar polynomial systems";
    m.def("builtin_systems", &builtin_system_names);
    m.def("builtin_conditions", &builtin_condition_names);
    m.def("tau_json", &tau_json, py::arg("system"), py::arg("condition") = "",
          py::arg("max_k") = 3, py::arg("reduce") = false,
          "symbolic period constants as a JSON string");
    m.def("tau_at", &tau_at, py::arg("system"), py::arg("condition"),
          py::arg("point"), py::arg("max_k") = 5, py::arg("digits") = 40,
          "numeric period constants at a parameter point");
    m.def("run_case_json", &run_case_json, py::arg("name"), py::arg("starts") = 0,
          py::arg("seed") = 1, py::arg("digits") = 60,
          "full case workflow; structured report as a JSON string");
    m.def("period", &period, py::arg("system"), py::arg("condition"),
          py::arg("params"), py::arg("h"), py::arg("tol") = 1e-12,
          "measured orbit period through (h, 0)");
    m.def("resultant_json", &resultant_json, py::arg("p"), py::arg("q"),
          py::arg("var"), "exact resultant of two serialized polynomials");
    m.def("real_root_count", &real_root_count, py::arg("coeffs"),
          "distinct real roots of a rational univariate polynomial "
          "(ascending coefficients; -1 for the zero polynomial)");
}
