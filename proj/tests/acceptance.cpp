// Acceptance gate: runs every primary criterion with pinned tolerances and
// prints one PASS/FAIL line per criterion. Exit status is nonzero when any
// required criterion (1-9) fails; criterion 10 is reported but advisory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "pce/pipeline.hpp"

using namespace pce;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

double elapsed() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0)
        .count();
}

void report(int criterion, bool ok, const std::string& detail, bool required = true) {
    std::printf("[%7.1fs] criterion %2d: %s%s  %s\n", elapsed(), criterion,
                ok ? "PASS" : "FAIL", required ? "" : " (advisory)", detail.c_str());
    std::fflush(stdout);
    if (!ok && required) ++g_failures;
}

nlohmann::json load_json(const std::string& name) {
    std::ifstream in(std::string(PCE_TEST_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return nlohmann::json::parse(in);
}

bool equal_upto_vars(const Poly& a, const Poly& b) {
    Poly x = a.drop_unused_vars();
    Poly y = b.drop_unused_vars();
    return x == y.with_vars(x.vars());
}

PeriodConstantSequence case_taus(const std::string& name, int n) {
    CenterConditionSet cond = builtin_condition(name);
    ComplexSystemCoefficients c =
        complexify(apply_center_condition(builtin_system("z2-quintic"), cond));
    return reduce_tau_sequence(compute_tau(c, n), cond.free_parameters);
}

bool rel_close(double got, double expect, double tol) {
    return std::abs(got - expect) <= tol * std::abs(expect);
}

// ---- criterion 1: complexification golden ----
void criterion1() {
    nlohmann::json golden = load_json("complex_coeffs_z2_quintic.json");
    ComplexSystemCoefficients c = complexify(builtin_system("z2-quintic"));
    bool ok = golden.size() == 18;
    for (const auto& [key, pj] : golden.items()) {
        auto comma = key.find(',');
        int k = std::stoi(key.substr(0, comma));
        int j = std::stoi(key.substr(comma + 1));
        const Poly* got = c.find(k, j);
        if (!got || !equal_upto_vars(*got, Poly::from_json(pj))) ok = false;
    }
    std::size_t nonzero = 0;
    for (const auto& [kj, p] : c.a)
        if (!p.is_zero()) ++nonzero;
    ok = ok && nonzero == 18;
    report(1, ok, "all 18 complexified quintic coefficients exact");
}

// ---- criterion 2: lambda1 symbolic taus, raw tau2 and certificate ----
void criterion2() {
    nlohmann::json ref = load_json("reference_taus.json");
    PeriodConstantSequence seq = case_taus("lambda1", 3);
    bool ok = true;
    for (int k = 1; k <= 3; ++k)
        ok = ok && equal_upto_vars(seq.reduced[k - 1],
                                   Poly::from_json(ref["lambda1"][std::to_string(k)]));
    ok = ok && equal_upto_vars(seq.raw[1], Poly::from_json(ref["lambda1"]["raw2"]));
    ok = ok && seq.certificates[1].multipliers.size() == 1 &&
         equal_upto_vars(seq.certificates[1].multipliers[0],
                         Poly::from_json(ref["lambda1"]["k21"]));
    report(2, ok, "lambda1 reduced tau_1..tau_3, raw tau_2 and multiplier k21 exact");
}

// ---- criterion 3: printed cross-case taus ----
void criterion3() {
    nlohmann::json ref = load_json("reference_taus.json");
    bool ok = true;
    int checked = 0;
    for (const std::string name : {"lambda2", "lambda3", "lambda4"}) {
        PeriodConstantSequence seq = case_taus(name, 3);
        for (const auto& [k, pj] : ref[name].items()) {
            int kk = std::stoi(k);
            ok = ok && equal_upto_vars(seq.reduced[kk - 1], Poly::from_json(pj));
            ++checked;
        }
    }
    report(3, ok, "printed cross-case taus exact (" + std::to_string(checked) +
                      " polynomials)");
}

// ---- criteria 4-6: numeric case reproductions ----
struct Target {
    std::vector<double> x;  // expected solve-variable values (one sign choice)
    double tau_next, det;
    double x_tol, tau_tol, det_tol;
    bool det_magnitude_only;
};

const CaseSolution* find_match(const CaseReport& rep, const Target& t) {
    for (const auto& s : rep.solutions) {
        bool near = true;
        for (std::size_t i = 0; i < t.x.size(); ++i)
            if (std::abs(to_double(s.x[i]) - t.x[i]) > t.x_tol) near = false;
        if (near) return &s;
    }
    return nullptr;
}

void criterion_numeric(int crit, const std::string& name, const Target& t,
                       const std::string& label) {
    CaseSpec spec = CaseSpec::builtin(name);
    spec.n_symbolic = 0;  // symbolic facts are criteria 2/3/7
    CaseReport rep = run_case(spec);
    const CaseSolution* s = find_match(rep, t);
    bool ok = s != nullptr;
    std::string detail = label + ": ";
    if (s) {
        double tau_next = to_double(s->tau[spec.solve_k]);
        double det = to_double(s->jacobian_det);
        if (t.det_magnitude_only) det = std::abs(det);
        bool tau_ok = rel_close(tau_next, t.tau_next, t.tau_tol);
        bool det_ok = rel_close(det, t.det, t.det_tol);
        ok = tau_ok && det_ok;
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "tau_next=%.12g (expect %.12g), det=%.12g (expect %.12g), "
                      "%ld solutions recovered",
                      tau_next, t.tau_next, det, t.det, rep.solution_count);
        detail += buf;
    } else {
        detail += "target point not recovered among " +
                  std::to_string(rep.solution_count) + " solutions";
    }
    report(crit, ok, detail);
}

void criterion4() {
    Target t;
    t.x = {-1.6657772441340260275, -4.1967363822359183641, -2.1822951200460674220};
    t.x_tol = 1e-10;
    t.tau_next = -29.9595691478782;
    t.tau_tol = 1e-6;
    t.det = -303.622391170237;
    t.det_tol = 1e-6;
    t.det_magnitude_only = false;
    criterion_numeric(4, "lambda1", t, "lambda1 gamma* with a4=0");
}

void criterion5() {
    Target t;
    t.x = {1.6844258757536, 0.0925867316174926, -2.48789382941229, 2.35593285777935};
    t.x_tol = 1e-8;
    t.tau_next = -0.009131827261973;
    t.tau_tol = 1e-4;
    t.det = 0.3614387185633691;
    t.det_tol = 1e-3;
    t.det_magnitude_only = true;
    criterion_numeric(5, "lambda2", t, "lambda2 solution point");
}

void criterion6() {
    Target t;
    t.x = {2.7283486563844, -4.60421389777377, 0.767832088732978, 0.50319135671313};
    t.x_tol = 1e-8;
    t.tau_next = -455.788157320391;
    t.tau_tol = 1e-4;
    t.det = 793811.919190024;
    t.det_tol = 1e-3;
    t.det_magnitude_only = false;
    criterion_numeric(6, "lambda3", t, "lambda3 solution point");
}

// ---- criterion 7: lambda4 exact checks ----
void criterion7() {
    CaseSpec spec = CaseSpec::builtin("lambda4");
    ComplexSystemCoefficients coeffs =
        complexify(apply_center_condition(builtin_system("z2-quintic"), spec.condition));
    PeriodConstantSequence seq =
        reduce_tau_sequence(compute_tau(coeffs, 3), spec.free_order);

    // 7a: tau_2 with tau_1 = 0 used to eliminate a3 (the reduction), then
    // restricted to a2 = a4 = 0, equals -(64/27)(1+a6^2)^2 exactly.
    Poly t2 = seq.reduced[1]
                  .eval_partial({{"a2", Gaussian(Rational(0))},
                                 {"a4", Gaussian(Rational(0))}})
                  .drop_unused_vars();
    Poly a6 = Poly::variable({"a6"}, "a6");
    Poly one6 = Poly::constant({"a6"}, Gaussian(Rational(1)));
    Poly expect2 = ((one6 + a6.pow(2)).pow(2)).scale(Gaussian(make_rational(-64, 27)));
    bool ok_a = t2 == expect2.with_vars(t2.vars());

    // 7b: the reduced tau_2, tau_3 are a3-free, so the degenerate power
    // convention gives R_1j = tau_j and R12,13 = Res(tau_2, tau_3, a6).
    Poly R = resultant(seq.reduced[1], seq.reduced[2], "a6");
    Poly R0 = R.eval_partial({{"a4", Gaussian(Rational(0))}}).drop_unused_vars();
    Poly a2 = Poly::variable({"a2"}, "a2");
    auto C = [](const char* s) {
        return Poly::constant({"a2"}, Gaussian(parse_rational(s)));
    };
    Poly big = C("2199023255552") + C("3148960642367488") * a2.pow(2) +
               C("48607541078261760") * a2.pow(4) +
               C("264426711058227200") * a2.pow(6) +
               C("692618123639590400") * a2.pow(8) +
               C("983111352623484000") * a2.pow(10) +
               C("784228248389171250") * a2.pow(12) +
               C("294029898225170625") * a2.pow(14);
    Poly printed = (C("-1") * a2.pow(6) * (C("1") + a2.pow(2)) *
                    (C("16") + C("9") * a2.pow(2)) * big)
                       .scale(Gaussian(Rational(1, Integer("1452826833750"))));
    auto q = divide_exact(R0, printed);
    bool ok_b = q.has_value() && q->is_constant() &&
                q->constant_value().re != 0 && q->constant_value().im == 0;
    std::string ratio = ok_b ? rational_to_string(q->constant_value().re) : "-";

    // 7c: Sturm count of the degree-22 restricted polynomial over R is 1.
    UniPoly u = UniPoly::from_poly(printed.drop_unused_vars().with_vars({"a2"}), "a2");
    auto roots = isolate_real_roots(u);
    bool ok_c = roots.size() == 1 && roots[0].lo <= 0 && Rational(0) <= roots[0].hi;

    report(7, ok_a && ok_b && ok_c,
           "tau2|a2=a4=0 exact: " + std::string(ok_a ? "yes" : "no") +
               "; R12,13|a4=0 ratio to reference: " + ratio +
               "; Sturm real-root count: " + std::to_string(roots.size()));
}

// ---- criterion 8: oracle cross-validation ----
void criterion8() {
    PlanarPolySystem lin = builtin_system("linear");
    OracleOptions opt;
    opt.tol = 1e-12;
    bool lin_ok = true;
    double worst = 0;
    for (double h : {0.05, 0.1, 0.15, 0.2}) {
        double err = std::abs(integrate_return_time(lin, {}, h, opt).period -
                              2 * M_PI);
        worst = std::max(worst, err);
        if (err >= 1e-10) lin_ok = false;
    }

    PlanarPolySystem sys = apply_center_condition(builtin_system("z2-quintic"),
                                                  builtin_condition("lambda1"));
    std::map<std::string, double> params;
    for (const auto& p : sys.parameters()) params[p] = 0.0;
    auto samples = sample_period_ladder(sys, params, 0.04, 0.22, 12, opt);
    auto fit = fit_period_series(samples, 3);
    double expect = 4 * M_PI;  // -pi * tau_1 with tau_1 = -4 at the origin
    double rel = std::abs(fit.coeffs[0] - expect) / expect;
    bool fit_ok = rel < 1e-4;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "p2=%.10g vs 4*pi rel %.2e; linear worst |P-2pi|=%.2e", fit.coeffs[0],
                  rel, worst);
    report(8, lin_ok && fit_ok, buf);
}

// ---- criterion 9: property suites ----
Poly random_poly(std::mt19937& rng, const std::vector<std::string>& vars,
                 int max_terms, unsigned max_exp) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<unsigned> ex(0, max_exp);
    Poly p(vars);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Expvec e(vars.size());
        for (auto& x : e) x = ex(rng);
        p.add_term(e, Gaussian(make_rational(num(rng), den(rng)),
                               make_rational(num(rng), den(rng))));
    }
    return p;
}

void criterion9() {
    bool ok = true;
    std::string detail;

    {  // 1000-case ring laws
        std::mt19937 rng(424242);
        const std::vector<std::string> vars = {"u", "v", "w"};
        for (int it = 0; it < 1000 && ok; ++it) {
            Poly a = random_poly(rng, vars, 5, 3), b = random_poly(rng, vars, 5, 3),
                 c = random_poly(rng, vars, 5, 3);
            ok = ok && a + b == b + a && a * b == b * a &&
                 (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) &&
                 a * (b + c) == a * b + a * c && (a - a).is_zero();
        }
        detail += ok ? "ring-laws:1000 " : "ring-laws:FAIL ";
    }
    {  // 200-case resultant specialization + multiplicativity
        std::mt19937 rng(777);
        const std::vector<std::string> vars = {"t", "u"};
        int done = 0;
        bool rok = true;
        while (done < 200 && rok) {
            Poly p = random_poly(rng, vars, 4, 3), q = random_poly(rng, vars, 4, 3),
                 r = random_poly(rng, vars, 3, 2);
            if (p.degree_in("t") < 1 || q.degree_in("t") < 1 || r.degree_in("t") < 1)
                continue;
            Rational u0 = make_rational((long)(rng() % 17) - 8, 3);
            std::map<std::string, Gaussian> pt{{"u", Gaussian(u0)}};
            Poly ps = p.eval_partial(pt), qs = q.eval_partial(pt);
            if (ps.degree_in("t") == p.degree_in("t") &&
                qs.degree_in("t") == q.degree_in("t")) {
                Gaussian sp = resultant(p, q, "t").eval_exact(pt);
                Poly rs = resultant(ps.drop_unused_vars().with_vars({"t"}),
                                    qs.drop_unused_vars().with_vars({"t"}), "t");
                rok = rok && sp == rs.constant_value();
            }
            Poly lhs = resultant(p * q, r, "t");
            Poly rhs = resultant(p, r, "t") * resultant(q, r, "t");
            rok = rok && equal_upto_vars(lhs, rhs);
            ++done;
        }
        ok = ok && rok;
        detail += rok ? "resultants:200 " : "resultants:FAIL ";
    }
    {  // 200-case Sturm vs sampling
        std::mt19937 rng(31337);
        std::uniform_int_distribution<int> num(-8, 8);
        std::uniform_int_distribution<int> deg(1, 6);
        int done = 0;
        bool sok = true;
        while (done < 200 && sok) {
            int d = deg(rng);
            std::vector<Rational> c(d + 1);
            for (auto& x : c) x = Rational(num(rng));
            if (c.back() == 0) c.back() = 1;
            UniPoly p = UniPoly(c).squarefree_part();
            if (p.degree() < 1) continue;
            Rational B = cauchy_root_bound(p) + 1;
            int sturm = SturmChain::build(p).count_roots(-B, B);
            // Sign-change sampling can only undercount (close root pairs fall
            // between grid points), so refine until it agrees or give up.
            int sampled = -1;
            for (long grid = 4096; grid <= (1L << 20) && sampled != sturm;
                 grid *= 16) {
                sampled = 0;
                int prev = p.sign_at(-B);
                for (long i = 1; i <= grid; ++i) {
                    Rational x = -B + (B + B) * Rational(i) / Rational(grid);
                    int s = p.sign_at(x);
                    if (s == 0) ++sampled;
                    else if (prev != 0 && s != prev) ++sampled;
                    // A zero hit consumes the sign change: reset so the next
                    // nonzero sample is not counted as a second root.
                    prev = s;
                }
            }
            sok = sok && sturm == sampled;
            ++done;
        }
        ok = ok && sok;
        detail += sok ? "sturm:200 " : "sturm:FAIL ";
    }
    {  // reality + certificates across every case
        bool rok = true;
        for (const auto& name : builtin_condition_names()) {
            // compute_tau throws on any nonzero imaginary part internally
            PeriodConstantSequence seq = case_taus(name, 3);
            for (std::size_t k = 0; k < seq.reduced.size() && rok; ++k) {
                Poly recon = seq.reduced[k];
                for (std::size_t i = 0; i < seq.certificates[k].multipliers.size(); ++i) {
                    Poly m = seq.certificates[k].multipliers[i];
                    recon = recon + (m + Poly(recon.vars())).with_vars(recon.vars()) *
                                        seq.reduced[i].with_vars(recon.vars());
                }
                rok = rok && equal_upto_vars(recon, seq.raw[k]);
            }
        }
        ok = ok && rok;
        detail += rok ? "reality+certificates:all" : "certificates:FAIL";
    }
    report(9, ok, detail);
}

// ---- criterion 10: stretch tier (advisory) ----
void criterion10() {
    std::string detail;
    bool ok = true;
    for (const auto& [name, v2, v3, last] :
         {std::tuple<std::string, std::string, std::string, std::string>{
              "lambda4", "a6", "a2", "a4"},
          {"lambda1", "a7", "a2", "a4"}}) {
        try {
            CaseSpec spec = CaseSpec::builtin(name);
            ComplexSystemCoefficients coeffs = complexify(
                apply_center_condition(builtin_system("z2-quintic"), spec.condition));
            PeriodConstantSequence seq =
                reduce_tau_sequence(compute_tau(coeffs, 4), spec.free_order);
            // reduced tau_2..tau_4 are free of the first variable: the first
            // elimination level is the degenerate power convention. Bounded
            // effort: this tier is advisory and must not stall the gate.
            EliminationBudget budget;
            budget.max_wall_ms = 900 * 1000.0;
            EliminationTrace tr = run_elimination_chain(
                {seq.reduced[1], seq.reduced[2], seq.reduced[3]}, {v2, v3}, budget);
            if (!tr.completed) {
                ok = false;
                detail += name + ": not completed (" + tr.halt_reason + "); ";
                continue;
            }
            const EliminationStep& fin = tr.steps.back();
            Poly T = tr.terminal[0];
            UniPoly u =
                UniPoly::from_poly(T.drop_unused_vars().with_vars({last}), last);
            std::size_t roots = isolate_real_roots(u).size();
            bool zero_is_root = fin.monomial[fin.raw.var_index(last)] > 0;
            bool case_ok = name == "lambda1" ? (roots == 0 && !zero_is_root)
                                             : (roots == 0 && zero_is_root);
            ok = ok && case_ok;
            detail += name + ": terminal squarefree deg " +
                      std::to_string(u.degree()) + ", real roots " +
                      std::to_string(roots) +
                      (zero_is_root ? " plus root 0" : "") + "; ";
        } catch (const std::exception& e) {
            ok = false;
            detail += name + ": not completed (" + e.what() + "); ";
        }
    }
    report(10, ok, detail, /*required=*/false);
}

}  // namespace

int main() {
    g_t0 = std::chrono::steady_clock::now();
    set_working_digits(60);
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("[%7.1fs] %s\n", elapsed(),
                g_failures == 0 ? "ACCEPTANCE: all required criteria PASS"
                                : "ACCEPTANCE: FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
