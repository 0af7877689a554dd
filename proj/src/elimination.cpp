#include "pce/elimination.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pce {

namespace {

// Wall deadline observed inside the PRS loops, so a single oversized
// resultant cannot overrun the chain budget before the between-step checks.
struct DeadlineExceeded {};

thread_local std::chrono::steady_clock::time_point g_deadline{};

void check_deadline() {
    if (g_deadline != std::chrono::steady_clock::time_point{} &&
        std::chrono::steady_clock::now() > g_deadline)
        throw DeadlineExceeded{};
}

struct DeadlineGuard {
    explicit DeadlineGuard(double ms) {
        if (ms > 0)
            g_deadline = std::chrono::steady_clock::now() +
                         std::chrono::milliseconds((long long)ms);
    }
    ~DeadlineGuard() { g_deadline = {}; }
};

// View of a polynomial as ascending coefficients in one eliminated variable;
// all PRS arithmetic happens on these views.
using VP = std::vector<Poly>;

void trim(VP& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

long vdeg(const VP& v) { return (long)v.size() - 1; }

VP scale_vp(const VP& v, const Poly& s) {
    VP out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(c * s);
    trim(out);
    return out;
}

VP divexact_vp(const VP& v, const Poly& d) {
    VP out;
    out.reserve(v.size());
    for (const auto& c : v) {
        if (c.is_zero()) {
            out.push_back(c);
            continue;
        }
        auto q = divide_exact(c, d);
        if (!q) throw std::logic_error("subresultant PRS division was not exact");
        out.push_back(std::move(*q));
    }
    trim(out);
    return out;
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B.
VP prem(VP A, const VP& B) {
    const Poly& lb = B.back();
    long e = vdeg(A) - vdeg(B) + 1;
    while (!A.empty() && vdeg(A) >= vdeg(B)) {
        check_deadline();
        Poly la = A.back();
        std::size_t shift = (std::size_t)(vdeg(A) - vdeg(B));
        VP next((std::size_t)vdeg(A), Poly(la.vars()));
        for (std::size_t i = 0; i + 1 < A.size(); ++i) {
            next[i] = lb * A[i];
            if (i >= shift) next[i] = next[i] - la * B[i - shift];
        }
        trim(next);
        A = std::move(next);
        --e;
    }
    if (e > 0) A = scale_vp(A, lb.pow((unsigned)e));
    return A;
}

// Both polynomials promoted to one shared, identically ordered variable set.
std::pair<Poly, Poly> promote2(const Poly& p, const Poly& q) {
    Poly pp = p + Poly(q.vars());
    Poly qq = (q + Poly(p.vars())).with_vars(pp.vars());
    return {pp, qq};
}

Poly one_like(const Poly& p) { return Poly::constant(p.vars(), Gaussian(1)); }

// Subresultant h-update: h <- g^delta / h^(delta-1), exact in the ring.
Poly update_h(const Poly& h, const Poly& g, long delta) {
    if (delta == 0) return h;
    if (delta == 1) return g;
    auto q = divide_exact(g.pow((unsigned)delta), h.pow((unsigned)(delta - 1)));
    if (!q) throw std::logic_error("subresultant h-update division was not exact");
    return *q;
}

// Last nonzero element of the subresultant PRS; degree-positive gcd witness.
VP prs_last(VP A, VP B) {
    if (vdeg(A) < vdeg(B)) std::swap(A, B);
    Poly g = one_like(A.back()), h = g;
    while (true) {
        check_deadline();
        long delta = vdeg(A) - vdeg(B);
        VP R = prem(A, B);
        A = std::move(B);
        if (R.empty()) return A;
        B = divexact_vp(R, g * h.pow((unsigned)delta));
        g = A.back();
        h = update_h(h, g, delta);
        if (vdeg(B) == 0) return B;
    }
}

}  // namespace

Poly resultant(const Poly& p0, const Poly& q0, const std::string& var) {
    auto [p, q] = promote2(p0, q0);
    VP A = p.coeffs_in(var), B = q.coeffs_in(var);
    if (vdeg(A) <= 0 || vdeg(B) <= 0)
        throw std::invalid_argument("resultant inputs must have positive degree in " + var);
    int s = 1;
    if (vdeg(A) < vdeg(B)) {
        if ((vdeg(A) & 1) && (vdeg(B) & 1)) s = -s;
        std::swap(A, B);
    }
    Poly g = one_like(A.back()), h = g;
    while (true) {
        long delta = vdeg(A) - vdeg(B);
        if ((vdeg(A) & 1) && (vdeg(B) & 1)) s = -s;
        VP R = prem(A, B);
        A = std::move(B);
        if (R.empty()) return Poly(p.vars());  // positive-degree common factor
        B = divexact_vp(R, g * h.pow((unsigned)delta));
        g = A.back();
        h = update_h(h, g, delta);
        if (vdeg(B) == 0) break;
    }
    // res = lc(B)^deg(A) / h^(deg(A)-1), with the accumulated swap sign.
    long dA = vdeg(A);
    Poly num = B.front().pow((unsigned)dA);
    Poly res;
    if (dA <= 1) {
        res = num;
    } else {
        auto q = divide_exact(num, h.pow((unsigned)(dA - 1)));
        if (!q) throw std::logic_error("subresultant final division was not exact");
        res = *q;
    }
    if (s < 0) res = -res;
    return res;
}

Poly resultant_bareiss(const Poly& p0, const Poly& q0, const std::string& var) {
    auto [p, q] = promote2(p0, q0);
    VP a = p.coeffs_in(var), b = q.coeffs_in(var);
    long m = vdeg(a), n = vdeg(b);
    if (m <= 0 || n <= 0)
        throw std::invalid_argument("resultant inputs must have positive degree in " + var);
    std::size_t N = (std::size_t)(m + n);
    Poly zero(p.vars());
    std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N, zero));
    // Sylvester matrix: n rows of p's coefficients, m rows of q's, descending.
    for (long r = 0; r < n; ++r)
        for (long k = 0; k <= m; ++k) M[(std::size_t)r][(std::size_t)(r + k)] = a[(std::size_t)(m - k)];
    for (long r = 0; r < m; ++r)
        for (long k = 0; k <= n; ++k) M[(std::size_t)(n + r)][(std::size_t)(r + k)] = b[(std::size_t)(n - k)];

    int sign = 1;
    Poly prev = one_like(zero);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < N && M[piv][k].is_zero()) ++piv;
            if (piv == N) return zero;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < N; ++i)
            for (std::size_t j = k + 1; j < N; ++j) {
                Poly t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                if (k == 0) {
                    M[i][j] = std::move(t);
                } else {
                    auto qd = divide_exact(t, prev);
                    if (!qd) throw std::logic_error("Bareiss division was not exact");
                    M[i][j] = std::move(*qd);
                }
            }
        prev = M[k][k];
    }
    Poly det = M[N - 1][N - 1];
    return sign < 0 ? -det : det;
}

Poly gcd_poly(const Poly& a0, const Poly& b0) {
    Poly a = a0.drop_unused_vars(), b = b0.drop_unused_vars();
    if (a.is_zero()) return b.is_zero() ? b : b.normalize().primitive;
    if (b.is_zero()) return a.normalize().primitive;
    if (a.is_constant() || b.is_constant())
        return Poly::constant({}, Gaussian(1));  // nonzero rationals are units

    auto [pa, pb] = promote2(a, b);
    const std::string var = pa.vars().front();

    auto content_in = [&](const Poly& p) {
        Poly c(std::vector<std::string>{});
        for (const auto& coeff : p.coeffs_in(var)) c = gcd_poly(c, coeff);
        return c;
    };
    auto primitive_in = [&](const Poly& p, const Poly& cont) {
        auto q = divide_exact(p, cont);
        if (!q) throw std::logic_error("content division was not exact");
        return *q;
    };

    long da = pa.degree_in(var), db = pb.degree_in(var);
    if (da == 0 || db == 0) {
        // var is missing from one side: gcd lives in the other's content.
        const Poly& flat = da == 0 ? pa : pb;
        const Poly& tall = da == 0 ? pb : pa;
        return gcd_poly(flat, content_in(tall));
    }

    Poly ca = content_in(pa), cb = content_in(pb);
    VP last = prs_last(primitive_in(pa, ca).coeffs_in(var),
                       primitive_in(pb, cb).coeffs_in(var));
    Poly cg = gcd_poly(ca, cb);
    if (vdeg(last) == 0) return cg.drop_unused_vars().normalize().primitive;
    Poly pp = primitive_in(Poly::assemble(last, var), content_in(Poly::assemble(last, var)));
    return (cg * pp).drop_unused_vars().normalize().primitive;
}

SquarefreeResult squarefree_and_content(const Poly& p, const std::string& var) {
    if (p.is_zero())
        throw std::invalid_argument("squarefree_and_content of zero polynomial");
    auto norm = p.normalize();
    SquarefreeResult out;
    out.content = norm.content;
    // Monomial factor: componentwise minimum exponent over the support.
    const auto& terms = norm.primitive.terms();
    Expvec mins = terms.begin()->first;
    for (const auto& [e, c] : terms)
        for (std::size_t i = 0; i < mins.size(); ++i) mins[i] = std::min(mins[i], e[i]);
    out.monomial = mins;
    Poly rest(norm.primitive.vars());
    for (const auto& [e, c] : terms) {
        Expvec ne = e;
        for (std::size_t i = 0; i < ne.size(); ++i) ne[i] -= mins[i];
        rest.add_term(ne, c);
    }
    if (rest.degree_in(var) <= 0) {
        out.squarefree = rest;
        return out;
    }
    Poly g = gcd_poly(rest, rest.diff(var));
    if (g.is_constant() || g.drop_unused_vars().is_constant()) {
        out.squarefree = rest;
    } else {
        auto q = divide_exact(rest, g + Poly(rest.vars()));
        if (!q) throw std::logic_error("squarefree division was not exact");
        out.squarefree = q->normalize().primitive;
    }
    return out;
}

namespace {

std::size_t max_coeff_bits(const Poly& p) {
    std::size_t best = 0;
    auto feed = [&](const Rational& r) {
        best = std::max(best, mpz_sizeinbase(r.get_num().get_mpz_t(), 2));
        best = std::max(best, mpz_sizeinbase(r.get_den().get_mpz_t(), 2));
    };
    for (const auto& [e, c] : p.terms()) {
        feed(c.re);
        feed(c.im);
    }
    return best;
}

}  // namespace

EliminationTrace run_elimination_chain(const std::vector<Poly>& polys,
                                       const std::vector<std::string>& order,
                                       const EliminationBudget& budget) {
    EliminationTrace trace;
    trace.order = order;
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    std::vector<Poly> level = polys;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < polys.size(); ++i) ids.push_back("p" + std::to_string(i + 1));

    for (std::size_t li = 0; li < order.size(); ++li) {
        const std::string& var = order[li];
        if (level.size() < 2) {
            trace.halt_reason = "insufficient polynomials to eliminate " + var;
            return trace;
        }
        std::vector<Poly> next;
        std::vector<std::string> next_ids;
        for (std::size_t j = 1; j < level.size(); ++j) {
            EliminationStep step;
            step.lhs = ids[0];
            step.rhs = ids[j];
            step.var = var;
            step.output_id = "res(" + ids[0] + "," + ids[j] + ";" + var + ")";
            auto s0 = std::chrono::steady_clock::now();
            long dl = level[0].has_var(var) ? level[0].degree_in(var) : 0;
            long dr = level[j].has_var(var) ? level[j].degree_in(var) : 0;
            double left_ms =
                budget.max_wall_ms > 0 ? budget.max_wall_ms - elapsed_ms() : 0;
            if (budget.max_wall_ms > 0 && left_ms <= 0) {
                trace.steps.push_back(std::move(step));
                trace.halt_reason = "budget exceeded (wall time)";
                return trace;
            }
            SquarefreeResult sf;
            // The deadline is observed inside the PRS loops: both the raw
            // resultant and the gcd work of the squarefree split can dwarf
            // the between-step checks on large inputs.
            try {
                DeadlineGuard guard(left_ms);
                if (dl > 0 && dr > 0) {
                    step.raw = resultant(level[0], level[j], var);
                } else if (dl == 0 && dr == 0) {
                    trace.steps.push_back(step);
                    trace.halt_reason = "neither input involves " + var;
                    return trace;
                } else {
                    // Power convention for a degenerate Sylvester block.
                    step.degenerate = true;
                    const Poly& base = dl == 0 ? level[0] : level[j];
                    long d = dl == 0 ? dr : dl;
                    step.raw = base.pow((unsigned)d);
                }
                step.wall_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - s0)
                                   .count();
                step.raw_terms = step.raw.terms().size();
                step.max_coeff_bits = max_coeff_bits(step.raw);
                if (step.raw.is_zero()) {
                    trace.steps.push_back(step);
                    trace.halt_reason = "common factor detected eliminating " + var;
                    return trace;
                }
                sf = squarefree_and_content(step.raw, var);
            } catch (const DeadlineExceeded&) {
                trace.steps.push_back(std::move(step));
                trace.halt_reason = "budget exceeded (wall time)";
                return trace;
            }
            step.content = sf.content;
            step.monomial = sf.monomial;
            step.output = sf.squarefree.drop_unused_vars();
            next.push_back(step.output);
            next_ids.push_back(step.output_id);
            trace.steps.push_back(std::move(step));
            if (budget.max_wall_ms > 0 && elapsed_ms() > budget.max_wall_ms) {
                trace.halt_reason = "budget exceeded (wall time)";
                return trace;
            }
            if (budget.max_terms > 0 && trace.steps.back().raw_terms > budget.max_terms) {
                trace.halt_reason = "budget exceeded (term count)";
                return trace;
            }
        }
        level = std::move(next);
        ids = std::move(next_ids);
    }
    trace.terminal = level;
    trace.completed = true;
    return trace;
}

nlohmann::json EliminationStep::to_json() const {
    nlohmann::json j;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["var"] = var;
    j["output_id"] = output_id;
    j["raw"] = raw.to_json();
    j["content"] = rational_to_string(content);
    j["monomial"] = monomial;
    j["output"] = output.to_json();
    j["degenerate"] = degenerate;
    j["wall_ms"] = wall_ms;
    j["raw_terms"] = raw_terms;
    j["max_coeff_bits"] = max_coeff_bits;
    return j;
}

nlohmann::json EliminationTrace::to_json() const {
    nlohmann::json j;
    j["order"] = order;
    j["completed"] = completed;
    j["halt_reason"] = halt_reason;
    j["steps"] = nlohmann::json::array();
    for (const auto& s : steps) j["steps"].push_back(s.to_json());
    j["terminal"] = nlohmann::json::array();
    for (const auto& t : terminal) j["terminal"].push_back(t.to_json());
    return j;
}

}  // namespace pce
