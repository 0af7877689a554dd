#include "pce/realroots.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pce {

namespace {

// Dense LU with partial pivoting; returns false on (numerical) singularity.
template <class T>
bool lu_solve(std::vector<std::vector<T>> A, std::vector<T> b, std::vector<T>& out) {
    const std::size_t n = A.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        T best = A[k][k] < T(0) ? T(-A[k][k]) : A[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            T mag = A[i][k] < T(0) ? T(-A[i][k]) : A[i][k];
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (!(best > T(0))) return false;
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            T m = A[i][k] / A[k][k];
            for (std::size_t j = k; j < n; ++j) A[i][j] = A[i][j] - m * A[k][j];
            b[i] = b[i] - m * b[k];
        }
    }
    out.assign(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s = s - A[i][j] * out[j];
        out[i] = s / A[i][i];
    }
    return true;
}

template <class T>
T lu_det(std::vector<std::vector<T>> A) {
    const std::size_t n = A.size();
    T det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        T best = A[k][k] < T(0) ? T(-A[k][k]) : A[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            T mag = A[i][k] < T(0) ? T(-A[i][k]) : A[i][k];
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (!(best > T(0))) return T(0);
        if (piv != k) {
            std::swap(A[k], A[piv]);
            det = -det;
        }
        det = det * A[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            T m = A[i][k] / A[k][k];
            for (std::size_t j = k; j < n; ++j) A[i][j] = A[i][j] - m * A[k][j];
        }
    }
    return det;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Real inf_norm_mp(const std::vector<Real>& v) {
    Real m(0);
    for (const auto& x : v) {
        Real a = x < 0 ? Real(-x) : x;
        if (a > m) m = a;
    }
    return m;
}

// One double-precision damped Newton run; true when converged inside the box
// blow-up limit. Overdetermined systems use Gauss-Newton normal equations.
bool newton_d(const VecFnD& f, std::size_t dim, std::vector<double>& x,
              const MultistartOptions& opt) {
    std::vector<double> fx = f(x);
    const std::size_t m = fx.size();
    std::vector<double> history;  // residual norms, for stagnation bailout
    for (int it = 0; it < opt.max_iter; ++it) {
        if (!std::all_of(fx.begin(), fx.end(), [](double v) { return std::isfinite(v); }))
            return false;
        double norm = inf_norm(fx);
        if (norm < opt.tol) return inf_norm(x) < opt.max_coord;
        if (inf_norm(x) > 10 * opt.max_coord) return false;
        // Damped steps only guarantee monotone decrease; a start that has not
        // at least halved its residual over the last 15 iterations is creeping
        // and will not reach tol within budget.
        history.push_back(norm);
        if (it >= 15 && norm > 0.5 * history[it - 15]) return false;
        // Forward-difference Jacobian.
        std::vector<std::vector<double>> J(m, std::vector<double>(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            std::vector<double> xp = x;
            xp[j] += h;
            std::vector<double> fp = f(xp);
            for (std::size_t i = 0; i < m; ++i) J[i][j] = (fp[i] - fx[i]) / h;
        }
        std::vector<double> dx;
        if (m == dim) {
            if (!lu_solve(J, fx, dx)) return false;
        } else {
            // Normal equations J^T J dx = J^T f.
            std::vector<std::vector<double>> A(dim, std::vector<double>(dim, 0.0));
            std::vector<double> b(dim, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < dim; ++j) {
                    b[j] += J[i][j] * fx[i];
                    for (std::size_t k = 0; k < dim; ++k) A[j][k] += J[i][j] * J[i][k];
                }
            if (!lu_solve(A, b, dx)) return false;
        }
        double lam = 1.0;
        double base = norm;
        bool stepped = false;
        for (int half = 0; half < 12; ++half) {
            std::vector<double> xn(dim);
            for (std::size_t j = 0; j < dim; ++j) xn[j] = x[j] - lam * dx[j];
            std::vector<double> fn = f(xn);
            if (std::all_of(fn.begin(), fn.end(), [](double v) { return std::isfinite(v); }) &&
                inf_norm(fn) < base) {
                x = std::move(xn);
                fx = std::move(fn);
                stepped = true;
                break;
            }
            lam *= 0.5;
        }
        if (!stepped) return false;
    }
    return inf_norm(fx) < opt.tol && inf_norm(x) < opt.max_coord;
}

// High-precision square-system Newton polish with central-difference
// Jacobian; also returns the final Jacobian for the determinant.
bool polish_mp(const VecFnMp& f, std::vector<Real>& x, const MultistartOptions& opt,
               std::vector<std::vector<Real>>* jac_out) {
    const std::size_t n = x.size();
    Real h = 1;
    for (unsigned i = 0; i < opt.digits / 2; ++i) h /= 10;
    Real target = 1;
    for (unsigned i = 0; i + 15 < opt.digits; ++i) target /= 10;
    std::vector<std::vector<Real>> J(n, std::vector<Real>(n, Real(0)));
    for (int it = 0; it < 80; ++it) {
        std::vector<Real> fx = f(x);
        if (fx.size() != n)
            throw std::invalid_argument("high-precision polish needs a square system");
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Real> xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            std::vector<Real> fp = f(xp), fm = f(xm);
            for (std::size_t i = 0; i < n; ++i) J[i][j] = (fp[i] - fm[i]) / (2 * h);
        }
        std::vector<Real> dx;
        if (!lu_solve(J, fx, dx)) return false;
        for (std::size_t j = 0; j < n; ++j) x[j] -= dx[j];
        if (inf_norm_mp(dx) < target) {
            if (jac_out) *jac_out = J;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<SolutionPoint> multistart_solve(std::size_t dim, const VecFnD& f,
                                            const VecFnMp& fmp,
                                            const MultistartOptions& opt) {
    // The polish phase needs enough mantissa for its convergence target; the
    // precision is process-global and only ever raised here.
    if (working_digits() < opt.digits + 10) set_working_digits(opt.digits + 10);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> dist(opt.box_lo, opt.box_hi);

    std::vector<std::vector<double>> found;
    for (std::size_t s = 0; s < opt.num_starts; ++s) {
        std::vector<double> x(dim);
        for (auto& v : x) v = dist(rng);
        if (!newton_d(f, dim, x, opt)) continue;
        bool dup = false;
        for (const auto& y : found) {
            double d = 0;
            for (std::size_t j = 0; j < dim; ++j) d = std::max(d, std::abs(x[j] - y[j]));
            if (d < opt.dedup_radius * 10) {
                dup = true;
                break;
            }
        }
        if (!dup) found.push_back(std::move(x));
    }

    std::vector<SolutionPoint> out;
    for (const auto& seed : found) {
        SolutionPoint sp;
        sp.x.assign(seed.begin(), seed.end());
        std::vector<std::vector<Real>> J;
        if (fmp) {
            sp.polished = polish_mp(fmp, sp.x, opt, &J);
            if (sp.polished) {
                sp.residual = fmp(sp.x);
                sp.jacobian_det = lu_det(J);
            }
        }
        if (!sp.polished) {
            // Keep the double-precision candidate with honest metadata.
            std::vector<double> fx = f(seed);
            sp.residual.assign(fx.begin(), fx.end());
        }
        bool dup = false;
        for (const auto& other : out) {
            Real d(0);
            for (std::size_t j = 0; j < dim; ++j) {
                Real a = sp.x[j] - other.x[j];
                if (a < 0) a = -a;
                if (a > d) d = a;
            }
            if (d < Real(opt.dedup_radius)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(sp));
    }
    std::sort(out.begin(), out.end(), [](const SolutionPoint& a, const SolutionPoint& b) {
        return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
    });
    return out;
}

Real fd_jacobian_det(std::size_t dim, const VecFnMp& f, const std::vector<Real>& x,
                     unsigned digits) {
    if (working_digits() < digits + 10) set_working_digits(digits + 10);
    Real h = 1;
    for (unsigned i = 0; i < digits / 2; ++i) h /= 10;
    std::vector<std::vector<Real>> J(dim, std::vector<Real>(dim, Real(0)));
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Real> xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        std::vector<Real> fp = f(xp), fm = f(xm);
        if (fp.size() != dim)
            throw std::invalid_argument("fd_jacobian_det needs a square system");
        for (std::size_t i = 0; i < dim; ++i) J[i][j] = (fp[i] - fm[i]) / (2 * h);
    }
    return lu_det(J);
}

Real symbolic_jacobian_det(const std::vector<Poly>& polys,
                           const std::vector<std::string>& vars,
                           const std::vector<Real>& x) {
    if (polys.size() != vars.size())
        throw std::invalid_argument("symbolic_jacobian_det needs a square system");
    const std::size_t n = vars.size();
    std::vector<std::vector<Real>> J(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) {
        Poly p = polys[i].with_vars(vars.size() == polys[i].vars().size() &&
                                            std::equal(vars.begin(), vars.end(),
                                                       polys[i].vars().begin())
                                        ? polys[i].vars()
                                        : vars);
        for (std::size_t j = 0; j < n; ++j)
            J[i][j] = p.diff(vars[j]).eval_numeric<Real>(x);
    }
    return lu_det(J);
}

RootCountResult count_common_real_roots(const std::vector<Poly>& polys,
                                        const std::vector<std::string>& vars,
                                        RootCountStrategy strategy,
                                        const MultistartOptions& opt) {
    RootCountResult res;
    const std::size_t dim = vars.size();

    std::vector<Poly> aligned;
    for (const auto& p : polys) aligned.push_back((p + Poly(vars)).with_vars(vars));

    auto fd = [&aligned, dim](const std::vector<double>& x) {
        std::vector<double> out;
        out.reserve(aligned.size());
        for (const auto& p : aligned) out.push_back(p.eval_numeric<double>(x));
        return out;
    };
    auto fmp = [&aligned](const std::vector<Real>& x) {
        std::vector<Real> out;
        out.reserve(aligned.size());
        for (const auto& p : aligned) out.push_back(p.eval_numeric<Real>(x));
        return out;
    };

    bool want_elim = strategy != RootCountStrategy::multistart;
    bool want_ms = strategy != RootCountStrategy::elimination;
    long elim_count = -1, ms_count = -1;

    if (want_ms || (want_elim && dim > 1)) {
        // The lift evidence doubles as the elimination consistency filter.
        res.roots = multistart_solve(
            dim, fd, aligned.size() == dim ? VecFnMp(fmp) : VecFnMp(), opt);
        ms_count = (long)res.roots.size();
    }

    if (want_elim) {
        if (dim == 1) {
            // Univariate: Sturm count is exact, no chain needed.
            UniPoly u = UniPoly::from_poly(aligned.front().drop_unused_vars().is_constant()
                                               ? aligned.front()
                                               : aligned.front(),
                                           vars.front());
            for (std::size_t i = 1; i < aligned.size(); ++i)
                u = UniPoly::gcd(u, UniPoly::from_poly(aligned[i], vars.front()));
            elim_count = u.degree() <= 0 ? 0 : (long)isolate_real_roots(u).size();
            res.terminal_real_roots = elim_count;
        } else {
            std::vector<std::string> elim_order(vars.begin(), vars.end() - 1);
            res.trace = run_elimination_chain(aligned, elim_order);
            if (res.trace.completed && !res.trace.terminal.empty()) {
                UniPoly term =
                    UniPoly::from_poly(res.trace.terminal.front().drop_unused_vars()
                                               .with_vars({vars.back()}),
                                       vars.back());
                long nroots =
                    term.degree() <= 0 ? 0 : (long)isolate_real_roots(term).size();
                res.terminal_real_roots = nroots;
                // Consistency filter: keep terminal roots matched by a lifted
                // solution's projection onto the last variable.
                if (nroots == 0) {
                    elim_count = 0;
                } else {
                    auto ivs = isolate_real_roots(term);
                    long matched = 0;
                    for (const auto& iv : ivs) {
                        double lo = Rational(iv.lo).get_d(), hi = Rational(iv.hi).get_d();
                        for (const auto& sp : res.roots) {
                            double proj = to_double(sp.x.back());
                            if (proj >= lo - 1e-6 && proj <= hi + 1e-6) {
                                ++matched;
                                break;
                            }
                        }
                    }
                    elim_count = matched;
                    res.note = "terminal has " + std::to_string(nroots) +
                               " real roots; " + std::to_string(matched) +
                               " consistent under back-substitution";
                }
            } else {
                res.note = "elimination chain halted: " + res.trace.halt_reason;
            }
        }
    }

    if (want_elim && want_ms) {
        if (elim_count >= 0 && elim_count == ms_count) {
            res.count = elim_count;
            res.verdict = "resolved";
        } else {
            res.count = ms_count;  // reported, but flagged
            res.verdict = "unresolved";
            if (res.note.empty())
                res.note = "strategies disagree: elimination=" + std::to_string(elim_count) +
                           " multistart=" + std::to_string(ms_count);
        }
    } else if (want_elim) {
        res.count = elim_count;
        res.verdict = elim_count >= 0 ? "resolved" : "unresolved";
    } else {
        res.count = ms_count;
        res.verdict = "resolved";
    }
    return res;
}

}  // namespace pce
