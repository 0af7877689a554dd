#include "pce/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pce {

namespace {

// The vector field with parameter values folded in: a flat term list per
// component, specialized to (x, y) monomials with double coefficients.
struct CompiledField {
    struct Term {
        double c;
        unsigned ex, ey;
    };
    std::vector<Term> fx, fy;

    void eval(double x, double y, double& dx, double& dy) const {
        auto run = [&](const std::vector<Term>& ts) {
            double acc = 0;
            for (const auto& t : ts) {
                double m = t.c;
                for (unsigned k = 0; k < t.ex; ++k) m *= x;
                for (unsigned k = 0; k < t.ey; ++k) m *= y;
                acc += m;
            }
            return acc;
        };
        dx = run(fx);
        dy = run(fy);
    }
};

std::vector<CompiledField::Term> compile_component(
    const Poly& p, const std::map<std::string, double>& params) {
    const auto& vars = p.vars();
    std::vector<double> pv(vars.size(), 0.0);
    std::vector<int> which(vars.size(), -1);  // 0 = x, 1 = y, 2 = parameter
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == "x") {
            which[i] = 0;
        } else if (vars[i] == "y") {
            which[i] = 1;
        } else {
            auto it = params.find(vars[i]);
            if (it == params.end())
                throw std::invalid_argument("oracle: unbound parameter " + vars[i]);
            which[i] = 2;
            pv[i] = it->second;
        }
    }
    std::vector<CompiledField::Term> out;
    for (const auto& [e, g] : p.terms()) {
        if (g.im != 0)
            throw std::invalid_argument("oracle: complex coefficient in real field");
        CompiledField::Term t{g.re.get_d(), 0, 0};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (which[i] == 0) {
                t.ex = e[i];
            } else if (which[i] == 1) {
                t.ey = e[i];
            } else {
                t.c *= std::pow(pv[i], (int)e[i]);
            }
        }
        if (t.c != 0) out.push_back(t);
    }
    return out;
}

// Dormand-Prince 5(4) pair.
struct Dopri5 {
    const CompiledField& f;

    // One step from (x, y) with size dt; fills the 4th/5th order results and
    // the embedded error estimate. k1 may be reused (FSAL upstream).
    void step(double x, double y, double dt, double k1x, double k1y, double& ox,
              double& oy, double& err, double& k7x, double& k7y) const {
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        double k2x, k2y, k3x, k3y, k4x, k4y, k5x, k5y, k6x, k6y;
        f.eval(x + dt * a21 * k1x, y + dt * a21 * k1y, k2x, k2y);
        f.eval(x + dt * (a31 * k1x + a32 * k2x), y + dt * (a31 * k1y + a32 * k2y), k3x,
               k3y);
        f.eval(x + dt * (a41 * k1x + a42 * k2x + a43 * k3x),
               y + dt * (a41 * k1y + a42 * k2y + a43 * k3y), k4x, k4y);
        f.eval(x + dt * (a51 * k1x + a52 * k2x + a53 * k3x + a54 * k4x),
               y + dt * (a51 * k1y + a52 * k2y + a53 * k3y + a54 * k4y), k5x, k5y);
        f.eval(x + dt * (a61 * k1x + a62 * k2x + a63 * k3x + a64 * k4x + a65 * k5x),
               y + dt * (a61 * k1y + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y),
               k6x, k6y);
        ox = x + dt * (b1 * k1x + b3 * k3x + b4 * k4x + b5 * k5x + b6 * k6x);
        oy = y + dt * (b1 * k1y + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y);
        f.eval(ox, oy, k7x, k7y);  // FSAL stage
        double ex = dt * (e1 * k1x + e3 * k3x + e4 * k4x + e5 * k5x + e6 * k6x +
                          e7 * k7x);
        double ey = dt * (e1 * k1y + e3 * k3y + e4 * k4y + e5 * k5y + e6 * k6y +
                          e7 * k7y);
        err = std::sqrt(ex * ex + ey * ey);
    }
};

double wrap_dtheta(double x0, double y0, double x1, double y1) {
    // Angle increment between consecutive position vectors, in (-pi, pi].
    return std::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1);
}

}  // namespace

PeriodSample integrate_return_time(const PlanarPolySystem& sys,
                                   const std::map<std::string, double>& params,
                                   double h, const OracleOptions& opt) {
    if (h == 0) throw std::invalid_argument("oracle: amplitude must be nonzero");
    CompiledField field{compile_component(sys.xdot, params),
                        compile_component(sys.ydot, params)};
    Dopri5 rk{field};
    const double two_pi = 2 * std::numbers::pi;

    double x = h, y = 0, t = 0, theta = 0, err_acc = 0;
    double k1x, k1y;
    field.eval(x, y, k1x, k1y);
    double dt = 1e-3;
    const double safety = 0.9, min_dt = 1e-14, max_dt = 0.05;

    while (t < opt.max_time) {
        dt = std::clamp(dt, min_dt, max_dt);
        double nx, ny, err, k7x, k7y;
        rk.step(x, y, dt, k1x, k1y, nx, ny, err, k7x, k7y);
        double scale = opt.tol * (1.0 + std::hypot(x, y));
        if (err > scale && dt > min_dt * 2) {
            dt *= std::max(0.2, safety * std::pow(scale / err, 0.2));
            continue;
        }
        double dth = wrap_dtheta(x, y, nx, ny);
        if (theta + dth >= two_pi) {
            // Bisect the step size on the winding condition.
            double lo = 0, hi = dt;
            for (int it = 0; it < 100 && hi - lo > 1e-16 * (1 + dt); ++it) {
                double mid = 0.5 * (lo + hi);
                double mx, my, me, mk7x, mk7y;
                rk.step(x, y, mid, k1x, k1y, mx, my, me, mk7x, mk7y);
                if (theta + wrap_dtheta(x, y, mx, my) >= two_pi)
                    hi = mid;
                else
                    lo = mid;
            }
            PeriodSample out;
            out.h = h;
            out.period = t + 0.5 * (lo + hi);
            out.error_estimate = err_acc + opt.tol;
            return out;
        }
        theta += dth;
        t += dt;
        x = nx;
        y = ny;
        k1x = k7x;
        k1y = k7y;
        err_acc += err;
        if (std::hypot(x, y) > opt.guard_radius)
            throw std::runtime_error(
                "oracle: trajectory escaped the guard radius; not a center at this "
                "point or h too large");
        if (err <= scale)
            dt *= std::min(5.0, safety * std::pow(scale / std::max(err, 1e-300), 0.2));
    }
    throw std::runtime_error("oracle: winding stalled; not a center at this point");
}

std::vector<PeriodSample> sample_period_ladder(
    const PlanarPolySystem& sys, const std::map<std::string, double>& params,
    double h_lo, double h_hi, int n, const OracleOptions& opt) {
    if (n < 2 || !(0 < h_lo && h_lo < h_hi))
        throw std::invalid_argument("oracle: bad ladder specification");
    std::vector<PeriodSample> out;
    double r = std::pow(h_hi / h_lo, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) {
        double h = h_lo * std::pow(r, i);
        PeriodSample s = integrate_return_time(sys, params, h, opt);
        if (opt.symmetrize) {
            PeriodSample m = integrate_return_time(sys, params, -h, opt);
            s.period = 0.5 * (s.period + m.period);
            s.error_estimate = 0.5 * (s.error_estimate + m.error_estimate);
        }
        out.push_back(s);
    }
    return out;
}

PeriodFit fit_period_series(const std::vector<PeriodSample>& samples, int K) {
    const std::size_t m = samples.size(), n = (std::size_t)K;
    if (K < 1 || m < n + 2)
        throw std::invalid_argument("fit_period_series: need more samples than terms");
    const double two_pi = 2 * std::numbers::pi;
    // Design matrix A[i][k] = h_i^(2(k+1)), rhs = P - 2*pi; Householder QR.
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        double h2 = samples[i].h * samples[i].h, p = h2;
        for (std::size_t k = 0; k < n; ++k) {
            A[i][k] = p;
            p *= h2;
        }
        b[i] = samples[i].period - two_pi;
    }
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0;
        for (std::size_t i = k; i < m; ++i) norm += A[i][k] * A[i][k];
        norm = std::sqrt(norm);
        if (norm == 0) throw std::runtime_error("fit_period_series: rank deficient");
        double alpha = A[k][k] > 0 ? -norm : norm;
        std::vector<double> v(m, 0.0);
        v[k] = A[k][k] - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i] = A[i][k];
        double vv = 0;
        for (std::size_t i = k; i < m; ++i) vv += v[i] * v[i];
        if (vv > 0) {
            for (std::size_t j = k; j < n; ++j) {
                double dot = 0;
                for (std::size_t i = k; i < m; ++i) dot += v[i] * A[i][j];
                double f = 2 * dot / vv;
                for (std::size_t i = k; i < m; ++i) A[i][j] -= f * v[i];
            }
            double dot = 0;
            for (std::size_t i = k; i < m; ++i) dot += v[i] * b[i];
            double f = 2 * dot / vv;
            for (std::size_t i = k; i < m; ++i) b[i] -= f * v[i];
        }
    }
    PeriodFit fit;
    fit.coeffs.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * fit.coeffs[j];
        fit.coeffs[k] = s / A[k][k];
    }
    double res = 0;
    for (std::size_t i = n; i < m; ++i) res += b[i] * b[i];
    fit.residual_norm = std::sqrt(res);
    double rmax = 0, rmin = 1e300;
    for (std::size_t k = 0; k < n; ++k) {
        double d = std::abs(A[k][k]);
        rmax = std::max(rmax, d);
        rmin = std::min(rmin, d);
    }
    fit.condition = rmin > 0 ? rmax / rmin : 1e300;
    return fit;
}

std::vector<double> scan_critical_periods(const PlanarPolySystem& sys,
                                          const std::map<std::string, double>& params,
                                          double h_lo, double h_hi, int resolution,
                                          const OracleOptions& opt) {
    if (resolution < 3)
        throw std::invalid_argument("scan_critical_periods: resolution too small");
    std::vector<double> hs(resolution), ps(resolution);
    for (int i = 0; i < resolution; ++i) {
        hs[(std::size_t)i] = h_lo + (h_hi - h_lo) * i / (resolution - 1);
        ps[(std::size_t)i] =
            integrate_return_time(sys, params, hs[(std::size_t)i], opt).period;
    }
    auto slope_between = [&](double a, double b) {
        double pa = integrate_return_time(sys, params, a, opt).period;
        double pb = integrate_return_time(sys, params, b, opt).period;
        return (pb - pa) / (b - a);
    };
    std::vector<double> out;
    for (int i = 0; i + 2 < resolution; ++i) {
        double d1 = ps[(std::size_t)i + 1] - ps[(std::size_t)i];
        double d2 = ps[(std::size_t)i + 2] - ps[(std::size_t)i + 1];
        if (d1 == 0 || d2 == 0 || (d1 > 0) == (d2 > 0)) continue;
        // P' changes sign inside (h_i, h_{i+2}); bisect on the secant slope.
        double lo = hs[(std::size_t)i], hi = hs[(std::size_t)i + 2];
        double w = hs[(std::size_t)i + 1] - hs[(std::size_t)i];
        for (int it = 0; it < 40 && hi - lo > 1e-6 * (h_hi - h_lo); ++it) {
            double mid = 0.5 * (lo + hi);
            double s = slope_between(mid - 0.25 * w, mid + 0.25 * w);
            if ((s > 0) == (d1 > 0))
                lo = mid;
            else
                hi = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace pce
