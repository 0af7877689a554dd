#pragma once

#include <map>
#include <string>
#include <vector>

#include "pce/system.hpp"

namespace pce {

struct PeriodSample {
    double h = 0;       // initial amplitude, start point (h, 0)
    double period = 0;  // measured return time
    double error_estimate = 0;
};

struct PeriodFit {
    std::vector<double> coeffs;  // p_2, p_4, ..., p_2K
    double residual_norm = 0;
    double condition = 0;  // estimate for the even-power design matrix
};

struct OracleOptions {
    double tol = 1e-12;         // integrator tolerance (per step, mixed abs/rel)
    double guard_radius = 2.0;  // escape radius => "not a center" diagnostic
    double max_time = 200.0;    // winding stall guard
    // Average the periods of the orbits through (h, 0) and (-h, 0). The
    // translated center has no x -> -x symmetry, so the signed-intercept
    // expansion of P carries odd powers; the average cancels them exactly and
    // leaves the even series the fit assumes.
    bool symmetrize = true;
};

// Integrates the system from (h, 0) until the accumulated polar angle
// reaches 2*pi, refining the section return by bisection inside the final
// step. Parameters are folded numerically into the vector field up front.
PeriodSample integrate_return_time(const PlanarPolySystem& sys,
                                   const std::map<std::string, double>& params,
                                   double h, const OracleOptions& opt = {});

// Geometric h-ladder of n samples in [h_lo, h_hi].
std::vector<PeriodSample> sample_period_ladder(
    const PlanarPolySystem& sys, const std::map<std::string, double>& params,
    double h_lo, double h_hi, int n, const OracleOptions& opt = {});

// Least squares of P(h) - 2*pi over the even powers h^2 .. h^(2K).
PeriodFit fit_period_series(const std::vector<PeriodSample>& samples, int K);

// Sign changes of the centered finite difference of P on the ladder, each
// refined by bisection; returns the critical-h estimates.
std::vector<double> scan_critical_periods(const PlanarPolySystem& sys,
                                          const std::map<std::string, double>& params,
                                          double h_lo, double h_hi, int resolution,
                                          const OracleOptions& opt = {});

}  // namespace pce
