#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pce/oracle.hpp"

using namespace pce;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_CASE("linear center has period 2*pi at every amplitude") {
    PlanarPolySystem lin = builtin_system("linear");
    OracleOptions opt;
    opt.tol = 1e-12;
    for (double h : {0.01, 0.05, 0.1, 0.2}) {
        PeriodSample s = integrate_return_time(lin, {}, h, opt);
        CHECK(std::abs(s.period - kTwoPi) < 1e-10);
    }
}

TEST_CASE("period ladder is monotone in sample count and ordered in h") {
    PlanarPolySystem lin = builtin_system("linear");
    auto samples = sample_period_ladder(lin, {}, 0.05, 0.2, 8);
    REQUIRE(samples.size() == 8);
    for (std::size_t i = 1; i < samples.size(); ++i)
        CHECK(samples[i - 1].h < samples[i].h);
}

TEST_CASE("fitted p2 matches -pi*tau_1 at the lambda1 origin") {
    PlanarPolySystem sys = apply_center_condition(builtin_system("z2-quintic"),
                                                  builtin_condition("lambda1"));
    std::map<std::string, double> params;
    for (const auto& p : sys.parameters()) params[p] = 0.0;
    OracleOptions opt;
    opt.tol = 1e-12;
    auto samples = sample_period_ladder(sys, params, 0.04, 0.22, 12, opt);
    auto fit = fit_period_series(samples, 3);
    // tau_1 = -4 at the origin of the lambda1 family => p_2 = 4*pi
    double expect = 4 * M_PI;
    CHECK(std::abs(fit.coeffs[0] - expect) / expect < 1e-4);
}

TEST_CASE("symmetrization is required and effective for the translated center") {
    PlanarPolySystem sys = apply_center_condition(builtin_system("z2-quintic"),
                                                  builtin_condition("lambda1"));
    std::map<std::string, double> params;
    for (const auto& p : sys.parameters()) params[p] = 0.0;
    OracleOptions sym, raw;
    sym.tol = raw.tol = 1e-12;
    raw.symmetrize = false;
    auto fs = fit_period_series(sample_period_ladder(sys, params, 0.04, 0.22, 12, sym), 3);
    auto fr = fit_period_series(sample_period_ladder(sys, params, 0.04, 0.22, 12, raw), 3);
    // without symmetrization the odd h^3 term contaminates the even-power fit
    CHECK(fs.residual_norm < 1e-4);
    CHECK(fs.residual_norm < fr.residual_norm / 10);
}

TEST_CASE("guard radius reports escape for a non-center") {
    // xdot = -y + x^2, ydot = x is not a center at large amplitude; more
    // simply, an outward spiral: xdot = -y + x, ydot = x + y escapes.
    std::vector<std::string> vars = {"x", "y"};
    PlanarPolySystem s;
    Poly xd(vars), yd(vars);
    xd.add_term({0, 1}, Gaussian(Rational(-1)));
    xd.add_term({1, 0}, Gaussian(Rational(1)));
    yd.add_term({1, 0}, Gaussian(Rational(1)));
    yd.add_term({0, 1}, Gaussian(Rational(1)));
    s.xdot = xd;
    s.ydot = yd;
    CHECK_THROWS(integrate_return_time(s, {}, 1.5));
}

TEST_CASE("tight tolerance reduces the linear-period error") {
    PlanarPolySystem lin = builtin_system("linear");
    OracleOptions loose, tight;
    loose.tol = 1e-6;
    tight.tol = 1e-13;
    double el = std::abs(integrate_return_time(lin, {}, 0.1, loose).period - kTwoPi);
    double et = std::abs(integrate_return_time(lin, {}, 0.1, tight).period - kTwoPi);
    CHECK(et <= el + 1e-15);
    CHECK(et < 1e-10);
}
