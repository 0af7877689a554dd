#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pce/realroots.hpp"

using namespace pce;

namespace {

double d(const Real& x) { return to_double(x); }

}  // namespace

TEST_CASE("multistart finds all roots of a decoupled cubic system") {
    // f1 = u^3 - u  (roots -1, 0, 1), f2 = v^2 - 4 (roots -2, 2): 6 common roots
    VecFnD f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] * x[0] - x[0], x[1] * x[1] - 4};
    };
    VecFnMp fmp = [](const std::vector<Real>& x) {
        return std::vector<Real>{x[0] * x[0] * x[0] - x[0], x[1] * x[1] - 4};
    };
    MultistartOptions opt;
    opt.num_starts = 400;
    opt.box_lo = -4;
    opt.box_hi = 4;
    auto sols = multistart_solve(2, f, fmp, opt);
    REQUIRE(sols.size() == 6);
    for (const auto& s : sols) {
        CHECK(std::abs(std::abs(d(s.x[1])) - 2) < 1e-20);
        double u = d(s.x[0]);
        CHECK(std::min({std::abs(u + 1), std::abs(u), std::abs(u - 1)}) < 1e-20);
        // determinant of diag(3u^2-1, 2v)
        double expect = (3 * u * u - 1) * 2 * d(s.x[1]);
        CHECK(std::abs(d(s.jacobian_det) - expect) < 1e-6 * std::abs(expect));
    }
}

TEST_CASE("multistart is deterministic for a fixed seed") {
    VecFnD f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] - 2};
    };
    VecFnMp fmp = [](const std::vector<Real>& x) {
        return std::vector<Real>{x[0] * x[0] - 2};
    };
    MultistartOptions opt;
    opt.num_starts = 100;
    auto a = multistart_solve(1, f, fmp, opt);
    auto b = multistart_solve(1, f, fmp, opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(real_to_string(a[i].x[0], 50) == real_to_string(b[i].x[0], 50));
}

TEST_CASE("polish reaches the requested precision") {
    VecFnD f = [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0] - 2};
    };
    VecFnMp fmp = [](const std::vector<Real>& x) {
        return std::vector<Real>{x[0] * x[0] - 2};
    };
    MultistartOptions opt;
    opt.num_starts = 50;
    opt.digits = 60;
    set_working_digits(70);
    auto sols = multistart_solve(1, f, fmp, opt);
    REQUIRE(sols.size() == 2);
    Real sqrt2 = sqrt(Real(2));
    for (const auto& s : sols) {
        Real err = abs(abs(s.x[0]) - sqrt2);
        CHECK(err < Real("1e-55"));
    }
}

TEST_CASE("symbolic and finite-difference Jacobian determinants agree") {
    set_working_digits(50);
    std::vector<std::string> vars = {"u", "v"};
    Poly u = Poly::variable(vars, "u");
    Poly v = Poly::variable(vars, "v");
    Poly one = Poly::constant(vars, Gaussian(Rational(1)));
    std::vector<Poly> polys = {u * u + v - one, u * v};
    VecFnMp fmp = [&](const std::vector<Real>& x) {
        std::vector<Real> out;
        for (const auto& p : polys) out.push_back(p.eval_numeric<Real>(x));
        return out;
    };
    std::vector<Real> x = {Real(0.7), Real(-1.3)};
    Real sym = symbolic_jacobian_det(polys, vars, x);
    Real fd = fd_jacobian_det(2, fmp, x, 40);
    CHECK(abs(sym - fd) < Real(1e-25));
}

TEST_CASE("count_common_real_roots agrees between strategies") {
    std::vector<std::string> vars = {"u", "v"};
    Poly u = Poly::variable(vars, "u");
    Poly v = Poly::variable(vars, "v");
    auto C = [&](long n) { return Poly::constant(vars, Gaussian(Rational(n))); };
    // u^2 + v^2 = 5, u - v = 1  => (2,1) and (-1,-2)
    std::vector<Poly> polys = {u * u + v * v - C(5), u - v - C(1)};
    MultistartOptions opt;
    opt.num_starts = 300;
    opt.box_lo = -5;
    opt.box_hi = 5;
    auto res = count_common_real_roots(polys, vars, RootCountStrategy::both, opt);
    CHECK(res.verdict == "resolved");
    CHECK(res.count == 2);
}

TEST_CASE("count_common_real_roots on a rootless system") {
    std::vector<std::string> vars = {"u", "v"};
    Poly u = Poly::variable(vars, "u");
    Poly v = Poly::variable(vars, "v");
    auto C = [&](long n) { return Poly::constant(vars, Gaussian(Rational(n))); };
    // u^2 + v^2 = -1 has no real points
    std::vector<Poly> polys = {u * u + v * v + C(1), u - v};
    MultistartOptions opt;
    opt.num_starts = 200;
    auto res = count_common_real_roots(polys, vars, RootCountStrategy::both, opt);
    CHECK(res.verdict == "resolved");
    CHECK(res.count == 0);
}

TEST_CASE("univariate count uses exact Sturm isolation") {
    std::vector<std::string> vars = {"u"};
    Poly u = Poly::variable(vars, "u");
    auto C = [&](long n) { return Poly::constant(vars, Gaussian(Rational(n))); };
    // (u^2-2)(u^2+1): exactly two real roots
    std::vector<Poly> polys = {(u * u - C(2)) * (u * u + C(1))};
    auto res = count_common_real_roots(polys, vars, RootCountStrategy::elimination);
    CHECK(res.verdict == "resolved");
    CHECK(res.count == 2);
}
