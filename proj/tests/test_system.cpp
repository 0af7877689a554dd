#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <random>

#include "pce/pipeline.hpp"
#include "pce/system.hpp"

using namespace pce;

TEST_CASE("complexification golden: all 18 quintic coefficients exact") {
    std::ifstream in(std::string(PCE_TEST_DATA_DIR) +
                     "/complex_coeffs_z2_quintic.json");
    REQUIRE(in.good());
    nlohmann::json golden = nlohmann::json::parse(in);
    REQUIRE(golden.size() == 18);

    ComplexSystemCoefficients c = complexify(builtin_system("z2-quintic"));
    std::size_t checked = 0;
    for (const auto& [key, pj] : golden.items()) {
        auto comma = key.find(',');
        int k = std::stoi(key.substr(0, comma));
        int j = std::stoi(key.substr(comma + 1));
        Poly expect = Poly::from_json(pj);
        const Poly* got = c.find(k, j);
        REQUIRE_MESSAGE(got != nullptr, "missing a_", k, j);
        CHECK_MESSAGE(got->drop_unused_vars() ==
                          expect.drop_unused_vars().with_vars(
                              got->drop_unused_vars().vars()),
                      "a_", k, j, " mismatch");
        ++checked;
    }
    CHECK(checked == 18);
    // and nothing extra
    std::size_t nonzero = 0;
    for (const auto& [kj, p] : c.a)
        if (!p.is_zero()) ++nonzero;
    CHECK(nonzero == 18);
}

TEST_CASE("builtin quintic has the canonical linear part") {
    PlanarPolySystem s = builtin_system("z2-quintic");
    CHECK(s.has_canonical_linear_part());
    CHECK(s.state_degree() == 5);
}

TEST_CASE("translation moves the bi-center to the origin") {
    PlanarPolySystem u = builtin_system("z2-quintic-untranslated");
    PlanarPolySystem t = translate_singularity(u, Rational(1), Rational(0));
    PlanarPolySystem direct = builtin_system("z2-quintic");
    CHECK(t.xdot == direct.xdot);
    CHECK(t.ydot == direct.ydot);
}

TEST_CASE("linear fixture complexifies to zero nonlinear coefficients") {
    ComplexSystemCoefficients c = complexify(builtin_system("linear"));
    for (const auto& [kj, p] : c.a) CHECK(p.is_zero());
}

TEST_CASE("condition sets validate and substitute") {
    for (const auto& name : builtin_condition_names()) {
        CenterConditionSet cond = builtin_condition(name);
        CHECK_NOTHROW(cond.validate());
        PlanarPolySystem s =
            apply_center_condition(builtin_system("z2-quintic"), cond);
        // substituted parameters must no longer occur
        for (const auto& [param, rhs] : cond.substitutions) {
            CHECK(s.xdot.degree_in(param) <= 0);
            CHECK(s.ydot.degree_in(param) <= 0);
        }
    }
}

TEST_CASE("system file round trip is the identity") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (int it = 0; it < 25; ++it) {
        std::vector<std::string> vars = {"x", "y", "p", "q"};
        PlanarPolySystem s;
        Poly xd(vars), yd(vars);
        xd.add_term({0, 1, 0, 0}, Gaussian(Rational(-1)));
        yd.add_term({1, 0, 0, 0}, Gaussian(Rational(1)));
        for (int t = 0; t < 5; ++t) {
            Expvec e = {(unsigned)(rng() % 3), (unsigned)(rng() % 3),
                        (unsigned)(rng() % 2), (unsigned)(rng() % 2)};
            if (total_degree(Expvec{e[0], e[1]}) < 2) continue;  // keep linear part
            Gaussian c(make_rational(num(rng), den(rng)));
            xd.add_term(e, c);
            yd.add_term(e, c);
        }
        s.xdot = xd;
        s.ydot = yd;
        PlanarPolySystem back = system_from_json(system_to_json(s));
        CHECK(back.xdot == s.xdot.with_vars(back.xdot.vars()));
        CHECK(back.ydot == s.ydot.with_vars(back.ydot.vars()));
    }
}

TEST_CASE("malformed rationals are rejected with a position") {
    nlohmann::json j;
    j["state_vars"] = {"x", "y"};
    j["parameters"] = {"p"};
    j["xdot"] = nlohmann::json::array(
        {{{"exponents", {0, 1, 0}}, {"re", "3/0"}, {"im", "0"}}});
    j["ydot"] = nlohmann::json::array();
    try {
        system_from_json(j);
        FAIL("3/0 accepted");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("xdot, term 0") != std::string::npos);
        CHECK(msg.find("zero denominator") != std::string::npos);
    }
}

TEST_CASE("wrong exponent arity is rejected with a position") {
    nlohmann::json j;
    j["state_vars"] = {"x", "y"};
    j["parameters"] = nlohmann::json::array();
    j["xdot"] = nlohmann::json::array(
        {{{"exponents", {0, 1, 2}}, {"re", "1"}, {"im", "0"}}});
    j["ydot"] = nlohmann::json::array();
    CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
}

TEST_CASE("complex coefficients in system files are rejected") {
    nlohmann::json j;
    j["state_vars"] = {"x", "y"};
    j["parameters"] = nlohmann::json::array();
    j["xdot"] = nlohmann::json::array(
        {{{"exponents", {0, 1}}, {"re", "-1"}, {"im", "2"}}});
    j["ydot"] = nlohmann::json::array();
    CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
}

TEST_CASE("complexify rejects a non-canonical linear part") {
    PlanarPolySystem s;
    std::vector<std::string> vars = {"x", "y"};
    Poly xd(vars), yd(vars);
    xd.add_term({0, 1}, Gaussian(Rational(1)));  // +y instead of -y
    yd.add_term({1, 0}, Gaussian(Rational(1)));
    s.xdot = xd;
    s.ydot = yd;
    CHECK_THROWS(complexify(s));
}
