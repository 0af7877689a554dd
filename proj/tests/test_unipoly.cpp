#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pce/unipoly.hpp"

using namespace pce;

namespace {

UniPoly random_unipoly(std::mt19937& rng, int max_deg = 6) {
    std::uniform_int_distribution<int> deg(1, max_deg);
    std::uniform_int_distribution<int> num(-8, 8);
    int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = Rational(num(rng));
    if (c.back() == 0) c.back() = 1;
    return UniPoly(c);
}

// Counts roots of squarefree p in (a, b] by dense sign sampling at rational
// points; resolution fine enough for the coefficient sizes used here.
int sampled_roots(const UniPoly& p, const Rational& a, const Rational& b, int grid) {
    int count = 0;
    int prev = p.sign_at(a);
    for (int i = 1; i <= grid; ++i) {
        Rational x = a + (b - a) * Rational(i) / Rational(grid);
        int s = p.sign_at(x);
        if (s == 0) {
            ++count;  // exact hit
            prev = s;
            continue;
        }
        if (prev != 0 && s != prev) ++count;
        if (prev == 0 && s != 0) prev = s;
        if (s != 0) prev = s;
    }
    return count;
}

}  // namespace

TEST_CASE("Sturm count vs dense sampling on 200 squarefree polynomials") {
    std::mt19937 rng(101);
    int verified = 0;
    while (verified < 200) {
        UniPoly p = random_unipoly(rng).squarefree_part();
        if (p.degree() < 1) continue;
        Rational B = cauchy_root_bound(p) + 1;
        SturmChain ch = SturmChain::build(p);
        int sturm = ch.count_roots(-B, B);
        // Sign-change sampling only undercounts (close root pairs can share a
        // grid cell), so refine the grid until it matches or a cap is hit.
        int sampled = -1;
        for (int grid = 4096; grid <= (1 << 20) && sampled != sturm; grid *= 16)
            sampled = sampled_roots(p, -B, B, grid);
        CHECK(sturm == sampled);
        ++verified;
    }
}

TEST_CASE("no real roots for strictly positive polynomials") {
    UniPoly p({Rational(1), Rational(0), Rational(1)});  // x^2 + 1
    SturmChain ch = SturmChain::build(p);
    Rational B = cauchy_root_bound(p) + 1;
    CHECK(ch.count_roots(-B, B) == 0);
    CHECK(isolate_real_roots(p).empty());
}

TEST_CASE("isolation brackets every root and refines below width") {
    // (x-1)(x+2)(2x-3): roots -2, 1, 3/2
    UniPoly f1({Rational(-1), Rational(1)});
    UniPoly f2({Rational(2), Rational(1)});
    UniPoly f3({Rational(-3), Rational(2)});
    UniPoly q = f1 * f2 * f3;
    auto ivs = isolate_real_roots(q, make_rational(1, 1000));
    REQUIRE(ivs.size() == 3);
    std::vector<Rational> roots = {Rational(-2), Rational(1), make_rational(3, 2)};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ivs[i].lo <= roots[i]);
        CHECK(roots[i] <= ivs[i].hi);
        CHECK(ivs[i].hi - ivs[i].lo <= make_rational(1, 1000));
    }
}

TEST_CASE("repeated roots are counted once") {
    UniPoly f1({Rational(-1), Rational(1)});  // x - 1
    UniPoly p = f1 * f1 * f1;
    CHECK(isolate_real_roots(p).size() == 1);
}

TEST_CASE("gcd and divexact are consistent") {
    std::mt19937 rng(55);
    for (int it = 0; it < 100; ++it) {
        UniPoly a = random_unipoly(rng, 4), b = random_unipoly(rng, 4),
                g = random_unipoly(rng, 3);
        UniPoly ag = a * g, bg = b * g;
        UniPoly d = UniPoly::gcd(ag, bg);
        // the common factor g forces deg(gcd) >= deg(g)
        CHECK(d.degree() >= g.degree());
        // the gcd must divide both products exactly
        CHECK_NOTHROW(UniPoly::divexact(ag, d));
        CHECK_NOTHROW(UniPoly::divexact(bg, d));
    }
}

TEST_CASE("derivative of squarefree part shares no root") {
    std::mt19937 rng(77);
    for (int it = 0; it < 100; ++it) {
        UniPoly p = random_unipoly(rng).squarefree_part();
        if (p.degree() < 2) continue;
        UniPoly g = UniPoly::gcd(p, p.derivative());
        CHECK(g.degree() == 0);
    }
}
