#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fjm/cyclic.hpp"

using namespace fjm;

TEST_CASE("factor orders") {
    CHECK(factor_order(FactorKind::Split, 1, 5) == 4);
    CHECK(factor_order(FactorKind::NormOne, 1, 3) == 4);
    CHECK(factor_order(FactorKind::NormOne, 2, 3) == 10);
    CHECK(factor_order(FactorKind::Split, 3, 3) == 26);
    CHECK_THROWS_AS(factor_order(FactorKind::Split, 1, 4), UsageError);
    CHECK_THROWS_AS(factor_order(FactorKind::Split, 1, 2), UsageError);
    CHECK_THROWS_AS(factor_order(FactorKind::Split, 1, 15), UsageError);
    CHECK_NOTHROW(factor_order(FactorKind::Split, 1, 9));   // 3^2
    CHECK_NOTHROW(factor_order(FactorKind::Split, 1, 27));  // 3^3
}

TEST_CASE("quadratic character indices") {
    CHECK(quadratic_char_index(FactorKind::Split, 1, 5) == 2);
    CHECK(quadratic_char_index(FactorKind::NormOne, 1, 3) == 2);
    CHECK(quadratic_char_index(FactorKind::Split, 2, 3) == 4);
}

TEST_CASE("twist groups match the block-order law") {
    auto g = twist_group(Family::Sp, FactorKind::NormOne, 1, 3);
    CHECK(g.order() == 2);
    CHECK(g.gens.size() == 1);
    CHECK(g.gens[0].multiplier == 3);

    auto gu = twist_group(Family::U, FactorKind::NormOne, 1, 3);
    CHECK(gu.order() == 1);
    CHECK(gu.gens[0].multiplier == 1);  // -3 = 1 mod 4

    auto gl = twist_group(Family::GL, FactorKind::Split, 2, 3);
    CHECK(gl.order() == 2);
    CHECK(gl.gens[0].multiplier == 3);
    CHECK(gl.multiplier_image().size() == 2);  // 3^2 = 9 = 1 mod 8

    // kappa_G * j for every family and kind, up to j = 6.
    for (long long q : {3LL, 5LL, 7LL})
        for (int j = 1; j <= 6; ++j) {
            CHECK(twist_group(Family::Sp, FactorKind::Split, j, q).order() == 2 * j);
            CHECK(twist_group(Family::Sp, FactorKind::NormOne, j, q).order() == 2 * j);
            CHECK(twist_group(Family::GL, FactorKind::Split, j, q).order() == j);
            if (j % 2 == 0)
                CHECK(twist_group(Family::U, FactorKind::Split, j, q).order() == j);
            else
                CHECK(twist_group(Family::U, FactorKind::NormOne, j, q).order() == j);
        }
    CHECK_THROWS_AS(twist_group(Family::U, FactorKind::Split, 1, 3), UsageError);
    CHECK_THROWS_AS(twist_group(Family::U, FactorKind::NormOne, 2, 3), UsageError);
    CHECK_THROWS_AS(twist_group(Family::GL, FactorKind::NormOne, 1, 3), UsageError);
}

TEST_CASE("faithful twist images except the documented degenerate block") {
    // The multiplier image can be smaller than the abstract group only
    // for Sp split blocks with j = 1, q = 3 (inversion acts trivially
    // on Z/2); everywhere else at desk scale the action is faithful.
    for (long long q : {3LL, 5LL, 7LL})
        for (int j = 1; j <= 5; ++j) {
            auto g = twist_group(Family::Sp, FactorKind::Split, j, q);
            long long img = (long long)g.multiplier_image().size();
            if (q == 3 && j == 1)
                CHECK(img == 1);
            else
                CHECK(img == g.order());
            auto gn = twist_group(Family::Sp, FactorKind::NormOne, j, q);
            CHECK((long long)gn.multiplier_image().size() == gn.order());
        }
}

TEST_CASE("quadratic character is fixed by every twist") {
    for (long long q : {3LL, 5LL})
        for (int j = 1; j <= 4; ++j)
            for (Family fam : {Family::Sp, Family::U, Family::GL})
                for (FactorKind kind : {FactorKind::Split, FactorKind::NormOne}) {
                    TwistGroup g;
                    try {
                        g = twist_group(fam, kind, j, q);
                    } catch (const UsageError&) {
                        continue;
                    }
                    long long half = quadratic_char_index(kind, j, q);
                    long long n = factor_order(kind, j, q);
                    CHECK(mod_reduce(2 * half, n) == 0);
                    for (long long m : g.multiplier_image())
                        CHECK(mod_reduce((__int128)m * half % n, n) == half);
                }
}

TEST_CASE("orbits") {
    auto o1 = orbit(OrbitGroup::Gal, Family::Sp, FactorKind::NormOne, 1, 5, 1);
    CHECK(o1 == std::set<long long>{1, 5});
    auto o2 = orbit(OrbitGroup::Gamma, Family::Sp, FactorKind::Split, 1, 5, 1);
    CHECK(o2 == std::set<long long>{1, 3});
    auto o3 = orbit(OrbitGroup::Gal, Family::GL, FactorKind::Split, 3, 3, 0);
    CHECK(o3 == std::set<long long>{0});
}

TEST_CASE("orbits partition the residues and sizes divide the acting order") {
    for (FactorKind kind : {FactorKind::Split, FactorKind::NormOne}) {
        int j = 2;
        long long q = 5;
        long long n = factor_order(kind, j, q);
        // |<xq, x(-1)> acting| divides 2 * ord(q mod n).
        long long ord = 1;
        long long x = mod_reduce(q, n);
        while (x != 1) { x = mod_reduce(x * q, n); ++ord; }
        long long acting = 2 * ord;
        std::set<long long> seen;
        long long total = 0;
        for (long long c = 0; c < n; ++c) {
            if (seen.count(c)) continue;
            auto orb = orbit(OrbitGroup::Gamma, Family::Sp, kind, j, q, c);
            for (long long v : orb) {
                CHECK(!seen.count(v));
                seen.insert(v);
            }
            total += (long long)orb.size();
            CHECK(acting % orb.size() == 0);
        }
        CHECK(total == n);
    }
}

TEST_CASE("regular residues") {
    CHECK(is_regular_residue(2, 3, 1));
    CHECK_FALSE(is_regular_residue(2, 3, 0));
    CHECK_FALSE(is_regular_residue(1, 5, 3));  // -1 already lies in f
    CHECK(is_regular_residue(1, 5, 1));
    auto orb = orbit(OrbitGroup::Gal, Family::Sp, FactorKind::NormOne, 2, 3, 1);
    CHECK(orb == std::set<long long>{1, 3, 7, 9});
}
