#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fjm/torus.hpp"

using namespace fjm;

namespace {

// Independent count of the admissible partition pairs by a coin-change DP
// over the allowed (kind, j) parts.
long long count_pairs_bruteforce(Family fam, int n) {
    std::vector<int> weights;
    for (int j = 1; j <= n; ++j) {
        bool split_ok = fam != Family::U || j % 2 == 0;
        bool norm_ok = fam != Family::GL && (fam != Family::U || j % 2 == 1);
        if (split_ok) weights.push_back(j);
        if (norm_ok) weights.push_back(j);
    }
    std::vector<long long> ways(n + 1, 0);
    ways[0] = 1;
    for (int j : weights)
        for (int w = j; w <= n; ++w) ways[w] += ways[w - j];
    return ways[n];
}

}  // namespace

TEST_CASE("torus class enumeration counts") {
    CHECK(enumerate_torus_classes({Family::Sp, 2, 3}).size() == 5);
    CHECK(enumerate_torus_classes({Family::GL, 3, 3}).size() == 3);
    auto u2 = enumerate_torus_classes({Family::U, 2, 3});
    REQUIRE(u2.size() == 2);
    CHECK(u2[0].split == std::map<int, int>{{2, 1}});
    CHECK(u2[0].norm_one.empty());
    CHECK(u2[1].split.empty());
    CHECK(u2[1].norm_one == std::map<int, int>{{1, 2}});

    for (int n = 1; n <= 6; ++n)
        for (Family fam : {Family::Sp, Family::U, Family::GL}) {
            auto classes = enumerate_torus_classes({fam, n, 3});
            CHECK((long long)classes.size() == count_pairs_bruteforce(fam, n));
            for (size_t i = 0; i < classes.size(); ++i)
                for (size_t k = i + 1; k < classes.size(); ++k)
                    CHECK(!(classes[i] == classes[k]));
        }
}

TEST_CASE("weyl group orders follow the block law") {
    TorusDatum t1{{Family::Sp, 2, 3}, {}, {{2, 1}}};
    CHECK(WeylGroup(t1).order() == 4);
    TorusDatum t2{{Family::U, 2, 3}, {}, {{1, 2}}};
    CHECK(WeylGroup(t2).order() == 2);
    for (int n : {1, 2, 3, 5}) {
        TorusDatum t{{Family::GL, n, 5}, {{n, 1}}, {}};
        CHECK(WeylGroup(t).order() == n);
    }
    for (long long q : {3LL, 5LL, 7LL})
        for (int n = 1; n <= 6; ++n)
            for (Family fam : {Family::Sp, Family::U, Family::GL})
                for (const auto& t : enumerate_torus_classes({fam, n, q})) {
                    long long expect = 1;
                    auto blocks = [&](const std::map<int, int>& m) {
                        for (auto [j, mult] : m) {
                            for (int i = 2; i <= mult; ++i) expect *= i;
                            for (int i = 0; i < mult; ++i) expect *= kappa(fam) * j;
                        }
                    };
                    blocks(t.split);
                    blocks(t.norm_one);
                    CHECK(WeylGroup(t).order() == expect);
                }
}

TEST_CASE("weyl action is a group action") {
    std::mt19937_64 rng(20240817);
    for (const auto& t : enumerate_torus_classes({Family::Sp, 3, 5})) {
        WeylGroup w(t);
        auto coords = coordinates(t);
        std::vector<long long> vals;
        for (const auto& c : coords) vals.push_back(rng() % coordinate_modulus(t, c));
        auto chi = make_character(t, vals);
        for (int trial = 0; trial < 20; ++trial) {
            auto a = random_weyl_element(w, rng());
            auto b = random_weyl_element(w, rng());
            CHECK(w.act(w.compose(a, b), chi) == w.act(a, w.act(b, chi)));
        }
        CHECK(w.act(w.identity(), chi) == chi);
    }
}

TEST_CASE("ranks and signs") {
    TorusDatum aniso{{Family::Sp, 2, 3}, {}, {{1, 2}}};
    CHECK(torus_rank(aniso) == 0);
    TorusDatum split{{Family::GL, 4, 3}, {{1, 4}}, {}};
    CHECK(torus_rank(split) == 4);
    CHECK(sign_e(aniso, aniso) == 1);
    TorusDatum mixed{{Family::Sp, 2, 3}, {{1, 1}}, {{1, 1}}};
    CHECK(torus_rank(mixed) == 1);
    CHECK(sign_e(aniso, mixed) == -1);
    TorusDatum other{{Family::GL, 4, 5}, {{1, 4}}, {}};
    CHECK_THROWS_AS(sign_e(split, other), UsageError);
    CHECK_THROWS_AS(check_torus(TorusDatum{{Family::Sp, 2, 3}, {{1, 1}}, {}}), UsageError);
    CHECK_THROWS_AS(check_torus(TorusDatum{{Family::U, 2, 3}, {{1, 2}}, {}}), UsageError);
    CHECK_THROWS_AS(check_torus(TorusDatum{{Family::GL, 2, 3}, {}, {{2, 1}}}), UsageError);
}

TEST_CASE("regular characters") {
    TorusDatum gl1{{Family::GL, 1, 5}, {{1, 1}}, {}};
    CHECK(is_regular_character(gl1, make_character(gl1, {0})));
    CHECK(is_regular_character(gl1, make_character(gl1, {3})));
    // Sp_2 split at q=3: inversion acts trivially on Z/2, nothing regular.
    TorusDatum sp1{{Family::Sp, 1, 3}, {{1, 1}}, {}};
    CHECK_FALSE(is_regular_character(sp1, make_character(sp1, {0})));
    CHECK_FALSE(is_regular_character(sp1, make_character(sp1, {1})));
    TorusDatum sp1b{{Family::Sp, 1, 7}, {{1, 1}}, {}};
    CHECK_FALSE(is_regular_character(sp1b, make_character(sp1b, {0})));
    CHECK(is_regular_character(sp1b, make_character(sp1b, {1})));
    TorusDatum spn{{Family::Sp, 1, 5}, {}, {{1, 1}}};
    CHECK(is_regular_character(spn, make_character(spn, {1})));
    CHECK_FALSE(is_regular_character(spn, make_character(spn, {0})));
    CHECK_FALSE(is_regular_character(spn, make_character(spn, {3})));  // 5*3 = 3 mod 6
}

TEST_CASE("block swap and twist examples") {
    TorusDatum t{{Family::U, 2, 3}, {}, {{1, 2}}};
    WeylGroup w(t);
    auto chi = make_character(t, {1, 2});
    bool found_swap = false;
    for (const auto& e : w.elements())
        if (w.act(e, chi).values == std::vector<long long>{2, 1}) found_swap = true;
    CHECK(found_swap);

    TorusDatum sp{{Family::Sp, 1, 7}, {{1, 1}}, {}};
    WeylGroup wsp(sp);
    auto c = make_character(sp, {2});
    bool found_inv = false;
    for (const auto& e : wsp.elements())
        if (wsp.act(e, c).values == std::vector<long long>{4}) found_inv = true;
    CHECK(found_inv);  // -2 mod 6

    CHECK_THROWS_AS(w.act(wsp.elements()[0], chi), UsageError);
}

TEST_CASE("enumeration cap") {
    TorusDatum big{{Family::Sp, 12, 3}, {{1, 12}}, {}};
    WeylGroup w(big);  // order 12! * 2^12
    CHECK_THROWS_AS(w.elements(), SizeError);
}
