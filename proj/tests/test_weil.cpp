#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fjm/weil.hpp"

using namespace fjm;

TEST_CASE("fix exponent") {
    TorusDatum t{{Family::Sp, 2, 3}, {}, {{2, 1}}};
    CHECK(fix_exponent(t, make_character(t, {0})) == 2);
    CHECK(fix_exponent(t, make_character(t, {3})) == 0);

    TorusDatum mixed{{Family::Sp, 2, 3}, {{1, 1}}, {{1, 1}}};
    CHECK(fix_exponent(mixed, make_character(mixed, {0, 1})) == 1);
    CHECK(fix_exponent(mixed, make_character(mixed, {0, 0})) == 2);
}

TEST_CASE("ell count") {
    TorusDatum t{{Family::Sp, 3, 3}, {{1, 1}}, {{1, 2}}};
    CHECK(ell_count(t, make_character(t, {0, 0, 0})) == 0);
    CHECK(ell_count(t, make_character(t, {1, 1, 1})) == 2);
    CHECK(ell_count(t, make_character(t, {1, 0, 3})) == 1);
    TorusDatum gl{{Family::GL, 2, 5}, {{2, 1}}, {}};
    CHECK(ell_count(gl, make_character(gl, {7})) == 0);
}

TEST_CASE("weil character values") {
    for (Family fam : {Family::Sp, Family::U, Family::GL})
        for (long long q : {3LL, 5LL})
            for (int n = 1; n <= 3; ++n)
                for (const auto& t : enumerate_torus_classes({fam, n, q})) {
                    auto id = make_character(t, std::vector<long long>(coordinates(t).size(), 0));
                    auto rep = weil_char_semisimple(t, id);
                    CHECK(rep.value == pow_ll(q, n));
                    CHECK(rep.exponent == n);
                    CHECK(rep.ell == 0);
                }

    // Sp_2, norm-one torus, s not 1 or -1: value -theta'(s).
    TorusDatum spn{{Family::Sp, 1, 5}, {}, {{1, 1}}};
    auto r = weil_char_semisimple(spn, make_character(spn, {1}));
    CHECK(r.value == 1);  // -(-1)^1
    CHECK(r.exponent == 0);
    CHECK(r.ell == 1);
    auto r2 = weil_char_semisimple(spn, make_character(spn, {2}));
    CHECK(r2.value == -1);

    // GL_1, q=5, s = a != 1: value theta(a).
    TorusDatum gl1{{Family::GL, 1, 5}, {{1, 1}}, {}};
    CHECK(weil_char_semisimple(gl1, make_character(gl1, {1})).value == -1);
    CHECK(weil_char_semisimple(gl1, make_character(gl1, {2})).value == 1);
    CHECK(weil_char_semisimple(gl1, make_character(gl1, {0})).value == 5);

    // magnitude law on tori: |value| = q^e
    for (long long q : {3LL, 5LL})
        for (const auto& t : enumerate_torus_classes({Family::U, 2, q})) {
            auto coords = coordinates(t);
            std::vector<long long> mods;
            for (const auto& c : coords) mods.push_back(coordinate_modulus(t, c));
            std::vector<long long> v(coords.size(), 0);
            while (true) {
                auto rep = weil_char_semisimple(t, make_character(t, v));
                long long a = rep.value < 0 ? -rep.value : rep.value;
                CHECK(a == pow_ll(q, rep.exponent));
                size_t i = 0;
                while (i < v.size() && ++v[i] == mods[i]) v[i++] = 0;
                if (i == v.size()) break;
            }
        }
}

TEST_CASE("minus one lies on both tori of Sp_2 with one value") {
    for (long long q : {3LL, 5LL, 7LL}) {
        TorusDatum split{{Family::Sp, 1, q}, {{1, 1}}, {}};
        TorusDatum norm{{Family::Sp, 1, q}, {}, {{1, 1}}};
        auto vs = weil_char_semisimple(split, make_character(split, {(q - 1) / 2}));
        auto vn = weil_char_semisimple(norm, make_character(norm, {(q + 1) / 2}));
        CHECK(vs.value == vn.value);
    }
}

TEST_CASE("quadratic twist") {
    TorusDatum gl1{{Family::GL, 1, 5}, {{1, 1}}, {}};
    auto chi = make_character(gl1, {1});
    auto tw = quadratic_twist(gl1, chi);
    CHECK(tw.values == std::vector<long long>{3});
    CHECK(quadratic_twist(gl1, tw) == chi);

    auto triv = make_character(gl1, {0});
    CHECK(quadratic_twist(gl1, triv).values == std::vector<long long>{2});

    TorusDatum sp{{Family::Sp, 1, 5}, {{1, 1}}, {}};
    CHECK_THROWS_AS(quadratic_twist(sp, make_character(sp, {0})), UsageError);

    TorusDatum u{{Family::U, 2, 3}, {}, {{1, 2}}};
    auto uchi = make_character(u, {1, 3});
    CHECK(quadratic_twist(u, quadratic_twist(u, uchi)) == uchi);
}
