#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "fjm/engine.hpp"

using namespace fjm;

namespace {

// Independent closed-form oracle on f^x for GL_1: the Weil restriction has
// character omega(a) = theta(a) q^[a=1], so the pairing over the q-1 group
// elements can be summed directly with complex numbers.
long long gl1_pair_bruteforce(long long q, long long chi, long long eta) {
    long long n = q - 1;
    const double pi2 = 6.283185307179586476925286766559;
    double re = 0, im = 0;
    for (long long a = 0; a < n; ++a) {
        double w = (a % 2 ? -1.0 : 1.0) * (a == 0 ? (double)q : 1.0);
        double ang = pi2 * (double)mod_reduce(chi - eta, n) * (double)a / (double)n;
        re += std::cos(ang) * w;
        im += std::sin(ang) * w;
    }
    re /= (double)n;
    im /= (double)n;
    long long r = std::llround(re);
    REQUIRE(std::abs(re - (double)r) < 1e-9);
    REQUIRE(std::abs(im) < 1e-9);
    return r;
}

TorusCharacter random_character(const TorusDatum& t, std::mt19937_64& rng) {
    auto coords = coordinates(t);
    std::vector<long long> v;
    for (const auto& c : coords) v.push_back(rng() % coordinate_modulus(t, c));
    return make_character(t, v);
}

}  // namespace

TEST_CASE("common subtori selection counts") {
    TorusDatum t{{Family::GL, 2, 5}, {{1, 2}}, {}};
    auto sels = common_subtori(t, t);
    CHECK(sels.size() == 4);  // shapes 0,1,1,2

    TorusDatum a{{Family::Sp, 2, 3}, {{2, 1}}, {}};
    TorusDatum b{{Family::Sp, 2, 3}, {}, {{1, 2}}};
    CHECK(common_subtori(a, b).size() == 1);  // disjoint block support

    TorusDatum c{{Family::Sp, 1, 3}, {}, {{1, 1}}};
    TorusDatum d{{Family::Sp, 1, 3}, {{1, 1}}, {}};
    CHECK(common_subtori(c, d).size() == 1);  // kinds differ

    TorusDatum e{{Family::Sp, 3, 3}, {{1, 3}}, {}};
    TorusDatum f{{Family::Sp, 3, 3}, {{1, 1}, {2, 1}}, {}};
    // S = e has 3 copies of j=1; T = f admits nu_1 <= 1: 1 + C(3,1) = 4.
    CHECK(common_subtori(e, f).size() == 4);
}

TEST_CASE("GL_1 closed form, all pairs, both paths") {
    for (long long q : {3LL, 5LL, 7LL}) {
        TorusDatum t{{Family::GL, 1, q}, {{1, 1}}, {}};
        long long theta = (q - 1) / 2;
        for (long long c = 0; c < q - 1; ++c)
            for (long long e = 0; e < q - 1; ++e) {
                auto chi = make_character(t, {c});
                auto eta = make_character(t, {e});
                long long expect = 1 + (mod_reduce(c + theta, q - 1) == e ? 1 : 0);
                CHECK(gl1_pair_bruteforce(q, c, e) == expect);
                auto rep = multiplicity_general(t, chi, t, eta);
                CHECK(rep.total == expect);
                CHECK(multiplicity_regular(t, chi, t, eta) == expect);
            }
    }
}

TEST_CASE("regular and general paths agree") {
    std::mt19937_64 rng(7);
    for (long long q : {3LL, 5LL})
        for (int n = 1; n <= 2; ++n)
            for (Family fam : {Family::Sp, Family::U, Family::GL}) {
                auto classes = enumerate_torus_classes({fam, n, q});
                for (const auto& t : classes)
                    for (const auto& s : classes)
                        for (int trial = 0; trial < 6; ++trial) {
                            auto chi = random_character(t, rng);
                            auto eta = random_character(s, rng);
                            if (!is_regular_character(t, chi) ||
                                !is_regular_character(s, eta))
                                continue;
                            CHECK(multiplicity_general(t, chi, s, eta).total ==
                                  multiplicity_regular(t, chi, s, eta));
                        }
            }
}

TEST_CASE("conjugation invariance") {
    std::mt19937_64 rng(20240818);
    int done = 0;
    while (done < 50) {
        Family fam = std::array{Family::Sp, Family::U, Family::GL}[rng() % 3];
        int n = 1 + (int)(rng() % 3);
        auto classes = enumerate_torus_classes({fam, n, 3});
        const auto& t = classes[rng() % classes.size()];
        const auto& s = classes[rng() % classes.size()];
        auto chi = random_character(t, rng);
        auto eta = random_character(s, rng);
        WeylGroup wt(t), ws(s);
        auto w = random_weyl_element(wt, rng());
        auto v = random_weyl_element(ws, rng());
        auto base = multiplicity_general(t, chi, s, eta);
        auto twisted = multiplicity_general(t, wt.act(w, chi), s, ws.act(v, eta));
        CHECK(base.total == twisted.total);
        ++done;
    }
}

TEST_CASE("intertwining on the anisotropic U_2 torus") {
    TorusDatum t{{Family::U, 2, 3}, {}, {{1, 2}}};
    int checked = 0;
    for (long long c1 = 0; c1 < 4; ++c1)
        for (long long c2 = 0; c2 < 4; ++c2)
            for (long long d1 = 0; d1 < 4; ++d1)
                for (long long d2 = 0; d2 < 4; ++d2) {
                    auto chi = make_character(t, {c1, c2});
                    auto eta = make_character(t, {d1, d2});
                    if (!is_regular_character(t, chi) || !is_regular_character(t, eta))
                        continue;
                    long long m = multiplicity_regular(t, chi, t, eta);
                    bool itw = intertwine(t, chi, t, eta);
                    CHECK(m == (itw ? 0 : 1));
                    CHECK(multiplicity_general(t, chi, t, eta).total == m);
                    ++checked;
                }
    CHECK(checked == 144);  // 12 regular characters, all pairs

    TorusDatum split{{Family::U, 2, 3}, {{2, 1}}, {}};
    CHECK_THROWS_AS(intertwine(split, make_character(split, {0}), split,
                               make_character(split, {0})),
                    UsageError);
}

TEST_CASE("intertwine by direct coordinate match") {
    TorusDatum t{{Family::Sp, 2, 5}, {}, {{1, 2}}};
    // eta * theta' coordinatewise equals chi
    auto eta = make_character(t, {1, 2});
    auto chi = make_character(t, {1 + 3, 2 + 3});
    CHECK(intertwine(t, chi, t, eta));
    // disjoint Galois orbits
    auto eta2 = make_character(t, {0, 0});
    auto chi2 = make_character(t, {1, 5});
    CHECK_FALSE(intertwine(t, chi2, t, eta2));
}

TEST_CASE("anisotropic disjoint-support pairs give the sign") {
    // Sp_3: T = (lambda'_3 = 1), S = (lambda'_1 = 1, lambda'_2 = 1).
    TorusDatum t{{Family::Sp, 3, 3}, {}, {{3, 1}}};
    TorusDatum s{{Family::Sp, 3, 3}, {}, {{1, 1}, {2, 1}}};
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto chi = random_character(t, rng);
        auto eta = random_character(s, rng);
        CHECK(multiplicity_general(t, chi, s, eta).total == sign_e(t, s));
    }
}

TEST_CASE("designation independence of per-selection terms") {
    // For S with two copies, both single-copy selections must produce the
    // same term even for asymmetric characters.
    TorusDatum t{{Family::Sp, 2, 5}, {}, {{1, 2}}};
    auto chi = make_character(t, {1, 4});
    auto eta = make_character(t, {2, 5});
    auto rep = multiplicity_general(t, chi, t, eta);
    REQUIRE(rep.per_selection.size() == 4);
    const SelectionTerm* first = nullptr;
    for (const auto& term : rep.per_selection) {
        auto it = term.shape.find({1, 1});
        if (it != term.shape.end() && it->second == 1) {
            if (!first) first = &term;
            else {
                CHECK(first->count == term.count);
                CHECK(first->divisor == term.divisor);
                CHECK(first->sign == term.sign);
            }
        }
    }
    CHECK(first != nullptr);
}

TEST_CASE("hs bound") {
    CHECK(hs_bound(1) == 2);
    CHECK(hs_bound(2) == 16);
    CHECK(hs_bound(3) == 288);
    auto rep = bound_audit({{"a", 2, -3}, {"b", 2, 7}}, 2);
    CHECK(rep.ok);
    CHECK(rep.max_abs == 7);
    CHECK(rep.sharp_bound == 8);
    CHECK(rep.published_bound == 16);
    CHECK(rep.worst_label == "b");
    auto bad = bound_audit({{"c", 2, 9}}, 2);
    CHECK_FALSE(bad.ok);
}

TEST_CASE("usage and size errors") {
    TorusDatum t{{Family::GL, 1, 5}, {{1, 1}}, {}};
    TorusDatum other{{Family::GL, 1, 7}, {{1, 1}}, {}};
    CHECK_THROWS_AS(multiplicity_general(t, make_character(t, {0}), other,
                                         make_character(other, {0})),
                    UsageError);
    // non-regular input to the regular path
    TorusDatum sp{{Family::Sp, 1, 3}, {{1, 1}}, {}};
    CHECK_THROWS_AS(multiplicity_regular(sp, make_character(sp, {0}), sp,
                                         make_character(sp, {0})),
                    UsageError);
}
