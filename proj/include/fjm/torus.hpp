#pragma once

// F-conjugacy classes of maximal tori as partition pairs, their rational
// Weyl groups as concrete wreath products, and the Weyl action on torus
// characters.

#include <map>
#include <vector>

#include "fjm/cyclic.hpp"

namespace fjm {

struct GroupSpec {
    Family family;
    int n;        // absolute rank
    long long q;  // odd prime power

    bool operator==(const GroupSpec&) const = default;
};

void check_group(const GroupSpec& g);

// Torus class T^F ~ prod_j (f_j^x)^{lambda_j} x (f_{2j}^1)^{lambda'_j}.
// Blocks are kept sorted by (kind, j) with positive multiplicities.
struct TorusDatum {
    GroupSpec group;
    std::map<int, int> split;     // j -> lambda_j
    std::map<int, int> norm_one;  // j -> lambda'_j

    bool operator==(const TorusDatum&) const = default;
};

void check_torus(const TorusDatum& t);

// One cyclic coordinate of a torus: the copy-th factor of the (kind, j)
// block, in the canonical block order (split blocks by ascending j, then
// norm-one blocks by ascending j).
struct TorusCoordinate {
    FactorKind kind;
    int j;
    int copy;

    auto operator<=>(const TorusCoordinate&) const = default;
};

// Canonical coordinate list of a torus.
std::vector<TorusCoordinate> coordinates(const TorusDatum& t);

// Residue tuple over the canonical coordinates.  Serves both as a torus
// character (chi) and as a dual-side semisimple parameter (s); the two
// sides are exchanged coordinatewise by the fixed cyclic self-duality.
struct TorusCharacter {
    TorusDatum torus;
    std::vector<long long> values;  // one residue per canonical coordinate

    bool operator==(const TorusCharacter&) const = default;
};

TorusCharacter make_character(const TorusDatum& t, std::vector<long long> values);
long long coordinate_modulus(const TorusDatum& t, const TorusCoordinate& c);

// All torus classes of the group, deterministically ordered.
std::vector<TorusDatum> enumerate_torus_classes(const GroupSpec& g);

// f-rank: the number of split-kind copies.
int torus_rank(const TorusDatum& t);

// e_{T,S} = (-1)^{rk T + rk S}.
int sign_e(const TorusDatum& t, const TorusDatum& s);

// An element of the rational Weyl group W_G(T)^F = prod over blocks of
// (block twist group) wr S_mult: per block a permutation of the copies and
// an abstract twist-exponent tuple per copy.
struct WeylElement {
    struct Block {
        std::vector<int> perm;                        // copy k -> perm[k]
        std::vector<std::vector<long long>> twists;   // exponents per copy
    };
    std::vector<Block> blocks;  // aligned with block order of the torus
};

// Materialized rational Weyl group with its block twist groups.
class WeylGroup {
public:
    explicit WeylGroup(const TorusDatum& t);

    const TorusDatum& torus() const { return torus_; }
    long long order() const { return order_; }

    // Full element enumeration; throws SizeError above the desk-scale cap.
    const std::vector<WeylElement>& elements() const;

    WeylElement identity() const;
    WeylElement compose(const WeylElement& a, const WeylElement& b) const;

    // ^w chi = chi o Ad(w^{-1}): permutes coordinates within blocks and
    // applies the twist multipliers.
    TorusCharacter act(const WeylElement& w, const TorusCharacter& chi) const;

    static constexpr long long kEnumerationCap = 10'000'000;

private:
    TorusDatum torus_;
    struct BlockInfo {
        FactorKind kind;
        int j;
        int mult;
        TwistGroup twist;
    };
    std::vector<BlockInfo> blocks_;
    long long order_;
    mutable std::vector<WeylElement> elements_;  // lazily materialized

    friend WeylElement random_weyl_element(const WeylGroup&, unsigned long long);
};

bool is_identity(const WeylElement& w);

// Deterministic pseudo-random element (for property tests / audits).
WeylElement random_weyl_element(const WeylGroup& w, unsigned long long seed);

// True iff the stabilizer of chi in W_G(T)^F is trivial.
bool is_regular_character(const TorusDatum& t, const TorusCharacter& chi);

}  // namespace fjm
