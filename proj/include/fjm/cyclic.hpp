#pragma once

// Cyclic character groups of the torus factors f_j^x (Split) and
// f_{2j}^1 (NormOne), together with the Frobenius / inversion twists that
// the rational Weyl groups induce on them.  Characters are residues c mod
// the factor order N, paired against elements a (also residues) by
// <c,a> = exp(2*pi*i*c*a/N).  Everything here is exact modular arithmetic.

#include <set>
#include <vector>

#include "fjm/common.hpp"

namespace fjm {

enum class Family { Sp, U, GL };
enum class FactorKind { Split, NormOne };

const char* family_name(Family f);
const char* kind_name(FactorKind k);

// kappa_G: 2 in type C, 1 in type A.
inline int kappa(Family f) { return f == Family::Sp ? 2 : 1; }

void check_field(long long q);  // odd prime power >= 3

// |f_j^x| = q^j - 1,  |f_{2j}^1| = q^j + 1.
long long factor_order(FactorKind kind, int j, long long q);

// Index of the unique nontrivial quadratic character: N/2.
long long quadratic_char_index(FactorKind kind, int j, long long q);

// One abstract generator of a block twist group together with the
// multiplier it induces on Z/N.  The abstract order may exceed the
// multiplicative order of the multiplier (e.g. inversion on Z/2).
struct TwistGen {
    long long multiplier;  // unit mod N
    long long order;       // abstract order of the generator
};

// The twist group acting on characters of one (kind, j) block.  Elements
// are exponent tuples for the abstract generators; the abstract group is
// the direct product of cyclic groups of the given orders, of total order
// kappa_G * j per the rational Weyl group block law.
struct TwistGroup {
    Family family;
    FactorKind kind;
    int j;
    long long modulus;            // factor order N
    std::vector<TwistGen> gens;

    long long order() const {
        long long o = 1;
        for (const auto& g : gens) o *= g.order;
        return o;
    }

    // Multiplier of the element with the given exponents.
    long long multiplier(const std::vector<long long>& exps) const;

    // Applies the element with the given exponents to a character index.
    long long apply(const std::vector<long long>& exps, long long c) const;

    // Distinct multipliers realized by the group (its image in (Z/N)^x).
    std::vector<long long> multiplier_image() const;
};

// Twist group of a block, per family:
//   Sp/Split(j):   <xq (order j), x(-1) (order 2)>
//   Sp/NormOne(j): <xq (order 2j)>
//   GL/Split(j):   <xq (order j)>
//   U/Split(j even), U/NormOne(j odd): <x(-q) (order j)>
// Asserts the abstract order is kappa_G * j and that each declared
// generator order annihilates its multiplier.
TwistGroup twist_group(Family family, FactorKind kind, int j, long long q);

enum class OrbitGroup { Gal, Gamma, GammaG };

// Orbit of c under <xq> (Gal), <xq, x(-1)> (Gamma), or the family rule
// (GammaG: Gal in type A, Gamma in type C).
std::set<long long> orbit(OrbitGroup g, Family family, FactorKind kind, int j,
                          long long q, long long c);

// True iff s in Z/(q^j+1) ~ f_{2j}^1 generates f_{2j} over f, i.e. its
// <xq>-orbit has the full size 2j.
bool is_regular_residue(int j, long long q, long long s);

}  // namespace fjm
