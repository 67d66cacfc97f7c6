#pragma once

// Closed-form Weil character values on semisimple torus elements.  Values
// are exact integers; the only inputs are the torus datum and the residue
// tuple of the element.

#include "fjm/torus.hpp"

namespace fjm {

// A semisimple element of T^F, written additively per cyclic coordinate.
using TorusPoint = TorusCharacter;

struct WeilValueReport {
    long long value;  // exact character value
    int exponent;     // e = (1/2) dim V^s
    int ell;          // l(T^F, s)
    int theta;        // theta_T(s) = +-1
};

// e = sum of j over coordinates fixing their factor (value 0); each such
// coordinate contributes an f-dimension-2j fixed subspace of V.
int fix_exponent(const TorusDatum& t, const TorusPoint& s);

// Number of norm-one coordinates with non-identity value.
int ell_count(const TorusDatum& t, const TorusPoint& s);

// theta_T(s): product of the per-coordinate quadratic character values.
int theta_value(const TorusDatum& t, const TorusPoint& s);

// Character of the Weil representation at s:
//   Sp: (-1)^ell * theta * q^e
//   U:  (-1)^n * theta * (-q)^e
//   GL: theta * q^e
WeilValueReport weil_char_semisimple(const TorusDatum& t, const TorusPoint& s);

// Multiplies chi by theta_T (shifts every coordinate by the quadratic
// character index).  Defined for U and GL only, where theta_T = chi_G|_T.
TorusCharacter quadratic_twist(const TorusDatum& t, const TorusCharacter& chi);

}  // namespace fjm
