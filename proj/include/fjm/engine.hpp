#pragma once

// The Fourier-Jacobi multiplicity of two Deligne-Lusztig characters:
// the general double-sum formula over common sub-torus selections, the
// fast path for regular characters, the intertwining predicate for the
// anisotropic case, and the type-A multiplicity bound audit.

#include <string>

#include "fjm/weil.hpp"

namespace fjm {

// A common sub-torus of S and T: a subset of S's coordinates whose shape
// fits componentwise inside T's partition data, matched against the
// canonical first copies of the corresponding T blocks.
struct SubtorusSelection {
    std::vector<TorusCoordinate> selected_s;
    std::vector<TorusCoordinate> designated_t;
    std::map<std::pair<int, int>, int> shape;  // (kind, j) -> count
};

std::vector<SubtorusSelection> common_subtori(const TorusDatum& s,
                                              const TorusDatum& t);

struct SelectionTerm {
    std::map<std::pair<int, int>, int> shape;
    int sign;            // (-1)^{rkT + rkS + l(Z)}
    long long count;     // matched (w, v) pairs
    long long divisor;   // |W_{G_j}(T_j)^F| * |W_G(S)^F|
};

struct MultiplicityReport {
    long long total;  // exact integer
    std::vector<SelectionTerm> per_selection;
};

// Theorem-level multiplicity  < R_{T,chi} (x) omega^dual , R_{S,eta} >.
MultiplicityReport multiplicity_general(const TorusDatum& t, const TorusCharacter& chi,
                                        const TorusDatum& s, const TorusCharacter& eta);

// Closed form for regular characters: e_{T,S} * 2^r when no norm-one
// matches exist, otherwise 0.
long long multiplicity_regular(const TorusDatum& t, const TorusCharacter& chi,
                               const TorusDatum& s, const TorusCharacter& eta);

// Anisotropic intertwining: some chi coordinate lies in the conjugation
// orbit of an eta coordinate shifted by the quadratic character.  Forces
// multiplicity 0 for regular pairs.
bool intertwine(const TorusDatum& t, const TorusCharacter& chi,
                const TorusDatum& s, const TorusCharacter& eta);

// 2^n * (n!)^2, the published type-A bound.
long long hs_bound(int n);

struct AuditEntry {
    std::string label;
    int n;
    long long value;
};

struct AuditReport {
    bool ok;
    long long max_abs;
    long long sharp_bound;      // 2^n * n!, the proof-level estimate
    long long published_bound;  // hs_bound(n)
    std::string worst_label;
};

// Checks |value| <= 2^n * n! for every entry (all entries share n).
AuditReport bound_audit(const std::vector<AuditEntry>& entries, int n);

}  // namespace fjm
