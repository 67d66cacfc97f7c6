#include "fjm/engine.hpp"

#include <algorithm>

namespace fjm {

namespace {

int kind_code(FactorKind k) { return k == FactorKind::Split ? 0 : 1; }

// Multiplicity of a (kind, j) block in a torus datum.
int block_mult(const TorusDatum& t, FactorKind kind, int j) {
    const auto& m = kind == FactorKind::Split ? t.split : t.norm_one;
    auto it = m.find(j);
    return it == m.end() ? 0 : it->second;
}

// Offset of the first coordinate of a (kind, j) block in the canonical
// coordinate order.
int block_offset(const TorusDatum& t, FactorKind kind, int j) {
    int off = 0;
    for (auto [jj, mm] : t.split) {
        if (kind == FactorKind::Split && jj == j) return off;
        off += mm;
    }
    if (kind == FactorKind::Split) throw UsageError("block not present");
    for (auto [jj, mm] : t.norm_one) {
        if (jj == j) return off;
        off += mm;
    }
    throw UsageError("block not present");
}

long long factorial(int m) {
    long long f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// |W| of the leftover torus (lambda - nu, lambda' - nu') by the block law.
long long leftover_weyl_order(const TorusDatum& t,
                              const std::map<std::pair<int, int>, int>& shape) {
    long long o = 1;
    int kap = kappa(t.group.family);
    auto add = [&](FactorKind kind, int j, int m) {
        auto it = shape.find({kind_code(kind), j});
        int nu = it == shape.end() ? 0 : it->second;
        int rest = m - nu;
        if (rest < 0) throw ConsistencyError("selection shape exceeds torus block");
        o *= factorial(rest);
        for (int i = 0; i < rest; ++i) o *= (long long)kap * j;
    };
    for (auto [j, m] : t.split) add(FactorKind::Split, j, m);
    for (auto [j, m] : t.norm_one) add(FactorKind::NormOne, j, m);
    return o;
}

}  // namespace

std::vector<SubtorusSelection> common_subtori(const TorusDatum& s, const TorusDatum& t) {
    if (!(s.group == t.group)) throw UsageError("common_subtori: mismatched groups");
    check_torus(s);
    check_torus(t);

    // Per block of S, the list of (subset of copies) with size <= T's mult.
    struct BlockChoices {
        FactorKind kind;
        int j;
        std::vector<std::vector<int>> subsets;
    };
    std::vector<BlockChoices> blocks;
    auto gather = [&](FactorKind kind, int j, int mu) {
        int cap = std::min(mu, block_mult(t, kind, j));
        BlockChoices bc{kind, j, {}};
        for (unsigned mask = 0; mask < (1u << mu); ++mask) {
            if (__builtin_popcount(mask) > cap) continue;
            std::vector<int> subset;
            for (int k = 0; k < mu; ++k)
                if (mask & (1u << k)) subset.push_back(k);
            bc.subsets.push_back(std::move(subset));
        }
        std::sort(bc.subsets.begin(), bc.subsets.end());
        blocks.push_back(std::move(bc));
    };
    for (auto [j, m] : s.split) gather(FactorKind::Split, j, m);
    for (auto [j, m] : s.norm_one) gather(FactorKind::NormOne, j, m);

    std::vector<SubtorusSelection> out;
    std::vector<size_t> idx(blocks.size(), 0);
    while (true) {
        SubtorusSelection sel;
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            const auto& bc = blocks[bi];
            const auto& subset = bc.subsets[idx[bi]];
            if (!subset.empty())
                sel.shape[{kind_code(bc.kind), bc.j}] = (int)subset.size();
            for (size_t k = 0; k < subset.size(); ++k) {
                sel.selected_s.push_back({bc.kind, bc.j, subset[k]});
                sel.designated_t.push_back({bc.kind, bc.j, (int)k});
            }
        }
        out.push_back(std::move(sel));
        size_t bi = 0;
        while (bi < idx.size() && ++idx[bi] == blocks[bi].subsets.size()) idx[bi++] = 0;
        if (bi == idx.size()) break;
    }
    return out;
}

MultiplicityReport multiplicity_general(const TorusDatum& t, const TorusCharacter& chi,
                                        const TorusDatum& s, const TorusCharacter& eta) {
    if (!(s.group == t.group)) throw UsageError("multiplicity: mismatched groups");
    if (!(chi.torus == t) || !(eta.torus == s))
        throw UsageError("multiplicity: characters on wrong tori");

    WeylGroup wt(t), ws(s);
    if (wt.order() > WeylGroup::kEnumerationCap / ws.order())
        throw SizeError("Weyl double sum exceeds the desk-scale cap");

    // Precompute all Weyl translates of chi and eta as value vectors.
    std::vector<std::vector<long long>> chis, etas;
    chis.reserve(wt.order());
    for (const auto& w : wt.elements()) chis.push_back(wt.act(w, chi).values);
    etas.reserve(ws.order());
    for (const auto& v : ws.elements()) etas.push_back(ws.act(v, eta).values);

    auto selections = common_subtori(s, t);
    int base_sign = (torus_rank(t) + torus_rank(s)) % 2;

    MultiplicityReport rep;
    Rat total;
    for (const auto& sel : selections) {
        // Coordinate indices and the theta shift per matched pair.
        std::vector<int> tidx, sidx;
        std::vector<long long> shift, modulus;
        int ell = 0;
        for (size_t k = 0; k < sel.selected_s.size(); ++k) {
            const auto& ct = sel.designated_t[k];
            const auto& cs = sel.selected_s[k];
            tidx.push_back(block_offset(t, ct.kind, ct.j) + ct.copy);
            sidx.push_back(block_offset(s, cs.kind, cs.j) + cs.copy);
            long long n = factor_order(ct.kind, ct.j, t.group.q);
            modulus.push_back(n);
            shift.push_back(n / 2);
            if (ct.kind == FactorKind::NormOne) ++ell;
        }
        long long count = 0;
        for (const auto& cvals : chis)
            for (const auto& evals : etas) {
                bool ok = true;
                for (size_t k = 0; k < tidx.size() && ok; ++k)
                    ok = mod_reduce(cvals[tidx[k]] + shift[k], modulus[k]) ==
                         evals[sidx[k]];
                count += ok;
            }
        int sign = (base_sign + ell) % 2 ? -1 : 1;
        long long divisor = leftover_weyl_order(t, sel.shape) * ws.order();
        total += Rat(sign * count, divisor);
        rep.per_selection.push_back({sel.shape, sign, count, divisor});
    }
    if (!total.is_integer())
        throw ConsistencyError("multiplicity total is not an integer: " + total.str());
    rep.total = total.num();
    return rep;
}

long long multiplicity_regular(const TorusDatum& t, const TorusCharacter& chi,
                               const TorusDatum& s, const TorusCharacter& eta) {
    if (!(s.group == t.group)) throw UsageError("multiplicity: mismatched groups");
    if (!is_regular_character(t, chi) || !is_regular_character(s, eta))
        throw UsageError("multiplicity_regular requires regular characters");

    long long q = t.group.q;
    Family fam = t.group.family;
    int r = 0;
    auto matches = [&](FactorKind kind, int j) {
        // I (or I') for this block: eta coordinates lying in some
        // Gamma_G-orbit of chi * theta.
        int mu = block_mult(s, kind, j);
        int lam = block_mult(t, kind, j);
        if (mu == 0 || lam == 0) return 0;
        long long n = factor_order(kind, j, q);
        std::set<long long> targets;
        int toff = block_offset(t, kind, j);
        for (int l = 0; l < lam; ++l) {
            auto orb = orbit(OrbitGroup::GammaG, fam, kind, j, q,
                             mod_reduce(chi.values[toff + l] + n / 2, n));
            targets.insert(orb.begin(), orb.end());
        }
        int soff = block_offset(s, kind, j);
        int cnt = 0;
        for (int k = 0; k < mu; ++k)
            if (targets.count(eta.values[soff + k])) ++cnt;
        return cnt;
    };
    for (auto [j, m] : s.norm_one)
        if (matches(FactorKind::NormOne, j) > 0) return 0;
    for (auto [j, m] : s.split) r += matches(FactorKind::Split, j);
    return sign_e(t, s) * pow_ll(2, r);
}

bool intertwine(const TorusDatum& t, const TorusCharacter& chi,
                const TorusDatum& s, const TorusCharacter& eta) {
    if (!(s.group == t.group)) throw UsageError("intertwine: mismatched groups");
    if (t.group.family == Family::GL)
        throw UsageError("intertwine is defined for Sp and U only");
    if (torus_rank(t) != 0 || torus_rank(s) != 0)
        throw UsageError("intertwine requires anisotropic tori");
    long long q = t.group.q;
    for (auto [j, mu] : s.norm_one) {
        int lam = block_mult(t, FactorKind::NormOne, j);
        if (lam == 0) continue;
        long long n = factor_order(FactorKind::NormOne, j, q);
        int soff = block_offset(s, FactorKind::NormOne, j);
        int toff = block_offset(t, FactorKind::NormOne, j);
        for (int k = 0; k < mu; ++k) {
            auto orb = orbit(OrbitGroup::GammaG, t.group.family, FactorKind::NormOne, j, q,
                             mod_reduce(eta.values[soff + k] + n / 2, n));
            for (int l = 0; l < lam; ++l)
                if (orb.count(chi.values[toff + l])) return true;
        }
    }
    return false;
}

long long hs_bound(int n) {
    long long f = factorial(n);
    return pow_ll(2, n) * f * f;
}

AuditReport bound_audit(const std::vector<AuditEntry>& entries, int n) {
    AuditReport rep{true, 0, pow_ll(2, n) * factorial(n), hs_bound(n), ""};
    for (const auto& e : entries) {
        long long a = e.value < 0 ? -e.value : e.value;
        if (a > rep.max_abs) {
            rep.max_abs = a;
            rep.worst_label = e.label;
        }
        if (a > rep.sharp_bound) rep.ok = false;
    }
    return rep;
}

}  // namespace fjm
