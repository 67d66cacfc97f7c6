#include "fjm/torus.hpp"

#include <algorithm>
#include <random>

namespace fjm {

void check_group(const GroupSpec& g) {
    check_field(g.q);
    if (g.n < 1) throw UsageError("rank n must be >= 1");
}

void check_torus(const TorusDatum& t) {
    check_group(t.group);
    long long total = 0;
    for (auto [j, m] : t.split) {
        if (j < 1 || m < 1) throw UsageError("invalid split block");
        if (t.group.family == Family::U && j % 2 != 0)
            throw UsageError("U split blocks require even j");
        total += (long long)j * m;
    }
    for (auto [j, m] : t.norm_one) {
        if (j < 1 || m < 1) throw UsageError("invalid norm-one block");
        if (t.group.family == Family::GL)
            throw UsageError("GL tori have no norm-one blocks");
        if (t.group.family == Family::U && j % 2 == 0)
            throw UsageError("U norm-one blocks require odd j");
        total += (long long)j * m;
    }
    if (total != t.group.n) throw UsageError("block sizes do not sum to n");
}

std::vector<TorusCoordinate> coordinates(const TorusDatum& t) {
    std::vector<TorusCoordinate> out;
    for (auto [j, m] : t.split)
        for (int k = 0; k < m; ++k) out.push_back({FactorKind::Split, j, k});
    for (auto [j, m] : t.norm_one)
        for (int k = 0; k < m; ++k) out.push_back({FactorKind::NormOne, j, k});
    return out;
}

long long coordinate_modulus(const TorusDatum& t, const TorusCoordinate& c) {
    return factor_order(c.kind, c.j, t.group.q);
}

TorusCharacter make_character(const TorusDatum& t, std::vector<long long> values) {
    check_torus(t);
    auto coords = coordinates(t);
    if (values.size() != coords.size())
        throw UsageError("character arity does not match torus coordinates");
    for (size_t i = 0; i < coords.size(); ++i)
        values[i] = mod_reduce(values[i], coordinate_modulus(t, coords[i]));
    return TorusCharacter{t, std::move(values)};
}

namespace {

// All partitions of n as multiplicity maps j -> count.
void partitions_rec(int n, int maxpart, std::map<int, int>& cur,
                    std::vector<std::map<int, int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int j = std::min(n, maxpart); j >= 1; --j) {
        ++cur[j];
        partitions_rec(n - j, j, cur, out);
        if (--cur[j] == 0) cur.erase(j);
    }
}

std::vector<std::map<int, int>> partitions(int n) {
    std::vector<std::map<int, int>> out;
    std::map<int, int> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

bool parts_all(const std::map<int, int>& p, bool (*pred)(int)) {
    for (auto [j, m] : p)
        if (!pred(j)) return false;
    return true;
}

std::vector<long long> serialize_datum(const TorusDatum& t) {
    std::vector<long long> key;
    for (auto [j, m] : t.split) { key.push_back(0); key.push_back(j); key.push_back(m); }
    for (auto [j, m] : t.norm_one) { key.push_back(1); key.push_back(j); key.push_back(m); }
    return key;
}

}  // namespace

std::vector<TorusDatum> enumerate_torus_classes(const GroupSpec& g) {
    check_group(g);
    std::vector<TorusDatum> out;
    for (int a = 0; a <= g.n; ++a) {
        int b = g.n - a;
        for (const auto& lam : partitions(a)) {
            if (g.family == Family::U &&
                !parts_all(lam, [](int j) { return j % 2 == 0; }))
                continue;
            for (const auto& lamp : partitions(b)) {
                if (g.family == Family::GL && b > 0) continue;
                if (g.family == Family::U &&
                    !parts_all(lamp, [](int j) { return j % 2 != 0; }))
                    continue;
                TorusDatum t{g, lam, lamp};
                check_torus(t);
                out.push_back(std::move(t));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const TorusDatum& x, const TorusDatum& y) {
        return serialize_datum(x) < serialize_datum(y);
    });
    return out;
}

int torus_rank(const TorusDatum& t) {
    int r = 0;
    for (auto [j, m] : t.split) r += m;
    return r;
}

int sign_e(const TorusDatum& t, const TorusDatum& s) {
    if (!(t.group == s.group)) throw UsageError("sign_e: mismatched groups");
    return (torus_rank(t) + torus_rank(s)) % 2 == 0 ? 1 : -1;
}

WeylGroup::WeylGroup(const TorusDatum& t) : torus_(t) {
    check_torus(t);
    order_ = 1;
    auto add_block = [&](FactorKind kind, int j, int m) {
        TwistGroup tw = twist_group(t.group.family, kind, j, t.group.q);
        long long fact = 1;
        for (int i = 2; i <= m; ++i) fact *= i;
        long long block_order = fact;
        for (int i = 0; i < m; ++i) block_order *= tw.order();
        order_ *= block_order;
        blocks_.push_back({kind, j, m, std::move(tw)});
    };
    for (auto [j, m] : t.split) add_block(FactorKind::Split, j, m);
    for (auto [j, m] : t.norm_one) add_block(FactorKind::NormOne, j, m);

    // Block-order law cross-check: prod_j l_j! l'_j! (kappa*j)^{l_j+l'_j}.
    long long expected = 1;
    for (const auto& b : blocks_) {
        long long fact = 1;
        for (int i = 2; i <= b.mult; ++i) fact *= i;
        expected *= fact;
        for (int i = 0; i < b.mult; ++i)
            expected *= (long long)kappa(t.group.family) * b.j;
    }
    if (expected != order_)
        throw ConsistencyError("Weyl group order violates the block-order law");
}

WeylElement WeylGroup::identity() const {
    WeylElement w;
    for (const auto& b : blocks_) {
        WeylElement::Block blk;
        blk.perm.resize(b.mult);
        for (int i = 0; i < b.mult; ++i) blk.perm[i] = i;
        blk.twists.assign(b.mult, std::vector<long long>(b.twist.gens.size(), 0));
        w.blocks.push_back(std::move(blk));
    }
    return w;
}

bool is_identity(const WeylElement& w) {
    for (const auto& b : w.blocks) {
        for (size_t i = 0; i < b.perm.size(); ++i)
            if (b.perm[i] != (int)i) return false;
        for (const auto& tw : b.twists)
            for (long long e : tw)
                if (e != 0) return false;
    }
    return true;
}

WeylElement WeylGroup::compose(const WeylElement& a, const WeylElement& b) const {
    if (a.blocks.size() != blocks_.size() || b.blocks.size() != blocks_.size())
        throw UsageError("foreign Weyl element");
    WeylElement c;
    c.blocks.resize(blocks_.size());
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
        const auto& ga = a.blocks[bi];
        const auto& gb = b.blocks[bi];
        int m = blocks_[bi].mult;
        auto& gc = c.blocks[bi];
        gc.perm.resize(m);
        gc.twists.assign(m, {});
        for (int k = 0; k < m; ++k) {
            // (a*b) acts as b first, then a.
            gc.perm[k] = ga.perm[gb.perm[k]];
            std::vector<long long> e(blocks_[bi].twist.gens.size());
            for (size_t t = 0; t < e.size(); ++t)
                e[t] = mod_reduce(ga.twists[gb.perm[k]][t] + gb.twists[k][t],
                                  blocks_[bi].twist.gens[t].order);
            gc.twists[k] = std::move(e);
        }
    }
    return c;
}

TorusCharacter WeylGroup::act(const WeylElement& w, const TorusCharacter& chi) const {
    if (!(chi.torus == torus_)) throw UsageError("character not on this torus");
    if (w.blocks.size() != blocks_.size()) throw UsageError("foreign Weyl element");
    TorusCharacter out = chi;
    size_t base = 0;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
        const auto& info = blocks_[bi];
        const auto& blk = w.blocks[bi];
        if ((int)blk.perm.size() != info.mult) throw UsageError("foreign Weyl element");
        for (int k = 0; k < info.mult; ++k) {
            long long v = info.twist.apply(blk.twists[k], chi.values[base + k]);
            out.values[base + blk.perm[k]] = v;
        }
        base += info.mult;
    }
    return out;
}

const std::vector<WeylElement>& WeylGroup::elements() const {
    if (!elements_.empty() || order_ == 0) return elements_;
    if (order_ > kEnumerationCap)
        throw SizeError("Weyl group enumeration exceeds the desk-scale cap");
    // Iterate the direct product over blocks of S_m x (twist^m).
    std::vector<std::vector<WeylElement::Block>> per_block;
    for (const auto& info : blocks_) {
        std::vector<WeylElement::Block> blocks;
        std::vector<int> perm(info.mult);
        for (int i = 0; i < info.mult; ++i) perm[i] = i;
        std::vector<long long> orders;
        for (const auto& g : info.twist.gens) orders.push_back(g.order);
        do {
            // enumerate all twist-exponent assignments for this perm
            std::vector<std::vector<long long>> tw(
                info.mult, std::vector<long long>(orders.size(), 0));
            while (true) {
                blocks.push_back({perm, tw});
                bool carry = true;
                for (int k = 0; k < info.mult && carry; ++k)
                    for (size_t t = 0; t < orders.size() && carry; ++t) {
                        if (++tw[k][t] < orders[t]) carry = false;
                        else tw[k][t] = 0;
                    }
                if (carry) break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        per_block.push_back(std::move(blocks));
    }
    elements_.reserve(order_);
    std::vector<size_t> idx(per_block.size(), 0);
    while (true) {
        WeylElement w;
        for (size_t bi = 0; bi < per_block.size(); ++bi)
            w.blocks.push_back(per_block[bi][idx[bi]]);
        elements_.push_back(std::move(w));
        size_t bi = 0;
        while (bi < idx.size() && ++idx[bi] == per_block[bi].size()) idx[bi++] = 0;
        if (bi == idx.size()) break;
        if (idx.empty()) break;
    }
    if ((long long)elements_.size() != order_)
        throw ConsistencyError("Weyl enumeration size mismatch");
    return elements_;
}

WeylElement random_weyl_element(const WeylGroup& g, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    WeylElement w = g.identity();
    for (size_t bi = 0; bi < g.blocks_.size(); ++bi) {
        const auto& info = g.blocks_[bi];
        auto& blk = w.blocks[bi];
        for (int k = info.mult - 1; k > 0; --k)
            std::swap(blk.perm[k], blk.perm[rng() % (k + 1)]);
        for (int k = 0; k < info.mult; ++k)
            for (size_t t = 0; t < info.twist.gens.size(); ++t)
                blk.twists[k][t] = rng() % info.twist.gens[t].order;
    }
    return w;
}

bool is_regular_character(const TorusDatum& t, const TorusCharacter& chi) {
    WeylGroup w(t);
    for (const auto& e : w.elements()) {
        if (is_identity(e)) continue;
        if (w.act(e, chi) == chi) return false;
    }
    return true;
}

}  // namespace fjm
