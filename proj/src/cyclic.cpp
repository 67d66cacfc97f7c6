#include "fjm/cyclic.hpp"

namespace fjm {

const char* family_name(Family f) {
    switch (f) {
        case Family::Sp: return "Sp";
        case Family::U: return "U";
        case Family::GL: return "GL";
    }
    return "?";
}

const char* kind_name(FactorKind k) {
    return k == FactorKind::Split ? "split" : "norm_one";
}

void check_field(long long q) {
    if (q < 3 || q % 2 == 0) throw UsageError("q must be an odd prime power >= 3");
    long long m = q, p = 0;
    for (long long d = 3; d * d <= m; d += 2)
        if (m % d == 0) { p = d; break; }
    if (p == 0) p = m;  // q itself prime
    while (m % p == 0) m /= p;
    if (m != 1) throw UsageError("q must be an odd prime power >= 3");
}

long long factor_order(FactorKind kind, int j, long long q) {
    check_field(q);
    if (j < 1) throw UsageError("factor parameter j must be >= 1");
    long long qj = pow_ll(q, j);
    return kind == FactorKind::Split ? qj - 1 : qj + 1;
}

long long quadratic_char_index(FactorKind kind, int j, long long q) {
    return factor_order(kind, j, q) / 2;
}

long long TwistGroup::multiplier(const std::vector<long long>& exps) const {
    if (exps.size() != gens.size()) throw UsageError("twist exponent arity mismatch");
    long long m = mod_reduce(1, modulus);
    for (size_t i = 0; i < gens.size(); ++i) {
        long long e = mod_reduce(exps[i], gens[i].order);
        for (long long k = 0; k < e; ++k)
            m = mod_reduce((__int128)m * gens[i].multiplier % modulus, modulus);
    }
    return m;
}

long long TwistGroup::apply(const std::vector<long long>& exps, long long c) const {
    return mod_reduce((__int128)multiplier(exps) * c % modulus, modulus);
}

std::vector<long long> TwistGroup::multiplier_image() const {
    std::set<long long> img{mod_reduce(1, modulus)};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& g : gens)
            for (long long m : std::vector<long long>(img.begin(), img.end())) {
                long long x = mod_reduce((__int128)m * g.multiplier % modulus, modulus);
                if (img.insert(x).second) grew = true;
            }
    }
    return {img.begin(), img.end()};
}

namespace {

long long mult_order(long long m, long long n) {
    long long x = mod_reduce(m, n), o = 1;
    while (x != 1 % n) {
        x = mod_reduce((__int128)x * m % n, n);
        if (++o > n) throw ConsistencyError("multiplier not a unit");
    }
    return o;
}

}  // namespace

TwistGroup twist_group(Family family, FactorKind kind, int j, long long q) {
    long long n = factor_order(kind, j, q);
    TwistGroup g{family, kind, j, n, {}};
    switch (family) {
        case Family::Sp:
            if (kind == FactorKind::Split) {
                g.gens.push_back({mod_reduce(q, n), j});
                g.gens.push_back({mod_reduce(-1, n), 2});
            } else {
                g.gens.push_back({mod_reduce(q, n), 2LL * j});
            }
            break;
        case Family::GL:
            if (kind != FactorKind::Split)
                throw UsageError("GL tori have no norm-one factors");
            g.gens.push_back({mod_reduce(q, n), j});
            break;
        case Family::U:
            if (kind == FactorKind::Split && j % 2 != 0)
                throw UsageError("U split factors require even j");
            if (kind == FactorKind::NormOne && j % 2 == 0)
                throw UsageError("U norm-one factors require odd j");
            g.gens.push_back({mod_reduce(-q, n), j});
            break;
    }
    // Block-order law: the abstract group has order kappa_G * j, and each
    // declared order must annihilate its multiplier.
    if (g.order() != (long long)kappa(family) * j)
        throw ConsistencyError("twist group order != kappa_G * j");
    for (const auto& gen : g.gens)
        if (gen.order % mult_order(gen.multiplier, n) != 0)
            throw ConsistencyError("twist generator order incompatible with multiplier");
    return g;
}

std::set<long long> orbit(OrbitGroup og, Family family, FactorKind kind, int j,
                          long long q, long long c) {
    long long n = factor_order(kind, j, q);
    c = mod_reduce(c, n);
    std::vector<long long> mults;
    switch (og) {
        case OrbitGroup::Gal:
            mults = {mod_reduce(q, n)};
            break;
        case OrbitGroup::Gamma:
            mults = {mod_reduce(q, n), mod_reduce(-1, n)};
            break;
        case OrbitGroup::GammaG:
            // The multipliers the rational Weyl group realizes on one
            // coordinate: for U this is <x(-q)>, a proper subgroup of
            // what <xq, x(-1)> would give.
            if (family == Family::Sp)
                mults = {mod_reduce(q, n), mod_reduce(-1, n)};
            else if (family == Family::GL)
                mults = {mod_reduce(q, n)};
            else
                mults = {mod_reduce(-q, n)};
            break;
    }
    std::set<long long> orb{c};
    bool grew = true;
    while (grew) {
        grew = false;
        for (long long m : mults)
            for (long long x : std::vector<long long>(orb.begin(), orb.end()))
                if (orb.insert(mod_reduce((__int128)x * m % n, n)).second) grew = true;
    }
    return orb;
}

bool is_regular_residue(int j, long long q, long long s) {
    auto orb = orbit(OrbitGroup::Gal, Family::Sp, FactorKind::NormOne, j, q, s);
    return (long long)orb.size() == 2LL * j;
}

}  // namespace fjm
