#include "fjm/weil.hpp"

namespace fjm {

namespace {

void check_point(const TorusDatum& t, const TorusPoint& s) {
    if (!(s.torus == t)) throw UsageError("element not on this torus");
    if (s.values.size() != coordinates(t).size())
        throw UsageError("element arity mismatch");
}

}  // namespace

int fix_exponent(const TorusDatum& t, const TorusPoint& s) {
    check_point(t, s);
    auto coords = coordinates(t);
    int e = 0;
    for (size_t i = 0; i < coords.size(); ++i)
        if (s.values[i] == 0) e += coords[i].j;
    return e;
}

int ell_count(const TorusDatum& t, const TorusPoint& s) {
    check_point(t, s);
    auto coords = coordinates(t);
    int l = 0;
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i].kind == FactorKind::NormOne && s.values[i] != 0) ++l;
    return l;
}

int theta_value(const TorusDatum& t, const TorusPoint& s) {
    check_point(t, s);
    // <N/2, a> = (-1)^a per coordinate.
    int sign = 1;
    for (long long a : s.values)
        if (a % 2 != 0) sign = -sign;
    return sign;
}

WeilValueReport weil_char_semisimple(const TorusDatum& t, const TorusPoint& s) {
    int e = fix_exponent(t, s);
    int l = ell_count(t, s);
    int th = theta_value(t, s);
    long long q = t.group.q;
    long long v = 0;
    switch (t.group.family) {
        case Family::Sp:
            v = (l % 2 ? -1 : 1) * th * pow_ll(q, e);
            break;
        case Family::U:
            v = (t.group.n % 2 ? -1 : 1) * th * pow_ll(-q, e);
            break;
        case Family::GL:
            v = th * pow_ll(q, e);
            break;
    }
    return WeilValueReport{v, e, l, th};
}

TorusCharacter quadratic_twist(const TorusDatum& t, const TorusCharacter& chi) {
    if (t.group.family == Family::Sp)
        throw UsageError("quadratic_twist: chi_G is undefined for Sp");
    check_point(t, chi);
    TorusCharacter out = chi;
    auto coords = coordinates(t);
    for (size_t i = 0; i < coords.size(); ++i) {
        long long n = coordinate_modulus(t, coords[i]);
        out.values[i] = mod_reduce(out.values[i] + n / 2, n);
    }
    return out;
}

}  // namespace fjm
