#include "fjm/oracle/dltable.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fjm::oracle {

namespace {

const double kTau = 6.283185307179586476925286766559;

cplx unit_phase(long long c, long long a, long long n) {
    double ang = kTau * (double)mod_reduce((long long)((__int128)c * a % n), n) / (double)n;
    return cplx(std::cos(ang), std::sin(ang));
}

cplx chi_value(const std::vector<long long>& chi, const std::vector<long long>& pt,
               const std::vector<long long>& moduli) {
    cplx v(1, 0);
    for (size_t i = 0; i < chi.size(); ++i) v *= unit_phase(chi[i], pt[i], moduli[i]);
    return v;
}

bool next_tuple(std::vector<long long>& t, const std::vector<long long>& moduli) {
    size_t i = 0;
    while (i < t.size() && ++t[i] == moduli[i]) t[i++] = 0;
    return i < t.size();
}

int f_rank(const GroupSpec& g) {
    switch (g.family) {
        case Family::Sp: return g.n;
        case Family::GL: return g.n;
        case Family::U: return g.n / 2;
    }
    return 0;
}

// ---- small linear algebra over F_p for basis changes -------------------

using Vec = std::array<long long, kMaxDim>;

long long form_eval(const Fq& f, const std::vector<Vec>& gram, int m, const Vec& u,
                    const Vec& v) {
    long long acc = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            acc = f.add(acc, f.mul(f.mul(u[i], gram[i][j]), v[j]));
    return acc;
}

// Columns (e_1..e_k, f_1..f_k) with B(e_i, f_j) = delta_ij for an
// alternating nondegenerate Gram matrix.
Mat symplectic_basis(const Fq& f, const std::vector<Vec>& gram, int m) {
    std::vector<Vec> pool;
    for (int i = 0; i < m; ++i) {
        Vec v{};
        v[i] = 1;
        pool.push_back(v);
    }
    std::vector<Vec> es, fs;
    while (!pool.empty()) {
        Vec v = pool[0];
        int wi = -1;
        for (size_t k = 1; k < pool.size(); ++k)
            if (form_eval(f, gram, m, v, pool[k]) != 0) { wi = (int)k; break; }
        if (wi < 0) throw ConsistencyError("degenerate form in symplectic basis search");
        Vec w = pool[wi];
        long long ci = f.inv(form_eval(f, gram, m, v, w));
        for (int i = 0; i < m; ++i) w[i] = f.mul(w[i], ci);
        std::vector<Vec> rest;
        for (size_t k = 1; k < pool.size(); ++k) {
            if ((int)k == wi) continue;
            Vec u = pool[k];
            long long a = form_eval(f, gram, m, u, w);
            long long bb = form_eval(f, gram, m, u, v);
            for (int i = 0; i < m; ++i)
                u[i] = f.add(f.sub(u[i], f.mul(a, v[i])), f.mul(bb, w[i]));
            rest.push_back(u);
        }
        es.push_back(v);
        fs.push_back(w);
        pool = std::move(rest);
    }
    Mat cmat;
    cmat.n = m;
    for (int k = 0; k < (int)es.size(); ++k)
        for (int i = 0; i < m; ++i) {
            cmat.set(i, k, es[k][i]);
            cmat.set(i, (int)es.size() + k, fs[k][i]);
        }
    return cmat;
}

// multiplication matrix of c in F_{p^2} on the basis {1, t}
Mat mul_matrix(const Fq& f2, long long c) {
    long long p = f2.p();
    long long c0 = c % p, c1 = c / p;
    Mat m;
    m.n = 2;
    m.set(0, 0, c0);
    m.set(0, 1, f2.nonsquare() * c1 % p);
    m.set(1, 0, c1);
    m.set(1, 1, c0);
    return m;
}

// ---- F_{q^4} as pairs over F_{q^2}: just enough for the elliptic torus --

struct Ext4 {
    const Fq* f2;
    long long s;  // adjoined u has u^2 = s, a nonsquare of F_{q^2}

    using E = std::pair<long long, long long>;
    E mul(const E& x, const E& y) const {
        return {f2->add(f2->mul(x.first, y.first), f2->mul(s, f2->mul(x.second, y.second))),
                f2->add(f2->mul(x.first, y.second), f2->mul(x.second, y.first))};
    }
    E conj(const E& x) const { return {x.first, f2->neg(x.second)}; }
    long long norm(const E& x) const {
        E n = mul(x, conj(x));
        if (n.second != 0) throw ConsistencyError("norm left the subfield");
        return n.first;
    }
    long long trace_to_fq(const E& x) const {
        // Tr_{F_{q^4}/F_q} = Tr_{F_{q^2}/F_q} o Tr_{F_{q^4}/F_{q^2}}
        return f2->trace(f2->add(x.first, conj(x).first)) % f2->p();
    }
};

}  // namespace

int OracleGroup::torus_index(const TorusDatum& datum) const {
    for (int i = 0; i < (int)tori.size(); ++i)
        if (tori[i].datum == datum) return i;
    throw UsageError("torus class not found");
}

Oracle::Oracle(long long psi_amp) : amp_(psi_amp) {}

const AdditiveCharacter& Oracle::psi(long long p) {
    auto it = psis_.find(p);
    if (it == psis_.end()) {
        auto f = fields_.find(p * 10 + 1);
        if (f == fields_.end())
            f = fields_.emplace(p * 10 + 1, std::make_shared<Fq>(p, 1)).first;
        it = psis_.emplace(p, std::make_shared<AdditiveCharacter>(f->second, amp_)).first;
    }
    return *it->second;
}

Oracle::Bundle& Oracle::bundle(const GroupSpec& spec) {
    auto key = std::make_tuple((int)spec.family, spec.n, spec.q);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        it = cache_.emplace(std::piecewise_construct, std::forward_as_tuple(key),
                            std::forward_as_tuple()).first;
        build_group(it->second, spec);
    }
    return it->second;
}

const OracleGroup& Oracle::group(const GroupSpec& spec) { return bundle(spec).og; }

const WeilData& Oracle::weil_matrices(const GroupSpec& sp_spec) {
    if (sp_spec.family != Family::Sp) throw UsageError("weil_matrices wants Sp");
    auto key = std::make_pair(sp_spec.n, sp_spec.q);
    auto it = weil_mats_.find(key);
    if (it == weil_mats_.end()) {
        const auto& og = group(sp_spec);
        it = weil_mats_
                 .emplace(key, schrodinger_weil(*og.group, sp_spec.n, psi(sp_spec.q), true))
                 .first;
    }
    return it->second;
}

void Oracle::build_group(Bundle& b, const GroupSpec& spec) {
    check_group(spec);
    OracleGroup& og = b.og;
    og.spec = spec;
    long long q = spec.q;

    auto field = [&](long long p, int d) {
        auto key = p * 10 + d;
        auto it = fields_.find(key);
        if (it == fields_.end()) it = fields_.emplace(key, std::make_shared<Fq>(p, d)).first;
        return it->second;
    };

    bool supported =
        (spec.family == Family::Sp && spec.n == 1 && (q == 3 || q == 5 || q == 7)) ||
        (spec.family == Family::Sp && spec.n == 2 && q == 3) ||
        (spec.family == Family::GL && spec.n == 1 && (q == 3 || q == 5 || q == 7)) ||
        (spec.family == Family::GL && spec.n == 2 && (q == 3 || q == 5)) ||
        (spec.family == Family::U && spec.n == 1 && (q == 3 || q == 5)) ||
        (spec.family == Family::U && spec.n == 2 && q == 3);
    if (!supported) throw SizeError("group is outside the supported oracle list");

    auto f1 = field(q, 1);
    auto f2 = field(q, 2);

    if (spec.family == Family::Sp && spec.n == 1) {
        Mat a = mat_identity(2);
        a.set(0, 0, f1->generator());
        a.set(1, 1, f1->inv(f1->generator()));
        Mat u = mat_identity(2);
        u.set(0, 1, 1);
        Mat w;
        w.n = 2;
        w.set(0, 1, 1);
        w.set(1, 0, f1->neg(1));
        og.fmat = f1;
        og.group = std::make_shared<MatGroup>(
            MatGroup::from_generators(f1, {a, u, w}, q * (q * q - 1)));
    } else if (spec.family == Family::Sp && spec.n == 2) {
        std::vector<Mat> gens;
        auto addm = [&](const Mat& a) {
            Mat g;
            g.n = 4;
            Mat ai = mat_inverse(*f1, a);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    g.set(i, j, a.at(i, j));
                    g.set(2 + i, 2 + j, ai.at(j, i));
                }
            gens.push_back(g);
        };
        Mat a = mat_identity(2);
        a.set(0, 0, f1->generator());
        addm(a);
        Mat t = mat_identity(2);
        t.set(0, 1, 1);
        addm(t);
        Mat s;
        s.n = 2;
        s.set(0, 1, 1);
        s.set(1, 0, 1);
        addm(s);
        for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {0, 1}}) {
            Mat g = mat_identity(4);
            g.set(r, 2 + c, 1);
            g.set(c, 2 + r, 1);
            gens.push_back(g);
        }
        Mat w;
        w.n = 4;
        for (int i = 0; i < 2; ++i) {
            w.set(i, 2 + i, 1);
            w.set(2 + i, i, f1->neg(1));
        }
        gens.push_back(w);
        long long q2 = q * q, q4 = q2 * q2;
        og.fmat = f1;
        og.group = std::make_shared<MatGroup>(
            MatGroup::from_generators(f1, gens, q4 * (q2 - 1) * (q4 - 1)));
    } else if (spec.family == Family::GL) {
        og.fmat = f1;
        if (spec.n == 1) {
            std::vector<Mat> els;
            for (long long x = 1; x < q; ++x) {
                Mat m;
                m.n = 1;
                m.set(0, 0, x);
                els.push_back(m);
            }
            og.group = std::make_shared<MatGroup>(MatGroup::from_elements(f1, els));
        } else {
            Mat a = mat_identity(2);
            a.set(0, 0, f1->generator());
            Mat t = mat_identity(2);
            t.set(0, 1, 1);
            Mat s;
            s.n = 2;
            s.set(0, 1, 1);
            s.set(1, 0, 1);
            og.group = std::make_shared<MatGroup>(MatGroup::from_generators(
                f1, {a, t, s}, (q * q - 1) * (q * q - q)));
        }
    } else {
        og.fmat = f2;
        if (spec.n == 1) {
            std::vector<Mat> els;
            for (long long c = 0; c <= q; ++c) {
                Mat m;
                m.n = 1;
                m.set(0, 0, f2->from_dlog((q - 1) * c));
                els.push_back(m);
            }
            og.group = std::make_shared<MatGroup>(MatGroup::from_elements(f2, els));
        } else {
            long long g2 = f2->generator();
            Mat a;
            a.n = 2;
            a.set(0, 0, g2);
            a.set(1, 1, f2->inv(f2->frob(g2)));
            Mat u = mat_identity(2);
            u.set(0, 1, 1);
            Mat w;
            w.n = 2;
            w.set(0, 1, 1);
            w.set(1, 0, f2->neg(1));
            og.group = std::make_shared<MatGroup>(MatGroup::from_generators(
                f2, {a, u, w}, q * (q - 1) * (q + 1) * (q + 1)));
            Mat J = w;
            for (const auto& m : og.group->elements()) {
                Mat mb;
                mb.n = 2;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) mb.set(i, j, f2->frob(m.at(j, i)));
                if (!mat_equal(mat_mul(*f2, mat_mul(*f2, m, J), mb), J))
                    throw ConsistencyError("element violates the Hermitian form");
            }
        }
    }

    // ---- torus realizations, aligned with the engine catalog -----------
    auto classes = enumerate_torus_classes(spec);
    for (const auto& datum : classes) {
        TorusRealization tr;
        tr.datum = datum;
        auto coords = coordinates(datum);
        for (const auto& c : coords) tr.moduli.push_back(coordinate_modulus(datum, c));

        std::function<Mat(const std::vector<long long>&)> embed;
        const Fq& F1 = *f1;
        const Fq& F2 = *f2;
        long long qq = q;
        if (spec.family == Family::GL && spec.n == 1) {
            embed = [&F1](const std::vector<long long>& r) {
                Mat m;
                m.n = 1;
                m.set(0, 0, F1.from_dlog(r[0]));
                return m;
            };
        } else if (spec.family == Family::GL && spec.n == 2) {
            if (datum.split.count(1)) {
                embed = [&F1](const std::vector<long long>& r) {
                    Mat m;
                    m.n = 2;
                    m.set(0, 0, F1.from_dlog(r[0]));
                    m.set(1, 1, F1.from_dlog(r[1]));
                    return m;
                };
            } else {
                embed = [&F2](const std::vector<long long>& r) {
                    return mul_matrix(F2, F2.from_dlog(r[0]));
                };
            }
        } else if (spec.family == Family::Sp && spec.n == 1) {
            if (datum.split.count(1)) {
                embed = [&F1](const std::vector<long long>& r) {
                    Mat m;
                    m.n = 2;
                    m.set(0, 0, F1.from_dlog(r[0]));
                    m.set(1, 1, F1.from_dlog(-r[0]));
                    return m;
                };
            } else {
                embed = [&F2, qq](const std::vector<long long>& r) {
                    return mul_matrix(F2, F2.from_dlog((qq - 1) * r[0]));
                };
            }
        } else if (spec.family == Family::U && spec.n == 1) {
            embed = [&F2, qq](const std::vector<long long>& r) {
                Mat m;
                m.n = 1;
                m.set(0, 0, F2.from_dlog((qq - 1) * r[0]));
                return m;
            };
        } else if (spec.family == Family::U && spec.n == 2) {
            if (datum.split.count(2)) {
                embed = [&F2](const std::vector<long long>& r) {
                    long long a = F2.from_dlog(r[0]);
                    Mat m;
                    m.n = 2;
                    m.set(0, 0, a);
                    m.set(1, 1, F2.inv(F2.frob(a)));
                    return m;
                };
            } else {
                Mat J;
                J.n = 2;
                J.set(0, 1, 1);
                J.set(1, 0, f2->neg(1));
                auto hform = [&F2, J](const std::array<long long, 2>& u,
                                      const std::array<long long, 2>& v) {
                    long long acc = 0;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            acc = F2.add(acc,
                                         F2.mul(F2.mul(u[i], J.at(i, j)), F2.frob(v[j])));
                    return acc;
                };
                std::array<long long, 2> v1{}, v2{};
                bool found = false;
                for (long long x = 0; x < F2.q() && !found; ++x) {
                    v1 = {1, x};
                    if (hform(v1, v1) != 0) found = true;
                }
                if (!found) throw ConsistencyError("no anisotropic line");
                found = false;
                for (long long x = 0; x < F2.q() && !found; ++x)
                    for (long long y = 0; y < F2.q() && !found; ++y) {
                        if (x == 0 && y == 0) continue;
                        v2 = {x, y};
                        if (hform(v1, v2) == 0 && hform(v2, v2) != 0) found = true;
                    }
                if (!found) throw ConsistencyError("no orthogonal complement line");
                Mat P;
                P.n = 2;
                P.set(0, 0, v1[0]);
                P.set(1, 0, v1[1]);
                P.set(0, 1, v2[0]);
                P.set(1, 1, v2[1]);
                Mat Pinv = mat_inverse(F2, P);
                embed = [&F2, P, Pinv, qq](const std::vector<long long>& r) {
                    Mat d;
                    d.n = 2;
                    d.set(0, 0, F2.from_dlog((qq - 1) * r[0]));
                    d.set(1, 1, F2.from_dlog((qq - 1) * r[1]));
                    return mat_mul(F2, P, mat_mul(F2, d, Pinv));
                };
            }
        } else {  // Sp, n = 2
            bool split2 = datum.split.count(1) && datum.split.at(1) == 2;
            bool mixed = datum.split.count(1) && datum.norm_one.count(1);
            bool gl2ell = datum.split.count(2) > 0;
            bool aniso11 = datum.norm_one.count(1) && datum.norm_one.at(1) == 2;
            auto place_plane = [](Mat& g, int plane, const Mat& blk) {
                int i0 = plane, i1 = plane + 2;
                g.set(i0, i0, blk.at(0, 0));
                g.set(i0, i1, blk.at(0, 1));
                g.set(i1, i0, blk.at(1, 0));
                g.set(i1, i1, blk.at(1, 1));
            };
            if (split2) {
                embed = [&F1](const std::vector<long long>& r) {
                    Mat m;
                    m.n = 4;
                    m.set(0, 0, F1.from_dlog(r[0]));
                    m.set(1, 1, F1.from_dlog(r[1]));
                    m.set(2, 2, F1.from_dlog(-r[0]));
                    m.set(3, 3, F1.from_dlog(-r[1]));
                    return m;
                };
            } else if (mixed) {
                embed = [&F1, &F2, qq, place_plane](const std::vector<long long>& r) {
                    Mat m;
                    m.n = 4;
                    m.set(0, 0, F1.from_dlog(r[0]));
                    m.set(2, 2, F1.from_dlog(-r[0]));
                    place_plane(m, 1, mul_matrix(F2, F2.from_dlog((qq - 1) * r[1])));
                    return m;
                };
            } else if (gl2ell) {
                embed = [&F1, &F2](const std::vector<long long>& r) {
                    Mat a = mul_matrix(F2, F2.from_dlog(r[0]));
                    Mat ai = mat_inverse(F1, a);
                    Mat m;
                    m.n = 4;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            m.set(i, j, a.at(i, j));
                            m.set(2 + i, 2 + j, ai.at(j, i));
                        }
                    return m;
                };
            } else if (aniso11) {
                tr.dl_covered = false;
                embed = [&F2, qq, place_plane](const std::vector<long long>& r) {
                    Mat m;
                    m.n = 4;
                    place_plane(m, 0, mul_matrix(F2, F2.from_dlog((qq - 1) * r[0])));
                    place_plane(m, 1, mul_matrix(F2, F2.from_dlog((qq - 1) * r[1])));
                    return m;
                };
            } else {
                tr.dl_covered = false;
                Ext4 ext{f2.get(), f2->generator()};
                Ext4::E gen{0, 0};
                long long target = q * q + 1;
                for (long long x0 = 0; x0 < F2.q() && gen == Ext4::E{0, 0}; ++x0)
                    for (long long x1 = 0; x1 < F2.q(); ++x1) {
                        if (x0 == 0 && x1 == 0) continue;
                        Ext4::E cand{x0, x1};
                        Ext4::E nrm = ext.mul(cand, ext.conj(cand));
                        if (!(nrm == Ext4::E{1, 0})) continue;
                        Ext4::E acc = cand;
                        long long o = 1;
                        while (!(acc == Ext4::E{1, 0})) {
                            acc = ext.mul(acc, cand);
                            ++o;
                        }
                        if (o == target) { gen = cand; break; }
                    }
                if (gen == Ext4::E{0, 0})
                    throw ConsistencyError("no norm-one generator in F_{q^4}");
                Ext4::E uu{0, 1};
                std::array<Ext4::E, 4> fbasis = {Ext4::E{1, 0}, Ext4::E{qq, 0},
                                                 Ext4::E{0, 1}, Ext4::E{0, qq}};
                std::vector<Vec> gram(4, Vec{});
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        gram[i][j] = ext.trace_to_fq(
                            ext.mul(uu, ext.mul(fbasis[i], ext.conj(fbasis[j]))));
                Mat C = symplectic_basis(F1, gram, 4);
                Mat Cinv = mat_inverse(F1, C);
                embed = [&F1, ext, gen, fbasis, C, Cinv, qq,
                         target](const std::vector<long long>& r) {
                    Ext4::E x{1, 0};
                    for (long long k = 0; k < mod_reduce(r[0], target); ++k)
                        x = ext.mul(x, gen);
                    Mat m;
                    m.n = 4;
                    for (int col = 0; col < 4; ++col) {
                        Ext4::E y = ext.mul(x, fbasis[col]);
                        m.set(0, col, y.first % qq);
                        m.set(1, col, y.first / qq);
                        m.set(2, col, y.second % qq);
                        m.set(3, col, y.second / qq);
                    }
                    return mat_mul(F1, Cinv, mat_mul(F1, m, C));
                };
            }
        }

        std::vector<long long> tup(tr.moduli.size(), 0);
        do {
            Mat m = embed(tup);
            int idx = og.group->index_of(m);
            if (idx < 0) throw ConsistencyError("torus point missing from the group");
            tr.residues.push_back(tup);
            tr.element_index.push_back(idx);
        } while (next_tuple(tup, tr.moduli));
        {
            std::set<int> distinct(tr.element_index.begin(), tr.element_index.end());
            if (distinct.size() != tr.element_index.size())
                throw ConsistencyError("torus embedding is not injective");
            for (size_t a = 0; a < tr.residues.size(); a += 3)
                for (size_t bi = 0; bi < tr.residues.size(); bi += 5) {
                    std::vector<long long> sum(tr.moduli.size());
                    for (size_t i = 0; i < sum.size(); ++i)
                        sum[i] = mod_reduce(tr.residues[a][i] + tr.residues[bi][i],
                                            tr.moduli[i]);
                    int lhs = og.group->mul(tr.element_index[a], tr.element_index[bi]);
                    auto it = std::find(tr.residues.begin(), tr.residues.end(), sum);
                    int rhs = tr.element_index[it - tr.residues.begin()];
                    if (lhs != rhs)
                        throw ConsistencyError("torus embedding is not a homomorphism");
                }
        }
        og.tori.push_back(std::move(tr));
    }

    // ---- Weil character -------------------------------------------------
    if (spec.family == Family::Sp) {
        auto wd = schrodinger_weil(*og.group, spec.n, psi(q), false);
        og.weil_trace = std::move(wd.trace);
        og.weil = wd.character;
        og.weil.g = og.group.get();
        og.weil_note = wd.convention;
    } else if (spec.family == Family::GL) {
        og.weil_trace.resize(og.group->order());
        for (long long i = 0; i < og.group->order(); ++i) {
            const Mat& m = og.group->element((int)i);
            double sgn = f1->is_square(mat_det(*f1, m)) ? 1.0 : -1.0;
            og.weil_trace[i] = cplx(sgn * std::pow((double)q, mat_fixed_dim(*f1, m)), 0);
        }
        og.weil = cf_zero(*og.group);
        for (int c = 0; c < og.group->num_classes(); ++c)
            og.weil.v[c] = og.weil_trace[og.group->class_rep(c)];
        og.weil_note = "Levi substitution formula";
    } else {
        GroupSpec amb{Family::Sp, spec.n, q};
        const OracleGroup& ambog = group(amb);
        og.ambient = ambog.group;

        int nn = spec.n;
        Mat J;
        J.n = nn;
        if (nn == 1) {
            J.set(0, 0, f2->adjoined());
        } else {
            J.set(0, 1, 1);
            J.set(1, 0, f2->neg(1));
        }
        auto hform = [&](const std::vector<long long>& u, const std::vector<long long>& v) {
            long long acc = 0;
            for (int i = 0; i < nn; ++i)
                for (int j = 0; j < nn; ++j)
                    acc = f2->add(acc, f2->mul(f2->mul(u[i], J.at(i, j)), f2->frob(v[j])));
            return acc;
        };
        long long t = f2->adjoined();
        auto basis_vec = [&](int k) {
            std::vector<long long> v(nn, 0);
            v[k / 2] = k % 2 == 0 ? 1 : t;
            return v;
        };
        std::vector<Vec> gram(2 * nn, Vec{});
        for (int i = 0; i < 2 * nn; ++i)
            for (int j = 0; j < 2 * nn; ++j)
                gram[i][j] = f2->trace(hform(basis_vec(i), basis_vec(j))) % q;
        Mat C = symplectic_basis(*f1, gram, 2 * nn);
        Mat Cinv = mat_inverse(*f1, C);

        og.ambient_index.resize(og.group->order());
        og.weil_trace.resize(og.group->order());
        for (long long gi = 0; gi < og.group->order(); ++gi) {
            const Mat& g = og.group->element((int)gi);
            Mat m;
            m.n = 2 * nn;
            for (int col = 0; col < 2 * nn; ++col) {
                auto v = basis_vec(col);
                std::vector<long long> gv(nn, 0);
                for (int r = 0; r < nn; ++r)
                    for (int c = 0; c < nn; ++c)
                        gv[r] = f2->add(gv[r], f2->mul(g.at(r, c), v[c]));
                for (int r = 0; r < nn; ++r) {
                    m.set(2 * r, col, gv[r] % q);
                    m.set(2 * r + 1, col, gv[r] / q);
                }
            }
            Mat image = mat_mul(*f1, Cinv, mat_mul(*f1, m, C));
            int ai = ambog.group->index_of(image);
            if (ai < 0) throw ConsistencyError("U element does not land in Sp");
            og.ambient_index[gi] = ai;
            og.weil_trace[gi] = ambog.weil_trace[ai];
        }
        og.weil = cf_zero(*og.group);
        for (int c = 0; c < og.group->num_classes(); ++c)
            og.weil.v[c] = og.weil_trace[og.group->class_rep(c)];
        for (long long i = 0; i < og.group->order(); ++i)
            if (std::abs(og.weil_trace[i] - og.weil.v[og.group->class_of((int)i)]) > 1e-6)
                throw ConsistencyError("restricted Weil trace not a class function");
        og.weil_note = "restricted from the ambient symplectic group";
    }

    b.tables.resize(og.tori.size());
    b.table_built.assign(og.tori.size(), false);
}

const DLTorusTable& Oracle::dl_table(const GroupSpec& spec, int torus_index) {
    Bundle& b = bundle(spec);
    if (torus_index < 0 || torus_index >= (int)b.og.tori.size())
        throw UsageError("torus index out of range");
    if (!b.og.tori[torus_index].dl_covered)
        throw SizeError("torus class needs Green functions outside the oracle scope");
    if (!b.table_built[torus_index]) build_table(b, torus_index);
    return b.tables[torus_index];
}

ClassFunction Oracle::dl_character(const GroupSpec& spec, const TorusDatum& datum,
                                   const std::vector<long long>& chi) {
    Bundle& b = bundle(spec);
    int ti = b.og.torus_index(datum);
    const auto& table = dl_table(spec, ti);
    std::vector<long long> key(chi);
    if (key.size() != b.og.tori[ti].moduli.size()) throw UsageError("chi arity mismatch");
    for (size_t i = 0; i < key.size(); ++i)
        key[i] = mod_reduce(key[i], b.og.tori[ti].moduli[i]);
    auto it = table.find(key);
    if (it == table.end()) throw UsageError("character not in table");
    return it->second;
}

void Oracle::build_table(Bundle& b, int ti) {
    OracleGroup& og = b.og;
    const TorusRealization& tr = og.tori[ti];
    const MatGroup& G = *og.group;
    const GroupSpec& spec = og.spec;
    DLTorusTable table;

    std::map<int, int> point_of;
    for (int pi = 0; pi < (int)tr.element_index.size(); ++pi)
        point_of[tr.element_index[pi]] = pi;

    long long torus_order = 1;
    for (long long m : tr.moduli) torus_order *= m;

    const bool is_sp4 = spec.family == Family::Sp && spec.n == 2;

    if (!is_sp4) {
        // Uniform rank-one construction: semisimple classes by transporter
        // scan; central-times-unipotent via Q(u_reg) = 1; central
        // semisimple via the degree law.
        struct ClassPlan {
            enum Kind { Zero, CentralTimesU, CentralDegree, Scan } kind = Zero;
            int central_point = -1;
            std::vector<std::pair<int, long long>> scan;
        };
        std::vector<ClassPlan> plans(G.num_classes());
        long long qdeg = G.order_prime_to_p() / torus_order;
        long long deg_sign = (f_rank(spec) + torus_rank(tr.datum)) % 2 == 0 ? 1 : -1;

        for (int c = 0; c < G.num_classes(); ++c) {
            int rep = G.class_rep(c);
            auto [s, u] = G.jordan(rep);
            bool central_s = G.class_size(G.class_of(s)) == 1;
            ClassPlan plan;
            if (u != G.identity()) {
                if (!central_s) {
                    plan.kind = ClassPlan::Zero;
                } else {
                    plan.kind = ClassPlan::CentralTimesU;
                    plan.central_point = point_of.at(s);
                }
            } else if (central_s) {
                plan.kind = ClassPlan::CentralDegree;
                plan.central_point = point_of.at(s);
            } else {
                plan.kind = ClassPlan::Scan;
                std::map<int, long long> counts;
                const Mat& smat = G.element(s);
                for (long long gi = 0; gi < G.order(); ++gi) {
                    Mat x = mat_mul(G.field(),
                                    mat_mul(G.field(), G.element(G.inverse((int)gi)), smat),
                                    G.element((int)gi));
                    auto it = point_of.find(G.index_of(x));
                    if (it != point_of.end()) ++counts[it->second];
                }
                for (auto [pt, cnt] : counts) plan.scan.push_back({pt, cnt});
            }
            plans[c] = std::move(plan);
        }

        std::vector<long long> chi(tr.moduli.size(), 0);
        do {
            ClassFunction R = cf_zero(G);
            for (int c = 0; c < G.num_classes(); ++c) {
                const ClassPlan& plan = plans[c];
                switch (plan.kind) {
                    case ClassPlan::Zero:
                        break;
                    case ClassPlan::CentralTimesU:
                        R.v[c] = chi_value(chi, tr.residues[plan.central_point], tr.moduli);
                        break;
                    case ClassPlan::CentralDegree:
                        R.v[c] = chi_value(chi, tr.residues[plan.central_point], tr.moduli) *
                                 (double)(deg_sign * qdeg);
                        break;
                    case ClassPlan::Scan: {
                        cplx acc(0, 0);
                        for (auto [pt, cnt] : plan.scan)
                            acc += (double)cnt * chi_value(chi, tr.residues[pt], tr.moduli);
                        R.v[c] = acc / (double)G.centralizer_order(c);
                        break;
                    }
                }
            }
            table[chi] = std::move(R);
        } while (next_tuple(chi, tr.moduli));
    } else {
        // Sp_4: Levi-reachable classes by parabolic induction in stages.
        const Fq& f = G.field();
        auto col_in_span = [](const Mat& g, int col, std::initializer_list<int> span) {
            for (int r = 0; r < 4; ++r) {
                bool in = false;
                for (int s : span)
                    if (r == s) in = true;
                if (!in && g.at(r, col) != 0) return false;
            }
            return true;
        };
        bool split2 = tr.datum.split.count(1) && tr.datum.split.at(1) == 2;
        bool mixed = tr.datum.split.count(1) && tr.datum.norm_one.count(1);

        if (split2) {
            auto borel = subgroup_where(G, [&](const Mat& g) {
                return col_in_span(g, 0, {0}) && col_in_span(g, 1, {0, 1});
            });
            std::vector<long long> chi(tr.moduli.size(), 0);
            do {
                auto val = [&](const Mat& p) {
                    return unit_phase(chi[0], f.dlog(p.at(0, 0)), tr.moduli[0]) *
                           unit_phase(chi[1], f.dlog(p.at(1, 1)), tr.moduli[1]);
                };
                table[chi] = induced_character(G, borel, val);
            } while (next_tuple(chi, tr.moduli));
        } else if (mixed) {
            auto p1 = subgroup_where(G, [&](const Mat& g) { return col_in_span(g, 0, {0}); });
            GroupSpec sp2{Family::Sp, 1, spec.q};
            TorusDatum aniso{sp2, {}, {{1, 1}}};
            const OracleGroup& inner_og = group(sp2);
            std::vector<long long> chi(tr.moduli.size(), 0);
            do {
                ClassFunction inner = dl_character(sp2, aniso, {chi[1]});
                auto val = [&](const Mat& p) -> cplx {
                    Mat h;
                    h.n = 2;
                    h.set(0, 0, p.at(1, 1));
                    h.set(0, 1, p.at(1, 3));
                    h.set(1, 0, p.at(3, 1));
                    h.set(1, 1, p.at(3, 3));
                    int hi = inner_og.group->index_of(h);
                    if (hi < 0) throw ConsistencyError("Levi block not in Sp_2");
                    return unit_phase(chi[0], f.dlog(p.at(0, 0)), tr.moduli[0]) *
                           inner.at_element(hi);
                };
                table[chi] = induced_character(G, p1, val);
            } while (next_tuple(chi, tr.moduli));
        } else {
            auto p2 = subgroup_where(G, [&](const Mat& g) {
                return col_in_span(g, 0, {0, 1}) && col_in_span(g, 1, {0, 1});
            });
            GroupSpec gl2{Family::GL, 2, spec.q};
            TorusDatum ell{gl2, {{2, 1}}, {}};
            const OracleGroup& inner_og = group(gl2);
            std::vector<long long> chi(tr.moduli.size(), 0);
            do {
                ClassFunction inner = dl_character(gl2, ell, {chi[0]});
                auto val = [&](const Mat& p) -> cplx {
                    Mat a;
                    a.n = 2;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) a.set(i, j, p.at(i, j));
                    int ai = inner_og.group->index_of(a);
                    if (ai < 0) throw ConsistencyError("Levi block not in GL_2");
                    return inner.at_element(ai);
                };
                table[chi] = induced_character(G, p2, val);
            } while (next_tuple(chi, tr.moduli));
        }
    }

    b.tables[ti] = std::move(table);
    b.table_built[ti] = true;
}

DLValidationReport Oracle::validate_dl(const GroupSpec& spec) {
    Bundle& b = bundle(spec);
    OracleGroup& og = b.og;
    DLValidationReport rep;

    struct Entry {
        int ti;
        std::vector<long long> chi;
        const ClassFunction* R;
    };
    std::vector<Entry> entries;
    for (int ti = 0; ti < (int)og.tori.size(); ++ti) {
        if (!og.tori[ti].dl_covered) continue;
        const auto& tab = dl_table(spec, ti);
        for (const auto& [chi, R] : tab) entries.push_back({ti, chi, &R});
    }

    // degree law: R(1) = (-1)^{rk G + rk T} |G|_{p'} / |T|
    int id_class = og.group->class_of(og.group->identity());
    for (const auto& e : entries) {
        const TorusRealization& tr = og.tori[e.ti];
        long long tor = 1;
        for (long long m : tr.moduli) tor *= m;
        long long expect = og.group->order_prime_to_p() / tor;
        if ((f_rank(spec) + torus_rank(tr.datum)) % 2 != 0) expect = -expect;
        if (std::abs(e.R->v[id_class] - cplx((double)expect, 0)) > 1e-6)
            throw ConsistencyError("DL degree law failed");
    }

    // orthogonality = exhaustive Weyl transport counting
    for (const auto& e1 : entries) {
        WeylGroup w(og.tori[e1.ti].datum);
        auto chi1 = make_character(og.tori[e1.ti].datum, e1.chi);
        for (const auto& e2 : entries) {
            long long expect = 0;
            if (e1.ti == e2.ti)
                for (const auto& wel : w.elements())
                    if (w.act(wel, chi1).values == e2.chi) ++expect;
            long long got = round_to_integer(cf_inner(*e1.R, *e2.R));
            if (got != expect) throw ConsistencyError("DL orthogonality failed");
            ++rep.pairs_checked;
            if (expect > 0) ++rep.weyl_count_matches;
        }
    }

    // restriction at regular semisimple torus points
    for (int ti = 0; ti < (int)og.tori.size(); ++ti) {
        if (!og.tori[ti].dl_covered) continue;
        const TorusRealization& tr = og.tori[ti];
        long long tor = 1;
        for (long long m : tr.moduli) tor *= m;
        WeylGroup w(tr.datum);
        const auto& tab = dl_table(spec, ti);
        for (size_t pi = 0; pi < tr.residues.size(); ++pi) {
            int cls = og.group->class_of(tr.element_index[pi]);
            if (og.group->class_size(cls) != og.group->order() / tor) continue;
            auto pt = make_character(tr.datum, tr.residues[pi]);
            for (const auto& [chi, R] : tab) {
                cplx expect(0, 0);
                for (const auto& wel : w.elements())
                    expect += chi_value(chi, w.act(wel, pt).values, tr.moduli);
                if (std::abs(R.v[cls] - expect) > 1e-6)
                    throw ConsistencyError("DL regular restriction failed");
            }
        }
    }

    rep.ok = true;
    return rep;
}

}  // namespace fjm::oracle
