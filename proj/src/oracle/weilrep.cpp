#include "fjm/oracle/weilrep.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace fjm::oracle {

namespace {

constexpr double kTol = 1e-7;

// A generator operator in a form that keeps right-multiplication cheap.
struct GenOp {
    enum Kind { PermSign, Diagonal, Dense } kind;
    int dim = 0;
    std::vector<int> perm;          // PermSign: x -> pi(x), entry at (x, pi(x))
    std::vector<cplx> coef;         // PermSign: row factor; Diagonal: diag; Dense: matrix
};

Operator to_dense(const GenOp& g) {
    Operator m(g.dim * g.dim, cplx(0, 0));
    if (g.kind == GenOp::Dense) return g.coef;
    for (int x = 0; x < g.dim; ++x) {
        if (g.kind == GenOp::PermSign)
            m[x * g.dim + g.perm[x]] = g.coef[x];
        else
            m[x * g.dim + x] = g.coef[x];
    }
    return m;
}

// rep * op
Operator right_mul(const Operator& rep, const GenOp& op) {
    int d = op.dim;
    Operator out(d * d, cplx(0, 0));
    switch (op.kind) {
        case GenOp::PermSign: {
            // out[r][pi(x)] = rep[r][x] * coef[x]
            for (int r = 0; r < d; ++r)
                for (int x = 0; x < d; ++x)
                    out[r * d + op.perm[x]] = rep[r * d + x] * op.coef[x];
            break;
        }
        case GenOp::Diagonal: {
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    out[r * d + c] = rep[r * d + c] * op.coef[c];
            break;
        }
        case GenOp::Dense: {
            for (int r = 0; r < d; ++r)
                for (int x = 0; x < d; ++x) {
                    cplx v = rep[r * d + x];
                    if (std::norm(v) < 1e-30) continue;
                    const cplx* row = &op.coef[x * d];
                    cplx* orow = &out[r * d];
                    for (int c = 0; c < d; ++c) orow[c] += v * row[c];
                }
            break;
        }
    }
    return out;
}

std::vector<cplx> mat_vec(const Operator& m, const std::vector<cplx>& v, int d) {
    std::vector<cplx> out(d, cplx(0, 0));
    for (int r = 0; r < d; ++r) {
        cplx acc(0, 0);
        const cplx* row = &m[r * d];
        for (int c = 0; c < d; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

std::vector<cplx> genop_vec(const GenOp& op, const std::vector<cplx>& v) {
    int d = op.dim;
    std::vector<cplx> out(d, cplx(0, 0));
    switch (op.kind) {
        case GenOp::PermSign:
            for (int x = 0; x < d; ++x) out[x] = op.coef[x] * v[op.perm[x]];
            break;
        case GenOp::Diagonal:
            for (int x = 0; x < d; ++x) out[x] = op.coef[x] * v[x];
            break;
        case GenOp::Dense:
            out = mat_vec(op.coef, v, d);
            break;
    }
    return out;
}

// Lagrangian coordinates: x in f^n <-> index sum x_i q^i.
std::vector<long long> unindex(long long idx, int n, long long q) {
    std::vector<long long> x(n);
    for (int i = 0; i < n; ++i) { x[i] = idx % q; idx /= q; }
    return x;
}

long long index_of_vec(const std::vector<long long>& x, long long q) {
    long long idx = 0;
    for (int i = (int)x.size() - 1; i >= 0; --i) idx = idx * q + x[i];
    return idx;
}

std::string intertwine_variant(const MatGroup& sp, int n, const AdditiveCharacter& psi,
                               const std::vector<Operator>& mats, long long dim);

struct Convention {
    int aside;        // 0: f(A^{-1} x); 1: f(A^T x)
    long long kappa;  // coefficient in psi(kappa x^t B x)
    long long mu;     // kernel psi(mu x.y)
    int gamma_idx;
    cplx gamma;       // full normalization of the Fourier generator
};

}  // namespace

Operator heisenberg_op(int n, const AdditiveCharacter& psi,
                       const std::vector<long long>& a,
                       const std::vector<long long>& b, long long z) {
    const Fq& f = psi.field();
    if (f.degree() != 1) throw UsageError("Heisenberg model over the prime field only");
    long long q = f.q();
    long long dim = 1;
    for (int i = 0; i < n; ++i) dim *= q;
    Operator m(dim * dim, cplx(0, 0));
    for (long long xi = 0; xi < dim; ++xi) {
        auto x = unindex(xi, n, q);
        long long dot = 0;
        std::vector<long long> xa(n);
        for (int i = 0; i < n; ++i) {
            dot = f.add(dot, f.mul(b[i], x[i]));
            xa[i] = f.add(x[i], a[i]);
        }
        m[xi * dim + index_of_vec(xa, q)] = psi(f.add(z, dot));
    }
    return m;
}

WeilData schrodinger_weil(const MatGroup& sp, int n, const AdditiveCharacter& psi,
                          bool keep_matrices) {
    const Fq& f = sp.field();
    if (f.degree() != 1) throw UsageError("Sp oracle groups live over the prime field");
    if (sp.dim() != 2 * n) throw UsageError("dimension mismatch");
    long long q = f.q();
    long long dim = 1;
    for (int i = 0; i < n; ++i) dim *= q;

    // generator matrices in Sp_{2n}
    std::vector<Mat> gl_gens;
    if (n == 1) {
        Mat a = mat_identity(1);
        a.set(0, 0, f.generator());
        gl_gens.push_back(a);
    } else if (n == 2) {
        Mat a = mat_identity(2);
        a.set(0, 0, f.generator());
        gl_gens.push_back(a);
        Mat t = mat_identity(2);
        t.set(0, 1, 1);
        gl_gens.push_back(t);
        Mat s;
        s.n = 2;
        s.set(0, 1, 1);
        s.set(1, 0, 1);
        gl_gens.push_back(s);
    } else {
        throw UsageError("only n <= 2 supported");
    }
    std::vector<Mat> sym_gens;
    if (n == 1) {
        Mat b;
        b.n = 1;
        b.set(0, 0, 1);
        sym_gens.push_back(b);
    } else {
        for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {0, 1}}) {
            Mat b;
            b.n = 2;
            b.set(r, c, 1);
            b.set(c, r, 1);
            sym_gens.push_back(b);
        }
    }

    auto embed_m = [&](const Mat& a) {
        Mat g;
        g.n = 2 * n;
        Mat ainv_t = mat_inverse(f, a);  // (A^T)^{-1} = transpose of A^{-1}
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                g.set(i, j, a.at(i, j));
                g.set(n + i, n + j, ainv_t.at(j, i));
            }
        return g;
    };
    auto embed_n = [&](const Mat& b) {
        Mat g = mat_identity(2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.set(i, n + j, b.at(i, j));
        return g;
    };
    Mat wmat;
    wmat.n = 2 * n;
    for (int i = 0; i < n; ++i) {
        wmat.set(i, n + i, 1);
        wmat.set(n + i, i, f.neg(1));
    }

    struct GenEntry {
        int sp_index;
        enum { M, N, W } type;
        Mat param;
    };
    std::vector<GenEntry> gens;
    for (const auto& a : gl_gens) {
        int idx = sp.index_of(embed_m(a));
        if (idx < 0) throw ConsistencyError("Levi generator missing from Sp");
        gens.push_back({idx, GenEntry::M, a});
    }
    for (const auto& b : sym_gens) {
        int idx = sp.index_of(embed_n(b));
        if (idx < 0) throw ConsistencyError("unipotent generator missing from Sp");
        gens.push_back({idx, GenEntry::N, b});
    }
    {
        int idx = sp.index_of(wmat);
        if (idx < 0) throw ConsistencyError("Weyl generator missing from Sp");
        gens.push_back({idx, GenEntry::W, wmat});
    }

    long long p = f.p();
    long long inv2 = f.inv(2);
    cplx gauss(0, 0);
    for (long long t = 0; t < p; ++t) gauss += psi(f.mul(t, t));
    cplx g1 = gauss / std::sqrt((double)p);
    cplx gn = std::pow(g1, (double)n);
    cplx gnc = std::conj(gn);
    std::vector<cplx> gamma_phases = {gn, gnc, -gn, -gnc, cplx(1, 0), cplx(-1, 0),
                                      cplx(0, 1), cplx(0, -1)};
    double scale = 1.0 / std::pow((double)q, n / 2.0);

    auto legendre = [&](long long a) { return f.is_square(a) ? 1.0 : -1.0; };

    auto build_ops = [&](const Convention& cv) {
        std::vector<GenOp> ops;
        for (const auto& ge : gens) {
            GenOp op;
            op.dim = (int)dim;
            if (ge.type == GenEntry::M) {
                op.kind = GenOp::PermSign;
                op.perm.resize(dim);
                op.coef.assign(dim, cplx(0, 0));
                Mat a = cv.aside == 0 ? mat_inverse(f, ge.param) : ge.param;
                double sgn = legendre(mat_det(f, ge.param));
                for (long long xi = 0; xi < dim; ++xi) {
                    auto x = unindex(xi, n, q);
                    std::vector<long long> y(n, 0);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            long long aij = cv.aside == 0 ? a.at(i, j) : a.at(j, i);
                            y[i] = f.add(y[i], f.mul(aij, x[j]));
                        }
                    op.perm[xi] = (int)index_of_vec(y, q);
                    op.coef[xi] = cplx(sgn, 0);
                }
            } else if (ge.type == GenEntry::N) {
                op.kind = GenOp::Diagonal;
                op.coef.assign(dim, cplx(0, 0));
                for (long long xi = 0; xi < dim; ++xi) {
                    auto x = unindex(xi, n, q);
                    long long form = 0;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            form = f.add(form, f.mul(f.mul(x[i], ge.param.at(i, j)), x[j]));
                    op.coef[xi] = psi(f.mul(cv.kappa, form));
                }
            } else {
                op.kind = GenOp::Dense;
                op.coef.assign(dim * dim, cplx(0, 0));
                for (long long xi = 0; xi < dim; ++xi) {
                    auto x = unindex(xi, n, q);
                    for (long long yi = 0; yi < dim; ++yi) {
                        auto y = unindex(yi, n, q);
                        long long dot = 0;
                        for (int i = 0; i < n; ++i) dot = f.add(dot, f.mul(x[i], y[i]));
                        op.coef[xi * dim + yi] = cv.gamma * psi(f.mul(cv.mu, dot));
                    }
                }
            }
            ops.push_back(std::move(op));
        }
        return ops;
    };

    // Deterministic probe vectors for edge verification.
    std::vector<std::vector<cplx>> probes(2, std::vector<cplx>(dim));
    {
        unsigned long long s = 0x9e3779b97f4a7c15ULL;
        for (auto& pr : probes)
            for (long long i = 0; i < dim; ++i) {
                s = s * 6364136223846793005ULL + 1442695040888963407ULL;
                double re = (double)((s >> 16) & 0xffff) / 65536.0 - 0.5;
                s = s * 6364136223846793005ULL + 1442695040888963407ULL;
                double im = (double)((s >> 16) & 0xffff) / 65536.0 - 0.5;
                pr[i] = cplx(re, im);
            }
    }

    auto try_convention = [&](const Convention& cv, std::vector<Operator>& rep) -> bool {
        auto ops = build_ops(cv);
        std::vector<std::vector<std::vector<cplx>>> op_probe(gens.size());
        for (size_t j = 0; j < gens.size(); ++j)
            for (const auto& pr : probes) op_probe[j].push_back(genop_vec(ops[j], pr));

        rep.assign(sp.order(), {});
        rep[sp.identity()] = to_dense(GenOp{GenOp::Diagonal, (int)dim, {},
                                            std::vector<cplx>(dim, cplx(1, 0))});
        std::deque<int> frontier{sp.identity()};
        std::vector<char> known(sp.order(), 0);
        known[sp.identity()] = 1;
        while (!frontier.empty()) {
            int i = frontier.front();
            frontier.pop_front();
            for (size_t j = 0; j < gens.size(); ++j) {
                int k = sp.mul(i, gens[j].sp_index);
                if (!known[k]) {
                    rep[k] = right_mul(rep[i], ops[j]);
                    known[k] = 1;
                    frontier.push_back(k);
                } else {
                    // verify rep[k] v = rep[i] (op v) on the probes
                    for (size_t t = 0; t < probes.size(); ++t) {
                        auto lhs = mat_vec(rep[k], probes[t], (int)dim);
                        auto rhs = mat_vec(rep[i], op_probe[j][t], (int)dim);
                        for (long long r = 0; r < dim; ++r)
                            if (std::abs(lhs[r] - rhs[r]) > kTol) return false;
                    }
                }
            }
        }
        for (char c : known)
            if (!c) throw ConsistencyError("generators do not span the group");
        return true;
    };

    std::vector<Operator> rep;
    Convention accepted{};
    bool found = false;
    std::string conv_desc;
    for (int aside = 0; aside < 2 && !found; ++aside)
        for (long long kap : {1LL, inv2, f.neg(1), f.neg(inv2)})
            for (long long mu : {1LL, f.neg(1)})
                for (int gi = 0; gi < (int)gamma_phases.size(); ++gi) {
                    if (found) break;
                    Convention cv{aside, kap, mu, gi, gamma_phases[gi] * scale};
                    if (!try_convention(cv, rep)) continue;
                    std::string heis = intertwine_variant(sp, n, psi, rep, dim);
                    if (heis.empty()) continue;  // a Weil rep, but for a rescaled psi
                    accepted = cv;
                    found = true;
                    std::ostringstream os;
                    os << "aside=" << aside << " kappa=" << kap << " mu=" << mu
                       << " gamma_idx=" << gi << heis;
                    conv_desc = os.str();
                    break;
                }
    if (!found) throw ConsistencyError("no Weil convention satisfies the relations");

    WeilData out;
    out.dim = (int)dim;
    out.convention = conv_desc;
    out.trace.resize(sp.order());
    for (long long i = 0; i < sp.order(); ++i) {
        cplx tr(0, 0);
        for (long long r = 0; r < dim; ++r) tr += rep[i][r * dim + r];
        out.trace[i] = tr;
        // magnitude law |tr(g)|^2 = q^{dim V^g}
        double expect = std::pow((double)q, mat_fixed_dim(f, sp.element((int)i)));
        if (std::abs(std::norm(tr) - expect) > 1e-5 * std::max(1.0, expect))
            throw ConsistencyError("Weil trace magnitude law failed");
    }
    out.character = cf_zero(sp);
    for (int c = 0; c < sp.num_classes(); ++c)
        out.character.v[c] = out.trace[sp.class_rep(c)];
    for (long long i = 0; i < sp.order(); ++i)
        if (std::abs(out.trace[i] - out.character.v[sp.class_of((int)i)]) > 1e-6)
            throw ConsistencyError("Weil trace is not a class function");
    if (keep_matrices) out.matrices = std::move(rep);
    return out;
}

namespace {

// Returns a description of the structural variant under which the given
// matrices intertwine the psi-Heisenberg model with central scaling 1,
// or an empty string if none does.
std::string intertwine_variant(const MatGroup& sp, int n, const AdditiveCharacter& psi,
                               const std::vector<Operator>& mats, long long dim) {
    const Fq& f = sp.field();
    long long q = f.q();
    // basis vectors of H: (e_i, 0, 0) and (0, e_i, 0)
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> basis;
    for (int i = 0; i < n; ++i) {
        std::vector<long long> a(n, 0), b(n, 0);
        a[i] = 1;
        basis.push_back({a, b});
        std::vector<long long> a2(n, 0), b2(n, 0);
        b2[i] = 1;
        basis.push_back({a2, b2});
    }
    // The bare vector map (v, z) -> (g v, z) is an automorphism of H only
    // up to a central correction; the Lagrangian labeling of (a, b) and
    // the action direction each admit two conventions, and a central
    // rescaling psi -> psi_c relabels b by c.  One structural variant
    // must hold uniformly, else the matrices are no Weil representation.
    for (int dir = 0; dir < 2; ++dir)
        for (int swap = 0; swap < 2; ++swap)
            for (long long cscale = 1; cscale < 2; ++cscale) {
                bool ok = true;
                for (long long gi = 0; gi < sp.order() && ok;
                     gi += std::max<long long>(1, sp.order() / 23)) {
                    const Operator& U = mats[gi];
                    long long mat_idx = dir == 0 ? gi : sp.inverse((int)gi);
                    const Mat& g = sp.element((int)mat_idx);
                    const Operator& Uinv = mats[sp.inverse((int)gi)];
                    for (const auto& [a, b] : basis) {
                        // v = D_c^{-1} (a, b) in the chosen labeling
                        std::vector<long long> v(2 * n, 0), gv(2 * n, 0);
                        long long cinv = f.inv(cscale);
                        for (int i = 0; i < n; ++i) {
                            long long bi = f.mul(b[i], cinv);
                            if (swap == 0) { v[i] = a[i]; v[n + i] = bi; }
                            else { v[i] = bi; v[n + i] = a[i]; }
                        }
                        for (int r = 0; r < 2 * n; ++r)
                            for (int c = 0; c < 2 * n; ++c)
                                gv[r] = f.add(gv[r], f.mul(g.at(r, c), v[c]));
                        std::vector<long long> ga(n), gb(n);
                        for (int i = 0; i < n; ++i) {
                            long long av = swap == 0 ? gv[i] : gv[n + i];
                            long long bv = swap == 0 ? gv[n + i] : gv[i];
                            ga[i] = av;
                            gb[i] = f.mul(bv, cscale);
                        }

                        Operator lhs = heisenberg_op(n, psi, a, b, 0);
                        Operator t(dim * dim, cplx(0, 0)), conj_op(dim * dim, cplx(0, 0));
                        for (long long r = 0; r < dim; ++r)
                            for (long long c = 0; c < dim; ++c) {
                                cplx acc(0, 0);
                                for (long long k = 0; k < dim; ++k)
                                    acc += U[r * dim + k] * lhs[k * dim + c];
                                t[r * dim + c] = acc;
                            }
                        for (long long r = 0; r < dim; ++r)
                            for (long long c = 0; c < dim; ++c) {
                                cplx acc(0, 0);
                                for (long long k = 0; k < dim; ++k)
                                    acc += t[r * dim + k] * Uinv[k * dim + c];
                                conj_op[r * dim + c] = acc;
                            }
                        bool matched = false;
                        for (long long z = 0; z < q && !matched; ++z) {
                            Operator target = heisenberg_op(n, psi, ga, gb, z);
                            double err = 0;
                            for (long long e = 0; e < dim * dim; ++e)
                                err = std::max(err, std::abs(conj_op[e] - target[e]));
                            if (err < 1e-6) matched = true;
                        }
                        if (!matched) ok = false;
                    }
                }
                if (ok)
                    return std::string(" heis[dir=") + std::to_string(dir) +
                           " swap=" + std::to_string(swap) + "]";
            }
    return {};
}

}  // namespace

void check_heisenberg_intertwining(const MatGroup& sp, int n,
                                   const AdditiveCharacter& psi,
                                   const WeilData& w) {
    if (w.matrices.empty()) throw UsageError("needs kept matrices");
    if (intertwine_variant(sp, n, psi, w.matrices, w.dim).empty())
        throw ConsistencyError("Weil matrices do not intertwine the Heisenberg model");
}

}  // namespace fjm::oracle
