#include "fjm/oracle/matgroup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace fjm::oracle {

Mat mat_identity(int n) {
    Mat m;
    m.n = n;
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat mat_mul(const Fq& f, const Mat& x, const Mat& y) {
    Mat z;
    z.n = x.n;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            long long acc = 0;
            for (int k = 0; k < x.n; ++k)
                acc = f.add(acc, f.mul(x.at(i, k), y.at(k, j)));
            z.set(i, j, acc);
        }
    return z;
}

bool mat_equal(const Mat& x, const Mat& y) {
    return x.n == y.n && std::equal(x.a.begin(), x.a.begin() + x.n * x.n, y.a.begin());
}

uint64_t mat_pack(const Fq& f, const Mat& x) {
    uint64_t key = 0;
    for (int i = 0; i < x.n * x.n; ++i) key = key * (uint64_t)f.q() + x.a[i];
    return key;
}

Mat mat_inverse(const Fq& f, const Mat& x) {
    int n = x.n;
    // Gauss-Jordan on [x | I]
    std::array<long long, kMaxDim * 2 * kMaxDim> w{};
    auto W = [&](int r, int c) -> long long& { return w[r * 2 * n + c]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            W(i, j) = x.at(i, j);
            W(i, n + j) = i == j ? 1 : 0;
        }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (W(r, col) != 0) { piv = r; break; }
        if (piv < 0) throw UsageError("matrix is singular");
        if (piv != col)
            for (int c = 0; c < 2 * n; ++c) std::swap(W(piv, c), W(col, c));
        long long iv = f.inv(W(col, col));
        for (int c = 0; c < 2 * n; ++c) W(col, c) = f.mul(W(col, c), iv);
        for (int r = 0; r < n; ++r) {
            if (r == col || W(r, col) == 0) continue;
            long long m = W(r, col);
            for (int c = 0; c < 2 * n; ++c)
                W(r, c) = f.sub(W(r, c), f.mul(m, W(col, c)));
        }
    }
    Mat out;
    out.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set(i, j, W(i, n + j));
    return out;
}

long long mat_det(const Fq& f, const Mat& x) {
    int n = x.n;
    std::array<long long, kMaxDim * kMaxDim> w{};
    auto W = [&](int r, int c) -> long long& { return w[r * n + c]; };
    for (int i = 0; i < n * n; ++i) w[i] = x.a[i];
    long long det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (W(r, col) != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(W(piv, c), W(col, c));
            det = f.neg(det);
        }
        det = f.mul(det, W(col, col));
        long long iv = f.inv(W(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (W(r, col) == 0) continue;
            long long m = f.mul(W(r, col), iv);
            for (int c = col; c < n; ++c)
                W(r, c) = f.sub(W(r, c), f.mul(m, W(col, c)));
        }
    }
    return det;
}

int mat_fixed_dim(const Fq& f, const Mat& x) {
    int n = x.n;
    std::array<long long, kMaxDim * kMaxDim> w{};
    auto W = [&](int r, int c) -> long long& { return w[r * n + c]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            W(i, j) = f.sub(x.at(i, j), i == j ? 1 : 0);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (W(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < n; ++c) std::swap(W(piv, c), W(rank, c));
        long long iv = f.inv(W(rank, col));
        for (int r = rank + 1; r < n; ++r) {
            if (W(r, col) == 0) continue;
            long long m = f.mul(W(r, col), iv);
            for (int c = col; c < n; ++c)
                W(r, c) = f.sub(W(r, c), f.mul(m, W(rank, c)));
        }
        ++rank;
    }
    return n - rank;
}

MatGroup MatGroup::from_generators(std::shared_ptr<const Fq> field,
                                   std::vector<Mat> generators,
                                   long long expected_order) {
    MatGroup g;
    g.build_from_generators(std::move(field), std::move(generators), expected_order);
    return g;
}

MatGroup MatGroup::from_elements(std::shared_ptr<const Fq> field,
                                 std::vector<Mat> elements) {
    MatGroup g;
    g.build_from_elements(std::move(field), std::move(elements));
    return g;
}

void MatGroup::build_from_generators(std::shared_ptr<const Fq> field,
                                     std::vector<Mat> generators,
                                     long long expected_order) {
    field_ = std::move(field);
    if (generators.empty()) throw UsageError("no generators");
    int n = generators[0].n;
    Mat id = mat_identity(n);
    elements_.push_back(id);
    index_[mat_pack(*field_, id)] = 0;
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int cur = frontier.front();
        frontier.pop_front();
        for (const auto& g : generators) {
            Mat next = mat_mul(*field_, elements_[cur], g);
            uint64_t key = mat_pack(*field_, next);
            auto [it, fresh] = index_.try_emplace(key, (int)elements_.size());
            if (fresh) {
                elements_.push_back(next);
                frontier.push_back(it->second);
                if (expected_order > 0 && (long long)elements_.size() > expected_order)
                    throw ConsistencyError("group closure exceeds expected order");
            }
        }
    }
    if (expected_order > 0 && (long long)elements_.size() != expected_order)
        throw ConsistencyError("group order mismatch");
    finalize(generators);
}

void MatGroup::build_from_elements(std::shared_ptr<const Fq> field,
                                   std::vector<Mat> elements) {
    field_ = std::move(field);
    elements_ = std::move(elements);
    for (int i = 0; i < (int)elements_.size(); ++i) {
        auto [it, fresh] = index_.try_emplace(mat_pack(*field_, elements_[i]), i);
        if (!fresh) throw UsageError("duplicate elements in explicit list");
    }
    // closure spot check
    for (size_t i = 0; i < elements_.size(); i += std::max<size_t>(1, elements_.size() / 17))
        for (size_t j = 0; j < elements_.size(); j += std::max<size_t>(1, elements_.size() / 17))
            if (index_of(mat_mul(*field_, elements_[i], elements_[j])) < 0)
                throw UsageError("explicit list is not closed under multiplication");
    finalize(elements_);
}

void MatGroup::finalize(const std::vector<Mat>& conjugators) {
    id_ = index_of(mat_identity(elements_[0].n));
    if (id_ < 0) throw ConsistencyError("identity missing");

    inverse_.assign(elements_.size(), -1);
    for (int i = 0; i < (int)elements_.size(); ++i) {
        inverse_[i] = index_of(mat_inverse(*field_, elements_[i]));
        if (inverse_[i] < 0) throw ConsistencyError("inverse missing from group");
    }

    // Conjugacy classes: orbit closure under conjugation by the given
    // conjugators (generators generate, so orbits are full classes).
    std::vector<int> conj_idx;
    for (const auto& m : conjugators) conj_idx.push_back(index_of(m));
    class_of_.assign(elements_.size(), -1);
    for (int i = 0; i < (int)elements_.size(); ++i) {
        if (class_of_[i] >= 0) continue;
        int cid = (int)class_rep_.size();
        class_rep_.push_back(i);
        class_of_[i] = cid;
        long long size = 1;
        std::deque<int> frontier{i};
        while (!frontier.empty()) {
            int x = frontier.front();
            frontier.pop_front();
            for (int gi : conj_idx) {
                int y = mul(mul(gi, x), inverse_[gi]);
                if (class_of_[y] < 0) {
                    class_of_[y] = cid;
                    ++size;
                    frontier.push_back(y);
                }
            }
        }
        class_size_.push_back(size);
    }
    long long total = 0;
    for (long long s : class_size_) total += s;
    if (total != order()) throw ConsistencyError("class sizes do not sum to |G|");

    // Deterministic relabeling by (element order, class size, min packed key).
    std::vector<std::tuple<long long, long long, uint64_t, int>> keys;
    std::vector<uint64_t> min_key(class_rep_.size(), UINT64_MAX);
    for (int i = 0; i < (int)elements_.size(); ++i) {
        uint64_t k = mat_pack(*field_, elements_[i]);
        int c = class_of_[i];
        if (k < min_key[c]) {
            min_key[c] = k;
            class_rep_[c] = i;
        }
    }
    for (int c = 0; c < (int)class_rep_.size(); ++c)
        keys.push_back({element_order(class_rep_[c]), class_size_[c], min_key[c], c});
    std::sort(keys.begin(), keys.end());
    std::vector<int> new_of(class_rep_.size());
    std::vector<int> rep(class_rep_.size());
    std::vector<long long> size(class_rep_.size());
    for (int newc = 0; newc < (int)keys.size(); ++newc) {
        int oldc = std::get<3>(keys[newc]);
        new_of[oldc] = newc;
        rep[newc] = class_rep_[oldc];
        size[newc] = class_size_[oldc];
    }
    for (auto& c : class_of_) c = new_of[c];
    class_rep_ = rep;
    class_size_ = size;
}

int MatGroup::index_of(const Mat& m) const {
    auto it = index_.find(mat_pack(*field_, m));
    return it == index_.end() ? -1 : it->second;
}

int MatGroup::mul(int i, int j) const {
    int k = index_of(mat_mul(*field_, elements_[i], elements_[j]));
    if (k < 0) throw ConsistencyError("product left the group");
    return k;
}

int MatGroup::inverse(int i) const { return inverse_[i]; }

long long MatGroup::element_order(int i) const {
    long long o = 1;
    int x = i;
    while (x != id_) {
        x = mul(x, i);
        ++o;
    }
    return o;
}

std::pair<int, int> MatGroup::jordan(int i) const {
    long long o = element_order(i);
    long long p = field_->p();
    long long pa = 1;
    while (o % p == 0) { o /= p; pa *= p; }
    long long m = o;  // prime-to-p part
    // e_s = 0 mod pa, 1 mod m; e_u = 1 mod pa, 0 mod m
    long long es = 0;
    if (m > 1) {
        while (es % m != 1 % m || es % pa != 0) es += pa == 1 ? 1 : pa;
    }
    if (m == 1) es = 0;
    long long order_full = pa * m;
    long long eu = mod_reduce(1 - es, order_full);
    auto power = [&](long long e) {
        int acc = id_;
        int x = i;
        long long ee = e;
        while (ee > 0) {
            if (ee & 1) acc = mul(acc, x);
            x = mul(x, x);
            ee >>= 1;
        }
        return acc;
    };
    int s = power(es == 0 ? order_full : es);
    int u = power(eu == 0 ? order_full : eu);
    if (mul(s, u) != i || mul(s, u) != mul(u, s))
        throw ConsistencyError("Jordan decomposition failed");
    return {s, u};
}

long long MatGroup::order_prime_to_p() const {
    long long o = order(), p = field_->p();
    while (o % p == 0) o /= p;
    return o;
}

ClassFunction cf_zero(const MatGroup& g) {
    return {&g, std::vector<cplx>(g.num_classes(), cplx(0, 0))};
}

ClassFunction cf_add(const ClassFunction& a, const ClassFunction& b) {
    if (a.g != b.g) throw UsageError("class functions on different groups");
    ClassFunction c = a;
    for (size_t i = 0; i < c.v.size(); ++i) c.v[i] += b.v[i];
    return c;
}

ClassFunction cf_scale(cplx s, const ClassFunction& a) {
    ClassFunction c = a;
    for (auto& x : c.v) x *= s;
    return c;
}

ClassFunction cf_conj(const ClassFunction& a) {
    ClassFunction c = a;
    for (auto& x : c.v) x = std::conj(x);
    return c;
}

ClassFunction cf_mul(const ClassFunction& a, const ClassFunction& b) {
    if (a.g != b.g) throw UsageError("class functions on different groups");
    ClassFunction c = a;
    for (size_t i = 0; i < c.v.size(); ++i) c.v[i] *= b.v[i];
    return c;
}

cplx cf_inner(const ClassFunction& a, const ClassFunction& b) {
    if (a.g != b.g) throw UsageError("class functions on different groups");
    cplx acc(0, 0);
    for (int c = 0; c < a.g->num_classes(); ++c)
        acc += (double)a.g->class_size(c) * a.v[c] * std::conj(b.v[c]);
    return acc / (double)a.g->order();
}

MatGroup subgroup_where(const MatGroup& g, const std::function<bool(const Mat&)>& pred) {
    std::vector<Mat> elems;
    for (const auto& m : g.elements())
        if (pred(m)) elems.push_back(m);
    return MatGroup::from_elements(g.field_ptr(), std::move(elems));
}

ClassFunction induced_character(const MatGroup& g, const MatGroup& h,
                                const std::function<cplx(const Mat&)>& f) {
    // Ind(g0) = |C_G(g0)| * sum over H-classes fusing into [g0] of
    // f(rep) / |C_H(rep)|.
    std::vector<cplx> per_class(g.num_classes(), cplx(0, 0));
    for (int hc = 0; hc < h.num_classes(); ++hc) {
        const Mat& rep = h.element(h.class_rep(hc));
        int gi = g.index_of(rep);
        if (gi < 0) throw UsageError("subgroup element missing from group");
        per_class[g.class_of(gi)] +=
            f(rep) / (double)h.centralizer_order(hc);
    }
    ClassFunction out = cf_zero(g);
    for (int c = 0; c < g.num_classes(); ++c)
        out.v[c] = per_class[c] * (double)g.centralizer_order(c);
    return out;
}

long long round_to_integer(cplx z, double tol) {
    long long r = std::llround(z.real());
    if (std::abs(z.real() - (double)r) > tol || std::abs(z.imag()) > tol)
        throw ConsistencyError("value is not an integer within tolerance");
    return r;
}

}  // namespace fjm::oracle
