#pragma once

// Explicit matrix groups over small finite fields: element enumeration
// from generators or filters, conjugacy classes, Jordan decomposition,
// class functions, and induced characters from subgroups.

#include <array>
#include <functional>
#include <unordered_map>

#include "fjm/oracle/field.hpp"

namespace fjm::oracle {

constexpr int kMaxDim = 4;

struct Mat {
    int n = 0;
    std::array<uint8_t, kMaxDim * kMaxDim> a{};

    long long at(int r, int c) const { return a[r * n + c]; }
    void set(int r, int c, long long v) { a[r * n + c] = (uint8_t)v; }
};

Mat mat_identity(int n);
Mat mat_mul(const Fq& f, const Mat& x, const Mat& y);
Mat mat_inverse(const Fq& f, const Mat& x);
bool mat_equal(const Mat& x, const Mat& y);
uint64_t mat_pack(const Fq& f, const Mat& x);
long long mat_det(const Fq& f, const Mat& x);
// dim of ker(x - 1) over the entry field
int mat_fixed_dim(const Fq& f, const Mat& x);

class MatGroup {
public:
    // Closure of the generators under multiplication.
    static MatGroup from_generators(std::shared_ptr<const Fq> field,
                                    std::vector<Mat> generators,
                                    long long expected_order = 0);
    // Explicit complete element list (e.g. a filtered subgroup); closure
    // is verified on a sample.
    static MatGroup from_elements(std::shared_ptr<const Fq> field,
                                  std::vector<Mat> elements);

    const Fq& field() const { return *field_; }
    std::shared_ptr<const Fq> field_ptr() const { return field_; }
    long long order() const { return (long long)elements_.size(); }
    int dim() const { return elements_.empty() ? 0 : elements_[0].n; }

    const std::vector<Mat>& elements() const { return elements_; }
    const Mat& element(int i) const { return elements_[i]; }
    int index_of(const Mat& m) const;  // -1 if absent
    int mul(int i, int j) const;
    int inverse(int i) const;
    int identity() const { return id_; }

    long long element_order(int i) const;
    // Jordan decomposition g = s u with s semisimple, u unipotent.
    std::pair<int, int> jordan(int i) const;

    int num_classes() const { return (int)class_rep_.size(); }
    int class_of(int i) const { return class_of_[i]; }
    int class_rep(int c) const { return class_rep_[c]; }
    long long class_size(int c) const { return class_size_[c]; }
    long long centralizer_order(int c) const { return order() / class_size_[c]; }

    // |G|_{p'}: the order with the p-part removed.
    long long order_prime_to_p() const;

private:
    MatGroup() = default;
    void build_from_generators(std::shared_ptr<const Fq> field,
                               std::vector<Mat> generators, long long expected_order);
    void build_from_elements(std::shared_ptr<const Fq> field, std::vector<Mat> elements);
    void finalize(const std::vector<Mat>& generators);

    std::shared_ptr<const Fq> field_;
    std::vector<Mat> elements_;
    std::unordered_map<uint64_t, int> index_;
    std::vector<int> inverse_;
    std::vector<int> class_of_;
    std::vector<int> class_rep_;
    std::vector<long long> class_size_;
    int id_ = -1;
};

// Complex class function: one value per conjugacy class.
struct ClassFunction {
    const MatGroup* g = nullptr;
    std::vector<cplx> v;

    cplx at_class(int c) const { return v[c]; }
    cplx at_element(int i) const { return v[g->class_of(i)]; }
};

ClassFunction cf_zero(const MatGroup& g);
ClassFunction cf_add(const ClassFunction& a, const ClassFunction& b);
ClassFunction cf_scale(cplx s, const ClassFunction& a);
ClassFunction cf_conj(const ClassFunction& a);
ClassFunction cf_mul(const ClassFunction& a, const ClassFunction& b);
// Standard Hermitian inner product (1/|G|) sum |class| a conj(b).
cplx cf_inner(const ClassFunction& a, const ClassFunction& b);

// The subgroup of elements satisfying the predicate.
MatGroup subgroup_where(const MatGroup& g, const std::function<bool(const Mat&)>& pred);

// Induced class function Ind_H^G(f), where f is given on H's elements by
// a callback (so inflations along Levi projections stay one-liners).
// Every element of H must lie in G.
ClassFunction induced_character(const MatGroup& g, const MatGroup& h,
                                const std::function<cplx(const Mat&)>& f);

// Nearest integer; throws ConsistencyError if farther than tol from one.
long long round_to_integer(cplx z, double tol = 1e-6);

}  // namespace fjm::oracle
