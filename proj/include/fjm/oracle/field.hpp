#pragma once

// Small concrete finite fields F_p and F_{p^2} (p odd prime) with full
// arithmetic tables, a fixed generator with discrete logs, norm/trace to
// the prime field, and the additive character psi.

#include <complex>
#include <memory>
#include <vector>

#include "fjm/common.hpp"

namespace fjm::oracle {

using cplx = std::complex<double>;

class Fq {
public:
    // d = 1: F_p.  d = 2: F_{p^2} = F_p[t]/(t^2 - r), r the least
    // nonsquare; element a0 + a1*t is encoded as a0 + a1*p.
    Fq(long long p, int d);

    long long p() const { return p_; }
    int degree() const { return d_; }
    long long q() const { return q_; }
    long long nonsquare() const { return r_; }

    long long add(long long a, long long b) const;
    long long sub(long long a, long long b) const;
    long long neg(long long a) const;
    long long mul(long long a, long long b) const { return mul_[a * q_ + b]; }
    long long inv(long long a) const;
    long long pow(long long a, long long e) const;

    long long generator() const { return gen_; }
    // Discrete log base generator(); a != 0.
    long long dlog(long long a) const;
    long long from_dlog(long long e) const;

    // Frobenius x -> x^p, and norm/trace to F_p (d = 2 only for the
    // nontrivial cases; identity maps when d = 1).
    long long frob(long long a) const { return pow(a, p_); }
    long long norm(long long a) const;
    long long trace(long long a) const;

    // Prime-subfield embedding F_p -> this field.
    long long embed_base(long long a) const { return mod_reduce(a, p_); }

    bool is_square(long long a) const;

    // A fixed square root of the least nonsquare of F_p inside F_{p^2}:
    // the adjoined t itself (encoded p).  Satisfies frob(t) = -t.
    long long adjoined() const;

private:
    long long p_;
    int d_;
    long long q_;
    long long r_;
    long long gen_;
    std::vector<long long> mul_;
    std::vector<long long> inv_;
    std::vector<long long> dlog_;
    std::vector<long long> pow_gen_;
};

// psi_a(x) = exp(2 pi i a Tr_{f/F_p}(x) / p); nontrivial for a != 0 mod p.
class AdditiveCharacter {
public:
    AdditiveCharacter(std::shared_ptr<const Fq> f, long long amplitude = 1);
    cplx operator()(long long x) const;
    long long amplitude() const { return amp_; }
    const Fq& field() const { return *f_; }

private:
    std::shared_ptr<const Fq> f_;
    long long amp_;
    std::vector<cplx> table_;
};

}  // namespace fjm::oracle
