#include "fjm/oracle/field.hpp"

#include <cmath>

namespace fjm::oracle {

namespace {

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Fq::Fq(long long p, int d) : p_(p), d_(d) {
    if (!is_prime(p) || p == 2) throw UsageError("Fq: p must be an odd prime");
    if (d != 1 && d != 2) throw UsageError("Fq: only degrees 1 and 2 are built");
    q_ = d == 1 ? p : p * p;

    r_ = 0;
    if (d == 2) {
        for (long long a = 2; a < p; ++a) {
            bool sq = false;
            for (long long b = 1; b < p && !sq; ++b)
                if (b * b % p == a) sq = true;
            if (!sq) { r_ = a; break; }
        }
        if (r_ == 0) throw ConsistencyError("no nonsquare found");
    }

    mul_.assign(q_ * q_, 0);
    for (long long a = 0; a < q_; ++a)
        for (long long b = 0; b < q_; ++b) {
            if (d == 1) {
                mul_[a * q_ + b] = a * b % p;
            } else {
                long long a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
                long long c0 = (a0 * b0 + r_ * a1 % p * b1) % p;
                long long c1 = (a0 * b1 + a1 * b0) % p;
                mul_[a * q_ + b] = c0 + c1 * p;
            }
        }

    inv_.assign(q_, 0);
    for (long long a = 1; a < q_; ++a)
        for (long long b = 1; b < q_; ++b)
            if (mul(a, b) == 1) { inv_[a] = b; break; }

    gen_ = 0;
    for (long long g = 2; g < q_ && gen_ == 0; ++g) {
        long long x = g, o = 1;
        while (x != 1) { x = mul(x, g); ++o; }
        if (o == q_ - 1) gen_ = g;
    }
    if (gen_ == 0) throw ConsistencyError("no field generator found");

    dlog_.assign(q_, -1);
    pow_gen_.assign(q_ - 1, 1);
    long long x = 1;
    for (long long e = 0; e < q_ - 1; ++e) {
        pow_gen_[e] = x;
        dlog_[x] = e;
        x = mul(x, gen_);
    }
}

long long Fq::add(long long a, long long b) const {
    if (d_ == 1) return (a + b) % p_;
    return (a % p_ + b % p_) % p_ + ((a / p_ + b / p_) % p_) * p_;
}

long long Fq::sub(long long a, long long b) const { return add(a, neg(b)); }

long long Fq::neg(long long a) const {
    if (d_ == 1) return (p_ - a) % p_;
    return (p_ - a % p_) % p_ + ((p_ - a / p_) % p_) * p_;
}

long long Fq::inv(long long a) const {
    if (a == 0) throw UsageError("division by zero");
    return inv_[a];
}

long long Fq::pow(long long a, long long e) const {
    if (a == 0) {
        if (e <= 0) throw UsageError("0^e for e <= 0");
        return 0;
    }
    long long ee = mod_reduce(e, q_ - 1);
    return pow_gen_[mod_reduce((long long)(dlog_[a] * (__int128)ee % (q_ - 1)), q_ - 1)];
}

long long Fq::dlog(long long a) const {
    if (a == 0) throw UsageError("dlog of zero");
    return dlog_[a];
}

long long Fq::from_dlog(long long e) const { return pow_gen_[mod_reduce(e, q_ - 1)]; }

long long Fq::norm(long long a) const {
    if (d_ == 1) return a;
    return mul(a, frob(a));
}

long long Fq::trace(long long a) const {
    if (d_ == 1) return a;
    return add(a, frob(a));
}

bool Fq::is_square(long long a) const {
    if (a == 0) return true;
    return dlog_[a] % 2 == 0;
}

long long Fq::adjoined() const {
    if (d_ != 2) throw UsageError("adjoined element requires degree 2");
    return p_;  // 0 + 1*t
}

AdditiveCharacter::AdditiveCharacter(std::shared_ptr<const Fq> f, long long amplitude)
    : f_(std::move(f)), amp_(mod_reduce(amplitude, f_->p())) {
    if (amp_ == 0) throw UsageError("additive character must be nontrivial");
    const double tau = 6.283185307179586476925286766559;
    table_.resize(f_->q());
    for (long long x = 0; x < f_->q(); ++x) {
        long long t = f_->trace(x) % f_->p();
        double ang = tau * (double)(amp_ * t % f_->p()) / (double)f_->p();
        table_[x] = cplx(std::cos(ang), std::sin(ang));
    }
}

cplx AdditiveCharacter::operator()(long long x) const { return table_[x]; }

}  // namespace fjm::oracle
