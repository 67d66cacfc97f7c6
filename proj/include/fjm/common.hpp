#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fjm {

// Thrown when caller-supplied data violates an operation's contract.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an enumeration would exceed the desk-scale limits.
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal cross-check fails (a bug, never user input).
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Exact rational on 64-bit ints with 128-bit intermediates.  The engine's
// sums never leave this range at desk scale; overflow throws rather than
// wrapping.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw UsageError("Rat: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    Rat& operator+=(const Rat& o) {
        __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
        __int128 d = (__int128)den_ * o.den_;
        assign(n, d);
        return *this;
    }
    Rat& operator-=(const Rat& o) { return *this += Rat(-o.num_, o.den_); }
    Rat& operator*=(const Rat& o) {
        assign((__int128)num_ * o.num_, (__int128)den_ * o.den_);
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void assign(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim)
            throw SizeError("Rat: value exceeds 64-bit range");
        num_ = (long long)n;
        den_ = (long long)d;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() { assign(num_, den_); }

    long long num_;
    long long den_;
};

inline long long mod_reduce(long long c, long long n) {
    c %= n;
    return c < 0 ? c + n : c;
}

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > INT64_MAX / (b < 0 ? -b : b))
            throw SizeError("pow_ll overflow");
        r *= b;
    }
    return r;
}

}  // namespace fjm
