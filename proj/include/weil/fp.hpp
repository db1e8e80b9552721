#pragma once

#include <atomic>
#include <stdexcept>
#include <string>

namespace weil {

// Trial division; enough for the desk-scale moduli this engine targets.
inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace detail {
// Fast path so hot loops do not re-run trial division for the same modulus.
inline std::atomic<long> last_validated_prime{0};
} // namespace detail

inline void require_odd_prime(long p) {
    if (detail::last_validated_prime.load(std::memory_order_relaxed) == p) return;
    if (!is_odd_prime(p))
        throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
    detail::last_validated_prime.store(p, std::memory_order_relaxed);
}

/// Residue in F_p, p an odd prime. Value semantics, always reduced to [0, p).
class Fp {
  public:
    Fp(long value, long p) : p_(p) {
        require_odd_prime(p);
        v_ = value % p;
        if (v_ < 0) v_ += p;
    }

    long value() const { return v_; }
    long modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { return Fp((check(o), v_ + o.v_), p_); }
    Fp operator-(const Fp& o) const { return Fp((check(o), v_ - o.v_), p_); }
    Fp operator*(const Fp& o) const { return Fp((check(o), v_ * o.v_), p_); }
    Fp operator-() const { return Fp(-v_, p_); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    /// Multiplicative inverse; throws on zero.
    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
        // extended Euclid
        long a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            long q = a / b;
            long t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0, p_);
    }

    /// Residue of 1/2, used throughout the Heisenberg group law.
    static Fp half(long p) { return Fp(2, p).inverse(); }
    static Fp zero(long p) { return Fp(0, p); }
    static Fp one(long p) { return Fp(1, p); }
    Fp zero_like() const { return Fp(0, p_); }
    Fp one_like() const { return Fp(1, p_); }

  private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::invalid_argument("F_p modulus mismatch");
    }
    long v_;
    long p_;
};

/// Legendre character: 0 at 0, +1 on nonzero squares, -1 otherwise.
inline int legendre(const Fp& a) {
    if (a.is_zero()) return 0;
    // Euler's criterion: a^((p-1)/2) mod p.
    long e = (a.modulus() - 1) / 2;
    long base = a.value(), acc = 1, p = a.modulus();
    while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

} // namespace weil
