#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "weil/fp.hpp"

namespace weil {

/// Floating image of an exact cyclotomic number under ζ ↦ e^{2πi/p},
/// with a rigorous accuracy bound.
struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;
    double eps = 0.0;
};

/// Exact element of Q(ζ_p), stored canonically on the basis ζ^0, …, ζ^{p−2}
/// (the relation 1 + ζ + … + ζ^{p−1} = 0 is eagerly applied, so equality of
/// values is equality of coefficient vectors).
class Cyc {
  public:
    explicit Cyc(long p);
    static Cyc zero(long p) { return Cyc(p); }
    static Cyc one(long p);
    static Cyc rational(long p, const mpq_class& r);
    /// ζ^k in canonical form, any integer k.
    static Cyc zeta_pow(long p, long k);

    long modulus() const { return p_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Coefficient of ζ^0; the full value only when is_rational().
    const mpq_class& rational_part() const { return c_[0]; }

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator-() const;
    Cyc& operator+=(const Cyc& o);
    Cyc& operator-=(const Cyc& o);
    bool operator==(const Cyc& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    Cyc scaled(const mpq_class& r) const;
    /// Galois action ζ ↦ ζ^k, gcd(k, p) = 1.
    Cyc galois(long k) const;
    /// Complex conjugation ζ ↦ ζ^{p−1}.
    Cyc conj() const { return galois(p_ - 1); }
    /// Field inverse via the product of conjugates; throws on zero.
    Cyc inverse() const;

    Cyc zero_like() const { return Cyc(p_); }
    Cyc one_like() const { return one(p_); }

    /// Numeric evaluation at ζ = e^{2πi/p}; eps bounds the total error of
    /// the long-double evaluation from the coefficient magnitudes.
    ComplexApprox embed() const;

    /// Coefficients as "num/den" strings (canonical GMP digits).
    std::vector<std::string> coeff_strings() const;
    static Cyc from_coeff_strings(long p, const std::vector<std::string>& s);

  private:
    void check(const Cyc& o) const;
    long p_;
    std::vector<mpq_class> c_; // size p-1
};

/// Additive character ψ(z) = ζ_p^z of the Heisenberg center.
Cyc psi(const Fp& z);

/// One-dimensional Gauss sum Σ_{z∈F_p} ψ(z²/2).
Cyc gauss_sum(long p);

/// c^k for small k ≥ 0.
Cyc cyc_pow(const Cyc& c, long k);

} // namespace weil
