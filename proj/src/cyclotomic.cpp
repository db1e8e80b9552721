#include "weil/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weil {

Cyc::Cyc(long p) : p_(p), c_(static_cast<size_t>(p - 1), mpq_class(0)) {
    require_odd_prime(p);
}

Cyc Cyc::one(long p) {
    Cyc r(p);
    r.c_[0] = 1;
    return r;
}

Cyc Cyc::rational(long p, const mpq_class& q) {
    Cyc r(p);
    r.c_[0] = q;
    return r;
}

Cyc Cyc::zeta_pow(long p, long k) {
    Cyc r(p);
    long e = k % p;
    if (e < 0) e += p;
    if (e <= p - 2) {
        r.c_[static_cast<size_t>(e)] = 1;
    } else {
        // ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})
        for (auto& ci : r.c_) ci = -1;
    }
    return r;
}

void Cyc::check(const Cyc& o) const {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic modulus mismatch");
}

bool Cyc::is_zero() const {
    for (const auto& ci : c_)
        if (ci != 0) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Cyc Cyc::operator+(const Cyc& o) const {
    check(o);
    Cyc r(*this);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
    check(o);
    Cyc r(*this);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyc Cyc::operator-() const {
    Cyc r(*this);
    for (auto& ci : r.c_) ci = -ci;
    return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
    check(o);
    const size_t m = c_.size(); // p-1
    // convolution up to exponent 2p-4, then exponent reduction mod p and
    // elimination of ζ^{p-1} through the minimal polynomial
    std::vector<mpq_class> conv(2 * m - 1, mpq_class(0));
    for (size_t i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < m; ++j) {
            if (o.c_[j] == 0) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    Cyc r(p_);
    for (size_t e = 0; e < conv.size(); ++e) {
        if (conv[e] == 0) continue;
        size_t red = e % static_cast<size_t>(p_);
        if (red <= m - 1) {
            r.c_[red] += conv[e];
        } else {
            for (auto& ci : r.c_) ci -= conv[e];
        }
    }
    return r;
}

Cyc Cyc::scaled(const mpq_class& q) const {
    Cyc r(*this);
    for (auto& ci : r.c_) ci *= q;
    return r;
}

Cyc Cyc::galois(long k) const {
    long e = k % p_;
    if (e < 0) e += p_;
    if (e == 0) throw std::invalid_argument("galois exponent must be coprime to p");
    Cyc r(p_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        size_t target = (i * static_cast<size_t>(e)) % static_cast<size_t>(p_);
        if (target <= c_.size() - 1) {
            r.c_[target] += c_[i];
        } else {
            for (auto& cj : r.c_) cj -= c_[i];
        }
    }
    return r;
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic number");
    // product of the nontrivial conjugates; a * prod = Norm(a) ∈ Q
    Cyc prod = Cyc::one(p_);
    for (long k = 2; k <= p_ - 1; ++k) prod = prod * galois(k);
    Cyc norm = (*this) * prod;
    if (!norm.is_rational() || norm.c_[0] == 0)
        throw std::logic_error("cyclotomic norm computation failed");
    mpq_class inv_norm = 1 / norm.c_[0];
    return prod.scaled(inv_norm);
}

ComplexApprox Cyc::embed() const {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double re = 0.0L, im = 0.0L, mag = 0.0L;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        long double ci = static_cast<long double>(mpz_get_d(c_[i].get_num_mpz_t())) /
                         static_cast<long double>(mpz_get_d(c_[i].get_den_mpz_t()));
        long double ang = two_pi * static_cast<long double>(i) / static_cast<long double>(p_);
        re += ci * std::cos(ang);
        im += ci * std::sin(ang);
        mag += std::fabs(ci);
    }
    ComplexApprox out;
    out.re = static_cast<double>(re);
    out.im = static_cast<double>(im);
    // long-double evaluation, double rounding on output, per-term trig error
    out.eps = (static_cast<double>(mag) + 1.0) * static_cast<double>(p_) * 1e-15;
    return out;
}

std::vector<std::string> Cyc::coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& ci : c_)
        out.push_back(ci.get_num().get_str() + "/" + ci.get_den().get_str());
    return out;
}

Cyc Cyc::from_coeff_strings(long p, const std::vector<std::string>& s) {
    if (static_cast<long>(s.size()) != p - 1)
        throw std::invalid_argument("cyclotomic coefficient count must be p-1");
    Cyc r(p);
    for (size_t i = 0; i < s.size(); ++i) {
        mpq_class q(s[i]);
        q.canonicalize();
        r.c_[i] = q;
    }
    return r;
}

Cyc psi(const Fp& z) { return Cyc::zeta_pow(z.modulus(), z.value()); }

Cyc gauss_sum(long p) {
    require_odd_prime(p);
    Fp half = Fp::half(p);
    Cyc sum(p);
    for (long z = 0; z < p; ++z) {
        Fp zz(z, p);
        sum += psi(half * zz * zz);
    }
    return sum;
}

Cyc cyc_pow(const Cyc& c, long k) {
    if (k < 0) throw std::invalid_argument("cyc_pow: negative exponent");
    Cyc acc = Cyc::one(c.modulus());
    for (long i = 0; i < k; ++i) acc = acc * c;
    return acc;
}

} // namespace weil
