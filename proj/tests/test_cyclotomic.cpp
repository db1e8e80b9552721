#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "weil/cyclotomic.hpp"
#include "weil/sweep.hpp"

using namespace weil;

namespace {

Cyc random_cyc(DetRng& rng, long p) {
    Cyc acc(p);
    for (long i = 0; i < p - 1; ++i) {
        mpq_class q(rng.below(21) - 10, 1 + rng.below(4));
        q.canonicalize();
        acc += Cyc::zeta_pow(p, i).scaled(q);
    }
    return acc;
}

// independent oracle: polynomial multiplication followed by reduction mod
// x^p - 1 and then the p-term relation, written without Cyc::operator*
Cyc slow_mul(const Cyc& a, const Cyc& b) {
    long p = a.modulus();
    std::vector<mpq_class> mod_xp(static_cast<size_t>(p), 0);
    for (size_t i = 0; i < a.coeffs().size(); ++i)
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            mod_xp[(i + j) % static_cast<size_t>(p)] += a.coeffs()[i] * b.coeffs()[j];
    Cyc out(p);
    Cyc top = Cyc::zeta_pow(p, p - 1);
    for (long e = 0; e < p; ++e) {
        if (mod_xp[static_cast<size_t>(e)] == 0) continue;
        Cyc term = (e == p - 1) ? top : Cyc::zeta_pow(p, e);
        out += term.scaled(mod_xp[static_cast<size_t>(e)]);
    }
    return out;
}

} // namespace

TEST_CASE("minimal polynomial relation") {
    for (long p : {3L, 5L, 7L}) {
        Cyc lhs = Cyc::zeta_pow(p, 1) * Cyc::zeta_pow(p, p - 2);
        Cyc rhs(p);
        for (long i = 0; i <= p - 2; ++i) rhs -= Cyc::zeta_pow(p, i);
        CHECK(lhs == rhs);
        CHECK(Cyc::zeta_pow(p, p) == Cyc::one(p));
    }
}

TEST_CASE("additive identity and canonical length") {
    DetRng rng(7);
    for (long p : {3L, 5L, 7L}) {
        Cyc a = random_cyc(rng, p);
        CHECK(a + Cyc::zero(p) == a);
        CHECK((a * a).coeffs().size() == static_cast<size_t>(p - 1));
        CHECK((a + a).coeffs().size() == static_cast<size_t>(p - 1));
    }
}

TEST_CASE("product in Q(zeta_3): (1+z)^2 = z") {
    Cyc a = Cyc::one(3) + Cyc::zeta_pow(3, 1);
    CHECK(a * a == Cyc::zeta_pow(3, 1));
    CHECK(slow_mul(a, a) == Cyc::zeta_pow(3, 1));
}

TEST_CASE("multiplication agrees with the polynomial oracle") {
    DetRng rng(11);
    for (long p : {3L, 5L, 7L})
        for (int trial = 0; trial < 20; ++trial) {
            Cyc a = random_cyc(rng, p), b = random_cyc(rng, p);
            CHECK(a * b == slow_mul(a, b));
        }
}

TEST_CASE("modulus mismatch is rejected") {
    CHECK_THROWS_AS(Cyc::one(3) + Cyc::one(5), std::invalid_argument);
    CHECK_THROWS_AS(Cyc::one(3) * Cyc::one(7), std::invalid_argument);
}

TEST_CASE("psi is the additive character") {
    CHECK(psi(Fp(0, 5)) == Cyc::one(5));
    CHECK(psi(Fp(1, 5)) == Cyc::zeta_pow(5, 1));
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        Cyc expected(p);
        for (long i = 0; i <= p - 2; ++i) expected -= Cyc::zeta_pow(p, i);
        CHECK(psi(Fp(p - 1, p)) == expected);
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b) CHECK(psi(Fp(a, p)) * psi(Fp(b, p)) == psi(Fp(a + b, p)));
    }
}

TEST_CASE("gauss sums by direct summation") {
    // p=3: terms are psi(0), psi(2), psi(2) since 1/2 = 2 in F_3
    CHECK(gauss_sum(3) == Cyc::one(3) + Cyc::zeta_pow(3, 2).scaled(2));
    // p=5: 1/2 = 3 in F_5
    CHECK(gauss_sum(5) == Cyc::one(5) + Cyc::zeta_pow(5, 2).scaled(2) + Cyc::zeta_pow(5, 3).scaled(2));
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        Cyc g = gauss_sum(p);
        CHECK(g * g.conj() == Cyc::rational(p, p));
    }
}

TEST_CASE("conjugation is the order-two Galois action") {
    CHECK(Cyc::one(7).conj() == Cyc::one(7));
    for (long p : {3L, 5L, 7L}) {
        Cyc z = Cyc::zeta_pow(p, 1);
        CHECK(z.conj() == Cyc::zeta_pow(p, p - 1));
        DetRng rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            Cyc a = random_cyc(rng, p);
            CHECK(a.conj().conj() == a);
        }
    }
    CHECK(gauss_sum(3).conj() == Cyc::one(3) + Cyc::zeta_pow(3, 1).scaled(2));
}

TEST_CASE("conjugation is a ring homomorphism") {
    DetRng rng(5);
    for (long p : {3L, 5L})
        for (int trial = 0; trial < 10; ++trial) {
            Cyc a = random_cyc(rng, p), b = random_cyc(rng, p);
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK((a + b).conj() == a.conj() + b.conj());
        }
}

TEST_CASE("field inverse") {
    DetRng rng(17);
    for (long p : {3L, 5L, 7L})
        for (int trial = 0; trial < 10; ++trial) {
            Cyc a = random_cyc(rng, p);
            if (a.is_zero()) continue;
            CHECK(a * a.inverse() == Cyc::one(p));
        }
    CHECK_THROWS_AS(Cyc::zero(5).inverse(), std::domain_error);
}

TEST_CASE("embedding") {
    ComplexApprox one = Cyc::one(5).embed();
    CHECK(one.re == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.im == doctest::Approx(0.0).epsilon(1e-12));

    ComplexApprox g3 = gauss_sum(3).embed();
    CHECK(std::abs(g3.re) < 1e-12);
    CHECK(g3.im == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));

    ComplexApprox g5 = gauss_sum(5).embed();
    CHECK(g5.re == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::abs(g5.im) < 1e-12);

    DetRng rng(23);
    for (long p : {3L, 7L})
        for (int trial = 0; trial < 10; ++trial) {
            Cyc a = random_cyc(rng, p), b = random_cyc(rng, p);
            ComplexApprox ea = a.embed(), eb = b.embed(), eab = (a * b).embed();
            double re = ea.re * eb.re - ea.im * eb.im;
            double im = ea.re * eb.im + ea.im * eb.re;
            double slack = 1e-9 + eab.eps + (ea.eps + eb.eps) * (std::abs(eb.re) + std::abs(eb.im) +
                                                                 std::abs(ea.re) + std::abs(ea.im) + 1.0);
            CHECK(std::abs(re - eab.re) <= slack);
            CHECK(std::abs(im - eab.im) <= slack);
        }
}

TEST_CASE("coefficient string round trip") {
    DetRng rng(29);
    for (long p : {3L, 5L, 11L})
        for (int trial = 0; trial < 5; ++trial) {
            Cyc a = random_cyc(rng, p);
            CHECK(Cyc::from_coeff_strings(p, a.coeff_strings()) == a);
        }
    CHECK_THROWS_AS(Cyc::from_coeff_strings(5, {"1/1"}), std::invalid_argument);
}
