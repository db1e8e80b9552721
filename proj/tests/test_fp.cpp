#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "weil/fp.hpp"

using namespace weil;

TEST_CASE("modular arithmetic basics") {
    CHECK((Fp(2, 3) + Fp(2, 3)).value() == 1);
    CHECK((Fp(4, 5) * Fp(4, 5)).value() == 1);
    for (long p : {3L, 5L, 7L})
        for (long a = 0; a < p; ++a) CHECK((Fp(0, p) * Fp(a, p)).value() == 0);
    CHECK((Fp(1, 7) - Fp(3, 7)).value() == 5);
    CHECK((-Fp(1, 5)).value() == 4);
}

TEST_CASE("modulus is validated") {
    CHECK_THROWS_AS(Fp(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(Fp(1, 9), std::invalid_argument);
    CHECK_THROWS_AS(Fp(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Fp(0, 2), std::invalid_argument);
    CHECK_NOTHROW(Fp(0, 13));
}

TEST_CASE("mixed moduli are rejected") {
    CHECK_THROWS_AS(Fp(1, 3) + Fp(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(Fp(1, 3) * Fp(1, 7), std::invalid_argument);
}

TEST_CASE("inverses") {
    CHECK(Fp(2, 3).inverse().value() == 2);
    for (long p : {3L, 5L, 7L, 11L, 13L}) CHECK(Fp(1, p).inverse().value() == 1);

    // brute-force oracle for inv(3) in F_7
    long expected = -1;
    for (long x = 1; x < 7; ++x)
        if (3 * x % 7 == 1) expected = x;
    CHECK(expected == 5);
    CHECK(Fp(3, 7).inverse().value() == expected);

    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (long a = 1; a < p; ++a) CHECK((Fp(a, p) * Fp(a, p).inverse()).value() == 1);

    CHECK_THROWS_AS(Fp(0, 5).inverse(), std::domain_error);
}

TEST_CASE("legendre character") {
    CHECK(legendre(Fp(0, 5)) == 0);
    for (long p : {3L, 5L, 7L}) CHECK(legendre(Fp(1, p)) == 1);

    // oracle: squares mod 5 are {1, 4}
    std::set<long> squares5;
    for (long x = 1; x < 5; ++x) squares5.insert(x * x % 5);
    CHECK(squares5 == std::set<long>{1, 4});
    CHECK(legendre(Fp(2, 5)) == -1);

    for (long p : {3L, 5L, 7L}) {
        std::set<long> squares;
        for (long x = 1; x < p; ++x) squares.insert(x * x % p);
        long plus = 0;
        for (long a = 1; a < p; ++a) {
            CHECK(legendre(Fp(a, p)) == (squares.count(a) ? 1 : -1));
            if (legendre(Fp(a, p)) == 1) ++plus;
        }
        CHECK(plus == (p - 1) / 2);
        // multiplicativity
        for (long a = 1; a < p; ++a)
            for (long b = 1; b < p; ++b)
                CHECK(legendre(Fp(a, p) * Fp(b, p)) == legendre(Fp(a, p)) * legendre(Fp(b, p)));
    }
}

TEST_CASE("half is the inverse of two") {
    for (long p : {3L, 5L, 7L, 11L, 13L}) CHECK((Fp::half(p) + Fp::half(p)).value() == 1);
    CHECK(Fp::half(3).value() == 2);
    CHECK(Fp::half(5).value() == 3);
}
