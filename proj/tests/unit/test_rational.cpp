#include <doctest.h>

#include <random>

#include "kantor/rational.hpp"

using kantor::Rational;

TEST_SUITE("rational")
{
    TEST_CASE("normalizes sign and common factors")
    {
        const Rational q(6, -4);
        CHECK(q.to_string() == "-3/2");
        CHECK(Rational(0, 5).is_zero());
        CHECK(Rational(4, 2).is_integer());
        CHECK(Rational::parse("-12/8") == Rational(-3, 2));
        CHECK_THROWS(Rational(1, 0));
    }

    TEST_CASE("promotes to big values on overflow and demotes back")
    {
        const Rational big(INT64_MAX);
        const Rational sum = big + big;
        CHECK_FALSE(sum.is_small());
        CHECK(sum.to_mpq() == mpq_class(mpz_class(INT64_MAX) * 2));
        const Rational back = sum - big;
        CHECK(back == big);
        CHECK(back.is_small());
        const Rational prod = Rational(INT64_MAX, 3) * Rational(3, INT64_MAX);
        CHECK(prod.is_one());
    }

    TEST_CASE("field axioms agree with mpq on seeded values")
    {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<long long> d(-1'000'000'000'000LL, 1'000'000'000'000LL);
        for (int i = 0; i < 2000; ++i) {
            long long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
            if (b == 0)
                b = 1;
            if (e == 0)
                e = 7;
            const Rational x(a, b), y(c, e);
            const mpq_class mx = x.to_mpq(), my = y.to_mpq();
            CHECK((x + y).to_mpq() == mx + my);
            CHECK((x - y).to_mpq() == mx - my);
            CHECK((x * y).to_mpq() == mx * my);
            if (!y.is_zero())
                CHECK((x / y).to_mpq() == mx / my);
            CHECK(((x < y) == (mx < my)));
            CHECK((x * y) == (y * x));
        }
    }

    TEST_CASE("hash and ordering are consistent with equality")
    {
        CHECK(Rational(2, 4).hash() == Rational(1, 2).hash());
        CHECK(Rational(1, 3) < Rational(1, 2));
        CHECK(-Rational(1, 2) == Rational(-1, 2));
        CHECK(Rational(-5, 3).abs() == Rational(5, 3));
        CHECK(Rational(-5, 3).inverse() == Rational(-3, 5));
    }
}
