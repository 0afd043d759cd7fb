#include <set>

#include "doctest.h"
#include "frustbench/rational.hpp"
#include "frustbench/rng.hpp"

using namespace frustbench;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(2, 4), b(1, 3);
    CHECK(a == Rational(1, 2));
    CHECK((a + b) == Rational(5, 6));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a / b) == Rational(3, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational parse accepts fractions and decimals") {
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("1.0") == Rational(1));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK(round_half_up(Rational(5, 2)) == 3);
    CHECK(round_half_up(Rational(12, 5)) == 2);
}

TEST_CASE("derived seeds are distinct and reproducible") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, {i, 7}));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
}

TEST_CASE("rng draws are in range and roughly uniform") {
    Rng rng(5);
    int counts[6] = {};
    double sum = 0;
    for (int i = 0; i < 60000; ++i) {
        const auto k = rng.below(6);
        REQUIRE(k < 6);
        ++counts[k];
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    for (int c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
    CHECK(sum / 60000 == doctest::Approx(0.5).epsilon(0.01));
}
