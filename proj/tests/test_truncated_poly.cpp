#include "gfl/truncated_poly.hpp"

#include "doctest.h"

#include <random>

using namespace gfl;

namespace {

TruncatedPoly from_list(std::size_t n, std::initializer_list<long> cs) {
    TruncatedPoly r(n);
    std::size_t j = 0;
    for (long c : cs) r = r + TruncatedPoly::monomial(n, j++, c);
    return r;
}

TruncatedPoly random_poly(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> coeff(-9, 9);
    TruncatedPoly r(n);
    for (std::size_t j = 0; j < n; ++j) r = r + TruncatedPoly::monomial(n, j, coeff(rng));
    return r;
}

}  // namespace

TEST_CASE("x_power expansions") {
    CHECK(TruncatedPoly::x_power(4, 2) == from_list(4, {1, 2, 1, 0}));
    CHECK(TruncatedPoly::x_power(2, 2) == from_list(2, {1, 2}));
    auto x9 = TruncatedPoly::x_power(9, 9);
    for (std::size_t j = 0; j < 9; ++j)
        CHECK(x9.coeff(j) == binomial(9, static_cast<std::int64_t>(j)));
}

TEST_CASE("mul matches hand expansions") {
    CHECK(from_list(4, {0, 2, 0, 0}) * from_list(4, {0, 2, 1, 0}) == from_list(4, {0, 0, 4, 2}));
    auto zero = TruncatedPoly(4);
    CHECK(from_list(4, {1, 5, 2, 3}) * zero == zero);

    // (x^3 - 1)^2 at N = 9, expanded by hand from (3y + 3y^2 + y^3)^2
    auto x3m1 = TruncatedPoly::x_power(9, 3) - TruncatedPoly::constant(9, 1);
    auto sq = x3m1 * x3m1;
    CHECK(sq == from_list(9, {0, 0, 9, 18, 15, 6, 1, 0, 0}));
}

TEST_CASE("y_valuation") {
    CHECK(from_list(4, {0, 0, 4, 2}).y_valuation() == Valuation::finite(2));
    CHECK(TruncatedPoly(4).y_valuation().is_infinite());
    // 9((1+y)^3 - 1) at N = 9 has lowest term 27y
    auto f = (TruncatedPoly::x_power(9, 3) - TruncatedPoly::constant(9, 1)) * BigInt(9);
    CHECK(f.y_valuation() == Valuation::finite(1));
    CHECK(f.coeff(1) == 27);
}

TEST_CASE("x_power is multiplicative") {
    for (std::size_t n : {2, 5, 9}) {
        for (std::uint64_t m1 = 0; m1 <= 2 * n; ++m1)
            for (std::uint64_t m2 = 0; m2 <= 2 * n; ++m2)
                CHECK(TruncatedPoly::x_power(n, m1) * TruncatedPoly::x_power(n, m2) ==
                      TruncatedPoly::x_power(n, m1 + m2));
    }
}

TEST_CASE("y^N vanishes") {
    for (std::size_t n : {1, 2, 4, 9, 27}) {
        auto y = TruncatedPoly::monomial(n, 1, 1);
        CHECK(y.pow(n).is_zero());
        if (n > 1) CHECK_FALSE(y.pow(n - 1).is_zero());
    }
}

TEST_CASE("mul commutative and associative on random triples") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 1 + (rng() % 12);
        auto a = random_poly(n, rng), b = random_poly(n, rng), c = random_poly(n, rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("valuation of products adds or exceeds") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 2 + (rng() % 10);
        auto a = random_poly(n, rng), b = random_poly(n, rng);
        auto prod = a * b;
        if (!prod.is_zero()) {
            auto va = a.y_valuation(), vb = b.y_valuation();
            REQUIRE_FALSE(va.is_infinite());
            REQUIRE_FALSE(vb.is_infinite());
            CHECK(prod.y_valuation().value() >= va.value() + vb.value());
        }
    }
}

TEST_CASE("mismatched moduli rejected") {
    CHECK_THROWS_AS(TruncatedPoly(3) * TruncatedPoly(4), argument_error);
    CHECK_THROWS_AS(TruncatedPoly(3) + TruncatedPoly(4), argument_error);
}
