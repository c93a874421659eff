#include "gfl/arith.hpp"

#include "doctest.h"

using namespace gfl;

namespace {

// independent factorial-based oracle, deliberately the naive route
BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

TEST_CASE("vp basics") {
    CHECK(vp(3, BigInt(9)) == Valuation::finite(2));
    CHECK(vp(2, BigInt(0)).is_infinite());
    CHECK(vp(5, BigInt(250)) == Valuation::finite(3));
    CHECK(vp(2, BigInt(-12)) == Valuation::finite(2));
    CHECK_THROWS_AS(vp(4, BigInt(8)), argument_error);
    CHECK_THROWS_AS(vp(1, BigInt(8)), argument_error);
}

TEST_CASE("vp is additive on products") {
    const std::uint64_t primes[] = {2, 3, 5};
    for (auto p : primes) {
        for (std::int64_t a : {1, 6, -20, 36, 250, 1024}) {
            for (std::int64_t b : {1, 9, 14, -250}) {
                auto va = vp(p, BigInt(a)), vb = vp(p, BigInt(b));
                CHECK(vp(p, BigInt(a) * b) == Valuation::finite(va.value() + vb.value()));
            }
        }
    }
}

TEST_CASE("binomial small and out-of-range") {
    CHECK(binomial(9, 2) == 36);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(4, -1) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(7, 7) == 1);
}

TEST_CASE("binomial against the factorial oracle") {
    CHECK(binomial(81, 40) == factorial(81) / (factorial(40) * factorial(41)));
    for (std::uint64_t n = 0; n <= 24; ++n)
        for (std::uint64_t k = 0; k <= n; ++k)
            CHECK(binomial(n, static_cast<std::int64_t>(k)) ==
                  factorial(n) / (factorial(k) * factorial(n - k)));
}

TEST_CASE("p_coeff examples") {
    CHECK(p_coeff(3, 2, 2) == 9);
    CHECK(p_coeff(3, 4, 3) == 27);
    CHECK(p_coeff(2, 3, 8) == 1);
    CHECK(p_coeff(3, 2, 0) == 1);  // gcd(0, p^a) = p^a
    CHECK(p_coeff(5, 0, 7) == 1);
}

TEST_CASE("p_coeff times gcd recovers p^alpha") {
    for (std::uint64_t p : {2ull, 3ull, 5ull})
        for (std::uint64_t a = 0; a <= 6; ++a)
            for (std::uint64_t b = 0; b <= 40; ++b) {
                BigInt pa = pow_big(p, a);
                CHECK(p_coeff(p, a, b) * gcd(BigInt(b), pa) == pa);
            }
}

TEST_CASE("valuation of binomial(p^k, j) is k - vp(j)") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (std::uint64_t k = 0; k <= 4; ++k) {
            const std::uint64_t pk = static_cast<std::uint64_t>(pow_big(p, k));
            for (std::uint64_t j = 1; j <= pk; ++j) {
                auto lhs = vp(p, binomial(pk, static_cast<std::int64_t>(j)));
                CHECK(lhs == Valuation::finite(k - vp(p, BigInt(j)).value()));
            }
        }
    }
}

TEST_CASE("Valuation ordering and clamping") {
    auto inf = Valuation::infinity();
    CHECK(min(inf, Valuation::finite(3)) == Valuation::finite(3));
    CHECK(max(inf, Valuation::finite(3)).is_infinite());
    CHECK(inf.clamped(5) == 5);
    CHECK(Valuation::finite(2).clamped(5) == 2);
    CHECK(Valuation::finite(9).clamped(5) == 5);
    CHECK_THROWS_AS(inf.value(), argument_error);
}
