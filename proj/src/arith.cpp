#include "gfl/arith.hpp"

namespace gfl {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Valuation vp(std::uint64_t p, const BigInt& n) {
    if (!is_prime(p)) throw argument_error("vp: p = " + std::to_string(p) + " is not prime");
    if (n == 0) return Valuation::infinity();
    BigInt m = abs(n);
    std::uint64_t e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return Valuation::finite(e);
}

Valuation vp(std::uint64_t p, std::int64_t n) { return vp(p, BigInt(n)); }

BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigInt binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    if (kk > n - kk) kk = n - kk;
    // c = c * (n-kk+i) / i is exact at every step; the gcd keeps the
    // intermediate factors small before the division.
    BigInt c = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) {
        BigInt num = n - kk + i;
        BigInt den = i;
        BigInt g = gcd(num, den);
        num /= g;
        den /= g;
        c = (c * num) / den;
    }
    return c;
}

BigInt p_coeff(std::uint64_t p, std::uint64_t alpha, std::uint64_t beta) {
    return pow_big(p, p_coeff_exp(p, alpha, beta));
}

std::uint64_t p_coeff_exp(std::uint64_t p, std::uint64_t alpha, std::uint64_t beta) {
    return alpha - vp(p, BigInt(beta)).clamped(alpha);
}

}  // namespace gfl
