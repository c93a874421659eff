#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gfl {

// Every quantity in the engine is an exact integer; no floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;

struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct containment_error : std::runtime_error {
    containment_error(const std::string& what, std::size_t row)
        : std::runtime_error(what), offending_row(row) {}
    std::size_t offending_row;
};

struct not_applicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A p-adic valuation: a non-negative integer or +infinity (the valuation
/// of 0). Infinity is a distinguished state, never a sentinel integer.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation finite(std::uint64_t v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    std::uint64_t value() const {
        if (infinite_) throw argument_error("Valuation: value() of +infinity");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a == b || a < b; }

    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }
    friend Valuation max(const Valuation& a, const Valuation& b) { return a < b ? b : a; }

    /// min(v, cap) as a plain integer; the form every alpha(min{v_p(i), s})
    /// lookup needs.
    std::uint64_t clamped(std::uint64_t cap) const {
        return infinite_ || v_ > cap ? cap : v_;
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(v_); }

private:
    Valuation(bool inf, std::uint64_t v) : infinite_(inf), v_(v) {}
    bool infinite_;
    std::uint64_t v_;
};

bool is_prime(std::uint64_t n);

/// Largest e with p^e | n; +infinity for n = 0. Throws if p is not prime.
Valuation vp(std::uint64_t p, const BigInt& n);
Valuation vp(std::uint64_t p, std::int64_t n);

BigInt pow_big(std::uint64_t base, std::uint64_t exp);

/// Exact binomial coefficient; 0 when k < 0 or k > n. Multiplicative
/// accumulation with a running gcd reduction, never factorial division.
BigInt binomial(std::uint64_t n, std::int64_t k);

/// p^alpha / gcd(beta, p^alpha), the coefficient attached to the k-th factor
/// of a gamma generator. Equals p^(alpha - min(v_p(beta), alpha)).
BigInt p_coeff(std::uint64_t p, std::uint64_t alpha, std::uint64_t beta);

/// Exponent of p in p_coeff, as a plain integer.
std::uint64_t p_coeff_exp(std::uint64_t p, std::uint64_t alpha, std::uint64_t beta);

}  // namespace gfl
