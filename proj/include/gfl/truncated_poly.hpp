#pragma once

#include "gfl/arith.hpp"

#include <vector>

namespace gfl {

/// Exact element of Z[y]/(y^N), the ambient ring of the split Grothendieck
/// ring in the coordinates y = x - 1. Coefficients are stored densely:
/// coeff(j) is the coefficient of y^j, 0 <= j < N. Values are immutable
/// after construction.
class TruncatedPoly {
public:
    explicit TruncatedPoly(std::size_t modulus_degree)
        : coeffs_(modulus_degree) {
        if (modulus_degree == 0) throw argument_error("TruncatedPoly: N must be positive");
    }

    static TruncatedPoly constant(std::size_t n, BigInt value);
    static TruncatedPoly monomial(std::size_t n, std::size_t degree, BigInt value);

    /// x^m = (1+y)^m truncated at degree N: coefficients binomial(m, j).
    static TruncatedPoly x_power(std::size_t n, std::uint64_t m);

    std::size_t modulus_degree() const { return coeffs_.size(); }
    const BigInt& coeff(std::size_t j) const { return coeffs_.at(j); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    bool is_zero() const;

    /// Index of the first nonzero coefficient; +infinity for the zero element.
    Valuation y_valuation() const;

    TruncatedPoly& operator+=(const TruncatedPoly& o);
    TruncatedPoly& operator-=(const TruncatedPoly& o);
    TruncatedPoly& operator*=(const BigInt& s);
    friend TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly& b) { return a += b; }
    friend TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly& b) { return a -= b; }
    friend TruncatedPoly operator*(TruncatedPoly a, const BigInt& s) { return a *= s; }
    friend TruncatedPoly operator*(const BigInt& s, TruncatedPoly a) { return a *= s; }

    /// Schoolbook product truncated at N. N <= a few hundred keeps this the
    /// right tool; no FFT.
    friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b);

    TruncatedPoly pow(std::uint64_t e) const;

    friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

private:
    std::vector<BigInt> coeffs_;
};

}  // namespace gfl
