#include "gfl/truncated_poly.hpp"

#include <sstream>

namespace gfl {

TruncatedPoly TruncatedPoly::constant(std::size_t n, BigInt value) {
    TruncatedPoly r(n);
    r.coeffs_[0] = std::move(value);
    return r;
}

TruncatedPoly TruncatedPoly::monomial(std::size_t n, std::size_t degree, BigInt value) {
    TruncatedPoly r(n);
    if (degree < n) r.coeffs_[degree] = std::move(value);
    return r;
}

TruncatedPoly TruncatedPoly::x_power(std::size_t n, std::uint64_t m) {
    TruncatedPoly r(n);
    // binomial(m, j) built incrementally: C(m, j) = C(m, j-1) * (m-j+1) / j.
    BigInt c = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
            if (j > m) break;  // remaining coefficients are zero
            c = c * (m - j + 1) / j;
        }
        r.coeffs_[j] = c;
    }
    return r;
}

bool TruncatedPoly::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

Valuation TruncatedPoly::y_valuation() const {
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (coeffs_[j] != 0) return Valuation::finite(j);
    return Valuation::infinity();
}

TruncatedPoly& TruncatedPoly::operator+=(const TruncatedPoly& o) {
    if (o.coeffs_.size() != coeffs_.size())
        throw argument_error("TruncatedPoly: mismatched modulus degrees");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
}

TruncatedPoly& TruncatedPoly::operator-=(const TruncatedPoly& o) {
    if (o.coeffs_.size() != coeffs_.size())
        throw argument_error("TruncatedPoly: mismatched modulus degrees");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
}

TruncatedPoly& TruncatedPoly::operator*=(const BigInt& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
    const std::size_t n = a.coeffs_.size();
    if (b.coeffs_.size() != n)
        throw argument_error("TruncatedPoly: mismatched modulus degrees");
    TruncatedPoly r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return r;
}

TruncatedPoly TruncatedPoly::pow(std::uint64_t e) const {
    TruncatedPoly r = constant(coeffs_.size(), 1);
    TruncatedPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string TruncatedPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) continue;
        if (!first) os << " + ";
        os << coeffs_[j];
        if (j > 0) os << "*y^" << j;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace gfl
