#pragma once

#include "gfl/arith.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gfl {

/// The p-sequence (alpha(0), ..., alpha(s)) of a p-primary algebra:
/// alpha(k) = v_p(ind(A^{tensor p^k})), strictly decreasing, last term 0.
/// Every such sequence is realized by a division algebra, so validation is
/// purely combinatorial.
class PSequence {
public:
    static PSequence validate(std::uint64_t p, std::vector<std::uint64_t> alpha);

    /// Text form "p:a0,a1,...,as", e.g. "3:4,2,0".
    static PSequence parse(std::string_view text);

    std::uint64_t p() const { return p_; }
    const std::vector<std::uint64_t>& alpha() const { return alpha_; }
    std::uint64_t alpha(std::size_t k) const { return alpha_.at(k); }
    std::uint64_t alpha0() const { return alpha_.front(); }

    /// Length s = v_p(exp(A)).
    std::size_t length() const { return alpha_.size() - 1; }

    /// deg(A) = ind(A) = p^{alpha(0)}; can exceed any lattice cap.
    BigInt degree() const { return pow_big(p_, alpha_.front()); }

    /// degree() as a machine integer when it fits.
    std::optional<std::size_t> degree_as_size() const;

    std::string to_string() const;

    friend bool operator==(const PSequence& a, const PSequence& b) {
        return a.p_ == b.p_ && a.alpha_ == b.alpha_;
    }
    friend bool operator<(const PSequence& a, const PSequence& b) {
        if (a.p_ != b.p_) return a.p_ < b.p_;
        return a.alpha_ < b.alpha_;
    }

private:
    PSequence(std::uint64_t p, std::vector<std::uint64_t> alpha)
        : p_(p), alpha_(std::move(alpha)) {}
    std::uint64_t p_;
    std::vector<std::uint64_t> alpha_;
};

/// ind(A^{tensor i}) = p^{alpha(min(v_p(i), s))} for i >= 1, and 1 for i = 0.
BigInt index_of_tensor_power(const PSequence& seq, std::uint64_t i);
std::uint64_t index_exponent_of_tensor_power(const PSequence& seq, std::uint64_t i);

/// The subsequence of the p-sequence at k_0 = 0 and every k whose value
/// drops by at least 2 from its predecessor. Nonempty tail (m >= 1) iff
/// ind(A) > exp(A). epsilon(i) = alpha(k_{i-1}) + k_{i-1} - k_i drives every
/// torsion bound.
class ReducedSequence {
public:
    /// Direct construction from indices and values (used for formula-level
    /// inputs where only the reduced data is known). Checks: k strictly
    /// increasing from 0, values strictly decreasing, and the gap inequality
    /// value(i-1) - value(i) > k(i) - k(i-1).
    static ReducedSequence from_parts(std::uint64_t p, std::vector<std::size_t> k,
                                      std::vector<std::uint64_t> value);

    std::uint64_t p() const { return p_; }
    std::size_t m() const { return k_.size() - 1; }
    const std::vector<std::size_t>& indices() const { return k_; }
    const std::vector<std::uint64_t>& values() const { return value_; }
    std::size_t k(std::size_t i) const { return k_.at(i); }
    std::uint64_t value(std::size_t i) const { return value_.at(i); }
    std::uint64_t alpha0() const { return value_.front(); }

    /// epsilon(i) for 1 <= i <= m.
    std::uint64_t epsilon(std::size_t i) const;

    std::string to_string() const;

private:
    ReducedSequence(std::uint64_t p, std::vector<std::size_t> k,
                    std::vector<std::uint64_t> value)
        : p_(p), k_(std::move(k)), value_(std::move(value)) {}
    std::uint64_t p_;
    std::vector<std::size_t> k_;
    std::vector<std::uint64_t> value_;
};

/// First-class outcome for sequences (s, s-1, ..., 0): every filtration
/// quotient is torsion-free, and no reduced sequence exists.
struct IndexEqualsExponent {
    friend bool operator==(IndexEqualsExponent, IndexEqualsExponent) { return true; }
};

using Reduction = std::variant<IndexEqualsExponent, ReducedSequence>;

Reduction reduce(const PSequence& seq);

/// Convenience: the reduced sequence, or nullopt in the index = exponent case.
std::optional<ReducedSequence> reduced_or_none(const PSequence& seq);

/// Sufficient condition for the reduced sequence to be doubly reduced in all
/// degrees d <= p: alpha(k_{m-1}) + alpha(k_m) + k_{m-1} >= alpha(0).
/// For d > p doubly-reducedness is only ever decided by the exact lattice
/// verification in the filtration engine, never by formula.
bool doubly_reduced_sufficient(const ReducedSequence& rs);

}  // namespace gfl
