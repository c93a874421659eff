#pragma once

#include "gfl/sequences.hpp"

#include <optional>
#include <vector>

namespace gfl {

/// Exponent lower bound for the torsion at (i, d), with the branch that
/// produced it. Meaningful when 1 < d < p^epsilon(i); lambda <= 0 encodes a
/// trivial bound.
struct LambdaBound {
    std::size_t i = 0;
    std::uint64_t d = 0;
    std::uint64_t epsilon = 0;
    std::int64_t lambda = 0;
    enum class Branch { kDifference, kScaled, kBoundary } branch = Branch::kDifference;
};

/// floor(log_p d) by repeated integer division; no floating point.
std::uint64_t floor_log(std::uint64_t p, std::uint64_t d);

/// The piecewise torsion lower-bound exponent. Branch kDifference applies
/// when alpha(0) >= d*k_i + max(alpha(k_i), v_p(d)); kScaled otherwise;
/// kBoundary when the comparison is an equality (both formulas agree there).
LambdaBound lambda_bound(const ReducedSequence& rs, std::size_t i, std::uint64_t d);

/// Specialization for d = j*p^n with 1 <= j < p, 0 <= n < epsilon(i):
///   min(epsilon(i) + d*k_i - alpha(0), epsilon(i) - max(alpha(k_i), n)).
/// Must agree with lambda_bound on every input of this shape.
std::int64_t lambda_special(const ReducedSequence& rs, std::size_t i, std::uint64_t d);

/// max over applicable i of p^lambda(i, d), clamped below at 1.
BigInt theorem_lower_bound_at(const ReducedSequence& rs, std::uint64_t d);

/// Per-degree lower bounds for 2 <= d <= d_max as (d, bound) pairs with
/// bound > 1 (degrees with only trivial bounds are omitted).
std::vector<std::pair<std::uint64_t, BigInt>> theorem_lower_bounds(const ReducedSequence& rs,
                                                                   std::uint64_t d_max);

/// Largest d with a nontrivial applicable window: p^(max epsilon) - 1.
BigInt theorem_degree_limit(const ReducedSequence& rs);

/// Annihilator exponent selector delta(l, n) used by the codimension sums:
///   l = m:      max((n-1)*k_m, alpha(0) - alpha(k_{m-1}) - k_{m-1})
///   l < m:      max((n-1)*k_l, alpha(0) - max(alpha(k_m), v_p(n)) - k_m).
std::uint64_t delta_exponent(const ReducedSequence& rs, std::size_t l, std::uint64_t n);

struct AnnihilatorBound {
    std::uint64_t d = 0;
    std::uint64_t exponent = 0;
    enum class Source {
        kAllIndicesHigh,   // every i has d*k_i + max(alpha(k_i), v_p(d)) >= alpha(0)
        kLowClauseMidl,    // some l < m dips below alpha(0)
        kLowClauseLast,    // l = m dips below alpha(0)
        kCodimensionSum,   // summed bound for the Chow group
    } source = Source::kAllIndicesHigh;
    std::optional<std::size_t> clause_l;
};

/// Annihilator exponent for the degree-d torsion of the filtration
/// quotient, for d = j*p^n with 1 <= j < p, d >= 2, n < epsilon(m). The
/// caller is responsible for having established doubly-reducedness of
/// degree d. nullopt when no clause matches.
std::optional<AnnihilatorBound> gamma_annihilator(const ReducedSequence& rs, std::uint64_t d);

/// Closed forms for length-one reduced sequences attached to the summed
/// Chow bound; cross-checked against the sum in tests.
struct LengthOneClosedForm {
    std::uint64_t exponent = 0;
    bool used_t_branch = false;
    std::optional<std::uint64_t> t;
};
std::optional<LengthOneClosedForm> chow_annihilator_closed_form(const ReducedSequence& rs,
                                                                std::uint64_t d);

/// Summed annihilator exponent for the codimension-d Chow torsion,
/// 2 <= d <= p: sum of delta(l, n) for n <= t plus delta(0, n) for n > t,
/// where l is the clause index and t the largest degree still in the low
/// clause. nullopt when no l matches.
std::optional<AnnihilatorBound> chow_annihilator(const ReducedSequence& rs, std::uint64_t d);

/// Upper-bound exponent for the restriction-image defect of a decomposable
/// algebra of index p^r and exponent p^s:
///   (r*p - 1)*p^(r-1) + s + 2 - r - (p^r - 1)/(p - 1).
BigInt decomposable_upper_bound_exponent(std::uint64_t p, std::uint64_t r, std::uint64_t s);

/// v_p of the K-theory index of the generic variety with sequence
/// (r, r-2, ...) of length r-i:  r*phi(p^r) + sum_{k=1}^{r-i-1} (r-k-1)*phi(p^{r-k}).
BigInt euler_phi_ktheory_valuation(std::uint64_t p, std::uint64_t r, std::uint64_t i);

struct IndecompCertificate {
    std::uint64_t p = 0, r = 0, i = 0;
    BigInt lower_exponent;       // torsion the generic variety must carry
    BigInt upper_exponent;       // ceiling for any decomposable algebra
    bool length_condition = false;  // r > 1 + p*(p^2-p)^(i-2), exact rational test
    enum class Verdict { kIndecomposable, kInconclusive } verdict = Verdict::kInconclusive;
};

/// Certificate comparing the generic lower bound (p-1)(r-2) + (p-2) with
/// the decomposable ceiling (i-1)(p^2-p-1); i in {1, 2}.
IndecompCertificate indecomposability_certificate(std::uint64_t p, std::uint64_t r,
                                                  std::uint64_t i);

/// Reference torsion ceilings for decomposable algebras at the two anchor
/// shapes: index p^2 / exponent p carries no torsion at all, and index 8 /
/// exponent 2 carries at most order 2.
BigInt decomposable_torsion_order_ceiling_p2_exp_p();
BigInt decomposable_torsion_order_ceiling_8_exp_2();

/// Checked p-adic valuation identity: the directly computed valuation is
/// the ground truth; `asserted` is the closed form and `matches` records
/// whether they agree. Mismatches are findings to report, never silently
/// corrected.
struct CheckedValuation {
    BigInt value;
    std::uint64_t direct_valuation = 0;
    std::int64_t asserted_valuation = 0;  // closed forms can dip negative off-range
    bool matches = false;
};

/// p^(k-1-v_p(m)) * p^(r-k-1) * binomial(p^k + p - m*p - 2, p^k - 1 - m*p);
/// asserted: the binomial factor has valuation 1 + v_p(m) (total r - 1).
/// Requires k >= 2, k <= r - 1, 1 <= m <= p^(k-1) - 1.
CheckedValuation decomposable_chow_element_a(std::uint64_t p, std::uint64_t r, std::uint64_t k,
                                             std::uint64_t m);

/// binomial(p^r + p^k - 2 - a*p^(r-k), p^k - 1); asserted valuation
/// r - k - v_p(a). Requires 1 <= a <= p^k - 1, 1 <= k <= r - 1.
CheckedValuation decomposable_chow_element_b(std::uint64_t p, std::uint64_t r, std::uint64_t k,
                                             std::uint64_t a);

/// p^(r-k-v_p(i)) * binomial(p^r + p^k - 2 - i, p^k - 1) with
/// i = p^(k+1)*b + p*a; asserted the three-case valuation
///   r - k                      for a = 0 or a = p^(k-1),
///   r - v_p(a)                 for 1 <= a <= p^(k-1) - 1,
///   r - v_p(a - p^(k-1)) - 1   for p^(k-1) < a <= p^k - 1.
/// Requires 0 <= a <= p^k - 1, p^(k-1)+1 <= p^k*b + a <= p^(r-1)-1, and
/// p^k*b + a not divisible by p^(r-k-1).
CheckedValuation decomposable_chow_element_c(std::uint64_t p, std::uint64_t r, std::uint64_t k,
                                             std::uint64_t a, std::uint64_t b);

}  // namespace gfl
