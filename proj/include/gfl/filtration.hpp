#pragma once

#include "gfl/lattice.hpp"
#include "gfl/sequences.hpp"
#include "gfl/truncated_poly.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace gfl {

/// A generator of the degree-d filtration piece: the composition
/// (beta(0), ..., beta(s)) together with its expanded ring element
///   prod_k p_coeff(p, alpha(k), beta(k)) * (x^{p^k} - 1)^{beta(k)}.
struct GammaGenerator {
    std::vector<std::uint64_t> betas;
    TruncatedPoly poly;
};

struct FiltrationLevel {
    std::size_t degree;
    LatticeBasis basis;
    BigInt generator_count;  // compositions with degree <= sum beta <= N-1
};

struct QuotientReport {
    std::size_t degree = 0;
    AbelianGroupStructure structure;
    BigInt restriction_index;  // index of the restriction image in Z * y^d

    friend bool operator==(const QuotientReport&, const QuotientReport&) = default;
};

/// Torsion element exhibited for a reduced index i and degree d. The two
/// invariants every witness must satisfy:
///   annihilator_used * element lies in the next filtration level,
///   (claimed_order_lower_bound / p) * element does not.
struct TorsionWitness {
    std::size_t i;
    std::size_t d;
    bool primed;  // scaled variant of the difference element
    std::int64_t lambda;
    BigInt annihilator_used;
    BigInt claimed_order_lower_bound;  // p^lambda
    TruncatedPoly element;
};

struct WitnessCheck {
    bool annihilator_kills;   // annihilator_used * element in next level
    bool order_attained;      // p^(lambda-1) * element not in next level
    bool ok() const { return annihilator_kills && order_attained; }
};

struct ProductFormulaResult {
    bool holds;
    BigInt total_torsion_order;
    BigInt k_theory_index;   // |K(split)/K(X)|
    BigInt rho_product;      // prod over d of the restriction indices
};

enum class TriVerdict { kTrue, kFalse, kVacuous };

/// Exact engine for one p-sequence: builds the Quillen lattice and every
/// filtration level Gamma^d as sublattices of Z^N (N = p^{alpha(0)}),
/// computes subquotient structure, restriction indices, and the witness /
/// reduction / congruence verifications. Construction fails with
/// resource_error when N exceeds the cap; formula-level evaluators in
/// bounds.hpp stay available in that regime.
///
/// Deterministic and single-threaded per instance; distinct instances may
/// run concurrently.
class FiltrationEngine {
public:
    static constexpr std::size_t kDefaultCap = 256;

    explicit FiltrationEngine(PSequence seq, std::size_t cap = kDefaultCap);
    ~FiltrationEngine();
    FiltrationEngine(FiltrationEngine&&) noexcept;
    FiltrationEngine& operator=(FiltrationEngine&&) noexcept;

    const PSequence& sequence() const;
    std::size_t n() const;  // p^{alpha(0)}
    const std::optional<ReducedSequence>& reduced() const;

    /// Image of K0 under restriction to the split variety, in y-coordinates.
    const LatticeBasis& quillen_lattice();

    /// Gamma^d for 0 <= d <= N; level 0 is the full Quillen lattice.
    const LatticeBasis& level(std::size_t d);
    FiltrationLevel filtration_level(std::size_t d);

    /// Explicit generator family with d <= sum beta <= N-1 (higher sums
    /// vanish: the y-valuation of a generator is at least sum beta, and
    /// y^N = 0). Enumeration only; guarded by a count cap.
    std::vector<GammaGenerator> gamma_generators(std::size_t d, bool use_lemma_reduction) const;
    BigInt generator_count(std::size_t d, bool use_lemma_reduction) const;

    BigInt restriction_index(std::size_t d) const;
    QuotientReport quotient_report(std::size_t d);
    const std::vector<QuotientReport>& torsion_profile();
    BigInt total_torsion_order();

    ProductFormulaResult verify_product_formula();

    /// Spans with and without the single-step-drop reduction agree.
    bool verify_lemma_reduction(std::size_t d);
    bool verify_lemma_reduction_all();

    /// Exact generation check: next level plus the m+1 pure powers of
    /// degree d span level d. Vacuous when no reduced sequence exists.
    TriVerdict verify_doubly_reduced(std::size_t d);

    TorsionWitness torsion_witness(std::size_t i, std::size_t d);
    WitnessCheck verify_witness(std::size_t i, std::size_t d);
    WitnessCheck check_witness_element(const TorsionWitness& w);
    std::optional<BigInt> witness_class_order(std::size_t i, std::size_t d);

    /// Congruence test: elements of Gamma^{d+1} lie, modulo p^(eps(i) -
    /// floor(log_p d)), in the span of (y_i - 1)^{d+1} * y_i^j where
    /// y_i = x^{p^{k_i}}. Verified on the full basis of the level (which
    /// generates it) plus seeded random combinations.
    bool verify_congruence_lemma(std::size_t i, std::size_t d, std::size_t sample_size);

    /// Structural self-checks (rank law, nesting, containment in K0,
    /// torsion-free low degrees, index bookkeeping). Empty means healthy.
    std::vector<std::string> invariant_violations();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Exact degree-2 product decomposition for the 3-sequence (4,2,0) at
/// N = 81: the cross product of the two lower pure powers minus three times
/// the top one decomposes over generators of the next level.
bool verify_known_degree2_decomposition();

/// Same identity with one coefficient perturbed; must come out false.
bool verify_known_degree2_decomposition_perturbed();

}  // namespace gfl
