#pragma once

#include "gfl/bounds.hpp"
#include "gfl/filtration.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gfl {

using Json = nlohmann::ordered_json;

/// One degree of an analysis: exact subquotient data when the lattice was
/// computed, closed-form bounds either way. The *_ok flags are always
/// computed from the data in the same record, never copied from
/// expectations.
struct DegreeRecord {
    std::uint64_t d = 0;
    std::optional<std::size_t> free_rank;
    std::vector<BigInt> invariant_factors;
    std::optional<BigInt> torsion_order;
    std::optional<BigInt> restriction_index;
    std::vector<LambdaBound> lambda_bounds;
    std::optional<BigInt> theorem_bound;
    std::optional<AnnihilatorBound> annihilator;
    std::optional<TriVerdict> doubly_reduced;
    std::optional<bool> lambda_ok;
    std::optional<bool> annihilator_ok;
};

struct AnalysisReport {
    int schema = 1;
    std::uint64_t p = 0;
    std::vector<std::uint64_t> alpha;
    std::string mode;  // "exact" or "formula-level"
    bool index_equals_exponent = false;
    std::optional<std::vector<std::size_t>> reduced_indices;
    std::optional<std::vector<std::uint64_t>> reduced_values;
    std::vector<DegreeRecord> degrees;
    std::optional<BigInt> total_torsion_order;
    std::optional<ProductFormulaResult> product_formula;
    std::vector<std::string> invariant_violations;
    std::vector<std::string> warnings;

    bool healthy() const;
};

struct AnalyzeOptions {
    std::size_t cap = FiltrationEngine::kDefaultCap;
    /// Degree ceiling for formula-level reports (exact reports cover every
    /// degree below N regardless).
    std::uint64_t formula_degree_limit = 64;
};

/// Full analysis of one sequence: exact lattice computation when
/// p^{alpha(0)} fits under the cap, otherwise a formula-level report with a
/// warning. Bounds are evaluated in both modes.
AnalysisReport analyze(const PSequence& seq, const AnalyzeOptions& opts = {});

Json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const Json& j);
bool reports_equal(const AnalysisReport& a, const AnalysisReport& b);

/// Human-readable table; torsion rendered as Z/k sums.
std::string report_to_table(const AnalysisReport& r);
std::string render_torsion(const std::vector<BigInt>& invariant_factors);

struct SweepConfig {
    std::vector<std::uint64_t> primes{2};
    std::uint64_t max_alpha0 = 4;
    std::size_t max_length = ~std::size_t{0};
    std::uint64_t degree_min = 0;
    std::uint64_t degree_max = ~std::uint64_t{0};
    std::size_t cap = FiltrationEngine::kDefaultCap;
    std::size_t jobs = 0;  // 0 = one worker per hardware thread
};

struct SweepRow {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> alpha;
    std::string mode;
    DegreeRecord record;
};

/// Every valid sequence for the prime with alpha(0) <= max_alpha0 and
/// length <= max_length, ordered by (p, alpha lexicographic).
std::vector<PSequence> enumerate_sequences(std::uint64_t p, std::uint64_t max_alpha0,
                                           std::size_t max_length);

/// One row per (sequence, degree) in deterministic lexicographic order.
/// Rows are computed in a small worker pool and assembled in order
/// regardless of completion order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
Json sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace gfl
