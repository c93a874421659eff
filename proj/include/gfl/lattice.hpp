#pragma once

#include "gfl/arith.hpp"

#include <optional>
#include <vector>

namespace gfl {

/// Rectangular matrix of exact integers, row-major.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols)
        : cols_(cols), data_(rows, std::vector<BigInt>(cols)) {}
    static IntMatrix from_rows(std::vector<std::vector<BigInt>> rows);

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }
    BigInt& at(std::size_t r, std::size_t c) { return data_[r][c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return data_[r][c]; }
    std::vector<BigInt>& row(std::size_t r) { return data_[r]; }
    const std::vector<BigInt>& row(std::size_t r) const { return data_[r]; }

private:
    std::size_t cols_;
    std::vector<std::vector<BigInt>> data_;
};

/// Canonical basis of a subgroup of Z^N in row-style Hermite normal form:
/// rows sorted by pivot column, pivots positive, entries above each pivot
/// reduced into [0, pivot). Two generating sets of the same subgroup always
/// produce identical objects.
class LatticeBasis {
public:
    explicit LatticeBasis(std::size_t ambient_dim) : dim_(ambient_dim) {}

    std::size_t ambient_dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<BigInt>>& rows() const { return rows_; }
    const std::vector<BigInt>& row(std::size_t i) const { return rows_.at(i); }
    std::size_t pivot_col(std::size_t i) const { return pivots_.at(i); }

    /// True iff v is a Z-combination of the basis rows (back-substitution).
    bool contains(const std::vector<BigInt>& v) const;

    /// Coefficients of v along the basis rows, or nullopt if not contained.
    std::optional<std::vector<BigInt>> coordinates(const std::vector<BigInt>& v) const;

    /// Product of the pivots: the index in the saturation; for a full-rank
    /// sublattice of Z^N this is |Z^N / L|.
    BigInt pivot_product() const;

    friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
        return a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }

private:
    friend class HnfBuilder;
    std::size_t dim_;
    std::vector<std::vector<BigInt>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Incremental HNF accumulator: generator rows are folded in one at a time,
/// so a large generating family never materializes as one matrix. The rows
/// are kept in echelon form (distinct sorted pivots, positive pivots); the
/// above-pivot reduction that makes the form canonical happens in basis().
class HnfBuilder {
public:
    explicit HnfBuilder(std::size_t ambient_dim) : dim_(ambient_dim) {}

    /// Returns true iff the span changed (row was not already contained).
    bool insert(std::vector<BigInt> row);

    bool contains(const std::vector<BigInt>& v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t ambient_dim() const { return dim_; }
    const std::vector<std::vector<BigInt>>& raw_rows() const { return rows_; }

    /// Canonical LatticeBasis of the accumulated span.
    LatticeBasis basis() const;

private:
    std::size_t dim_;
    std::vector<std::vector<BigInt>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Canonical HNF basis of the row span. Zero span gives an empty basis.
LatticeBasis hnf(const IntMatrix& generators);
LatticeBasis hnf(const std::vector<std::vector<BigInt>>& generator_rows, std::size_t ambient_dim);

/// Diagonal of the Smith normal form: each entry divides the next, zeros
/// last, length min(rows, cols). Pivoting picks the entry of minimal
/// absolute value with deterministic (row, col) tie-break.
std::vector<BigInt> snf_invariants(IntMatrix m);

struct SnfResult {
    std::vector<BigInt> diag;
    /// Right unimodular transform: U * M * V has the diagonal above. Only
    /// column operations touch V, which is what quotient element orders need.
    IntMatrix v;
};
SnfResult snf_with_transform(IntMatrix m);

/// Free rank plus invariant factors (> 1, each dividing the next) of a
/// finitely generated abelian group.
struct AbelianGroupStructure {
    std::size_t free_rank = 0;
    std::vector<BigInt> invariant_factors;

    BigInt torsion_order() const {
        BigInt t = 1;
        for (const auto& f : invariant_factors) t *= f;
        return t;
    }
    BigInt torsion_exponent() const {
        return invariant_factors.empty() ? BigInt(1) : invariant_factors.back();
    }
    bool is_trivial_torsion() const { return invariant_factors.empty(); }

    friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;
};

/// Structure of outer/inner for nested lattices. Containment of every inner
/// row is verified; a violation raises containment_error naming the row.
/// The SNF runs on the small coordinate matrix of inner-in-outer, never on
/// raw generators.
AbelianGroupStructure quotient(const LatticeBasis& outer, const LatticeBasis& inner);

/// Order of the class of v in outer/inner: nullopt when the class has
/// infinite order, otherwise the exact finite order (1 for v in inner).
/// Throws containment_error / argument_error as appropriate.
std::optional<BigInt> quotient_class_order(const LatticeBasis& outer, const LatticeBasis& inner,
                                           const std::vector<BigInt>& v);

}  // namespace gfl
