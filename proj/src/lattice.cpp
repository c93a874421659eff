#include "gfl/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace gfl {

namespace {

// g = a*x + b*y with g = gcd(a,b) >= 0.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    BigInt old_r = a, r = b;
    BigInt old_x = 1, xx = 0;
    BigInt old_y = 0, yy = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_x - q * xx;
        old_x = xx;
        xx = t;
        t = old_y - q * yy;
        old_y = yy;
        yy = t;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    x = old_x;
    y = old_y;
    return old_r;
}

std::size_t leading_index(const std::vector<BigInt>& row) {
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) return j;
    return row.size();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Back-substitution against an echelon row set; fills coords when asked.
bool reduce_against(const std::vector<std::vector<BigInt>>& rows,
                    const std::vector<std::size_t>& pivots, std::vector<BigInt> v,
                    std::vector<BigInt>* coords) {
    if (coords) coords->assign(rows.size(), 0);
    std::size_t lead = leading_index(v);
    while (lead < v.size()) {
        auto it = std::lower_bound(pivots.begin(), pivots.end(), lead);
        if (it == pivots.end() || *it != lead) return false;
        std::size_t i = static_cast<std::size_t>(it - pivots.begin());
        const BigInt& pivot = rows[i][lead];
        if (v[lead] % pivot != 0) return false;
        BigInt q = v[lead] / pivot;
        for (std::size_t j = lead; j < v.size(); ++j) v[j] -= q * rows[i][j];
        if (coords) (*coords)[i] = q;
        lead = leading_index(v);
    }
    return true;
}

}  // namespace

IntMatrix IntMatrix::from_rows(std::vector<std::vector<BigInt>> rows) {
    if (rows.empty()) throw argument_error("IntMatrix: no rows");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw argument_error("IntMatrix: ragged rows");
        m.data_[r] = std::move(rows[r]);
    }
    return m;
}

bool LatticeBasis::contains(const std::vector<BigInt>& v) const {
    if (v.size() != dim_) throw argument_error("contains: dimension mismatch");
    return reduce_against(rows_, pivots_, v, nullptr);
}

std::optional<std::vector<BigInt>> LatticeBasis::coordinates(const std::vector<BigInt>& v) const {
    if (v.size() != dim_) throw argument_error("coordinates: dimension mismatch");
    std::vector<BigInt> coords;
    if (!reduce_against(rows_, pivots_, v, &coords)) return std::nullopt;
    return coords;
}

BigInt LatticeBasis::pivot_product() const {
    BigInt r = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) r *= rows_[i][pivots_[i]];
    return r;
}

bool HnfBuilder::insert(std::vector<BigInt> row) {
    if (row.size() != dim_) throw argument_error("HnfBuilder: dimension mismatch");
    bool changed = false;
    std::size_t lead = leading_index(row);
    while (lead < dim_) {
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
        if (it == pivots_.end() || *it != lead) {
            // new pivot position
            if (row[lead] < 0)
                for (auto& v : row) v = -v;
            std::size_t i = static_cast<std::size_t>(it - pivots_.begin());
            pivots_.insert(pivots_.begin() + i, lead);
            rows_.insert(rows_.begin() + i, std::move(row));
            return true;
        }
        std::size_t i = static_cast<std::size_t>(it - pivots_.begin());
        std::vector<BigInt>& r = rows_[i];
        if (row[lead] % r[lead] == 0) {
            BigInt q = row[lead] / r[lead];
            for (std::size_t j = lead; j < dim_; ++j) row[j] -= q * r[j];
        } else {
            BigInt x, y;
            BigInt g = ext_gcd(r[lead], row[lead], x, y);
            BigInt ag = r[lead] / g, bg = row[lead] / g;
            for (std::size_t j = lead; j < dim_; ++j) {
                BigInt rj = x * r[j] + y * row[j];
                BigInt vj = ag * row[j] - bg * r[j];
                r[j] = rj;
                row[j] = vj;
            }
            changed = true;  // pivot strictly shrank
        }
        lead = leading_index(row);
    }
    return changed;
}

bool HnfBuilder::contains(const std::vector<BigInt>& v) const {
    if (v.size() != dim_) throw argument_error("HnfBuilder: dimension mismatch");
    return reduce_against(rows_, pivots_, v, nullptr);
}

LatticeBasis HnfBuilder::basis() const {
    LatticeBasis b(dim_);
    b.rows_ = rows_;
    b.pivots_ = pivots_;
    // reduce entries above each pivot into [0, pivot)
    for (std::size_t i = 0; i < b.rows_.size(); ++i) {
        for (std::size_t j = i + 1; j < b.rows_.size(); ++j) {
            std::size_t pc = b.pivots_[j];
            const BigInt& pivot = b.rows_[j][pc];
            BigInt q = floor_div(b.rows_[i][pc], pivot);
            if (q != 0)
                for (std::size_t c = pc; c < dim_; ++c) b.rows_[i][c] -= q * b.rows_[j][c];
        }
    }
    return b;
}

LatticeBasis hnf(const IntMatrix& generators) {
    HnfBuilder builder(generators.cols());
    for (std::size_t r = 0; r < generators.rows(); ++r) builder.insert(generators.row(r));
    return builder.basis();
}

LatticeBasis hnf(const std::vector<std::vector<BigInt>>& generator_rows, std::size_t ambient_dim) {
    HnfBuilder builder(ambient_dim);
    for (const auto& r : generator_rows) builder.insert(r);
    return builder.basis();
}

namespace {

// Shared SNF core; v != nullptr accumulates column operations.
std::vector<BigInt> snf_core(IntMatrix& m, IntMatrix* v) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t n = std::min(rows, cols);

    auto col_sub = [&](std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t r = 0; r < rows; ++r) m.at(r, dst) -= q * m.at(r, src);
        if (v)
            for (std::size_t r = 0; r < cols; ++r) v->at(r, dst) -= q * v->at(r, src);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(m.at(r, a), m.at(r, b));
        if (v)
            for (std::size_t r = 0; r < cols; ++r) std::swap(v->at(r, a), v->at(r, b));
    };

    for (std::size_t t = 0; t < n; ++t) {
        // minimal |entry| pivot, ties by lowest (row, col)
        std::size_t pr = t, pc = t;
        BigInt best = 0;
        for (std::size_t r = t; r < rows; ++r)
            for (std::size_t c = t; c < cols; ++c) {
                const BigInt& e = m.at(r, c);
                if (e == 0) continue;
                BigInt a = abs(e);
                if (best == 0 || a < best) {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        if (best == 0) break;
        if (pr != t) std::swap(m.row(pr), m.row(t));
        if (pc != t) col_swap(pc, t);

        bool clean = false;
        while (!clean) {
            clean = true;
            // clear column t with row operations
            for (std::size_t r = t + 1; r < rows; ++r) {
                while (m.at(r, t) != 0) {
                    BigInt q = m.at(r, t) / m.at(t, t);
                    for (std::size_t c = t; c < cols; ++c) m.at(r, c) -= q * m.at(t, c);
                    if (m.at(r, t) != 0) {
                        std::swap(m.row(r), m.row(t));
                        clean = false;
                    }
                }
            }
            // clear row t with column operations
            for (std::size_t c = t + 1; c < cols; ++c) {
                while (m.at(t, c) != 0) {
                    BigInt q = m.at(t, c) / m.at(t, t);
                    col_sub(c, t, q);
                    if (m.at(t, c) != 0) {
                        col_swap(c, t);
                        clean = false;
                    }
                }
            }
        }
        if (m.at(t, t) < 0) {
            for (std::size_t c = t; c < cols; ++c) m.at(t, c) = -m.at(t, c);
        }
    }

    // enforce the divisibility chain d_t | d_{t+1}
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (m.at(t, t) == 0) continue;
        for (std::size_t u = t + 1; u < n; ++u) {
            if (m.at(u, u) % m.at(t, t) == 0) continue;
            // diag(a, b) -> diag(gcd, lcm) via a 2x2 unimodular dance
            const BigInt a = m.at(t, t), b = m.at(u, u);
            BigInt x, y;
            BigInt g = ext_gcd(a, b, x, y);
            // row t += row u : entry (t, u) becomes b
            m.at(t, u) = b;
            // columns (t, u) <- (x*Ct + y*Cu, (a/g)*Cu - (b/g)*Ct) restricted
            // to the two affected rows, tracked exactly in v
            BigInt ag = a / g, bg = b / g;
            if (v) {
                for (std::size_t r = 0; r < cols; ++r) {
                    BigInt ct = v->at(r, t), cu = v->at(r, u);
                    v->at(r, t) = x * ct + y * cu;
                    v->at(r, u) = ag * cu - bg * ct;
                }
            }
            m.at(t, t) = g;
            m.at(t, u) = 0;
            m.at(u, t) = 0;  // stays zero: the row op below clears it conceptually
            m.at(u, u) = ag * b;
        }
    }

    std::vector<BigInt> diag(n);
    for (std::size_t t = 0; t < n; ++t) diag[t] = m.at(t, t);
    // zeros last and the chain intact come out of the elimination order by
    // construction; sort defensively for the zero tail
    std::stable_sort(diag.begin(), diag.end(), [](const BigInt& a, const BigInt& b) {
        if ((a == 0) != (b == 0)) return b == 0;
        return false;
    });
    return diag;
}

}  // namespace

std::vector<BigInt> snf_invariants(IntMatrix m) {
    return snf_core(m, nullptr);
}

SnfResult snf_with_transform(IntMatrix m) {
    IntMatrix v(m.cols(), m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) v.at(i, i) = 1;
    auto diag = snf_core(m, &v);
    return SnfResult{std::move(diag), std::move(v)};
}

namespace {

IntMatrix inner_in_outer_coords(const LatticeBasis& outer, const LatticeBasis& inner) {
    if (outer.ambient_dim() != inner.ambient_dim())
        throw argument_error("quotient: ambient dimension mismatch");
    IntMatrix coords(inner.rank(), outer.rank());
    for (std::size_t i = 0; i < inner.rank(); ++i) {
        auto c = outer.coordinates(inner.row(i));
        if (!c) throw containment_error("quotient: inner basis row " + std::to_string(i) +
                                            " is not contained in the outer lattice",
                                        i);
        coords.row(i) = std::move(*c);
    }
    return coords;
}

}  // namespace

AbelianGroupStructure quotient(const LatticeBasis& outer, const LatticeBasis& inner) {
    AbelianGroupStructure s;
    s.free_rank = outer.rank() - inner.rank();
    if (inner.rank() == 0) return s;
    auto diag = snf_invariants(inner_in_outer_coords(outer, inner));
    for (const auto& d : diag) {
        if (d == 0)
            throw argument_error("quotient: inner basis rows are not independent");
        if (d > 1) s.invariant_factors.push_back(d);
    }
    return s;
}

std::optional<BigInt> quotient_class_order(const LatticeBasis& outer, const LatticeBasis& inner,
                                           const std::vector<BigInt>& v) {
    auto c = outer.coordinates(v);
    if (!c) throw argument_error("quotient_class_order: element not in the outer lattice");
    if (inner.rank() == 0) {
        for (const auto& e : *c)
            if (e != 0) return std::nullopt;
        return BigInt(1);
    }
    SnfResult snf = snf_with_transform(inner_in_outer_coords(outer, inner));
    // map the class through the right transform; the quotient becomes
    // Z^rank / <d_i e_i>
    std::vector<BigInt> w(outer.rank());
    for (std::size_t j = 0; j < outer.rank(); ++j) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < outer.rank(); ++i) acc += (*c)[i] * snf.v.at(i, j);
        w[j] = acc;
    }
    BigInt order = 1;
    for (std::size_t j = 0; j < outer.rank(); ++j) {
        if (j < snf.diag.size() && snf.diag[j] != 0) {
            BigInt r = w[j] % snf.diag[j];
            if (r < 0) r += snf.diag[j];
            if (r != 0) {
                BigInt g = boost::multiprecision::gcd(r, snf.diag[j]);
                BigInt o = snf.diag[j] / g;
                order = order / boost::multiprecision::gcd(order, o) * o;  // lcm
            }
        } else if (w[j] != 0) {
            return std::nullopt;  // free component: infinite order
        }
    }
    return order;
}

}  // namespace gfl
