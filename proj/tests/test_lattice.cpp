#include "gfl/lattice.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace gfl;

namespace {

std::vector<BigInt> vec(std::initializer_list<long> xs) {
    return std::vector<BigInt>(xs.begin(), xs.end());
}

LatticeBasis basis_of(std::vector<std::vector<BigInt>> rows, std::size_t dim) {
    return hnf(rows, dim);
}

// gcd of all k x k minors, the classic determinant-divisor oracle
BigInt minor_gcd(const IntMatrix& m, std::size_t k) {
    std::vector<std::size_t> rs(m.rows()), cs(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) rs[i] = i;
    for (std::size_t i = 0; i < m.cols(); ++i) cs[i] = i;
    BigInt g = 0;

    std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
    std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
    do {
        std::vector<std::size_t> ri;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (rsel[i]) ri.push_back(i);
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
        do {
            std::vector<std::size_t> ci;
            for (std::size_t i = 0; i < m.cols(); ++i)
                if (csel[i]) ci.push_back(i);
            // Laplace expansion on a tiny submatrix
            std::vector<std::size_t> perm(k);
            for (std::size_t i = 0; i < k; ++i) perm[i] = i;
            BigInt det = 0;
            do {
                int sign = 1;
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = i + 1; j < k; ++j)
                        if (perm[i] > perm[j]) sign = -sign;
                BigInt term = sign;
                for (std::size_t i = 0; i < k; ++i) term *= m.at(ri[i], ci[perm[i]]);
                det += term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            g = gcd(g, det);
        } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
    return abs(g);
}

}  // namespace

TEST_CASE("hnf hand examples") {
    auto b = basis_of({vec({2, 0}), vec({4, 4}), vec({8, 4}), vec({0, 4})}, 2);
    REQUIRE(b.rank() == 2);
    CHECK(b.row(0) == vec({2, 0}));
    CHECK(b.row(1) == vec({0, 4}));

    CHECK(basis_of({vec({0, 0, 0})}, 3).rank() == 0);

    auto id = basis_of({vec({1, 0}), vec({0, 1})}, 2);
    CHECK(id.rank() == 2);
    CHECK(id.row(0) == vec({1, 0}));
    CHECK(id.row(1) == vec({0, 1}));
}

TEST_CASE("hnf is canonical under shuffles, duplicates and row combinations") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<long> entry(-12, 12);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t dim = 2 + rng() % 4;
        std::size_t nrows = 1 + rng() % 5;
        std::vector<std::vector<BigInt>> rows(nrows, std::vector<BigInt>(dim));
        for (auto& r : rows)
            for (auto& e : r) e = entry(rng);

        auto reference = hnf(rows, dim);

        auto mutated = rows;
        std::shuffle(mutated.begin(), mutated.end(), rng);
        mutated.push_back(mutated[rng() % mutated.size()]);  // duplicate
        // add a Z-combination of existing rows
        std::vector<BigInt> combo(dim);
        for (const auto& r : mutated) {
            long c = entry(rng);
            for (std::size_t j = 0; j < dim; ++j) combo[j] += c * r[j];
        }
        mutated.push_back(combo);
        CHECK(hnf(mutated, dim) == reference);
    }
}

TEST_CASE("snf examples") {
    CHECK(snf_invariants(IntMatrix::from_rows({vec({2, 0}), vec({0, 4})})) ==
          std::vector<BigInt>{2, 4});
    CHECK(snf_invariants(IntMatrix::from_rows({vec({2, 0}), vec({0, 3})})) ==
          std::vector<BigInt>{1, 6});
    CHECK(snf_invariants(IntMatrix(3, 2)) == std::vector<BigInt>{0, 0});
}

TEST_CASE("snf against the minor-gcd oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> entry(-6, 6);
    for (int iter = 0; iter < 50; ++iter) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);

        auto diag = snf_invariants(m);
        BigInt prev = 1;
        BigInt running = 1;
        for (std::size_t k = 0; k < diag.size(); ++k) {
            if (diag[k] != 0) CHECK(diag[k] % prev == 0);
            if (diag[k] != 0) prev = diag[k];
            running *= diag[k];
            CHECK(running == minor_gcd(m, k + 1));
        }
    }
}

TEST_CASE("snf right transform is consistent") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> entry(-8, 8);
    for (int iter = 0; iter < 30; ++iter) {
        std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);
        auto res = snf_with_transform(m);
        CHECK(res.diag == snf_invariants(m));
        // V must be unimodular: |det V| = 1
        IntMatrix v = res.v;
        CHECK(minor_gcd(v, v.cols()) == 1);
    }
}

TEST_CASE("contains on hand examples") {
    auto b = basis_of({vec({2, 0}), vec({0, 4})}, 2);
    CHECK(b.contains(vec({6, 4})));
    CHECK_FALSE(b.contains(vec({1, 0})));
    CHECK_FALSE(b.contains(vec({0, 2})));
    CHECK_THROWS_AS(b.contains(vec({1, 2, 3})), argument_error);
}

TEST_CASE("contains agrees with brute force on small lattices") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long> entry(-4, 4);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t dim = 2 + rng() % 2;
        std::vector<std::vector<BigInt>> rows(2, std::vector<BigInt>(dim));
        for (auto& r : rows)
            for (auto& e : r) e = entry(rng);
        auto b = hnf(rows, dim);

        std::uniform_int_distribution<long> probe(-6, 6);
        for (int t = 0; t < 10; ++t) {
            std::vector<BigInt> v(dim);
            for (auto& e : v) e = probe(rng);
            bool brute = false;
            for (long c0 = -30; c0 <= 30 && !brute; ++c0)
                for (long c1 = -30; c1 <= 30 && !brute; ++c1) {
                    bool ok = true;
                    for (std::size_t j = 0; j < dim; ++j)
                        if (c0 * rows[0][j] + c1 * rows[1][j] != v[j]) ok = false;
                    if (ok) brute = true;
                }
            CHECK(b.contains(v) == brute);
        }
    }
}

TEST_CASE("quotient hand examples") {
    auto outer = basis_of({vec({2, 0}), vec({0, 4})}, 2);
    auto inner = basis_of({vec({0, 4})}, 2);
    auto q = quotient(outer, inner);
    CHECK(q.free_rank == 1);
    CHECK(q.invariant_factors.empty());

    auto same = quotient(outer, outer);
    CHECK(same.free_rank == 0);
    CHECK(same.torsion_order() == 1);

    auto z3 = quotient(basis_of({vec({1, 0}), vec({0, 1})}, 2),
                       basis_of({vec({3, 0}), vec({0, 1})}, 2));
    CHECK(z3.free_rank == 0);
    CHECK(z3.invariant_factors == std::vector<BigInt>{3});
}

TEST_CASE("quotient rejects non-contained inner") {
    auto outer = basis_of({vec({2, 0}), vec({0, 4})}, 2);
    auto bad = basis_of({vec({1, 0})}, 2);
    CHECK_THROWS_AS(quotient(outer, bad), containment_error);
    try {
        quotient(outer, bad);
    } catch (const containment_error& e) {
        CHECK(e.offending_row == 0);
    }
}

TEST_CASE("quotient rank law on random nested lattices") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> entry(-5, 5);
    std::uniform_int_distribution<long> scale(1, 4);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t dim = 2 + rng() % 3;
        std::vector<std::vector<BigInt>> rows(dim, std::vector<BigInt>(dim));
        for (auto& r : rows)
            for (auto& e : r) e = entry(rng);
        auto outer = hnf(rows, dim);
        // inner: random integer multiples of outer rows (skip some)
        std::vector<std::vector<BigInt>> inner_rows;
        for (std::size_t i = 0; i < outer.rank(); ++i) {
            if (rng() % 3 == 0) continue;
            auto r = outer.row(i);
            long c = scale(rng);
            for (auto& e : r) e *= c;
            inner_rows.push_back(std::move(r));
        }
        auto inner = inner_rows.empty() ? LatticeBasis(dim) : hnf(inner_rows, dim);
        auto q = quotient(outer, inner);
        CHECK(q.free_rank + inner.rank() == outer.rank());
    }
}

TEST_CASE("quotient class orders") {
    // Z^2 / <(3,0),(0,1)> = Z/3
    auto outer = basis_of({vec({1, 0}), vec({0, 1})}, 2);
    auto inner = basis_of({vec({3, 0}), vec({0, 1})}, 2);
    CHECK(quotient_class_order(outer, inner, vec({1, 0})) == BigInt(3));
    CHECK(quotient_class_order(outer, inner, vec({2, 5})) == BigInt(3));
    CHECK(quotient_class_order(outer, inner, vec({3, 1})) == BigInt(1));

    // free direction has infinite order
    auto inner2 = basis_of({vec({3, 0})}, 2);
    CHECK_FALSE(quotient_class_order(outer, inner2, vec({0, 1})).has_value());
    CHECK(quotient_class_order(outer, inner2, vec({1, 0})) == BigInt(3));

    // Z^2 / <(2,0),(0,3)> = Z/6: exercises the divisibility fix-up transform
    auto inner3 = basis_of({vec({2, 0}), vec({0, 3})}, 2);
    CHECK(quotient(outer, inner3).invariant_factors == std::vector<BigInt>{6});
    CHECK(quotient_class_order(outer, inner3, vec({1, 1})) == BigInt(6));
    CHECK(quotient_class_order(outer, inner3, vec({1, 0})) == BigInt(2));
    CHECK(quotient_class_order(outer, inner3, vec({0, 1})) == BigInt(3));
    CHECK(quotient_class_order(outer, inner3, vec({2, 3})) == BigInt(1));
}

TEST_CASE("incremental builder reports span growth") {
    HnfBuilder b(3);
    CHECK(b.insert(vec({2, 0, 0})));
    CHECK(b.insert(vec({0, 4, 0})));
    CHECK_FALSE(b.insert(vec({2, 4, 0})));   // already in the span
    CHECK_FALSE(b.insert(vec({0, 0, 0})));
    CHECK(b.insert(vec({1, 0, 0})));         // pivot shrinks
    CHECK(b.contains(vec({1, 4, 0})));
    CHECK_FALSE(b.contains(vec({0, 2, 0})));
    CHECK(b.rank() == 2);
}
