#include "gfl/bounds.hpp"

#include <algorithm>

namespace gfl {

namespace {

std::uint64_t max_u(std::uint64_t a, std::uint64_t b) { return a > b ? a : b; }

// d = j * p^n with 1 <= j < p, returns n; nullopt when j >= p or d = 0
std::optional<std::uint64_t> special_shape_exponent(std::uint64_t p, std::uint64_t d) {
    if (d == 0) return std::nullopt;
    std::uint64_t n = 0;
    while (d % p == 0) {
        d /= p;
        ++n;
    }
    if (d >= p) return std::nullopt;
    return n;
}

}  // namespace

std::uint64_t floor_log(std::uint64_t p, std::uint64_t d) {
    if (p < 2 || d == 0) throw argument_error("floor_log: need p >= 2 and d >= 1");
    std::uint64_t e = 0;
    while (d >= p) {
        d /= p;
        ++e;
    }
    return e;
}

LambdaBound lambda_bound(const ReducedSequence& rs, std::size_t i, std::uint64_t d) {
    if (i < 1 || i > rs.m()) throw argument_error("lambda_bound: index out of range");
    const std::uint64_t eps = rs.epsilon(i);
    if (!(d > 1) || !(BigInt(d) < pow_big(rs.p(), eps)))
        throw argument_error("lambda_bound: degree must satisfy 1 < d < p^epsilon(i)");

    const std::uint64_t v = vp(rs.p(), BigInt(d)).value();
    const std::uint64_t fl = floor_log(rs.p(), d);
    const std::uint64_t a0 = rs.alpha0();
    const std::uint64_t ai = rs.value(i);
    const std::uint64_t ki = rs.k(i);

    LambdaBound out;
    out.i = i;
    out.d = d;
    out.epsilon = eps;
    const std::int64_t base = static_cast<std::int64_t>(eps) + static_cast<std::int64_t>(v) -
                              static_cast<std::int64_t>(fl);
    const std::uint64_t threshold = d * ki + max_u(ai, v);
    if (a0 > threshold) {
        out.branch = LambdaBound::Branch::kDifference;
        out.lambda = base - (static_cast<std::int64_t>(a0) - static_cast<std::int64_t>(d * ki));
    } else if (a0 < threshold) {
        out.branch = LambdaBound::Branch::kScaled;
        out.lambda = base - static_cast<std::int64_t>(max_u(ai, v));
    } else {
        // both formulas coincide at the boundary
        out.branch = LambdaBound::Branch::kBoundary;
        out.lambda = base - static_cast<std::int64_t>(max_u(ai, v));
    }
    return out;
}

std::int64_t lambda_special(const ReducedSequence& rs, std::size_t i, std::uint64_t d) {
    if (i < 1 || i > rs.m()) throw argument_error("lambda_special: index out of range");
    auto n = special_shape_exponent(rs.p(), d);
    if (!n) throw argument_error("lambda_special: d is not of the form j*p^n with j < p");
    const std::uint64_t eps = rs.epsilon(i);
    if (!(d > 1) || !(BigInt(d) < pow_big(rs.p(), eps)) || *n >= eps)
        throw argument_error("lambda_special: degree out of range");
    const std::int64_t a = static_cast<std::int64_t>(eps + d * rs.k(i)) -
                           static_cast<std::int64_t>(rs.alpha0());
    const std::int64_t b = static_cast<std::int64_t>(eps) -
                           static_cast<std::int64_t>(max_u(rs.value(i), *n));
    return std::min(a, b);
}

BigInt theorem_lower_bound_at(const ReducedSequence& rs, std::uint64_t d) {
    BigInt best = 1;
    for (std::size_t i = 1; i <= rs.m(); ++i) {
        if (!(d > 1) || !(BigInt(d) < pow_big(rs.p(), rs.epsilon(i)))) continue;
        auto lb = lambda_bound(rs, i, d);
        if (lb.lambda > 0) {
            BigInt cand = pow_big(rs.p(), static_cast<std::uint64_t>(lb.lambda));
            if (cand > best) best = cand;
        }
    }
    return best;
}

std::vector<std::pair<std::uint64_t, BigInt>> theorem_lower_bounds(const ReducedSequence& rs,
                                                                   std::uint64_t d_max) {
    std::vector<std::pair<std::uint64_t, BigInt>> out;
    for (std::uint64_t d = 2; d <= d_max; ++d) {
        BigInt b = theorem_lower_bound_at(rs, d);
        if (b > 1) out.emplace_back(d, b);
    }
    return out;
}

BigInt theorem_degree_limit(const ReducedSequence& rs) {
    std::uint64_t eps_max = 0;
    for (std::size_t i = 1; i <= rs.m(); ++i) eps_max = max_u(eps_max, rs.epsilon(i));
    return pow_big(rs.p(), eps_max) - 1;
}

std::uint64_t delta_exponent(const ReducedSequence& rs, std::size_t l, std::uint64_t n) {
    if (l > rs.m()) throw argument_error("delta_exponent: l out of range");
    if (n < 2) throw argument_error("delta_exponent: degree must be >= 2");
    const std::size_t m = rs.m();
    const std::uint64_t a0 = rs.alpha0();
    if (l == m) {
        const std::uint64_t tail = a0 - rs.value(m - 1) - rs.k(m - 1);
        return max_u((n - 1) * rs.k(m), tail);
    }
    const std::uint64_t v = vp(rs.p(), BigInt(n)).value();
    const std::uint64_t cap = max_u(rs.value(m), v);
    const std::uint64_t tail = a0 > cap + rs.k(m) ? a0 - cap - rs.k(m) : 0;
    return max_u((n - 1) * rs.k(l), tail);
}

namespace {

// clause indices l with d*k_l + max(alpha(k_l), v_p(d)) <= alpha(0) <= the
// same expression at every other index; l = 0 is the everything-high case
std::vector<std::size_t> matching_clauses(const ReducedSequence& rs, std::uint64_t d) {
    const std::uint64_t v = vp(rs.p(), BigInt(d)).value();
    const std::uint64_t a0 = rs.alpha0();
    std::vector<std::uint64_t> expr(rs.m() + 1);
    for (std::size_t i = 0; i <= rs.m(); ++i)
        expr[i] = d * rs.k(i) + max_u(rs.value(i), v);
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l <= rs.m(); ++l) {
        if (expr[l] > a0) continue;
        bool ok = true;
        for (std::size_t i = 1; i <= rs.m(); ++i)
            if (i != l && expr[i] < a0) ok = false;
        if (ok) out.push_back(l);
    }
    return out;
}

}  // namespace

std::optional<AnnihilatorBound> gamma_annihilator(const ReducedSequence& rs, std::uint64_t d) {
    auto n = special_shape_exponent(rs.p(), d);
    if (!n || d < 2 || *n >= rs.epsilon(rs.m())) return std::nullopt;
    const std::uint64_t v = vp(rs.p(), BigInt(d)).value();
    const std::uint64_t a0 = rs.alpha0();
    const std::size_t m = rs.m();

    bool all_high = true;
    for (std::size_t i = 1; i <= m; ++i)
        if (d * rs.k(i) + max_u(rs.value(i), v) < a0) all_high = false;
    AnnihilatorBound out;
    out.d = d;
    if (all_high) {
        out.exponent = a0 - max_u(rs.value(m), v) - rs.k(m);
        out.source = AnnihilatorBound::Source::kAllIndicesHigh;
        return out;
    }

    std::optional<std::uint64_t> best;
    std::optional<std::size_t> best_l;
    for (std::size_t l : matching_clauses(rs, d)) {
        if (l == 0) continue;  // covered by the all-high case above
        std::uint64_t e;
        if (l < m)
            e = max_u(a0 - max_u(rs.value(m), v) - rs.k(m), (d - 1) * rs.k(l));
        else
            e = max_u(a0 - rs.value(m - 1) - rs.k(m - 1), (d - 1) * rs.k(m));
        if (!best || e < *best) {
            best = e;
            best_l = l;
        }
    }
    if (!best) return std::nullopt;
    out.exponent = *best;
    out.source = *best_l < m ? AnnihilatorBound::Source::kLowClauseMidl
                             : AnnihilatorBound::Source::kLowClauseLast;
    out.clause_l = best_l;
    return out;
}

std::optional<LengthOneClosedForm> chow_annihilator_closed_form(const ReducedSequence& rs,
                                                                std::uint64_t d) {
    if (rs.m() != 1 || d < 2 || d > rs.p()) return std::nullopt;
    const std::uint64_t p = rs.p();
    const std::uint64_t a0 = rs.alpha0();
    const std::uint64_t a1 = rs.value(1);
    const std::uint64_t k1 = rs.k(1);
    const std::uint64_t eps = rs.epsilon(1);
    const std::uint64_t drop = eps - a1;  // epsilon(1) - alpha(k_1), always >= 1
    LengthOneClosedForm out;
    auto t_of = [&](std::uint64_t top) -> std::optional<std::uint64_t> {
        std::optional<std::uint64_t> t;
        for (std::uint64_t nn = 2; nn <= top; ++nn)
            if (nn * k1 + a1 <= a0) t = nn;
        return t;
    };
    if (d < p) {
        if (a0 <= 2 * k1 + a1) {
            out.exponent = (d - 1) * drop;
        } else {
            auto t = t_of(d);
            out.used_t_branch = true;
            out.t = t;
            out.exponent = (d - *t) * drop + *t * (*t - 1) * k1 / 2;
        }
        return out;
    }
    // d = p
    const std::uint64_t v2 = vp(p, BigInt(2)).value();
    const std::int64_t dip = a1 >= 1 ? 0 : -1;  // min(0, alpha(k_1) - 1)
    if (a0 <= 2 * k1 + max_u(a1, v2)) {
        out.exponent = static_cast<std::uint64_t>(
            static_cast<std::int64_t>((p - 1) * drop) + dip);
        return out;
    }
    if (p * k1 + max_u(a1, 1) <= a0) {
        out.exponent = p * (p - 1) * k1 / 2;
        out.used_t_branch = true;
        out.t = p;
        return out;
    }
    auto t = t_of(p - 1);
    out.used_t_branch = true;
    out.t = t;
    out.exponent = static_cast<std::uint64_t>(
        static_cast<std::int64_t>((p - *t) * drop) + dip +
        static_cast<std::int64_t>(*t * (*t - 1) * k1 / 2));
    return out;
}

std::optional<AnnihilatorBound> chow_annihilator(const ReducedSequence& rs, std::uint64_t d) {
    if (d < 2 || d > rs.p()) return std::nullopt;
    const std::uint64_t a0 = rs.alpha0();
    auto clauses = matching_clauses(rs, 2);
    if (clauses.empty()) return std::nullopt;

    std::optional<AnnihilatorBound> best;
    for (std::size_t l : clauses) {
        // largest 2 <= t <= d with t*k_l + max(alpha(k_l), v_p(t)) <= alpha(0)
        std::uint64_t t = 0;
        for (std::uint64_t nn = 2; nn <= d; ++nn) {
            const std::uint64_t v = vp(rs.p(), BigInt(nn)).value();
            if (nn * rs.k(l) + max_u(rs.value(l), v) <= a0) t = nn;
        }
        if (t < 2) continue;
        std::uint64_t total = 0;
        for (std::uint64_t nn = 2; nn <= t; ++nn) total += delta_exponent(rs, l, nn);
        for (std::uint64_t nn = t + 1; nn <= d; ++nn) total += delta_exponent(rs, 0, nn);
        AnnihilatorBound cand;
        cand.d = d;
        cand.exponent = total;
        cand.source = AnnihilatorBound::Source::kCodimensionSum;
        cand.clause_l = l;
        if (!best || cand.exponent < best->exponent) best = cand;
    }
    return best;
}

BigInt decomposable_upper_bound_exponent(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
    if (!is_prime(p)) throw argument_error("decomposable_upper_bound_exponent: p not prime");
    if (!(r > s && s >= 1 && r >= 2))
        throw argument_error("decomposable_upper_bound_exponent: need r > s >= 1, r >= 2");
    const BigInt geometric = (pow_big(p, r) - 1) / (p - 1);  // always integral
    return BigInt(r) * p * pow_big(p, r - 1) - pow_big(p, r - 1) + s + 2 - r - geometric;
}

BigInt euler_phi_ktheory_valuation(std::uint64_t p, std::uint64_t r, std::uint64_t i) {
    if (!is_prime(p)) throw argument_error("euler_phi_ktheory_valuation: p not prime");
    if (i < 1 || i > 2 || r < i + 1)
        throw argument_error("euler_phi_ktheory_valuation: need i in {1,2} and r >= i+1");
    auto phi = [&](std::uint64_t e) { return pow_big(p, e) - pow_big(p, e - 1); };
    BigInt total = BigInt(r) * phi(r);
    for (std::uint64_t k = 1; k + i + 1 <= r; ++k) total += BigInt(r - k - 1) * phi(r - k);
    return total;
}

IndecompCertificate indecomposability_certificate(std::uint64_t p, std::uint64_t r,
                                                  std::uint64_t i) {
    if (!is_prime(p)) throw argument_error("indecomposability_certificate: p not prime");
    if (i < 1 || i > 2) throw argument_error("indecomposability_certificate: i must be 1 or 2");
    if (r < 2) throw argument_error("indecomposability_certificate: r must be >= 2");
    IndecompCertificate cert;
    cert.p = p;
    cert.r = r;
    cert.i = i;
    cert.lower_exponent = BigInt(p - 1) * (r - 2) + (p - 2);
    cert.upper_exponent = BigInt(i - 1) * (BigInt(p) * p - p - 1);
    // r > 1 + p*(p^2 - p)^(i-2), cleared of denominators for i = 1
    cert.length_condition = i == 1 ? BigInt(r - 1) * (BigInt(p) * p - p) > p
                                   : BigInt(r) > 1 + p;
    cert.verdict = cert.length_condition && cert.lower_exponent > cert.upper_exponent
                       ? IndecompCertificate::Verdict::kIndecomposable
                       : IndecompCertificate::Verdict::kInconclusive;
    return cert;
}

BigInt decomposable_torsion_order_ceiling_p2_exp_p() { return 1; }
BigInt decomposable_torsion_order_ceiling_8_exp_2() { return 2; }

namespace {

CheckedValuation checked(std::uint64_t p, BigInt value, std::int64_t asserted) {
    CheckedValuation out;
    out.value = std::move(value);
    Valuation direct = vp(p, out.value);
    if (direct.is_infinite())
        throw argument_error("checked valuation: element vanished, no finite valuation");
    out.direct_valuation = direct.value();
    out.asserted_valuation = asserted;
    out.matches = asserted >= 0 && out.direct_valuation == static_cast<std::uint64_t>(asserted);
    return out;
}

}  // namespace

CheckedValuation decomposable_chow_element_a(std::uint64_t p, std::uint64_t r, std::uint64_t k,
                                             std::uint64_t m) {
    if (!is_prime(p)) throw argument_error("decomposable_chow_element_a: p not prime");
    const BigInt pk = pow_big(p, k);
    if (k < 2 || k + 1 > r) throw argument_error("decomposable_chow_element_a: need 2 <= k <= r-1");
    if (m < 1 || BigInt(m) > pow_big(p, k - 1) - 1)
        throw argument_error("decomposable_chow_element_a: m out of range");
    const std::uint64_t vm = vp(p, BigInt(m)).value();
    const BigInt binom = binomial((pk + p - BigInt(m) * p - 2).convert_to<std::uint64_t>(),
                                  (pk - 1 - BigInt(m) * p).convert_to<std::int64_t>());
    BigInt value = pow_big(p, k - 1 - vm) * pow_big(p, r - k - 1) * binom;
    // asserted: the binomial carries 1 + v_p(m), the product totals r - 1
    auto out = checked(p, std::move(value), static_cast<std::int64_t>(r) - 1);
    out.matches = vp(p, binom) == Valuation::finite(1 + vm) && out.matches;
    return out;
}

CheckedValuation decomposable_chow_element_b(std::uint64_t p, std::uint64_t r, std::uint64_t k,
                                             std::uint64_t a) {
    if (!is_prime(p)) throw argument_error("decomposable_chow_element_b: p not prime");
    if (r < 2 || k < 1 || k > r - 1)
        throw argument_error("decomposable_chow_element_b: need r >= 2 and 1 <= k <= r-1");
    const BigInt pk = pow_big(p, k);
    if (a < 1 || BigInt(a) > pk - 1)
        throw argument_error("decomposable_chow_element_b: a out of range");
    const std::uint64_t va = vp(p, BigInt(a)).value();
    const BigInt upper = pow_big(p, r) + pk - 2 - BigInt(a) * pow_big(p, r - k);
    if (upper < 0) throw argument_error("decomposable_chow_element_b: binomial underflow");
    BigInt value = binomial(upper.convert_to<std::uint64_t>(),
                            (pk - 1).convert_to<std::int64_t>());
    return checked(p, std::move(value),
                   static_cast<std::int64_t>(r) - static_cast<std::int64_t>(k) -
                       static_cast<std::int64_t>(va));
}

CheckedValuation decomposable_chow_element_c(std::uint64_t p, std::uint64_t r, std::uint64_t k,
                                             std::uint64_t a, std::uint64_t b) {
    if (!is_prime(p)) throw argument_error("decomposable_chow_element_c: p not prime");
    if (k < 1 || k + 1 >= r) throw argument_error("decomposable_chow_element_c: need 1 <= k <= r-2");
    const BigInt pk = pow_big(p, k);
    const BigInt pk1 = pow_big(p, k - 1);
    if (BigInt(a) > pk - 1) throw argument_error("decomposable_chow_element_c: a out of range");
    const BigInt anchor = pk * b + a;
    if (anchor < pk1 + 1 || anchor > pow_big(p, r - 1) - 1)
        throw argument_error("decomposable_chow_element_c: p^k*b + a out of range");
    if (anchor % pow_big(p, r - k - 1) == 0)
        throw argument_error("decomposable_chow_element_c: p^k*b + a divisible by p^(r-k-1)");

    const BigInt i = pow_big(p, k + 1) * b + BigInt(a) * p;
    const std::uint64_t vi = vp(p, i).value();
    const BigInt upper = pow_big(p, r) + pk - 2 - i;
    BigInt value = pow_big(p, r - k - vi) *
                   binomial(upper.convert_to<std::uint64_t>(),
                            (pk - 1).convert_to<std::int64_t>());

    std::int64_t asserted;
    if (a == 0 || BigInt(a) == pk1) {
        asserted = static_cast<std::int64_t>(r - k);
    } else if (BigInt(a) <= pk1 - 1) {
        asserted = static_cast<std::int64_t>(r) -
                   static_cast<std::int64_t>(vp(p, BigInt(a)).value());
    } else {
        asserted = static_cast<std::int64_t>(r) -
                   static_cast<std::int64_t>(vp(p, BigInt(a) - pk1).value()) - 1;
    }
    return checked(p, std::move(value), asserted);
}

}  // namespace gfl
