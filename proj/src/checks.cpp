#include "gfl/checks.hpp"

#include "gfl/bounds.hpp"
#include "gfl/filtration.hpp"
#include "gfl/report.hpp"

#include <map>
#include <sstream>

namespace gfl {

namespace {

struct Ledger {
    std::ostringstream detail;
    bool pass = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail << "FAILED: " << what << "; ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

CheckResult finish(const std::string& name, Ledger& lg) {
    return CheckResult{name, lg.pass, lg.detail.str()};
}

// map d -> invariant factors, dropping trivial degrees
std::map<std::uint64_t, std::vector<BigInt>> torsion_map(FiltrationEngine& e) {
    std::map<std::uint64_t, std::vector<BigInt>> out;
    for (const auto& q : e.torsion_profile())
        if (!q.structure.is_trivial_torsion())
            out[q.degree] = q.structure.invariant_factors;
    return out;
}

CheckResult check_identity6() {
    Ledger lg;
    lg.expect(verify_known_degree2_decomposition(), "exact degree-2 identity");
    lg.expect(!verify_known_degree2_decomposition_perturbed(),
              "perturbed identity must fail");
    return finish("identity6", lg);
}

CheckResult check_torsion(const char* name, const char* seq_text,
                          std::map<std::uint64_t, std::vector<BigInt>> expected,
                          const BigInt& total) {
    Ledger lg;
    FiltrationEngine e(PSequence::parse(seq_text));
    lg.expect(torsion_map(e) == expected, std::string(seq_text) + " torsion profile");
    lg.expect(e.total_torsion_order() == total, std::string(seq_text) + " total order");
    auto bad = e.invariant_violations();
    for (const auto& b : bad) lg.expect(false, b);
    return finish(name, lg);
}

CheckResult check_index_equals_exponent() {
    Ledger lg;
    for (const char* text : {"2:1,0", "2:2,1,0", "2:3,2,1,0", "3:1,0", "3:2,1,0"}) {
        FiltrationEngine e(PSequence::parse(text));
        lg.expect(!e.reduced().has_value(), std::string(text) + " has no reduced sequence");
        lg.expect(torsion_map(e).empty(), std::string(text) + " torsion-free everywhere");
    }
    return finish("index-equals-exponent", lg);
}

CheckResult check_product_formula() {
    Ledger lg;
    for (const char* text :
         {"3:2,0", "5:2,0", "2:3,0", "2:1,0", "2:2,1,0", "2:3,2,1,0", "3:1,0", "3:2,1,0"}) {
        FiltrationEngine e(PSequence::parse(text));
        lg.expect(e.verify_product_formula().holds, std::string(text) + " product formula");
    }
    {
        FiltrationEngine e(PSequence::parse("3:2,0"));
        auto pf = e.verify_product_formula();
        lg.expect(pf.k_theory_index == pow_big(3, 12), "3:2,0 index valuation 12");
    }
    {
        FiltrationEngine e(PSequence::parse("2:3,0"));
        auto pf = e.verify_product_formula();
        lg.expect(pf.k_theory_index == pow_big(2, 12), "2:3,0 index valuation 12");
    }
    for (const auto& seq : enumerate_sequences(2, 5, ~std::size_t{0})) {
        FiltrationEngine e(seq);
        lg.expect(e.verify_product_formula().holds, seq.to_string() + " product formula");
    }
    return finish("product-formula", lg);
}

CheckResult check_generator_reduction() {
    Ledger lg;
    for (const char* text : {"3:2,1,0", "2:3,2,0", "2:1,0", "2:3,1,0"}) {
        FiltrationEngine e(PSequence::parse(text));
        lg.expect(e.verify_lemma_reduction_all(),
                  std::string(text) + " reduced generators span the full filtration");
    }
    return finish("generator-reduction", lg);
}

CheckResult check_doubly_reduced_420() {
    Ledger lg;
    auto seq = PSequence::parse("3:4,2,0");
    auto rs = reduced_or_none(seq);
    lg.expect(rs.has_value(), "reduced sequence exists");
    lg.expect(rs->values() == std::vector<std::uint64_t>{4, 2, 0}, "reduced equals (4,2,0)");
    lg.expect(!doubly_reduced_sufficient(*rs), "sufficient condition fails");
    FiltrationEngine e(seq);
    lg.expect(e.verify_doubly_reduced(2) == TriVerdict::kTrue,
              "exact generation check at degree 2");
    return finish("doubly-reduced-420", lg);
}

CheckResult check_annihilators() {
    Ledger lg;
    auto rs5 = ReducedSequence::from_parts(5, {0, 2, 3}, {8, 4, 2});
    for (std::uint64_t d = 2; d <= 5; ++d) {
        auto a = gamma_annihilator(rs5, d);
        lg.expect(a.has_value() && a->exponent == 3,
                  "(8,4,2) degree " + std::to_string(d) + " annihilator 5^3");
    }
    auto rs3 = ReducedSequence::from_parts(3, {0, 1, 2}, {4, 2, 0});
    auto a420 = gamma_annihilator(rs3, 2);
    lg.expect(a420.has_value() && a420->exponent == 2, "(4,2,0) degree 2 annihilator 3^2");

    auto rs20 = ReducedSequence::from_parts(3, {0, 1}, {2, 0});
    auto a20 = gamma_annihilator(rs20, 2);
    lg.expect(a20.has_value() && a20->exponent == 1, "(2,0) degree 2 annihilator 3");
    {
        FiltrationEngine e(PSequence::parse("3:2,0"));
        auto q = e.quotient_report(2);
        lg.expect(q.structure.torsion_exponent() == 3, "(2,0) degree 2 exponent 3");
    }
    {
        FiltrationEngine e(PSequence::parse("3:4,2,0"));
        auto q = e.quotient_report(2);
        lg.expect(pow_big(3, a420->exponent) % q.structure.torsion_exponent() == 0,
                  "(4,2,0) exact degree-2 exponent divides 3^2");
    }
    return finish("annihilator-examples", lg);
}

CheckResult check_lambda() {
    Ledger lg;
    auto rs20 = ReducedSequence::from_parts(3, {0, 1}, {2, 0});
    lg.expect(lambda_bound(rs20, 1, 2).lambda == 1, "3:(2,0) lambda(1,2) = 1");
    lg.expect(theorem_lower_bound_at(rs20, 2) == 3, "3:(2,0) degree-2 bound 3");

    auto rs30 = ReducedSequence::from_parts(2, {0, 1}, {3, 0});
    lg.expect(lambda_bound(rs30, 1, 2).lambda == 1, "2:(3,0) lambda(1,2) = 1");
    lg.expect(lambda_bound(rs30, 1, 3).lambda == 1, "2:(3,0) lambda(1,3) = 1");
    lg.expect(lambda_special(rs30, 1, 2) == 1, "2:(3,0) special form at d = 2");

    auto rs5 = ReducedSequence::from_parts(5, {0, 2, 3}, {8, 4, 2});
    bool all_nontrivial = true;
    for (std::uint64_t n = 0; n < rs5.epsilon(1); ++n) {
        for (std::uint64_t j = 1; j < 5; ++j) {
            BigInt d = BigInt(j) * pow_big(5, n);
            if (d <= 1 || d >= pow_big(5, rs5.epsilon(1))) continue;
            std::uint64_t du = d.convert_to<std::uint64_t>();
            if (theorem_lower_bound_at(rs5, du) <= 1) all_nontrivial = false;
            // the min-form must agree with the piecewise bound wherever both apply
            for (std::size_t i = 1; i <= rs5.m(); ++i) {
                if (BigInt(du) < pow_big(5, rs5.epsilon(i)) && n < rs5.epsilon(i)) {
                    if (lambda_special(rs5, i, du) != lambda_bound(rs5, i, du).lambda)
                        lg.expect(false, "special/piecewise mismatch at i = " +
                                             std::to_string(i) + ", d = " + std::to_string(du));
                }
            }
        }
    }
    lg.expect(all_nontrivial, "(8,4,2): nontrivial bound at every special-form degree");
    return finish("lambda-examples", lg);
}

CheckResult check_witnesses() {
    Ledger lg;
    {
        FiltrationEngine e(PSequence::parse("3:2,0"));
        auto w = e.torsion_witness(1, 2);
        auto expected = TruncatedPoly::monomial(9, 2, 9) -
                        (TruncatedPoly::x_power(9, 3) - TruncatedPoly::constant(9, 1)).pow(2);
        lg.expect(w.element == expected, "3:(2,0) witness element");
        lg.expect(w.annihilator_used == 3 && w.lambda == 1, "3:(2,0) annihilator and bound");
        lg.expect(e.verify_witness(1, 2).ok(), "3:(2,0) witness membership invariants");
        lg.expect(e.check_witness_element(w).ok(), "3:(2,0) exact element invariants");
        auto ord = e.witness_class_order(1, 2);
        lg.expect(ord && *ord == 3, "3:(2,0) witness class order 3");
    }
    {
        FiltrationEngine e(PSequence::parse("2:3,0"));
        auto w = e.torsion_witness(1, 2);
        lg.expect(e.verify_witness(1, 2).ok(), "2:(3,0) witness invariants at degree 2");
        auto ord = e.witness_class_order(1, 2);
        lg.expect(ord && *ord >= 2, "2:(3,0) witness order at least 2");
        bool threw = false;
        try {
            e.torsion_witness(1, 5);
        } catch (const argument_error&) {
            threw = true;
        }
        lg.expect(threw, "2:(3,0) degree 5 out of the witness range");
        (void)w;
    }
    return finish("witness-examples", lg);
}

CheckResult check_congruence() {
    Ledger lg;
    {
        FiltrationEngine e(PSequence::parse("3:2,0"));
        lg.expect(e.verify_congruence_lemma(1, 2, 8), "3:(2,0) congruence at degree 2");
    }
    {
        FiltrationEngine e(PSequence::parse("2:3,0"));
        lg.expect(e.verify_congruence_lemma(1, 2, 8), "2:(3,0) congruence at degree 2");
    }
    return finish("congruence-examples", lg);
}

CheckResult check_certificates() {
    Ledger lg;
    lg.expect(decomposable_upper_bound_exponent(2, 3, 2) == 14, "upper exponent (2,3,2) = 14");
    lg.expect(decomposable_upper_bound_exponent(3, 2, 1) == 12, "upper exponent (3,2,1) = 12");
    lg.expect(decomposable_upper_bound_exponent(2, 2, 1) == 4, "upper exponent (2,2,1) = 4");
    lg.expect(euler_phi_ktheory_valuation(2, 3, 1) == 14, "phi-sum (2,3,1) = 14");
    lg.expect(euler_phi_ktheory_valuation(2, 3, 2) == 12, "phi-sum (2,3,2) = 12");
    lg.expect(euler_phi_ktheory_valuation(3, 3, 1) == 60, "phi-sum (3,3,1) = 60");

    auto c231 = indecomposability_certificate(2, 3, 1);
    lg.expect(c231.verdict == IndecompCertificate::Verdict::kIndecomposable &&
                  c231.lower_exponent == 1 && c231.upper_exponent == 0,
              "(2,3,1) certificate");
    auto c232 = indecomposability_certificate(2, 3, 2);
    lg.expect(c232.verdict == IndecompCertificate::Verdict::kInconclusive,
              "(2,3,2) inconclusive");
    auto c382 = indecomposability_certificate(3, 8, 2);
    lg.expect(c382.verdict == IndecompCertificate::Verdict::kIndecomposable &&
                  c382.lower_exponent == 13 && c382.upper_exponent == 5,
              "(3,8,2) certificate");

    for (std::uint64_t r = 2; r <= 12; ++r) {
        bool indec = indecomposability_certificate(2, r, 1).verdict ==
                     IndecompCertificate::Verdict::kIndecomposable;
        lg.expect(indec == (r >= 3), "p=2 i=1 pattern at r = " + std::to_string(r));
    }
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (std::uint64_t r = 2; r <= 12; ++r) {
            bool indec = indecomposability_certificate(p, r, 2).verdict ==
                         IndecompCertificate::Verdict::kIndecomposable;
            lg.expect(indec == (r > 1 + p),
                      "i=2 pattern at p = " + std::to_string(p) + ", r = " + std::to_string(r));
        }
    }
    lg.expect(decomposable_torsion_order_ceiling_p2_exp_p() == 1 &&
                  decomposable_torsion_order_ceiling_8_exp_2() == 2,
              "reference torsion ceilings");
    return finish("indecomp-certificates", lg);
}

CheckResult check_chow() {
    Ledger lg;
    // prime exponent, index p^r: summed exponent d(d-1)/2
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        for (std::uint64_t r = 3; r <= 8; ++r) {
            auto rs = ReducedSequence::from_parts(p, {0, 1}, {r, 0});
            std::uint64_t dmax = std::min<std::uint64_t>(p, r - 1);
            for (std::uint64_t d = 2; d <= dmax; ++d) {
                auto a = chow_annihilator(rs, d);
                lg.expect(a.has_value() && a->exponent == d * (d - 1) / 2,
                          "prime-exponent sum at p=" + std::to_string(p) +
                              " r=" + std::to_string(r) + " d=" + std::to_string(d));
                auto cf = chow_annihilator_closed_form(rs, d);
                lg.expect(cf && cf->exponent == a->exponent,
                          "closed form agrees at p=" + std::to_string(p) +
                              " d=" + std::to_string(d));
            }
        }
    }
    // generic sequence (r, r-1, ..., r-s+1, 0): (p^{d(d-1)/2})^s
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        for (std::uint64_t s = 2; s <= 4; ++s) {
            for (std::uint64_t r = 2 * s + 1; r <= 2 * s + 6; ++r) {
                auto rs = ReducedSequence::from_parts(
                    p, {0, static_cast<std::size_t>(s)}, {r, 0});
                std::uint64_t dmax = std::min<std::uint64_t>(p, (r + s - 1) / s - 1);
                for (std::uint64_t d = 2; d <= dmax; ++d) {
                    auto a = chow_annihilator(rs, d);
                    lg.expect(a.has_value() && a->exponent == s * d * (d - 1) / 2,
                              "generic sum at p=" + std::to_string(p) + " s=" +
                                  std::to_string(s) + " r=" + std::to_string(r) +
                                  " d=" + std::to_string(d));
                }
            }
        }
    }
    // the length-three example (30, 27, 24, 22): exponent 3d-3
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        auto rs = ReducedSequence::from_parts(p, {0, 2, 4, 5}, {30, 27, 24, 22});
        for (std::uint64_t d = 2; d <= p; ++d) {
            auto a = chow_annihilator(rs, d);
            lg.expect(a.has_value() && a->exponent == 3 * d - 3,
                      "(30,27,24,22) sum at p=" + std::to_string(p) +
                          " d=" + std::to_string(d));
        }
        lg.expect(delta_exponent(rs, 0, 2) == 3, "delta(0,2) = 3 for (30,27,24,22)");
    }
    return finish("chow-annihilators", lg);
}

CheckResult check_decomp_valuations() {
    Ledger lg;
    std::size_t total = 0, mismatched = 0;
    auto record = [&](const char* which, const std::string& args, const CheckedValuation& cv) {
        ++total;
        if (!cv.matches) {
            ++mismatched;
            lg.note(std::string("finding: ") + which + "(" + args + ") direct " +
                    std::to_string(cv.direct_valuation) + " vs asserted " +
                    std::to_string(cv.asserted_valuation));
        }
    };
    for (std::uint64_t p : {2ull, 3ull}) {
        for (std::uint64_t r = 2; r <= 4; ++r) {
            for (std::uint64_t k = 2; k + 1 <= r; ++k) {
                const std::uint64_t mmax =
                    pow_big(p, k - 1).convert_to<std::uint64_t>() - 1;
                for (std::uint64_t m = 1; m <= mmax; ++m)
                    record("a", std::to_string(p) + "," + std::to_string(r) + "," +
                                    std::to_string(k) + "," + std::to_string(m),
                           decomposable_chow_element_a(p, r, k, m));
            }
            for (std::uint64_t k = 1; k + 1 <= r; ++k) {
                const std::uint64_t amax = pow_big(p, k).convert_to<std::uint64_t>() - 1;
                for (std::uint64_t a = 1; a <= amax; ++a)
                    record("b", std::to_string(p) + "," + std::to_string(r) + "," +
                                    std::to_string(k) + "," + std::to_string(a),
                           decomposable_chow_element_b(p, r, k, a));
            }
            for (std::uint64_t k = 1; k + 2 <= r; ++k) {
                const std::uint64_t pk = pow_big(p, k).convert_to<std::uint64_t>();
                const std::uint64_t hi = pow_big(p, r - 1).convert_to<std::uint64_t>() - 1;
                for (std::uint64_t a = 0; a <= pk - 1; ++a) {
                    for (std::uint64_t b = 0; pk * b + a <= hi; ++b) {
                        const std::uint64_t anchor = pk * b + a;
                        if (anchor < pk / p + 1) continue;
                        if (anchor % pow_big(p, r - k - 1).convert_to<std::uint64_t>() == 0)
                            continue;
                        record("c", std::to_string(p) + "," + std::to_string(r) + "," +
                                        std::to_string(k) + "," + std::to_string(a) + "," +
                                        std::to_string(b),
                               decomposable_chow_element_c(p, r, k, a, b));
                    }
                }
            }
        }
    }
    lg.note("checked " + std::to_string(total) + " identities, " +
            std::to_string(mismatched) + " mismatches surfaced as findings");
    lg.expect(total > 0, "exhaustive range non-empty");
    return finish("decomp-valuations", lg);
}

std::vector<Check> build_checks() {
    return {
        {"identity6", "exact degree-2 decomposition identity at N = 81", check_identity6},
        {"torsion-3-2-0", "torsion profile of 3:2,0",
         [] {
             return check_torsion("torsion-3-2-0", "3:2,0", {{2, {BigInt(3)}}}, 3);
         }},
        {"torsion-5-2-0", "torsion profile of 5:2,0",
         [] {
             return check_torsion("torsion-5-2-0", "5:2,0",
                                  {{2, {BigInt(5)}}, {3, {BigInt(5)}}, {4, {BigInt(5)}}}, 125);
         }},
        {"torsion-2-3-0", "torsion profile of 2:3,0",
         [] {
             return check_torsion("torsion-2-3-0", "2:3,0",
                                  {{2, {BigInt(2)}}, {3, {BigInt(2)}}}, 4);
         }},
        {"index-equals-exponent", "torsion-freeness when index equals exponent",
         check_index_equals_exponent},
        {"product-formula", "torsion * K-index = restriction product",
         check_product_formula},
        {"generator-reduction", "reduced generator family spans the full filtration", check_generator_reduction},
        {"doubly-reduced-420", "exact degree-2 generation for 3:4,2,0",
         check_doubly_reduced_420},
        {"annihilator-examples", "annihilator exponents on the worked examples",
         check_annihilators},
        {"lambda-examples", "torsion lower-bound exponents on the worked examples",
         check_lambda},
        {"witness-examples", "torsion witnesses and their membership invariants",
         check_witnesses},
        {"congruence-examples", "congruence span checks", check_congruence},
        {"indecomp-certificates", "indecomposability certificate arithmetic",
         check_certificates},
        {"chow-annihilators", "summed Chow annihilator closed forms", check_chow},
        {"decomp-valuations", "checked valuation identities for decomposable algebras",
         check_decomp_valuations},
    };
}

}  // namespace

const std::vector<Check>& paper_checks() {
    static const std::vector<Check> checks = build_checks();
    return checks;
}

std::vector<CheckResult> run_paper_checks(const std::string& only) {
    std::vector<CheckResult> results;
    bool found = only.empty();
    for (const auto& c : paper_checks()) {
        if (!only.empty() && c.name != only) continue;
        found = true;
        results.push_back(c.run());
    }
    if (!found) throw argument_error("unknown check '" + only + "'");
    return results;
}

}  // namespace gfl
