#include "gfl/bounds.hpp"
#include "gfl/checks.hpp"
#include "gfl/filtration.hpp"
#include "gfl/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gfl;

namespace {

py::object json_to_py(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::object analyze_py(const std::string& seq_text, std::size_t cap,
                      std::uint64_t formula_degree_limit) {
    AnalyzeOptions opts;
    opts.cap = cap;
    opts.formula_degree_limit = formula_degree_limit;
    return json_to_py(report_to_json(analyze(PSequence::parse(seq_text), opts)));
}

py::object reduce_py(const std::string& seq_text) {
    auto rs = reduced_or_none(PSequence::parse(seq_text));
    if (!rs) return py::none();
    py::dict d;
    d["indices"] = rs->indices();
    d["values"] = rs->values();
    std::vector<std::uint64_t> eps;
    for (std::size_t i = 1; i <= rs->m(); ++i) eps.push_back(rs->epsilon(i));
    d["epsilons"] = eps;
    d["doubly_reduced_sufficient"] = doubly_reduced_sufficient(*rs);
    return d;
}

ReducedSequence rs_from(const std::string& seq_text) {
    auto rs = reduced_or_none(PSequence::parse(seq_text));
    if (!rs) throw argument_error("sequence has index = exponent; no reduced sequence");
    return *rs;
}

py::dict witness_py(const std::string& seq_text, std::size_t i, std::size_t d,
                    std::size_t cap) {
    FiltrationEngine engine(PSequence::parse(seq_text), cap);
    auto w = engine.torsion_witness(i, d);
    auto chk = engine.verify_witness(i, d);
    auto ord = engine.witness_class_order(i, d);
    py::dict out;
    out["i"] = w.i;
    out["d"] = w.d;
    out["primed"] = w.primed;
    out["lambda"] = w.lambda;
    out["annihilator"] = w.annihilator_used.str();
    out["claimed_order_lower_bound"] = w.claimed_order_lower_bound.str();
    py::list coeffs;
    for (const auto& c : w.element.coeffs()) coeffs.append(c.str());
    out["element"] = coeffs;
    py::dict checks;
    checks["annihilator_kills"] = chk.annihilator_kills;
    checks["order_attained"] = chk.order_attained;
    out["checks"] = checks;
    out["class_order"] = ord ? py::object(py::str(ord->str())) : py::object(py::none());
    return out;
}

py::object gamma_annihilator_py(const std::string& seq_text, std::uint64_t d) {
    auto a = gamma_annihilator(rs_from(seq_text), d);
    if (!a) return py::none();
    py::dict out;
    out["d"] = a->d;
    out["exponent"] = a->exponent;
    return out;
}

py::object chow_annihilator_py(const std::string& seq_text, std::uint64_t d) {
    auto a = chow_annihilator(rs_from(seq_text), d);
    if (!a) return py::none();
    py::dict out;
    out["d"] = a->d;
    out["exponent"] = a->exponent;
    return out;
}

py::dict certificate_py(std::uint64_t p, std::uint64_t r, std::uint64_t i) {
    auto c = indecomposability_certificate(p, r, i);
    py::dict out;
    out["p"] = c.p;
    out["r"] = c.r;
    out["i"] = c.i;
    out["lower_exponent"] = c.lower_exponent.str();
    out["upper_exponent"] = c.upper_exponent.str();
    out["length_condition"] = c.length_condition;
    out["verdict"] = c.verdict == IndecompCertificate::Verdict::kIndecomposable
                         ? "indecomposable"
                         : "inconclusive";
    return out;
}

py::dict checked_py(const CheckedValuation& cv) {
    py::dict out;
    out["value"] = cv.value.str();
    out["direct_valuation"] = cv.direct_valuation;
    out["asserted_valuation"] = cv.asserted_valuation;
    out["matches"] = cv.matches;
    return out;
}

py::list verify_paper_py(const std::string& only) {
    py::list out;
    for (const auto& r : run_paper_checks(only)) {
        py::dict d;
        d["check"] = r.name;
        d["pass"] = r.pass;
        d["detail"] = r.detail;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact gamma-filtration subquotients of Severi-Brauer varieties";

    py::register_exception<argument_error>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<not_applicable>(m, "NotApplicable", PyExc_ValueError);

    m.def("analyze", &analyze_py, py::arg("sequence"), py::arg("cap") = 256,
          py::arg("formula_degree_limit") = 64,
          "full analysis of a p-sequence 'p:a0,a1,...'; exact below the cap, "
          "formula-level above it");
    m.def("reduce_sequence", &reduce_py, py::arg("sequence"),
          "reduced sequence data, or None when index = exponent");
    m.def("vp", [](std::uint64_t p, const std::string& n) {
        auto v = vp(p, BigInt(n));
        return v.is_infinite() ? py::object(py::none()) : py::object(py::int_(v.value()));
    });
    m.def("binomial",
          [](std::uint64_t n, std::int64_t k) { return binomial(n, k).str(); });
    m.def("p_coeff", [](std::uint64_t p, std::uint64_t a, std::uint64_t b) {
        return p_coeff(p, a, b).str();
    });
    m.def("index_of_tensor_power", [](const std::string& seq, std::uint64_t i) {
        return index_of_tensor_power(PSequence::parse(seq), i).str();
    });
    m.def("lambda_bound", [](const std::string& seq, std::size_t i, std::uint64_t d) {
        return lambda_bound(rs_from(seq), i, d).lambda;
    });
    m.def("lambda_special", [](const std::string& seq, std::size_t i, std::uint64_t d) {
        return lambda_special(rs_from(seq), i, d);
    });
    m.def("theorem_lower_bound", [](const std::string& seq, std::uint64_t d) {
        return theorem_lower_bound_at(rs_from(seq), d).str();
    });
    m.def("delta_exponent", [](const std::string& seq, std::size_t l, std::uint64_t n) {
        return delta_exponent(rs_from(seq), l, n);
    });
    m.def("gamma_annihilator", &gamma_annihilator_py, py::arg("sequence"), py::arg("d"));
    m.def("chow_annihilator", &chow_annihilator_py, py::arg("sequence"), py::arg("d"));
    m.def("decomposable_upper_bound_exponent",
          [](std::uint64_t p, std::uint64_t r, std::uint64_t s) {
              return decomposable_upper_bound_exponent(p, r, s).str();
          });
    m.def("euler_phi_ktheory_valuation",
          [](std::uint64_t p, std::uint64_t r, std::uint64_t i) {
              return euler_phi_ktheory_valuation(p, r, i).str();
          });
    m.def("indecomposability_certificate", &certificate_py, py::arg("p"), py::arg("r"),
          py::arg("i"));
    m.def("decomposable_chow_element_a",
          [](std::uint64_t p, std::uint64_t r, std::uint64_t k, std::uint64_t mm) {
              return checked_py(decomposable_chow_element_a(p, r, k, mm));
          });
    m.def("decomposable_chow_element_b",
          [](std::uint64_t p, std::uint64_t r, std::uint64_t k, std::uint64_t a) {
              return checked_py(decomposable_chow_element_b(p, r, k, a));
          });
    m.def("decomposable_chow_element_c",
          [](std::uint64_t p, std::uint64_t r, std::uint64_t k, std::uint64_t a,
             std::uint64_t b) { return checked_py(decomposable_chow_element_c(p, r, k, a, b)); });
    m.def("verify_degree2_identity", &verify_known_degree2_decomposition);
    m.def("verify_product_formula", [](const std::string& seq, std::size_t cap) {
        FiltrationEngine e(PSequence::parse(seq), cap);
        auto pf = e.verify_product_formula();
        py::dict out;
        out["holds"] = pf.holds;
        out["total_torsion_order"] = pf.total_torsion_order.str();
        out["k_theory_index"] = pf.k_theory_index.str();
        out["rho_product"] = pf.rho_product.str();
        return out;
    }, py::arg("sequence"), py::arg("cap") = 256);
    m.def("verify_lemma_reduction", [](const std::string& seq, std::size_t cap) {
        FiltrationEngine e(PSequence::parse(seq), cap);
        return e.verify_lemma_reduction_all();
    }, py::arg("sequence"), py::arg("cap") = 256);
    m.def("verify_doubly_reduced", [](const std::string& seq, std::size_t d, std::size_t cap) {
        FiltrationEngine e(PSequence::parse(seq), cap);
        switch (e.verify_doubly_reduced(d)) {
            case TriVerdict::kTrue: return "true";
            case TriVerdict::kFalse: return "false";
            case TriVerdict::kVacuous: return "vacuous";
        }
        return "?";
    }, py::arg("sequence"), py::arg("d"), py::arg("cap") = 256);
    m.def("verify_congruence", [](const std::string& seq, std::size_t i, std::size_t d,
                                  std::size_t samples, std::size_t cap) {
        FiltrationEngine e(PSequence::parse(seq), cap);
        return e.verify_congruence_lemma(i, d, samples);
    }, py::arg("sequence"), py::arg("i"), py::arg("d"), py::arg("samples") = 8,
       py::arg("cap") = 256);
    m.def("torsion_witness", &witness_py, py::arg("sequence"), py::arg("i"), py::arg("d"),
          py::arg("cap") = 256);
    m.def("verify_paper", &verify_paper_py, py::arg("only") = "");
}
