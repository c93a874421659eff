#include "gfl/report.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

namespace gfl {

namespace {

std::string branch_name(LambdaBound::Branch b) {
    switch (b) {
        case LambdaBound::Branch::kDifference: return "difference";
        case LambdaBound::Branch::kScaled: return "scaled";
        case LambdaBound::Branch::kBoundary: return "boundary";
    }
    return "?";
}

LambdaBound::Branch branch_from(const std::string& s) {
    if (s == "difference") return LambdaBound::Branch::kDifference;
    if (s == "scaled") return LambdaBound::Branch::kScaled;
    if (s == "boundary") return LambdaBound::Branch::kBoundary;
    throw argument_error("unknown lambda branch '" + s + "'");
}

std::string source_name(AnnihilatorBound::Source s) {
    switch (s) {
        case AnnihilatorBound::Source::kAllIndicesHigh: return "all-indices-high";
        case AnnihilatorBound::Source::kLowClauseMidl: return "low-clause-mid";
        case AnnihilatorBound::Source::kLowClauseLast: return "low-clause-last";
        case AnnihilatorBound::Source::kCodimensionSum: return "codimension-sum";
    }
    return "?";
}

AnnihilatorBound::Source source_from(const std::string& s) {
    if (s == "all-indices-high") return AnnihilatorBound::Source::kAllIndicesHigh;
    if (s == "low-clause-mid") return AnnihilatorBound::Source::kLowClauseMidl;
    if (s == "low-clause-last") return AnnihilatorBound::Source::kLowClauseLast;
    if (s == "codimension-sum") return AnnihilatorBound::Source::kCodimensionSum;
    throw argument_error("unknown annihilator source '" + s + "'");
}

std::string verdict_name(TriVerdict v) {
    switch (v) {
        case TriVerdict::kTrue: return "true";
        case TriVerdict::kFalse: return "false";
        case TriVerdict::kVacuous: return "vacuous";
    }
    return "?";
}

TriVerdict verdict_from(const std::string& s) {
    if (s == "true") return TriVerdict::kTrue;
    if (s == "false") return TriVerdict::kFalse;
    if (s == "vacuous") return TriVerdict::kVacuous;
    throw argument_error("unknown verdict '" + s + "'");
}

Json big_str(const BigInt& v) { return v.str(); }
BigInt big_from(const Json& j) { return BigInt(j.get<std::string>()); }

void fill_bounds(DegreeRecord& rec, const ReducedSequence& rs, std::uint64_t d) {
    for (std::size_t i = 1; i <= rs.m(); ++i) {
        if (d > 1 && BigInt(d) < pow_big(rs.p(), rs.epsilon(i)))
            rec.lambda_bounds.push_back(lambda_bound(rs, i, d));
    }
    if (!rec.lambda_bounds.empty()) rec.theorem_bound = theorem_lower_bound_at(rs, d);
    rec.annihilator = gamma_annihilator(rs, d);
}

DegreeRecord make_exact_record(FiltrationEngine& engine,
                               const std::optional<ReducedSequence>& rs,
                               const QuotientReport& q) {
    DegreeRecord rec;
    rec.d = q.degree;
    rec.free_rank = q.structure.free_rank;
    rec.invariant_factors = q.structure.invariant_factors;
    rec.torsion_order = q.structure.torsion_order();
    rec.restriction_index = q.restriction_index;
    if (rs) {
        fill_bounds(rec, *rs, q.degree);
        if (q.degree >= 2) rec.doubly_reduced = engine.verify_doubly_reduced(q.degree);
    }
    if (rec.theorem_bound) rec.lambda_ok = *rec.torsion_order >= *rec.theorem_bound;
    if (rec.annihilator && rec.doubly_reduced == TriVerdict::kTrue) {
        BigInt cap = pow_big(engine.sequence().p(), rec.annihilator->exponent);
        rec.annihilator_ok = cap % q.structure.torsion_exponent() == 0;
    }
    return rec;
}

}  // namespace

bool AnalysisReport::healthy() const {
    if (!invariant_violations.empty()) return false;
    for (const auto& rec : degrees) {
        if (rec.lambda_ok && !*rec.lambda_ok) return false;
        if (rec.annihilator_ok && !*rec.annihilator_ok) return false;
    }
    if (product_formula && !product_formula->holds) return false;
    return true;
}

AnalysisReport analyze(const PSequence& seq, const AnalyzeOptions& opts) {
    AnalysisReport rep;
    rep.p = seq.p();
    rep.alpha = seq.alpha();
    auto rs = reduced_or_none(seq);
    rep.index_equals_exponent = !rs.has_value();
    if (rs) {
        rep.reduced_indices = std::vector<std::size_t>(rs->indices());
        rep.reduced_values = std::vector<std::uint64_t>(rs->values());
    }

    auto deg = seq.degree_as_size();
    if (deg && *deg <= opts.cap) {
        rep.mode = "exact";
        FiltrationEngine engine(seq, opts.cap);
        for (const auto& q : engine.torsion_profile())
            rep.degrees.push_back(make_exact_record(engine, rs, q));
        rep.total_torsion_order = engine.total_torsion_order();
        rep.product_formula = engine.verify_product_formula();
        rep.invariant_violations = engine.invariant_violations();
    } else {
        rep.mode = "formula-level";
        rep.warnings.push_back("degree " + seq.degree().str() +
                               " exceeds the lattice cap; exact subquotients omitted");
        if (rs) {
            BigInt limit = theorem_degree_limit(*rs);
            std::uint64_t dmax = opts.formula_degree_limit;
            if (limit < dmax) dmax = limit.convert_to<std::uint64_t>();
            for (std::uint64_t d = 2; d <= dmax; ++d) {
                DegreeRecord rec;
                rec.d = d;
                fill_bounds(rec, *rs, d);
                if (!rec.lambda_bounds.empty() || rec.annihilator)
                    rep.degrees.push_back(std::move(rec));
            }
        }
    }
    return rep;
}

Json report_to_json(const AnalysisReport& r) {
    Json j;
    j["schema"] = r.schema;
    j["sequence"] = Json{{"p", r.p}, {"alpha", r.alpha}};
    j["mode"] = r.mode;
    j["index_equals_exponent"] = r.index_equals_exponent;
    if (r.reduced_indices) {
        j["reduced"] = Json{{"indices", *r.reduced_indices}, {"values", *r.reduced_values}};
    } else {
        j["reduced"] = nullptr;
    }
    j["degrees"] = Json::array();
    for (const auto& rec : r.degrees) {
        Json d;
        d["d"] = rec.d;
        d["free_rank"] = rec.free_rank ? Json(*rec.free_rank) : Json(nullptr);
        Json inv = Json::array();
        for (const auto& f : rec.invariant_factors) inv.push_back(big_str(f));
        d["invariant_factors"] = inv;
        d["torsion_order"] = rec.torsion_order ? big_str(*rec.torsion_order) : Json(nullptr);
        d["restriction_index"] =
            rec.restriction_index ? big_str(*rec.restriction_index) : Json(nullptr);
        Json lb = Json::array();
        for (const auto& b : rec.lambda_bounds)
            lb.push_back(Json{{"i", b.i},
                              {"epsilon", b.epsilon},
                              {"lambda", b.lambda},
                              {"branch", branch_name(b.branch)}});
        d["lambda_bounds"] = lb;
        d["theorem_bound"] = rec.theorem_bound ? big_str(*rec.theorem_bound) : Json(nullptr);
        if (rec.annihilator) {
            Json a;
            a["exponent"] = rec.annihilator->exponent;
            a["source"] = source_name(rec.annihilator->source);
            a["clause_l"] =
                rec.annihilator->clause_l ? Json(*rec.annihilator->clause_l) : Json(nullptr);
            d["annihilator"] = a;
        } else {
            d["annihilator"] = nullptr;
        }
        d["doubly_reduced"] =
            rec.doubly_reduced ? Json(verdict_name(*rec.doubly_reduced)) : Json(nullptr);
        d["lambda_ok"] = rec.lambda_ok ? Json(*rec.lambda_ok) : Json(nullptr);
        d["annihilator_ok"] = rec.annihilator_ok ? Json(*rec.annihilator_ok) : Json(nullptr);
        j["degrees"].push_back(std::move(d));
    }
    Json agg;
    agg["total_torsion_order"] =
        r.total_torsion_order ? big_str(*r.total_torsion_order) : Json(nullptr);
    if (r.product_formula) {
        agg["product_formula"] = Json{
            {"holds", r.product_formula->holds},
            {"total_torsion_order", big_str(r.product_formula->total_torsion_order)},
            {"k_theory_index", big_str(r.product_formula->k_theory_index)},
            {"rho_product", big_str(r.product_formula->rho_product)}};
    } else {
        agg["product_formula"] = nullptr;
    }
    agg["invariant_violations"] = r.invariant_violations;
    agg["warnings"] = r.warnings;
    j["aggregate"] = std::move(agg);
    return j;
}

AnalysisReport report_from_json(const Json& j) {
    AnalysisReport r;
    r.schema = j.at("schema").get<int>();
    r.p = j.at("sequence").at("p").get<std::uint64_t>();
    r.alpha = j.at("sequence").at("alpha").get<std::vector<std::uint64_t>>();
    r.mode = j.at("mode").get<std::string>();
    r.index_equals_exponent = j.at("index_equals_exponent").get<bool>();
    if (!j.at("reduced").is_null()) {
        r.reduced_indices = j["reduced"].at("indices").get<std::vector<std::size_t>>();
        r.reduced_values = j["reduced"].at("values").get<std::vector<std::uint64_t>>();
    }
    for (const auto& d : j.at("degrees")) {
        DegreeRecord rec;
        rec.d = d.at("d").get<std::uint64_t>();
        if (!d.at("free_rank").is_null()) rec.free_rank = d["free_rank"].get<std::size_t>();
        for (const auto& f : d.at("invariant_factors")) rec.invariant_factors.push_back(big_from(f));
        if (!d.at("torsion_order").is_null()) rec.torsion_order = big_from(d["torsion_order"]);
        if (!d.at("restriction_index").is_null())
            rec.restriction_index = big_from(d["restriction_index"]);
        for (const auto& b : d.at("lambda_bounds")) {
            LambdaBound lb;
            lb.i = b.at("i").get<std::size_t>();
            lb.d = rec.d;
            lb.epsilon = b.at("epsilon").get<std::uint64_t>();
            lb.lambda = b.at("lambda").get<std::int64_t>();
            lb.branch = branch_from(b.at("branch").get<std::string>());
            rec.lambda_bounds.push_back(lb);
        }
        if (!d.at("theorem_bound").is_null()) rec.theorem_bound = big_from(d["theorem_bound"]);
        if (!d.at("annihilator").is_null()) {
            AnnihilatorBound a;
            a.d = rec.d;
            a.exponent = d["annihilator"].at("exponent").get<std::uint64_t>();
            a.source = source_from(d["annihilator"].at("source").get<std::string>());
            if (!d["annihilator"].at("clause_l").is_null())
                a.clause_l = d["annihilator"]["clause_l"].get<std::size_t>();
            rec.annihilator = a;
        }
        if (!d.at("doubly_reduced").is_null())
            rec.doubly_reduced = verdict_from(d["doubly_reduced"].get<std::string>());
        if (!d.at("lambda_ok").is_null()) rec.lambda_ok = d["lambda_ok"].get<bool>();
        if (!d.at("annihilator_ok").is_null())
            rec.annihilator_ok = d["annihilator_ok"].get<bool>();
        r.degrees.push_back(std::move(rec));
    }
    const auto& agg = j.at("aggregate");
    if (!agg.at("total_torsion_order").is_null())
        r.total_torsion_order = big_from(agg["total_torsion_order"]);
    if (!agg.at("product_formula").is_null()) {
        ProductFormulaResult pf;
        pf.holds = agg["product_formula"].at("holds").get<bool>();
        pf.total_torsion_order = big_from(agg["product_formula"].at("total_torsion_order"));
        pf.k_theory_index = big_from(agg["product_formula"].at("k_theory_index"));
        pf.rho_product = big_from(agg["product_formula"].at("rho_product"));
        r.product_formula = pf;
    }
    r.invariant_violations = agg.at("invariant_violations").get<std::vector<std::string>>();
    r.warnings = agg.at("warnings").get<std::vector<std::string>>();
    return r;
}

bool reports_equal(const AnalysisReport& a, const AnalysisReport& b) {
    return report_to_json(a) == report_to_json(b);
}

std::string render_torsion(const std::vector<BigInt>& invariant_factors) {
    if (invariant_factors.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i) out += " + ";
        out += "Z/" + invariant_factors[i].str();
    }
    return out;
}

std::string report_to_table(const AnalysisReport& r) {
    std::ostringstream os;
    os << "sequence " << r.p << ":";
    for (std::size_t i = 0; i < r.alpha.size(); ++i) os << (i ? "," : "") << r.alpha[i];
    os << "   mode " << r.mode << "\n";
    if (r.index_equals_exponent) {
        os << "index = exponent: every quotient is torsion-free\n";
    } else if (r.reduced_indices) {
        os << "reduced sequence: indices (";
        for (std::size_t i = 0; i < r.reduced_indices->size(); ++i)
            os << (i ? "," : "") << (*r.reduced_indices)[i];
        os << ") values (";
        for (std::size_t i = 0; i < r.reduced_values->size(); ++i)
            os << (i ? "," : "") << (*r.reduced_values)[i];
        os << ")\n";
    }
    os << "  d | torsion | restr.index | lower bound | annih.exp | flags\n";
    for (const auto& rec : r.degrees) {
        os << std::setw(3) << rec.d << " | ";
        os << (rec.torsion_order ? render_torsion(rec.invariant_factors) : std::string("-"));
        os << " | " << (rec.restriction_index ? rec.restriction_index->str() : "-");
        os << " | " << (rec.theorem_bound ? rec.theorem_bound->str() : "-");
        os << " | " << (rec.annihilator ? std::to_string(rec.annihilator->exponent) : "-");
        os << " |";
        if (rec.lambda_ok) os << (*rec.lambda_ok ? " bound-ok" : " BOUND-VIOLATED");
        if (rec.annihilator_ok)
            os << (*rec.annihilator_ok ? " annih-ok" : " ANNIH-VIOLATED");
        if (rec.doubly_reduced)
            os << " dr:" << verdict_name(*rec.doubly_reduced);
        os << "\n";
    }
    if (r.total_torsion_order)
        os << "total torsion order: " << r.total_torsion_order->str() << "\n";
    if (r.product_formula) {
        os << "product formula: " << (r.product_formula->holds ? "holds" : "FAILS") << "  ("
           << r.product_formula->total_torsion_order.str() << " * "
           << r.product_formula->k_theory_index.str() << " = "
           << r.product_formula->rho_product.str() << ")\n";
    }
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    for (const auto& v : r.invariant_violations) os << "INVARIANT VIOLATION: " << v << "\n";
    return os.str();
}

std::vector<PSequence> enumerate_sequences(std::uint64_t p, std::uint64_t max_alpha0,
                                           std::size_t max_length) {
    std::vector<PSequence> out;
    std::vector<std::uint64_t> cur;
    auto rec = [&](auto&& self) -> void {
        if (cur.back() == 0) {
            out.push_back(PSequence::validate(p, cur));
            return;
        }
        if (cur.size() > max_length) return;
        for (std::uint64_t next = 0; next < cur.back(); ++next) {
            cur.push_back(next);
            self(self);
            cur.pop_back();
        }
    };
    for (std::uint64_t a0 = 1; a0 <= max_alpha0; ++a0) {
        cur = {a0};
        rec(rec);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    if (config.cap < 2) throw argument_error("sweep: cap must be >= 2");
    std::vector<PSequence> seqs;
    for (std::uint64_t p : config.primes) {
        auto part = enumerate_sequences(p, config.max_alpha0, config.max_length);
        seqs.insert(seqs.end(), part.begin(), part.end());
    }
    std::sort(seqs.begin(), seqs.end());

    AnalyzeOptions opts;
    opts.cap = config.cap;
    std::vector<AnalysisReport> reports(seqs.size());
    std::size_t jobs = config.jobs;
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            std::size_t idx = cursor.fetch_add(1);
            if (idx >= seqs.size()) return;
            reports[idx] = analyze(seqs[idx], opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRow> rows;
    for (std::size_t idx = 0; idx < seqs.size(); ++idx) {
        for (const auto& rec : reports[idx].degrees) {
            if (rec.d < config.degree_min || rec.d > config.degree_max) continue;
            SweepRow row;
            row.p = seqs[idx].p();
            row.alpha = seqs[idx].alpha();
            row.mode = reports[idx].mode;
            row.record = rec;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string alpha_text(const std::vector<std::uint64_t>& alpha) {
    std::string out;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(alpha[i]);
    }
    return out;
}

}  // namespace

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "p,alpha,d,mode,free_rank,invariant_factors,torsion_order,restriction_index,"
          "theorem_bound,lambda_ok,annihilator_exponent,annihilator_ok,doubly_reduced\n";
    for (const auto& r : rows) {
        const auto& rec = r.record;
        os << r.p << "," << alpha_text(r.alpha) << "," << rec.d << "," << r.mode << ",";
        if (rec.free_rank) os << *rec.free_rank;
        os << ",";
        for (std::size_t i = 0; i < rec.invariant_factors.size(); ++i)
            os << (i ? ";" : "") << rec.invariant_factors[i].str();
        os << ",";
        if (rec.torsion_order) os << rec.torsion_order->str();
        os << ",";
        if (rec.restriction_index) os << rec.restriction_index->str();
        os << ",";
        if (rec.theorem_bound) os << rec.theorem_bound->str();
        os << ",";
        if (rec.lambda_ok) os << (*rec.lambda_ok ? "true" : "false");
        os << ",";
        if (rec.annihilator) os << rec.annihilator->exponent;
        os << ",";
        if (rec.annihilator_ok) os << (*rec.annihilator_ok ? "true" : "false");
        os << ",";
        if (rec.doubly_reduced) os << verdict_name(*rec.doubly_reduced);
        os << "\n";
    }
    return os.str();
}

Json sweep_to_json(const std::vector<SweepRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json j;
        j["p"] = r.p;
        j["alpha"] = r.alpha;
        j["mode"] = r.mode;
        AnalysisReport tmp;
        tmp.degrees.push_back(r.record);
        j["record"] = report_to_json(tmp)["degrees"][0];
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace gfl
