#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "kmc/assembly.hpp"
#include "kmc/ring_structure.hpp"
#include "kmc/torsion.hpp"
#include "kmc/worked_example.hpp"

namespace kmc {

struct AnalysisRequest {
    std::string matrix_text;
    FieldSpec field = FieldSpec::rationals();
    int truncation = 60;
    bool mv_crosscheck = false;
    std::vector<std::uint32_t> torsion_primes;
    bool ring_structure = false;
    bool compare_paper_example = false;
};

struct CrossCheck {
    std::string status = "not_run";  // "not_run", "agree", "mismatch"
    std::optional<int> first_mismatch_degree;
    std::vector<MvPart> mv_parts;
};

struct CohomologyReport {
    CartanMatrix matrix;
    MatrixType type = MatrixType::Indefinite;
    ParabolicProfile profile;
    FieldSpec field = FieldSpec::rationals();
    int truncation = 0;
    TruncatedSeries total;
    std::vector<SummandResult> summands;
    std::optional<FactoredRational> closed_form;
    CrossCheck crosscheck;
    std::vector<TorsionCertificate> torsion;
    std::optional<RingStructureReport> ring_structure;
    std::vector<PaperDiagnostic> paper_diagnostics;
    std::vector<std::string> warnings;
};

/// Denominators tried, in order, when presenting a series in closed form.
inline const std::vector<std::vector<int>>& closed_form_candidates() {
    static const std::vector<std::vector<int>> c{{},        {4},          {2, 2, 2},    {2, 2, 4},
                                                 {2, 4, 6}, {2, 4, 12},   {4, 6, 8},    {2, 2, 4, 12},
                                                 {2, 4, 6, 8}, {2, 4, 6, 7}, {2, 2, 2, 4, 12}, {2, 2, 4, 6, 7},
                                                 {36, 48, 52}};
    return c;
}

/// First candidate whose numerator and largest denominator exponent both fit in
/// the lower half of the known coefficients, so at least half of them act as a
/// check. Heuristic: a finite truncation cannot prove a closed form.
inline std::optional<FactoredRational> guess_closed_form(const TruncatedSeries& s) {
    for (const auto& dens : closed_form_candidates()) {
        int guard = 0;
        for (int d : dens) guard = std::max(guard, d);
        if (2 * guard > s.truncation()) continue;
        auto num = reconstruct_numerator(s, dens);
        if (num && 2 * (static_cast<int>(num->size()) - 1) <= s.truncation()) return FactoredRational{*num, dens};
    }
    return std::nullopt;
}

inline std::vector<std::string> analysis_warnings(const AnalysisRequest& req) {
    std::vector<std::string> out;
    for (auto p : req.torsion_primes) {
        const auto deg = dickson_contradiction_degree(p);
        if (deg > req.truncation)
            out.push_back("p = " + std::to_string(p) + ": certification may need truncation " + std::to_string(deg) +
                          " (2p^2(p^2-1)) but the scan stops at " + std::to_string(req.truncation));
    }
    return out;
}

inline CohomologyReport analyze(const AnalysisRequest& req) {
    if (req.truncation < 0) throw PreconditionViolation("negative truncation " + std::to_string(req.truncation));
    for (auto p : req.torsion_primes) (void)FieldSpec::prime(p);
    if (req.ring_structure && !req.field.is_rational())
        throw PreconditionViolation("ring structure is reported for rational coefficients only");

    const CartanMatrix m = parse_matrix(req.matrix_text);
    CohomologyReport rep;
    rep.matrix = m;
    rep.type = classify_type(m);
    rep.profile = parabolic_profile(m);
    rep.field = req.field;
    rep.truncation = req.truncation;
    rep.warnings = analysis_warnings(req);
    const ReflectionAction action(m);
    const int N = req.truncation;
    std::optional<TruncatedSeries> p12;

    with_field(req.field, [&](auto field) {
        using F = decltype(field);
        InvariantEngine<F> engine(action, field, N);
        Assembly a = assemble_by_formula(engine, rep.profile);
        rep.total = a.total;
        rep.summands = std::move(a.summands);

        if (req.mv_crosscheck) {
            MvAssembly mv = assemble_by_mv(engine, rep.profile);
            rep.crosscheck.first_mismatch_degree = rep.total.first_difference(mv.total);
            rep.crosscheck.status = rep.crosscheck.first_mismatch_degree ? "mismatch" : "agree";
            rep.crosscheck.mv_parts = std::move(mv.parts);
        }

        if (!req.torsion_primes.empty() || req.ring_structure) {
            std::optional<InvariantEngine<RationalField>> own_q;
            InvariantEngine<RationalField>* q = nullptr;
            if constexpr (std::is_same_v<F, RationalField>) {
                q = &engine;
            } else {
                own_q.emplace(action, RationalField{}, N);
                q = &*own_q;
            }
            for (auto p : req.torsion_primes) {
                if constexpr (std::is_same_v<F, PrimeField>) {
                    if (engine.field().modulus() == p) {
                        rep.torsion.push_back(torsion_certificate(*q, engine));
                        continue;
                    }
                }
                InvariantEngine<PrimeField> fp(action, PrimeField(p), N);
                rep.torsion.push_back(torsion_certificate(*q, fp));
            }
            if (req.ring_structure) rep.ring_structure = ring_structure_report(*q, rep.profile, rep.total);
        }
        if constexpr (std::is_same_v<F, RationalField>)
            if (req.compare_paper_example && m == worked_example_matrix())
                p12 = engine.ring(IndexSet{1, 2}).dims();
    });

    rep.closed_form = guess_closed_form(rep.total);
    if (req.compare_paper_example)
        rep.paper_diagnostics = compare_with_paper_example(m, rep.field, rep.total, rep.crosscheck.status);
    if (p12) rep.paper_diagnostics.push_back(compare_rational_g2_degrees(*p12));
    return rep;
}

inline std::vector<PaperDiagnostic> compare_with_paper_example(const CohomologyReport& rep) {
    return compare_with_paper_example(rep.matrix, rep.field, rep.total, rep.crosscheck.status);
}

// ---------------------------------------------------------------------------
// serialization

using Json = nlohmann::ordered_json;

inline Json sets_json(const std::vector<IndexSet>& sets) {
    Json arr = Json::array();
    for (IndexSet s : sets) arr.push_back(s.labels());
    return arr;
}

inline Json to_json(const CohomologyReport& r) {
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.matrix.entries()) rows.push_back(std::vector<int>(row.begin(), row.end()));
    j["matrix"] = rows;
    j["type"] = to_string(r.type);
    j["symmetrizable"] = r.matrix.symmetrizable();
    j["class"] = to_string(r.profile.class_label);
    j["refined_class"] = to_string(r.profile.refined_label);
    j["maximal_finite"] = sets_json(r.profile.maximal_finite);
    j["permutation"] = r.profile.permutation.image();
    j["field"] = r.field.name();
    j["truncation"] = r.truncation;
    j["series_coefficients"] = r.total.coefficients();
    if (r.closed_form) {
        j["closed_form"] = Json{{"numerator", r.closed_form->numerator},
                                {"denominator_exponents", r.closed_form->denominator_exponents},
                                {"text", r.closed_form->to_string()}};
    } else {
        j["closed_form"] = nullptr;
    }
    Json summands = Json::array();
    for (const auto& s : r.summands)
        summands.push_back(
            Json{{"label", s.label}, {"kind", s.spec.kind_name()}, {"shift", s.spec.shift}, {"dims", s.dims.coefficients()}});
    j["summands"] = summands;
    Json cc{{"status", r.crosscheck.status}};
    if (r.crosscheck.first_mismatch_degree) cc["first_mismatch_degree"] = *r.crosscheck.first_mismatch_degree;
    if (!r.crosscheck.mv_parts.empty()) {
        Json parts = Json::array();
        for (const auto& p : r.crosscheck.mv_parts) parts.push_back(Json{{"label", p.label}, {"dims", p.dims.coefficients()}});
        cc["mv_parts"] = parts;
    }
    j["crosscheck"] = cc;
    Json torsion = Json::array();
    for (const auto& t : r.torsion) {
        Json tj{{"p", t.p}, {"status", to_string(t.status)}};
        tj["witness_degree"] = t.witness_degree ? Json(*t.witness_degree) : Json(nullptr);
        if (t.witness_degree) {
            tj["dim_fp"] = t.dim_fp;
            tj["dim_q"] = t.dim_q;
            tj["reverified"] = t.reverified;
        }
        tj["dickson_degrees"] = dickson_degrees(t.p);
        tj["dickson_bound_holds"] = t.dickson_bound_holds;
        tj["rational_matches_prediction"] =
            t.rational_matches_prediction ? Json(*t.rational_matches_prediction) : Json(nullptr);
        tj["note"] = t.note;
        torsion.push_back(tj);
    }
    j["torsion"] = torsion;
    if (r.ring_structure) {
        const auto& rs = *r.ring_structure;
        Json rj{{"status", rs.status}, {"symmetrizable", rs.symmetrizable}, {"even_part", rs.even_part}};
        rj["psi"] = rs.psi ? Json(*rs.psi) : Json(nullptr);
        rj["generator_symbol"] = rs.generator_symbol;
        rj["reduced_series"] = rs.reduced_series.coefficients();
        Json gens = Json::array();
        for (const auto& g : rs.odd_generators) gens.push_back(Json{{"degree", g.degree}, {"count", g.count}});
        rj["odd_generators"] = gens;
        rj["shape_consistent"] = rs.shape_consistent;
        if (rs.first_summand_vanishes) rj["first_summand_vanishes"] = *rs.first_summand_vanishes;
        if (rs.conjecture_fc) rj["conjecture_fc"] = *rs.conjecture_fc;
        rj["description"] = rs.description;
        j["ring_structure"] = rj;
    }
    Json diags = Json::array();
    for (const auto& d : r.paper_diagnostics) {
        Json mism = Json::array();
        for (const auto& x : d.mismatches)
            mism.push_back(Json{{"degree", x.degree}, {"computed", x.computed}, {"printed", x.reference}});
        diags.push_back(Json{{"subject", d.subject},
                             {"status", d.status},
                             {"reference", d.reference},
                             {"compared_through", d.compared_through},
                             {"mismatches", mism},
                             {"note", d.note}});
    }
    j["paper_diagnostics"] = diags;
    return j;
}

inline std::string join_ints(const std::vector<std::int64_t>& v) {
    std::string s;
    for (auto x : v) {
        if (!s.empty()) s += " ";
        s += std::to_string(x);
    }
    return s;
}

inline std::string to_text(const CohomologyReport& r) {
    std::ostringstream out;
    auto line = [&](const std::string& key, const std::string& value) {
        out << key << std::string(key.size() < 16 ? 16 - key.size() : 1, ' ') << value << "\n";
    };
    line("matrix", r.matrix.literal());
    line("type", to_string(r.type) + (r.matrix.symmetrizable() ? ", symmetrizable" : ", nonsymmetrizable"));
    line("class", to_string(r.profile.class_label) + ", refined (" + to_string(r.profile.refined_label) + ")");
    std::string pa;
    for (IndexSet s : r.profile.maximal_finite) pa += (pa.empty() ? "" : " ") + s.to_string();
    line("P(A)", pa);
    const auto& im = r.profile.permutation.image();
    line("permutation", "1->" + std::to_string(im[0]) + " 2->" + std::to_string(im[1]) + " 3->" + std::to_string(im[2]));
    line("field", r.field.name());
    line("truncation", std::to_string(r.truncation));
    line("series", series_string(r.total));
    line("coefficients", join_ints(r.total.coefficients()));
    line("closed form", r.closed_form ? r.closed_form->to_string() : "none");
    out << "summands\n";
    for (const auto& s : r.summands) out << "  " << s.label << "\n    " << join_ints(s.dims.coefficients()) << "\n";
    std::string cc = r.crosscheck.status;
    if (r.crosscheck.first_mismatch_degree) cc += " (first mismatch at t^" + std::to_string(*r.crosscheck.first_mismatch_degree) + ")";
    line("crosscheck", cc);
    for (const auto& p : r.crosscheck.mv_parts) out << "  mv " << p.label << "\n    " << join_ints(p.dims.coefficients()) << "\n";
    for (const auto& t : r.torsion) {
        std::string v = "p=" + std::to_string(t.p) + " " + to_string(t.status);
        if (t.witness_degree)
            v += " at degree " + std::to_string(*t.witness_degree) + " (dim F" + std::to_string(t.p) + " " +
                 std::to_string(t.dim_fp) + " > dim Q " + std::to_string(t.dim_q) + ")" +
                 (t.reverified ? ", reverified" : ", NOT reverified");
        v += t.dickson_bound_holds ? ", Dickson bound holds" : ", Dickson bound FAILS";
        if (t.rational_matches_prediction)
            v += *t.rational_matches_prediction ? ", rational invariants as predicted" : ", rational invariants UNEXPECTED";
        line("torsion", v);
        if (!t.note.empty()) out << "  " << t.note << "\n";
    }
    if (r.ring_structure) {
        const auto& rs = *r.ring_structure;
        line("ring", rs.description);
        if (rs.psi) line("psi", *rs.psi);
        if (rs.status == "ok") {
            line(rs.symmetrizable ? "(1-t^4)H" : "H", series_string(rs.reduced_series));
            std::string gens;
            for (const auto& g : rs.odd_generators)
                gens += (gens.empty() ? "" : ", ") + std::to_string(g.count) + " in degree " + std::to_string(g.degree);
            line("odd generators", gens.empty() ? "none" : gens);
            line("shape check", rs.shape_consistent ? "consistent" : "INCONSISTENT");
        }
        if (rs.first_summand_vanishes)
            line("first summand", *rs.first_summand_vanishes ? "vanishes" : "does NOT vanish");
        if (rs.conjecture_fc) line("conjecture Fc", *rs.conjecture_fc);
    }
    for (const auto& d : r.paper_diagnostics) {
        line("reference check", d.subject + ": " + d.status + (d.reference.empty() ? "" : " vs " + d.reference));
        for (const auto& x : d.mismatches)
            out << "  t^" << x.degree << ": computed " << x.computed << ", printed " << x.reference << "\n";
        if (!d.note.empty()) out << "  " << d.note << "\n";
    }
    return out.str();
}

} // namespace kmc
