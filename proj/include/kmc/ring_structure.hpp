#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmc/assembly.hpp"
#include "kmc/torsion.hpp"

namespace kmc {

struct OddGenerators {
    int degree = 0;  // 2i+1
    std::int64_t count = 0;
};

/// Rational cohomology ring of classes I-III (and IV when P = P1+P2+P3 holds up to N):
/// P_123 tensor a trivial algebra on odd generators.
struct RingStructureReport {
    std::string status;  // "ok" or "unsupported_affine"
    bool symmetrizable = false;
    std::string even_part;                 // "Q" or "Q[psi]"
    std::optional<std::string> psi;        // degree-4 invariant, symmetrizable case
    std::string generator_symbol;          // "x" (nonsymmetrizable) or "y" (symmetrizable)
    TruncatedSeries reduced_series;        // H, or (1-t^4) H when symmetrizable
    std::vector<OddGenerators> odd_generators;
    bool shape_consistent = false;         // reduced series is 1 plus odd terms, and P_123 matches
    std::optional<bool> first_summand_vanishes;  // class I: the first suspended quotient is zero
    std::optional<std::string> conjecture_fc;    // class IV: status of P = P1+P2+P3
    std::string description;
};

inline RingStructureReport ring_structure_report(InvariantEngine<RationalField>& engine, const ParabolicProfile& prof,
                                                 const TruncatedSeries& total) {
    const int N = engine.truncation();
    const CartanMatrix& m = engine.action().cartan;
    RingStructureReport rep;
    rep.symmetrizable = m.symmetrizable();

    if (prof.class_label == ParabolicClass::IV) {
        const auto fc = check_sum_identity(engine, {IndexSet{1}, IndexSet{2}, IndexSet{3}});
        if (fc.status != SumIdentityStatus::HoldsAllDegrees)
            throw ClassIVUnverifiedConjecture(
                "P = P1+P2+P3 fails at degree " + std::to_string(fc.first_failure_degree.value_or(-1)) +
                ", so the class IV ring structure is not determined");
        rep.conjecture_fc = "P = P1+P2+P3 holds through t^" + std::to_string(N);
    }
    if (prof.class_label == ParabolicClass::I) {
        const LatticeExpr first = canonical_summands(prof.refined_label, FieldSpec::rationals())
                                      .front()
                                      .relabeled(prof.permutation.inverse())
                                      .small;
        LatticeEvaluator<RationalField> ev(engine);
        rep.first_summand_vanishes = quotient_dims(engine.ring({}).space, ev.evaluate(first)).is_zero();
    }
    if (*m.matrix_type() == MatrixType::Affine) {
        rep.status = "unsupported_affine";
        rep.description = "affine type: the invariants of the full Weyl group have no classified form here; "
                          "only the additive series is reported";
        rep.reduced_series = total;
        return rep;
    }

    rep.status = "ok";
    rep.even_part = rep.symmetrizable ? "Q[psi]" : "Q";
    rep.generator_symbol = rep.symmetrizable ? "y" : "x";
    if (rep.symmetrizable) {
        if (auto psi = killing_form(engine.action())) rep.psi = polynomial_text(2, *psi);
        rep.reduced_series = total * FactoredRational{{1, 0, 0, 0, -1}, {}}.expand(N);
    } else {
        rep.reduced_series = total;
    }
    bool even_clean = rep.reduced_series[0] == 1;
    for (int d = 1; d <= N; ++d) {
        const auto c = rep.reduced_series[d];
        if (d % 2 == 0 && c != 0) even_clean = false;
        if (d % 2 == 1 && c != 0) rep.odd_generators.push_back({d, c});
    }
    const bool p123_ok = engine.ring(IndexSet::all()).dims() == predicted_rational_invariants(m, N);
    rep.shape_consistent = even_clean && p123_ok;
    rep.description = rep.even_part + " tensor the trivial algebra on the odd generators " + rep.generator_symbol +
                      "_{2i+1}; every product of two odd generators is zero";
    return rep;
}

} // namespace kmc
