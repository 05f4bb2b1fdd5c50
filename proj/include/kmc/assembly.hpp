#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmc/cartan.hpp"
#include "kmc/invariants.hpp"
#include "kmc/lattice_expr.hpp"
#include "kmc/series.hpp"

namespace kmc {

/// Hilbert series of the ideal (y7) in F2[y4, y6, y7] tensor F2[w] (w of degree 2):
/// t^7 / ((1-t^2)(1-t^4)(1-t^6)(1-t^7)).
inline FactoredRational g2_ideal_form() { return {{0, 0, 0, 0, 0, 0, 0, 1}, {2, 4, 6, 7}}; }

inline TruncatedSeries g2_ideal_series(int N) { return g2_ideal_form().expand(N); }

struct SummandSpec {
    enum class Kind { InvariantRing, Quotient, ShiftedQuotient, G2KernelIdeal };

    Kind kind = Kind::InvariantRing;
    int shift = 0;
    LatticeExpr big;    // the ring for InvariantRing
    LatticeExpr small;
    int missing_index = 0;  // G2KernelIdeal: the ideal lives over the pair {1,2,3} \ {k}

    static SummandSpec ring(LatticeExpr e) { return {Kind::InvariantRing, 0, std::move(e), {}, 0}; }
    static SummandSpec quotient(int shift, LatticeExpr big, LatticeExpr small) {
        if (shift < 0 || shift > 2) throw PreconditionViolation("shift " + std::to_string(shift) + " not in {0,1,2}");
        return {shift == 0 ? Kind::Quotient : Kind::ShiftedQuotient, shift, std::move(big), std::move(small), 0};
    }
    static SummandSpec ideal(int missing) { return {Kind::G2KernelIdeal, 0, {}, {}, missing}; }

    SummandSpec relabeled(const Permutation& perm) const {
        SummandSpec s = *this;
        s.big = big.relabeled(perm);
        s.small = small.relabeled(perm);
        if (kind == Kind::G2KernelIdeal) s.missing_index = perm(missing_index);
        return s;
    }

    std::string label() const {
        switch (kind) {
        case Kind::InvariantRing: return big.to_string();
        case Kind::G2KernelIdeal: return "I" + std::to_string(missing_index);
        default: break;
        }
        const std::string q = big.to_string() + "-(" + small.to_string() + ")";
        if (shift == 0) return q;
        return (shift == 1 ? "Σ(" : "Σ²(") + q + ")";
    }

    std::string kind_name() const {
        switch (kind) {
        case Kind::InvariantRing: return "InvariantRing";
        case Kind::Quotient: return "Quotient";
        case Kind::ShiftedQuotient: return "ShiftedQuotient";
        case Kind::G2KernelIdeal: return "G2KernelIdeal";
        }
        return "?";
    }
};

/// G2 pairs of the canonical form, as missing indices in the order I3, I2, I1.
inline std::vector<int> canonical_ideal_indices(RefinedClass r) {
    std::vector<int> out;
    for (IndexSet pair : canonical_shape(r).g2_pairs) out.push_back((IndexSet::all() & IndexSet::from_bits(~pair.bits())).labels().front());
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// Summands of H*(BK(A); F) for a refined class, in canonical labels.
/// Over F2 the G2 kernel ideals are appended; other fields use the common shape.
inline std::vector<SummandSpec> canonical_summands(RefinedClass r, FieldSpec f) {
    using E = LatticeExpr;
    const E P = E::atom({}), P1 = E::atom({1}), P2 = E::atom({2}), P3 = E::atom({3});
    const E P12 = E::atom({1, 2}), P13 = E::atom({1, 3}), P123 = E::atom({1, 2, 3});
    std::vector<SummandSpec> out;
    switch (coarse_class(r)) {
    case ParabolicClass::I:
        out = {SummandSpec::quotient(1, P, E::sum({P1, P2})), SummandSpec::quotient(1, P, E::sum({P12, P3})),
               SummandSpec::ring(P123)};
        break;
    case ParabolicClass::II:
        out = {SummandSpec::quotient(1, P, E::sum({P12, P3})), SummandSpec::ring(P123)};
        break;
    case ParabolicClass::III:
        out = {SummandSpec::quotient(1, P1, E::sum({P12, P13})), SummandSpec::ring(P123)};
        break;
    case ParabolicClass::IV:
        out = {SummandSpec::quotient(2, P, E::sum({P1, P2, P3})),
               SummandSpec::quotient(1, E::intersect({P1, E::sum({P2, P3})}), E::sum({P12, P13})),
               SummandSpec::ring(P123)};
        break;
    }
    if (!f.is_rational() && f.characteristic() == 2)
        for (int k : canonical_ideal_indices(r)) out.push_back(SummandSpec::ideal(k));
    return out;
}

/// The summand list of a profile in the input's own labels.
inline std::vector<SummandSpec> formula_summands(const ParabolicProfile& prof, FieldSpec f) {
    std::vector<SummandSpec> out;
    const Permutation back = prof.permutation.inverse();
    for (const auto& s : canonical_summands(prof.refined_label, f)) out.push_back(s.relabeled(back));
    return out;
}

struct SummandResult {
    SummandSpec spec;
    std::string label;
    TruncatedSeries dims;
};

struct Assembly {
    TruncatedSeries total;
    std::vector<SummandResult> summands;
};

template <class F>
TruncatedSeries summand_series(LatticeEvaluator<F>& ev, const SummandSpec& s) {
    const int N = ev.engine().truncation();
    switch (s.kind) {
    case SummandSpec::Kind::InvariantRing: return ev.evaluate(s.big).series();
    case SummandSpec::Kind::G2KernelIdeal: return g2_ideal_series(N);
    default: break;
    }
    const auto& big = ev.evaluate(s.big);
    const auto& small = ev.evaluate(s.small);
    try {
        return quotient_dims(big, small).shift(s.shift);
    } catch (const NotASubspace& e) {
        throw NotASubspace(s.small.to_string() + " inside " + s.big.to_string() + ": " + e.what());
    }
}

template <class F>
Assembly assemble_by_formula(InvariantEngine<F>& engine, const ParabolicProfile& prof) {
    LatticeEvaluator<F> ev(engine);
    Assembly out{TruncatedSeries(engine.truncation()), {}};
    for (const auto& spec : formula_summands(prof, engine.field().spec())) {
        SummandResult r{spec, spec.label(), summand_series(ev, spec)};
        out.total += r.dims;
        out.summands.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mayer-Vietoris pasting

/// A quotient W/U sitting in H* with a suspension shift.
template <class F>
struct MvClass {
    std::string origin;
    int shift = 1;
    LatticeExpr w_expr, u_expr;
    GradedSubspace<F> W, U;

    TruncatedSeries series() const { return (W.series() - U.series()).shift(shift); }
    std::string label() const {
        return (shift == 1 ? "Σ(" : "Σ²(") + w_expr.to_string() + "-(" + u_expr.to_string() + "))";
    }
};

/// Cohomology of a union of parabolic pieces: the image in P, suspended
/// quotient classes, and G2 kernel ideals (restriction kills those).
template <class F>
struct MvStage {
    LatticeExpr image_expr;
    GradedSubspace<F> image;
    std::vector<MvClass<F>> classes;
    std::vector<int> ideals;  // missing indices
    std::size_t faces = 1;

    TruncatedSeries series() const {
        TruncatedSeries s = image.series();
        for (const auto& c : classes) s += c.series();
        for (std::size_t i = 0; i < ideals.size(); ++i) s += g2_ideal_series(image.truncation());
        return s;
    }
};

struct MvPart {
    std::string label;
    TruncatedSeries dims;
};

struct MvAssembly {
    TruncatedSeries total;
    std::vector<MvPart> parts;
    std::vector<IndexSet> order;  // pasting order, input labels
};

/// Canonical pasting order for a class, in canonical labels.
inline std::vector<IndexSet> canonical_pasting_order(ParabolicClass c) {
    switch (c) {
    case ParabolicClass::I: return {IndexSet{1}, IndexSet{2}, IndexSet{3}};
    case ParabolicClass::II: return {IndexSet{1, 2}, IndexSet{3}};
    case ParabolicClass::III: return {IndexSet{1, 2}, IndexSet{1, 3}};
    case ParabolicClass::IV: return {IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}};
    }
    return {};
}

inline std::vector<IndexSet> default_pasting_order(const ParabolicProfile& prof) {
    std::vector<IndexSet> out;
    const Permutation back = prof.permutation.inverse();
    for (IndexSet s : canonical_pasting_order(prof.class_label)) out.push_back(back.apply(s));
    return out;
}

template <class F>
class MvPipeline {
public:
    MvPipeline(InvariantEngine<F>& engine, const ParabolicProfile& prof) : engine_(engine), prof_(prof) {}

    MvStage<F> compute(const std::vector<IndexSet>& faces) {
        if (faces.empty()) throw PreconditionViolation("empty pasting order");
        if (faces.size() == 1) return vertex(faces.front());
        const std::vector<IndexSet> head(faces.begin(), faces.end() - 1);
        const IndexSet last = faces.back();
        std::vector<IndexSet> overlaps;
        for (IndexSet f : head) overlaps.push_back(f & last);
        return paste(compute(head), vertex(last), compute(overlaps), faces.size());
    }

private:
    MvStage<F> vertex(IndexSet J) {
        MvStage<F> s{LatticeExpr::atom(J), engine_.ring(J).space, {}, {}, 1};
        const FieldSpec f = engine_.field().spec();
        if (J.size() == 2 && !f.is_rational() && f.characteristic() == 2 && prof_.is_g2(J))
            s.ideals.push_back((IndexSet::all() & IndexSet::from_bits(~J.bits())).labels().front());
        return s;
    }

    static void require(bool ok, const std::string& what) {
        if (!ok) throw InternalInconsistency("Mayer-Vietoris: " + what);
    }

    static bool zero_class(const MvClass<F>& c) { return c.W.series() == c.U.series(); }

    MvStage<F> paste(const MvStage<F>& u, const MvStage<F>& v, const MvStage<F>& c, std::size_t faces) {
        const int N = engine_.truncation();
        require(c.ideals.empty(), "overlap carries a G2 kernel ideal");
        require(v.classes.empty(), "second piece is not a single parabolic");
        for (const auto* st : {&u, &c})
            for (const auto& cls : st->classes)
                require(cls.shift == 1, "a doubly suspended class would be restricted");

        // even part: j(x, y) = x - y inside P
        MvStage<F> r{LatticeExpr::intersect({u.image_expr, v.image_expr}), subspace_intersect(u.image, v.image), {},
                     {}, faces};
        TruncatedSeries rank(N);
        const GradedSubspace<F> uv = subspace_sum(u.image, v.image);
        require(is_subspace(uv, c.image), "images do not restrict into the overlap");
        rank += uv.series();
        MvClass<F> coker{"c" + std::to_string(faces), 1, c.image_expr,
                         LatticeExpr::sum({u.image_expr, v.image_expr}), c.image, uv};
        if (!zero_class(coker)) r.classes.push_back(std::move(coker));

        // suspended classes of the first piece map to the matching classes of the overlap
        std::vector<bool> matched(c.classes.size(), false);
        for (const auto& a : u.classes) {
            std::size_t idx = c.classes.size();
            for (std::size_t i = 0; i < c.classes.size(); ++i)
                if (c.classes[i].origin == a.origin) idx = i;
            if (idx == c.classes.size()) {
                r.classes.push_back(a);
                continue;
            }
            matched[idx] = true;
            const auto& t = c.classes[idx];
            require(is_subspace(a.W, t.W) && is_subspace(a.U, t.U), "class " + a.label() + " does not restrict");
            GradedSubspace<F> wu = subspace_sum(a.W, t.U);
            rank += (wu.series() - t.U.series()).shift(a.shift);
            MvClass<F> ker{a.origin, a.shift, LatticeExpr::intersect({a.w_expr, t.u_expr}), a.u_expr,
                           subspace_intersect(a.W, t.U), a.U};
            MvClass<F> cok{a.origin + "'", a.shift + 1, t.w_expr, LatticeExpr::sum({a.w_expr, t.u_expr}), t.W,
                           std::move(wu)};
            if (!zero_class(ker)) r.classes.push_back(std::move(ker));
            if (!zero_class(cok)) r.classes.push_back(std::move(cok));
        }
        for (std::size_t i = 0; i < c.classes.size(); ++i) {
            if (matched[i]) continue;
            MvClass<F> cok = c.classes[i];
            cok.origin += "'";
            cok.shift += 1;
            r.classes.push_back(std::move(cok));
        }
        r.ideals = u.ideals;
        r.ideals.insert(r.ideals.end(), v.ideals.begin(), v.ideals.end());

        // dim H^n = dim H^n(U) + dim H^n(V) - rank j^n + dim H^{n-1}(C) - rank j^{n-1}
        const TruncatedSeries hu = u.series(), hv = v.series(), hc = c.series(), hr = r.series();
        for (int n = 0; n <= N; ++n) {
            std::int64_t expect = hu[n] + hv[n] - rank[n];
            if (n >= 1) expect += hc[n - 1] - rank[n - 1];
            require(hr[n] == expect, "Euler count fails at degree " + std::to_string(n));
        }
        return r;
    }

    InvariantEngine<F>& engine_;
    const ParabolicProfile& prof_;
};

template <class F>
MvAssembly assemble_by_mv(InvariantEngine<F>& engine, const ParabolicProfile& prof,
                          std::optional<std::vector<IndexSet>> order = std::nullopt) {
    const std::vector<IndexSet> faces = order ? *order : default_pasting_order(prof);
    MvPipeline<F> pipeline(engine, prof);
    const MvStage<F> st = pipeline.compute(faces);
    MvAssembly out{st.series(), {}, faces};
    out.parts.push_back({st.image_expr.to_string(), st.image.series()});
    for (const auto& c : st.classes) out.parts.push_back({c.label(), c.series()});
    for (int k : st.ideals) out.parts.push_back({"I" + std::to_string(k), g2_ideal_series(engine.truncation())});
    return out;
}

} // namespace kmc
