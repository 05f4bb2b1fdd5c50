#include <catch_amalgamated.hpp>

#include "kmc/assembly.hpp"
#include "kmc/fixtures.hpp"
#include "kmc/oracle.hpp"
#include "kmc/ring_structure.hpp"

using namespace kmc;

namespace {

std::vector<std::string> labels_of(const Assembly& a) {
    std::vector<std::string> out;
    for (const auto& s : a.summands) out.push_back(s.label);
    return out;
}

template <class F>
TruncatedSeries total_for(const CartanMatrix& m, F field, int N) {
    InvariantEngine<F> engine(ReflectionAction(m), field, N);
    return assemble_by_formula(engine, parabolic_profile(m)).total;
}

} // namespace

TEST_CASE("lattice expressions normalize") {
    using E = LatticeExpr;
    CHECK(E::sum({E::atom({2}), E::atom({1})}) == E::sum({E::atom({1}), E::atom({2})}));
    CHECK(E::sum({E::atom({1, 2}), E::atom({3})}).to_string() == "P12+P3");
    CHECK(E::atom({}).to_string() == "P");
    CHECK(E::intersect({E::atom({1}), E::sum({E::atom({3}), E::atom({2})})}).to_string() == "P1∩(P2+P3)");
    CHECK(E::sum({E::atom({1, 2}), E::atom({3})}).relabeled(Permutation({3, 1, 2})).to_string() == "P13+P2");
}

TEST_CASE("worked example summands") {
    const auto m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2");
    InvariantEngine<PrimeField> f3(ReflectionAction(m), PrimeField(3), 20);
    CHECK(labels_of(assemble_by_formula(f3, parabolic_profile(m))) == std::vector<std::string>{"Σ(P-(P12+P3))", "P123"});
    InvariantEngine<PrimeField> f2(ReflectionAction(m), PrimeField(2), 20);
    CHECK(labels_of(assemble_by_formula(f2, parabolic_profile(m))) ==
          std::vector<std::string>{"Σ(P-(P12+P3))", "P123", "I3"});
}

TEST_CASE("summand lists follow the relabeling") {
    // G2 pair {1,3}: class II with the canonical {1,2} sent to {1,3}
    const auto m = parse_matrix("2,-1,-2;-3,2,-3;-2,-3,2").permuted(Permutation({1, 3, 2}));
    const auto prof = parabolic_profile(m);
    std::vector<std::string> labels;
    for (const auto& s : formula_summands(prof, FieldSpec::prime(2))) labels.push_back(s.label());
    CHECK(labels == std::vector<std::string>{"Σ(P-(P13+P2))", "P123", "I2"});
}

TEST_CASE("the G2 ideal series is t^7 times a Kunneth factor") {
    const auto s = g2_ideal_series(60);
    const auto k = oracle::expand_denominator({2, 4, 6, 7}, 53);
    for (int d = 0; d <= 60; ++d) CHECK(s[d] == (d < 7 ? 0 : k[static_cast<std::size_t>(d - 7)]));
}

TEST_CASE("formula and Mayer-Vietoris agree for every pasting order") {
    for (const auto& fx : fixture_corpus()) {
        const auto m = parse_matrix(fx.matrix);
        const auto prof = parabolic_profile(m);
        auto faces = default_pasting_order(prof);
        std::sort(faces.begin(), faces.end());
        InvariantEngine<PrimeField> engine(ReflectionAction(m), PrimeField(2), 16);
        const auto formula = assemble_by_formula(engine, prof).total;
        do {
            INFO(fx.name);
            CHECK(assemble_by_mv(engine, prof, faces).total == formula);
        } while (std::next_permutation(faces.begin(), faces.end()));
    }
}

TEST_CASE("cohomology does not depend on the labelling of the generators") {
    for (const auto& fx : fixture_corpus()) {
        const auto m = parse_matrix(fx.matrix);
        const auto f3 = total_for(m, PrimeField(3), 16);
        const auto q = total_for(m, RationalField{}, 12);
        for (const auto& perm : Permutation::all_lexicographic()) {
            INFO(fx.name << " " << perm(1) << perm(2) << perm(3));
            const auto pm = m.permuted(perm);
            CHECK(total_for(pm, PrimeField(3), 16) == f3);
            CHECK(total_for(pm, RationalField{}, 12) == q);
        }
    }
}

TEST_CASE("series start with 1 and have nonnegative summands") {
    for (const auto& fx : fixture_corpus()) {
        const auto m = parse_matrix(fx.matrix);
        for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
            InvariantEngine<PrimeField> engine(ReflectionAction(m), PrimeField(p), 20);
            const auto a = assemble_by_formula(engine, parabolic_profile(m));
            INFO(fx.name << " F" << p);
            CHECK(a.total[0] == 1);
            for (const auto& s : a.summands)
                for (int d = 0; d <= 20; ++d) CHECK(s.dims[d] >= 0);
        }
    }
}

TEST_CASE("rational ring structure") {
    const auto m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2");
    InvariantEngine<RationalField> engine(ReflectionAction(m), RationalField{}, 30);
    const auto prof = parabolic_profile(m);
    const auto rep = ring_structure_report(engine, prof, assemble_by_formula(engine, prof).total);
    CHECK(rep.status == "ok");
    CHECK_FALSE(rep.symmetrizable);
    CHECK(rep.even_part == "Q");
    CHECK(rep.shape_consistent);
    REQUIRE(rep.odd_generators.size() >= 2);
    CHECK(rep.odd_generators[0].degree == 7);
    CHECK(rep.odd_generators[0].count == 2);
    CHECK(rep.odd_generators[1].degree == 9);
    CHECK(rep.odd_generators[1].count == 3);

    const auto sym = parse_matrix("2,-2,-2;-2,2,-2;-2,-2,2");
    InvariantEngine<RationalField> se(ReflectionAction(sym), RationalField{}, 24);
    const auto sp = parabolic_profile(sym);
    const auto srep = ring_structure_report(se, sp, assemble_by_formula(se, sp).total);
    CHECK(srep.even_part == "Q[psi]");
    CHECK(srep.psi);
    CHECK(srep.shape_consistent);
    REQUIRE(srep.first_summand_vanishes);

    const auto aff = parse_matrix("2,-1,-1;-1,2,-1;-1,-1,2");
    InvariantEngine<RationalField> ae(ReflectionAction(aff), RationalField{}, 12);
    const auto ap = parabolic_profile(aff);
    CHECK(ring_structure_report(ae, ap, assemble_by_formula(ae, ap).total).status == "unsupported_affine");
}

TEST_CASE("class IV ring structure checks P = P1+P2+P3") {
    const auto m = parse_matrix("2,-2,-2;-1,2,-2;-1,-1,2");
    InvariantEngine<RationalField> engine(ReflectionAction(m), RationalField{}, 20);
    const auto prof = parabolic_profile(m);
    REQUIRE(prof.class_label == ParabolicClass::IV);
    const auto total = assemble_by_formula(engine, prof).total;
    const auto fc = check_sum_identity(engine, {IndexSet{1}, IndexSet{2}, IndexSet{3}});
    if (fc.status == SumIdentityStatus::HoldsAllDegrees) {
        const auto rep = ring_structure_report(engine, prof, total);
        CHECK(rep.conjecture_fc);
        CHECK(rep.shape_consistent);
    } else {
        CHECK_THROWS_AS(ring_structure_report(engine, prof, total), ClassIVUnverifiedConjecture);
    }
}
