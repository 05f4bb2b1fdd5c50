#include <catch_amalgamated.hpp>

#include "kmc/fixtures.hpp"
#include "kmc/invariants.hpp"
#include "kmc/oracle.hpp"

using namespace kmc;

namespace {

const std::vector<IndexSet> kAllSubsets{IndexSet{},     IndexSet{1},    IndexSet{2},    IndexSet{3},
                                        IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}, IndexSet::all()};

template <class F>
void compare_with_dense(const CartanMatrix& m, F field, std::uint32_t p, int N) {
    const ReflectionAction r(m);
    InvariantEngine<F> engine(r, field, N);
    for (IndexSet J : kAllSubsets) {
        const auto dims = engine.ring(J).dims();
        for (int k = 0; 2 * k <= N; ++k) {
            INFO(m.literal() << " over " << field.spec().name() << " J=" << J.to_string() << " t^" << 2 * k);
            CHECK(dims[2 * k] == static_cast<std::int64_t>(oracle::invariant_dim(m, J, k, p)));
        }
    }
}

} // namespace

TEST_CASE("iterated restriction agrees with stacked dense kernels on every fixture") {
    for (const auto& fx : fixture_corpus()) {
        const auto m = parse_matrix(fx.matrix);
        compare_with_dense(m, RationalField{}, 0, 10);
        compare_with_dense(m, PrimeField(2), 2, 12);
        compare_with_dense(m, PrimeField(3), 3, 12);
        compare_with_dense(m, PrimeField(5), 5, 10);
    }
}

TEST_CASE("invariant rings are cached, verified and nested") {
    const auto m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2");
    const ReflectionAction r(m);
    InvariantEngine<PrimeField> engine(r, PrimeField(3), 40);
    const auto& a = engine.ring(IndexSet{1, 2});
    CHECK(&a == &engine.ring(IndexSet{1, 2}));
    for (IndexSet J : kAllSubsets) {
        CHECK(engine.verify_invariance(engine.ring(J)));
        for (IndexSet K : kAllSubsets)
            if (J.subset_of(K)) CHECK(is_subspace(engine.ring(K).space, engine.ring(J).space));
    }
    for (IndexSet J : kAllSubsets) CHECK(engine.ring(J).dims()[0] == 1);
}

TEST_CASE("invariants do not depend on the thread count") {
    const auto m = parse_matrix("2,-2,-1;-1,2,-3;-1,-4,2");
    const ReflectionAction r(m);
    std::vector<TruncatedSeries> runs;
    for (unsigned t : {1u, 3u}) {
        ScopedWorkerThreads scope(t);
        InvariantEngine<RationalField> engine(r, RationalField{}, 24);
        const auto& ring = engine.ring(IndexSet{1, 3});
        runs.push_back(ring.dims());
        InvariantEngine<RationalField> again(r, RationalField{}, 24);
        CHECK(again.ring(IndexSet{1, 3}).space.identical_to(ring.space));
    }
    CHECK(runs[0] == runs[1]);
}

TEST_CASE("degree-4 invariant: one for symmetrizable, none otherwise") {
    const auto sym = parse_matrix("2,-2,-2;-2,2,-2;-2,-2,2");
    const auto k = killing_form(ReflectionAction(sym));
    REQUIRE(k);
    // fixed by every generator
    for (int j = 1; j <= 3; ++j) {
        SubstitutionTower<RationalField> tower(RationalField{}, reflection_matrix(sym, j));
        CHECK(is_zero_row(RationalField{}, tower.level(2).apply_minus_identity(RationalField{}, *k)));
    }
    CHECK_FALSE(killing_form(ReflectionAction(parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2"))));
    CHECK_THROWS_AS(killing_form(ReflectionAction(parse_matrix("2,-1,-1;-1,2,-1;-1,-1,2"))), PreconditionViolation);
}

TEST_CASE("kappa is fixed by sigma_1 and sigma_2 and spans the rational P12") {
    for (const auto& text : infinite_pair_samples()) {
        INFO(text);
        const auto m = parse_matrix(text);
        const auto kappa = build_kappa(m);
        CHECK(kappa.fixed_by_sigma1);
        CHECK(kappa.fixed_by_sigma2);
        InvariantEngine<RationalField> engine(ReflectionAction(m), RationalField{}, 24);
        CHECK(kappa_span_dims(m, 24) == engine.ring(IndexSet{1, 2}).dims());
    }
    CHECK_THROWS_AS(build_kappa(parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2")), PairNotInfinite);
}

TEST_CASE("sum identity reports degenerate generators") {
    // alpha_1 = (2,-2,-2) vanishes mod 2
    const auto m = parse_matrix("2,-2,-2;-2,2,-2;-2,-2,2");
    const ReflectionAction r(m);
    CHECK(generator_degenerate(r, 1, FieldSpec::prime(2)));
    CHECK_FALSE(generator_degenerate(r, 1, FieldSpec::prime(3)));
    InvariantEngine<PrimeField> engine(r, PrimeField(2), 12);
    const auto rep = check_sum_identity(engine, {IndexSet{1}, IndexSet{2}});
    CHECK(rep.status == SumIdentityStatus::DegenerateGenerator);
    CHECK(rep.degenerate_generators == std::vector<int>{1, 2});
    CHECK_THROWS_AS(check_sum_identity(engine, {}), PreconditionViolation);
}

TEST_CASE("sum identity holds over Q on the sample matrices") {
    for (const auto& text : infinite_pair_samples()) {
        InvariantEngine<RationalField> engine(ReflectionAction(parse_matrix(text)), RationalField{}, 20);
        CHECK(check_sum_identity(engine, {IndexSet{1}, IndexSet{2}}).status == SumIdentityStatus::HoldsAllDegrees);
    }
}
