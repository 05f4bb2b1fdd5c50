#include <catch_amalgamated.hpp>

#include "kmc/cartan.hpp"
#include "kmc/fixtures.hpp"

using namespace kmc;

TEST_CASE("matrix literals parse and echo") {
    const auto m = parse_matrix(" 2, -1,-3 ; -3,2,-1;-2,-4,2 ");
    CHECK(m(1, 3) == -3);
    CHECK(m(3, 2) == -4);
    CHECK(m.literal() == "2,-1,-3;-3,2,-1;-2,-4,2");
    CHECK(parse_matrix(m.literal()) == m);
}

TEST_CASE("malformed literals are rejected with the right error") {
    CHECK_THROWS_AS(parse_matrix(""), SyntaxError);
    CHECK_THROWS_AS(parse_matrix("2,-1;-1,2"), NotRank3);
    CHECK_THROWS_AS(parse_matrix("2,-1,0,0;-1,2,-1;0,-1,2"), NotRank3);
    CHECK_THROWS_AS(parse_matrix("2,x,0;-1,2,-1;0,-1,2"), SyntaxError);
    CHECK_THROWS_AS(parse_matrix("3,-1,0;-1,2,-1;0,-1,2"), AxiomViolation);
    CHECK_THROWS_AS(parse_matrix("2,1,0;-1,2,-1;0,-1,2"), AxiomViolation);
    CHECK_THROWS_AS(parse_matrix("2,-1,0;0,2,-1;0,-1,2"), AxiomViolation);
}

TEST_CASE("type by principal minors") {
    CHECK(classify_type(parse_matrix("2,-1,0;-1,2,-1;0,-1,2")) == MatrixType::Finite);     // A3
    CHECK(classify_type(parse_matrix("2,-1,0;-2,2,-1;0,-1,2")) == MatrixType::Finite);     // B3/C3
    CHECK(classify_type(parse_matrix("2,-1,-1;-1,2,-1;-1,-1,2")) == MatrixType::Affine);   // A2 affine
    CHECK(classify_type(parse_matrix("2,-1,0;-1,2,-3;0,-1,2")) == MatrixType::Affine);     // G2 affine
    CHECK(classify_type(parse_matrix("2,-2,0;-2,2,-2;0,-2,2")) == MatrixType::Indefinite);
    CHECK(classify_type(parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2")) == MatrixType::Indefinite);
    CHECK_THROWS_AS(classify_type(parse_matrix("2,-1,0;-1,2,0;0,0,2")), DecomposableInput);
}

TEST_CASE("symmetrizability is the cycle condition") {
    CHECK(parse_matrix("2,-2,-2;-2,2,-2;-2,-2,2").symmetrizable());
    CHECK(parse_matrix("2,-1,0;-2,2,-1;0,-1,2").symmetrizable());
    CHECK_FALSE(parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2").symmetrizable());
    CHECK_FALSE(parse_matrix("2,-2,-3;-3,2,-2;-2,-1,2").symmetrizable());
}

TEST_CASE("finite type input has no parabolic profile") {
    CHECK_THROWS_AS(parabolic_profile(parse_matrix("2,-1,0;-1,2,-1;0,-1,2")), FiniteTypeInput);
}

TEST_CASE("rank-2 types") {
    const auto m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2");
    CHECK(rank2_type(m, 1, 2).name() == "G2");
    CHECK(rank2_type(m, 1, 2).weyl_order() == 12);
    CHECK_FALSE(rank2_type(m, 1, 3).finite());
    CHECK_FALSE(rank2_type(m, 2, 3).finite());
    const auto a = parse_matrix("2,-1,0;-2,2,-1;0,-1,2");
    CHECK(rank2_type(a, 1, 3).name() == "A1xA1");
    CHECK(rank2_type(a, 1, 2).name() == "B2");
    CHECK(rank2_type(a, 2, 3).name() == "A2");
}

TEST_CASE("worked example profile") {
    const auto prof = parabolic_profile(parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2"));
    CHECK(prof.class_label == ParabolicClass::II);
    CHECK(prof.refined_label == RefinedClass::iii);
    CHECK(prof.maximal_finite == std::vector<IndexSet>{IndexSet{3}, IndexSet{1, 2}});
    CHECK(prof.permutation.is_identity());
    CHECK(prof.is_g2(IndexSet{1, 2}));
}

TEST_CASE("every fixture has its recorded refined class") {
    for (const auto& fx : fixture_corpus()) {
        INFO(fx.name);
        const auto prof = parabolic_profile(parse_matrix(fx.matrix));
        CHECK(prof.refined_label == fx.refined);
        CHECK(prof.class_label == coarse_class(fx.refined));
    }
}

TEST_CASE("relabeling: class is invariant and the permutation reaches the canonical shape") {
    for (const auto& fx : fixture_corpus()) {
        const auto m = parse_matrix(fx.matrix);
        const auto base = parabolic_profile(m);
        for (const auto& perm : Permutation::all_lexicographic()) {
            INFO(fx.name << " relabeled " << perm(1) << perm(2) << perm(3));
            const auto pm = m.permuted(perm);
            const auto prof = parabolic_profile(pm);
            CHECK(prof.refined_label == base.refined_label);
            CHECK(prof.finite_subsets.size() == base.finite_subsets.size());

            // Canonical relabeling of the input gives the canonical finite and G2 pairs.
            const auto canon = pm.permuted(prof.permutation);
            const auto shape = canonical_shape(prof.refined_label);
            for (IndexSet pair : kPairs) {
                const auto l = pair.labels();
                const auto t = rank2_type(canon, l[0], l[1]);
                const bool finite = std::find(shape.finite_pairs.begin(), shape.finite_pairs.end(), pair) !=
                                    shape.finite_pairs.end();
                const bool g2 = std::find(shape.g2_pairs.begin(), shape.g2_pairs.end(), pair) != shape.g2_pairs.end();
                CHECK(t.finite() == finite);
                CHECK(t.is_g2 == g2);
            }
            CHECK(parabolic_profile(canon).permutation.is_identity());
            for (IndexSet s : prof.maximal_finite)
                CHECK(std::find(canonical_maximal_finite(prof.class_label).begin(),
                                canonical_maximal_finite(prof.class_label).end(),
                                prof.permutation.apply(s)) != canonical_maximal_finite(prof.class_label).end());
        }
    }
}

TEST_CASE("exhaustive scan of entries in [-4,0]: every infinite-type matrix gets a consistent profile") {
    std::map<RefinedClass, int> seen;
    const int vals[] = {0, -1, -2, -3, -4};
    std::size_t scanned = 0;
    for (int a : vals)
        for (int b : vals)
            for (int c : vals)
                for (int d : vals)
                    for (int e : vals)
                        for (int f : vals) {
                            CartanMatrix::Entries x{{{2, a, b}, {c, 2, d}, {e, f, 2}}};
                            CartanMatrix m;
                            try {
                                m = CartanMatrix::from_entries(x);
                            } catch (const AxiomViolation&) {
                                continue;
                            }
                            if (!m.indecomposable() || classify_type(m) == MatrixType::Finite) continue;
                            const auto prof = parabolic_profile(m);
                            ++seen[prof.refined_label];
                            ++scanned;
                            for (IndexSet s : prof.maximal_finite) REQUIRE(prof.is_finite(s));
                            REQUIRE_FALSE(prof.is_finite(IndexSet::all()));
                        }
    CHECK(scanned > 1000);
    CHECK(seen.size() == 10);
}

TEST_CASE("index sets") {
    const IndexSet s{3, 1};
    CHECK(s.labels() == std::vector<int>{1, 3});
    CHECK(s.to_string() == "{1,3}");
    CHECK(s.digits() == "13");
    CHECK(IndexSet{1}.subset_of(s));
    CHECK((s & IndexSet{1, 2}) == IndexSet{1});
    CHECK((s | IndexSet{2}) == IndexSet::all());
    CHECK(IndexSet{3} < IndexSet{1, 2});
    const Permutation p({2, 3, 1});
    CHECK(p.apply(s) == IndexSet{1, 2});
    CHECK(p.inverse().apply(p.apply(s)) == s);
}
