#include <catch_amalgamated.hpp>

#include "kmc/fixtures.hpp"
#include "kmc/oracle.hpp"
#include "kmc/weyl.hpp"

using namespace kmc;

namespace {

std::vector<RationalField::Row> dense_product(const std::vector<RationalField::Row>& a,
                                              const std::vector<RationalField::Row>& b) {
    const std::size_t n = a.size();
    std::vector<RationalField::Row> c(n, RationalField::Row(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
            if (sgn(a[i][l]) != 0)
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

} // namespace

TEST_CASE("simple reflections fix the other fundamental weights and send w_j to w_j - alpha_j") {
    const auto m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2");
    for (int j = 1; j <= 3; ++j) {
        const IntMatrix g = reflection_matrix(m, j);
        const auto alpha = simple_root(m, j);
        for (int i = 1; i <= 3; ++i)
            for (int r = 1; r <= 3; ++r) {
                const long long want = (r == i ? 1 : 0) - (i == j ? alpha[static_cast<std::size_t>(r - 1)] : 0);
                CHECK(g[r - 1][i - 1] == want);
            }
        CHECK(g * g == identity_matrix());
    }
    CHECK_THROWS_AS(reflection_matrix(m, 4), PreconditionViolation);
}

TEST_CASE("substitution towers agree with naive polynomial expansion") {
    for (const char* text : {"2,-1,-3;-3,2,-1;-2,-4,2", "2,-2,-2;-2,2,-2;-2,-2,2", "2,-1,0;-1,2,-3;0,-1,2"}) {
        const auto m = parse_matrix(text);
        for (int j = 1; j <= 3; ++j)
            for (int k = 0; k <= 5; ++k) {
                INFO(text << " sigma_" << j << " degree " << k);
                const auto s = substitution_matrix(RationalField{}, reflection_matrix(m, j), k);
                const auto naive = oracle::minus_identity(reflection_matrix(m, j), k);
                for (std::size_t r = 0; r < s.size(); ++r)
                    for (std::size_t c = 0; c < s.size(); ++c) CHECK(s[r][c] == naive[c][r] + (r == c ? 1 : 0));

                const auto s2 = substitution_matrix(PrimeField(3), reflection_matrix(m, j), k);
                for (std::size_t r = 0; r < s.size(); ++r)
                    for (std::size_t c = 0; c < s.size(); ++c) CHECK(s2[r][c] == PrimeField(3).from_int(s[r][c]));
            }
    }
}

TEST_CASE("substitution is multiplicative and degree one is the matrix itself") {
    const auto m = parse_matrix("2,-3,-3;-1,2,-4;-3,-3,2");
    const IntMatrix g = reflection_matrix(m, 1), h = reflection_matrix(m, 3);
    const auto one = substitution_matrix(RationalField{}, g, 1);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(one[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == mpz_class(static_cast<long>(g[r][c])));
    for (int k = 0; k <= 4; ++k) {
        const auto lhs = dense_product(substitution_matrix(RationalField{}, g, k), substitution_matrix(RationalField{}, h, k));
        CHECK(lhs == substitution_matrix(RationalField{}, g * h, k));
    }
}

TEST_CASE("Coxeter relations and group orders on the fixtures") {
    for (const auto& fx : fixture_corpus()) {
        const auto m = parse_matrix(fx.matrix);
        const ReflectionAction r(m);
        for (int k = 1; k <= 3; ++k)
            for (int j = k + 1; j <= 3; ++j) {
                INFO(fx.name << " pair " << k << j);
                CHECK(coxeter_relation_holds(r, k, j));
                const auto t = rank2_type(m, k, j);
                if (t.finite()) {
                    // no smaller power is the identity
                    for (int e = 1; e < t.coxeter_order; ++e)
                        CHECK(matrix_power(r.sigma(k) * r.sigma(j), e) != identity_matrix());
                    CHECK(enumerate_group(r, IndexSet{k, j}).order() == expected_group_order(m, IndexSet{k, j}));
                } else {
                    CHECK_THROWS_AS(enumerate_group(r, IndexSet{k, j}), InfiniteGroup);
                }
            }
        CHECK_THROWS_AS(enumerate_group(r, IndexSet::all()), InfiniteGroup);
        CHECK(enumerate_group(r, IndexSet{}).order() == 1);
        CHECK(enumerate_group(r, IndexSet{2}).order() == 2);
    }
}

TEST_CASE("Molien series of small groups") {
    const auto m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2");
    const ReflectionAction r(m);
    auto expect = [](std::vector<int> dens, int N) {
        return TruncatedSeries(N, oracle::expand_denominator(dens, N));
    };
    CHECK(molien_series(enumerate_group(r, IndexSet{}), FieldSpec::rationals(), 30) == expect({2, 2, 2}, 30));
    CHECK(molien_series(enumerate_group(r, IndexSet{3}), FieldSpec::rationals(), 30) == expect({2, 2, 4}, 30));
    CHECK(molien_series(enumerate_group(r, IndexSet{1, 2}), FieldSpec::rationals(), 30) == expect({2, 4, 12}, 30));
    CHECK_THROWS_AS(molien_series(enumerate_group(r, IndexSet{3}), FieldSpec::prime(3), 30), ModularNotSupported);
}
