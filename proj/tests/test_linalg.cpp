#include <catch_amalgamated.hpp>

#include <random>

#include "kmc/graded_subspace.hpp"
#include "kmc/linalg.hpp"
#include "kmc/oracle.hpp"

using namespace kmc;

namespace {

template <class F>
std::vector<typename F::Row> random_rows(const F& field, std::mt19937& rng, std::size_t count, std::size_t len,
                                         int density = 3) {
    std::uniform_int_distribution<int> c(-3, 3);
    std::vector<typename F::Row> rows(count, typename F::Row(len, field.zero()));
    for (auto& r : rows)
        for (auto& x : r)
            if (rng() % density == 0) x = field.from_int(c(rng));
    return rows;
}

template <class F>
std::vector<std::vector<mpz_class>> as_mpz(const std::vector<typename F::Row>& rows) {
    std::vector<std::vector<mpz_class>> out;
    for (const auto& r : rows) {
        std::vector<mpz_class> x;
        for (const auto& v : r) x.emplace_back(v);
        out.push_back(std::move(x));
    }
    return out;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    const PrimeField f(7);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.from_int(mpz_class(-15)) == 6);
    for (std::uint32_t a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.neg(0) == 0);
    CHECK_THROWS_AS(PrimeField(9), NotPrime);
    CHECK_THROWS_AS(FieldSpec::prime(1), NotPrime);
    CHECK(FieldSpec::prime(5).name() == "F5");
    CHECK(FieldSpec::rationals().name() == "Q");
}

TEST_CASE("rational rows are kept primitive") {
    RationalField::Row r{0, 6, -4, 10};
    RationalField{}.normalize(r, 1);
    CHECK(r == RationalField::Row{0, 3, -2, 5});
    RationalField::Row s{0, -6, 4, -10};
    RationalField{}.normalize(s, 1);
    CHECK(s == RationalField::Row{0, 3, -2, 5});
}

TEMPLATE_TEST_CASE("rank and null space agree with a dense reference", "", RationalField, PrimeField) {
    std::mt19937 rng(7);
    const TestType field = [] {
        if constexpr (std::is_same_v<TestType, PrimeField>) return PrimeField(3);
        else return RationalField{};
    }();
    const std::uint32_t p = std::is_same_v<TestType, PrimeField> ? 3 : 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
        const auto a = random_rows(field, rng, rows, cols, 1 + trial % 3);
        const std::size_t r = rank_of(field, a, cols);
        CHECK(r == oracle::dense_rank(as_mpz<TestType>(a), p));
        const auto e = echelonize(field, a, cols, true);
        CHECK(e.rank() == r);
        for (std::size_t i = 1; i < e.pivots.size(); ++i) CHECK(e.pivots[i - 1] < e.pivots[i]);

        const auto ns = null_space(field, a, cols);
        CHECK(ns.size() + r == cols);
        for (const auto& x : ns)
            for (const auto& row : a) {
                auto dot = field.zero();
                for (std::size_t j = 0; j < cols; ++j) dot = dot + row[j] * x[j];
                if constexpr (std::is_same_v<TestType, PrimeField>) CHECK(dot % 3 == 0);
                else CHECK(sgn(dot) == 0);
            }
    }
}

TEMPLATE_TEST_CASE("Grassmann identity and containments for random graded subspaces", "", RationalField,
                   PrimeField) {
    std::mt19937 rng(11);
    const TestType field = [] {
        if constexpr (std::is_same_v<TestType, PrimeField>) return PrimeField(2);
        else return RationalField{};
    }();
    const std::uint32_t p = std::is_same_v<TestType, PrimeField> ? 2 : 0;
    const int N = 8;
    for (int trial = 0; trial < 20; ++trial) {
        GradedSubspace<TestType> u(field, N), v(field, N);
        for (int k = 0; k <= N / 2; ++k) {
            const std::size_t m = monomial_count(k);
            u.set_span(k, random_rows(field, rng, rng() % (m + 1), m, 2));
            v.set_span(k, random_rows(field, rng, rng() % (m + 1), m, 2));
        }
        const auto s = subspace_sum(u, v);
        const auto c = subspace_intersect(u, v);
        for (int k = 0; k <= N / 2; ++k) {
            INFO("degree " << k);
            CHECK(s.dim(k) + c.dim(k) == u.dim(k) + v.dim(k));
            auto stacked = as_mpz<TestType>(u.basis(k));
            for (auto& r : as_mpz<TestType>(v.basis(k))) stacked.push_back(r);
            CHECK(s.dim(k) == oracle::dense_rank(stacked, p));
        }
        CHECK(is_subspace(c, u));
        CHECK(is_subspace(c, v));
        CHECK(is_subspace(u, s));
        CHECK(same_span(subspace_sum(v, u), s));
        CHECK(same_span(subspace_intersect(v, u), c));
        CHECK(quotient_dims(s, u) == s.series() - u.series());
        if (!first_non_containment(u, s)) CHECK(same_span(u, s));
    }
}

TEST_CASE("quotient by a non-subspace is refused") {
    const RationalField q;
    GradedSubspace<RationalField> a(q, 2), b(q, 2);
    a.set_span(1, {{1, 0, 0}});
    b.set_span(1, {{0, 1, 0}});
    CHECK_THROWS_AS(quotient_dims(a, b), NotASubspace);
    CHECK(first_non_containment(a, b) == 1);
}

TEST_CASE("mixing fields or truncations is refused") {
    GradedSubspace<PrimeField> a(PrimeField(2), 4), b(PrimeField(3), 4), c(PrimeField(2), 6);
    CHECK_THROWS_AS(subspace_sum(a, b), FieldMismatch);
    CHECK_THROWS_AS(subspace_intersect(a, c), TruncationMismatch);
}
