#include <catch_amalgamated.hpp>

#include "kmc/oracle.hpp"
#include "kmc/series.hpp"

using namespace kmc;

TEST_CASE("series arithmetic") {
    const auto a = TruncatedSeries(5, {1, 2, 0, 1, 0, 0});
    const auto b = TruncatedSeries(5, {1, -1, 0, 0, 0, 0});
    CHECK((a + b) == TruncatedSeries(5, {2, 1, 0, 1, 0, 0}));
    CHECK((a - b) == TruncatedSeries(5, {0, 3, 0, 1, 0, 0}));
    CHECK((a * b) == TruncatedSeries(5, {1, 1, -2, 1, -1, 0}));
    CHECK(a.shift(2) == TruncatedSeries(5, {0, 0, 1, 2, 0, 1}));
    CHECK(a.scaled(-2)[1] == -4);
    CHECK(a.truncated(2) == TruncatedSeries(2, {1, 2, 0}));
    CHECK(a.first_difference(b) == 1);
    CHECK_FALSE(a.first_difference(a));
    CHECK_THROWS_AS(a + TruncatedSeries(4), TruncationMismatch);
    CHECK_THROWS_AS(TruncatedSeries(-1), PreconditionViolation);
}

TEST_CASE("rendering") {
    CHECK(polynomial_string({1, 0, 0, 0, 0, 0, 0, 2, 0, -1}) == "1 + 2t^7 - t^9");
    CHECK(polynomial_string({0, 1}) == "t");
    CHECK(polynomial_string({}) == "0");
    CHECK(series_string(TruncatedSeries(3, {1, 0, 3, 0})) == "1 + 3t^2 + O(t^4)");
    CHECK(FactoredRational{{1, 0, 0, 0, 0, 1}, {4, 6}}.to_string() == "(1 + t^5)/((1-t^4)(1-t^6))");
    CHECK(FactoredRational{{0, 0, 0, 0, 0, 0, 0, 1}, {2, 2, 2}}.to_string() == "t^7/((1-t^2)^3)");
}

TEST_CASE("expansion of products of 1/(1-t^d) matches repeated convolution") {
    const std::vector<std::vector<int>> cases{{2, 2, 2}, {2, 4, 12}, {2, 2, 4}, {4, 6, 8}, {36, 48, 52}, {1, 3}};
    for (const auto& dens : cases) {
        const auto s = FactoredRational{{1}, dens}.expand(80);
        const auto ref = oracle::expand_denominator(dens, 80);
        CHECK(s.coefficients() == ref);
    }
}

TEST_CASE("numerator reconstruction inverts expansion") {
    const FactoredRational f{{1, 0, 0, 0, 0, 1, 0, 3, 0, 6, 0, 7, 0, 7, 0, 5, 0, 3, 0, 1}, {4, 6, 8}};
    const auto s = f.expand(60);
    const auto num = reconstruct_numerator(s, {4, 6, 8});
    REQUIRE(num);
    CHECK(*num == f.numerator);
    // a wrong denominator leaves a nonzero tail
    CHECK_FALSE(reconstruct_numerator(s, {2, 4}));
    CHECK_THROWS_AS(reconstruct_numerator(s, {0}), PreconditionViolation);
}
