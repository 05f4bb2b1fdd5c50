#include <catch_amalgamated.hpp>

#include "kmc/acceptance.hpp"
#include "kmc/report.hpp"

using namespace kmc;

namespace {

AnalysisRequest worked(FieldSpec f, int N) {
    AnalysisRequest r;
    r.matrix_text = kWorkedExample;
    r.field = f;
    r.truncation = N;
    return r;
}

} // namespace

TEST_CASE("JSON report has the documented fields and round-trips") {
    auto req = worked(FieldSpec::prime(2), 30);
    req.mv_crosscheck = true;
    req.torsion_primes = {2, 3};
    req.compare_paper_example = true;
    const auto rep = analyze(req);
    const Json j = to_json(rep);
    for (const char* key : {"matrix", "type", "symmetrizable", "class", "refined_class", "permutation", "field",
                            "truncation", "series_coefficients", "closed_form", "summands", "crosscheck", "torsion",
                            "paper_diagnostics"})
        CHECK(j.contains(key));
    CHECK_FALSE(j.contains("ring_structure"));
    CHECK(j["class"] == "II");
    CHECK(j["refined_class"] == "iii");
    CHECK(j["field"] == "F2");
    CHECK(j["crosscheck"]["status"] == "agree");
    CHECK_FALSE(j["crosscheck"].contains("first_mismatch_degree"));
    CHECK(j["torsion"][0]["status"] == "Certified");
    CHECK(j["torsion"][1]["status"] == "NoWitnessUpToN");

    const std::string text = j.dump(2);
    CHECK(Json::parse(text).dump(2) == text);
    CHECK(Json::parse(j.dump()).dump() == j.dump());
}

TEST_CASE("text and JSON carry the same numbers") {
    auto req = worked(RationalField{}.spec(), 24);
    req.ring_structure = true;
    req.torsion_primes = {2};
    req.mv_crosscheck = true;
    const auto rep = analyze(req);
    const std::string text = to_text(rep);
    const Json j = to_json(rep);
    CHECK(text.find(join_ints(j["series_coefficients"].get<std::vector<std::int64_t>>())) != std::string::npos);
    for (const auto& s : j["summands"]) {
        CHECK(text.find(s["label"].get<std::string>()) != std::string::npos);
        CHECK(text.find(join_ints(s["dims"].get<std::vector<std::int64_t>>())) != std::string::npos);
    }
    CHECK(text.find("at degree 4") != std::string::npos);
    CHECK(j["ring_structure"]["status"] == "ok");
}

TEST_CASE("analysis errors") {
    AnalysisRequest r;
    r.matrix_text = "2,-1,0;-1,2,-1;0,-1,2";
    CHECK_THROWS_AS(analyze(r), FiniteTypeInput);
    r.matrix_text = "2,-1;-1,2";
    CHECK_THROWS_AS(analyze(r), NotRank3);
    r = worked(FieldSpec::prime(3), 10);
    r.ring_structure = true;
    CHECK_THROWS_AS(analyze(r), PreconditionViolation);
    r = worked(FieldSpec::rationals(), 10);
    r.torsion_primes = {4};
    CHECK_THROWS_AS(analyze(r), NotPrime);
}

TEST_CASE("warning when the Dickson degree lies beyond the truncation") {
    auto r = worked(FieldSpec::rationals(), 20);
    r.torsion_primes = {2};
    CHECK(analysis_warnings(r).size() == 1);
    r.truncation = 24;
    CHECK(analysis_warnings(r).empty());
}

TEST_CASE("closed form guesses") {
    const auto s = FactoredRational{{1, 0, 0, 0, 0, 1}, {4, 6}}.expand(40);
    const auto g = guess_closed_form(s);
    REQUIRE(g);
    CHECK(g->denominator_exponents == std::vector<int>{2, 4, 6});
    CHECK(g->expand(40) == s);
    CHECK_FALSE(guess_closed_form(FactoredRational{{1}, {5}}.expand(40)));
    // too short to leave a check window
    CHECK_FALSE(guess_closed_form(FactoredRational{{1}, {2, 4, 12}}.expand(16)));
}

TEST_CASE("a corrupted fixture is named in the acceptance output") {
    AcceptanceOptions opts;
    opts.log = nullptr;
    opts.corpus = {fixture_corpus().front()};
    opts.corpus.front().refined = RefinedClass::iv;
    opts.pair_samples = {infinite_pair_samples().front()};
    const auto results = run_acceptance(opts);
    REQUIRE(results.size() == 9);
    CHECK_FALSE(results[2].pass);
    CHECK(results[2].detail.find("worked-example: expected refined (iv), got (iii)") != std::string::npos);
}

TEST_CASE("rational worked example diagnostics") {
    auto r = worked(FieldSpec::rationals(), 24);
    r.compare_paper_example = true;
    const auto rep = analyze(r);
    REQUIRE(rep.paper_diagnostics.size() == 2);
    CHECK(rep.paper_diagnostics[0].status == "paper_display_incomplete");
    CHECK(rep.paper_diagnostics[0].mismatches.empty());
    CHECK(rep.paper_diagnostics[1].status == "erratum_candidate");
    CHECK(rep.paper_diagnostics[1].mismatches.front().degree == 4);

    r.matrix_text = "2,-2,-2;-2,2,-2;-2,-2,2";
    const auto other = analyze(r);
    REQUIRE(other.paper_diagnostics.size() == 1);
    CHECK(other.paper_diagnostics[0].status == "not_applicable");
}
