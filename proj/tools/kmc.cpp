#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kmc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct FieldOptions {
    std::string coeff = "q";
    std::optional<std::uint32_t> p;

    kmc::FieldSpec spec() const {
        if (coeff == "q") {
            if (p) throw kmc::PreconditionViolation("--p is only meaningful with --coeff fp");
            return kmc::FieldSpec::rationals();
        }
        if (!p) throw kmc::PreconditionViolation("--coeff fp needs --p");
        return kmc::FieldSpec::prime(*p);
    }
};

void add_field_options(CLI::App* cmd, FieldOptions& f) {
    cmd->add_option("--coeff", f.coeff, "Coefficients: q or fp")->check(CLI::IsMember({"q", "fp"}));
    cmd->add_option("--p", f.p, "Prime for --coeff fp");
}

int default_truncation() {
    if (const char* env = std::getenv("KMC_TRUNCATE")) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(env, &used);
            if (used == std::string(env).size() && n >= 0) return n;
        } catch (const std::exception&) {
        }
        throw kmc::PreconditionViolation(std::string("KMC_TRUNCATE=") + env + " is not a nonnegative integer");
    }
    return 60;
}

int exit_code_for(const kmc::Error& e) {
    const std::string& k = e.kind();
    if (k == "InternalInconsistency" || k == "ClassIVUnverifiedConjecture" || k == "NotASubspace" ||
        k == "FieldMismatch" || k == "TruncationMismatch" || k == "UnexpectedDimension")
        return kExitInternal;
    return kExitInput;
}

std::string set_list(const std::vector<kmc::IndexSet>& sets) {
    std::string s;
    for (auto x : sets) s += (s.empty() ? "" : " ") + x.to_string();
    return s;
}

int cmd_classify(const std::string& text, const std::string& format) {
    const kmc::CartanMatrix m = kmc::parse_matrix(text);
    const kmc::MatrixType type = kmc::classify_type(m);
    kmc::Json j;
    j["matrix"] = m.literal();
    j["type"] = kmc::to_string(type);
    j["symmetrizable"] = m.symmetrizable();
    j["determinant"] = m.determinant();
    kmc::Json pairs = kmc::Json::object();
    for (int a = 1; a <= 3; ++a)
        for (int b = a + 1; b <= 3; ++b) pairs[std::to_string(a) + std::to_string(b)] = kmc::rank2_type(m, a, b).name();
    j["pairs"] = pairs;
    std::optional<kmc::ParabolicProfile> prof;
    if (type != kmc::MatrixType::Finite) {
        prof = kmc::parabolic_profile(m);
        j["class"] = kmc::to_string(prof->class_label);
        j["refined_class"] = kmc::to_string(prof->refined_label);
        j["finite_subsets"] = kmc::sets_json(prof->finite_subsets);
        j["maximal_finite"] = kmc::sets_json(prof->maximal_finite);
        j["permutation"] = prof->permutation.image();
    }
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "matrix          " << m.literal() << "\n"
              << "type            " << kmc::to_string(type) << (m.symmetrizable() ? ", symmetrizable" : ", nonsymmetrizable")
              << "\n"
              << "determinant     " << m.determinant() << "\n";
    for (auto& [pair, name] : pairs.items()) std::cout << "pair " << pair << "         " << name.get<std::string>() << "\n";
    if (prof) {
        const auto& im = prof->permutation.image();
        std::cout << "class           " << kmc::to_string(prof->class_label) << ", refined ("
                  << kmc::to_string(prof->refined_label) << ")\n"
                  << "finite J        " << set_list(prof->finite_subsets) << "\n"
                  << "P(A)            " << set_list(prof->maximal_finite) << "\n"
                  << "permutation     1->" << im[0] << " 2->" << im[1] << " 3->" << im[2] << "\n";
    }
    return kExitOk;
}

int cmd_invariants(const std::string& text, const std::string& subset, kmc::FieldSpec field, int N, bool molien,
                   bool show_basis, const std::string& format) {
    const kmc::CartanMatrix m = kmc::parse_matrix(text);
    kmc::IndexSet J;
    for (char c : subset) {
        if (c == ',' || c == ' ') continue;
        if (c < '1' || c > '3') throw kmc::SyntaxError("subset '" + subset + "' must use labels 1, 2, 3");
        J = J | kmc::IndexSet{c - '0'};
    }
    const kmc::ReflectionAction action(m);
    kmc::Json j;
    j["matrix"] = m.literal();
    j["J"] = J.labels();
    j["field"] = field.name();
    j["truncation"] = N;
    std::vector<std::vector<std::string>> bases;
    kmc::with_field(field, [&](auto f) {
        const auto ring = kmc::invariant_subspace(action, J, f, N);
        j["dims"] = ring.dims().coefficients();
        if (show_basis)
            for (int k = 0; k <= ring.space.max_poly_degree(); ++k) {
                std::vector<std::string> polys;
                for (const auto& v : ring.space.basis(k)) polys.push_back(kmc::polynomial_text(k, v));
                bases.push_back(polys);
            }
    });
    if (molien) {
        if (!field.is_rational()) throw kmc::ModularNotSupported("--molien needs --coeff q");
        j["molien"] = kmc::molien_series(kmc::enumerate_group(action, J), field, N).coefficients();
    }
    if (show_basis) j["basis"] = bases;
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "matrix          " << m.literal() << "\n"
              << "J               " << J.to_string() << "\n"
              << "field           " << field.name() << "\n"
              << "truncation      " << N << "\n"
              << "dims            " << kmc::join_ints(j["dims"].get<std::vector<std::int64_t>>()) << "\n";
    if (molien) std::cout << "molien          " << kmc::join_ints(j["molien"].get<std::vector<std::int64_t>>()) << "\n";
    for (std::size_t k = 0; k < bases.size(); ++k)
        for (const auto& p : bases[k]) std::cout << "t^" << 2 * k << "  " << p << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology of rank-3 Kac-Moody groups from Weyl group invariants"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: hardware concurrency)");

    std::string matrix, format = "text", subset;
    FieldOptions field;
    std::optional<int> truncate;
    bool mv = false, ring = false, compare = false, molien = false, basis = false;
    std::vector<std::uint32_t> torsion;

    auto* analyze = app.add_subcommand("analyze", "Cohomology series of BK with the chosen coefficients");
    analyze->add_option("--matrix", matrix, "Cartan matrix, rows separated by ';'")->required();
    add_field_options(analyze, field);
    analyze->add_option("--truncate", truncate, "Highest degree N (default 60 or $KMC_TRUNCATE)");
    analyze->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    analyze->add_flag("--with-mv-crosscheck", mv, "Recompute by Mayer-Vietoris and compare");
    analyze->add_option("--with-torsion", torsion, "Primes to certify, e.g. 2,3")->delimiter(',');
    analyze->add_flag("--with-ring-structure", ring, "Rational ring structure report");
    analyze->add_flag("--compare-paper-example", compare, "Compare with the published worked example");

    auto* check = app.add_subcommand("check", "Run the acceptance suite");

    auto* classify = app.add_subcommand("classify", "Type, parabolic class and canonical relabelling");
    classify->add_option("--matrix", matrix)->required();
    classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* invariants = app.add_subcommand("invariants", "Dimensions of the invariants of W_J");
    invariants->add_option("--matrix", matrix)->required();
    invariants->add_option("--J", subset, "Subset of {1,2,3}, e.g. 12")->required();
    add_field_options(invariants, field);
    invariants->add_option("--truncate", truncate);
    invariants->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    invariants->add_flag("--molien", molien, "Also print the Molien series (Q only)");
    invariants->add_flag("--basis", basis, "Print a basis in each degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    if (threads) kmc::set_worker_threads(threads);

    try {
        if (*check) {
            kmc::AcceptanceOptions opts;
            opts.on_result = [](const kmc::CriterionResult& r) { std::cout << r.line() << std::endl; };
            bool ok = true;
            for (const auto& r : kmc::run_acceptance(opts)) ok = ok && r.pass;
            std::cout << (ok ? "all criteria pass" : "acceptance FAILED") << "\n";
            return ok ? kExitOk : kExitCheckFailed;
        }
        if (*classify) return cmd_classify(matrix, format);
        const int N = truncate ? *truncate : default_truncation();
        if (*invariants) return cmd_invariants(matrix, subset, field.spec(), N, molien, basis, format);

        kmc::AnalysisRequest req;
        req.matrix_text = matrix;
        req.field = field.spec();
        req.truncation = N;
        req.mv_crosscheck = mv;
        req.torsion_primes = torsion;
        req.ring_structure = ring;
        req.compare_paper_example = compare;
        const kmc::CohomologyReport rep = kmc::analyze(req);
        for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << (format == "json" ? kmc::to_json(rep).dump(2) + "\n" : kmc::to_text(rep));
        if (rep.crosscheck.status == "mismatch") {
            std::cerr << "error: formula and Mayer-Vietoris disagree at t^" << *rep.crosscheck.first_mismatch_degree
                      << "\n";
            return kExitInternal;
        }
        return kExitOk;
    } catch (const kmc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
