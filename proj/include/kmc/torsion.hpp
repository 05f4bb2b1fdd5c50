#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmc/invariants.hpp"

namespace kmc {

/// Degrees of the rank-3 Dickson invariants: 2(p^3-p^2), 2(p^3-p), 2(p^3-1).
inline std::array<std::int64_t, 3> dickson_degrees(std::uint64_t p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    const auto q = static_cast<std::int64_t>(p);
    return {2 * (q * q * q - q * q), 2 * (q * q * q - q), 2 * (q * q * q - 1)};
}

/// Degree 2p^2(p^2-1), where the Dickson series is known to exceed 1/(1-t^4).
inline std::int64_t dickson_contradiction_degree(std::uint64_t p) {
    const auto q = static_cast<std::int64_t>(p);
    return 2 * q * q * (q * q - 1);
}

/// Expansion of 1/prod(1 - t^d) over the Dickson degrees, up to t^N.
inline TruncatedSeries dickson_series(std::uint64_t p, int N) {
    std::vector<int> dens;
    for (auto d : dickson_degrees(p)) dens.push_back(static_cast<int>(d));
    return FactoredRational{{1}, dens}.expand(N);
}

enum class TorsionStatus { Certified, NoWitnessUpToN };

inline std::string to_string(TorsionStatus s) { return s == TorsionStatus::Certified ? "Certified" : "NoWitnessUpToN"; }

struct TorsionCertificate {
    std::uint32_t p = 0;
    TorsionStatus status = TorsionStatus::NoWitnessUpToN;
    std::optional<int> witness_degree;
    std::int64_t dim_fp = 0;  // at the witness
    std::int64_t dim_q = 0;
    int truncation = 0;
    bool reverified = false;
    /// dim of F_p invariants is at least the Dickson coefficient at every even degree <= N
    bool dickson_bound_holds = true;
    std::optional<int> dickson_bound_failure;
    /// rational invariant dims match 1 (nonsymmetrizable) or 1/(1-t^4) (symmetrizable); absent for affine input
    std::optional<bool> rational_matches_prediction;
    std::string note;
};

/// Rational P_123 series predicted for an indefinite matrix.
inline TruncatedSeries predicted_rational_invariants(const CartanMatrix& m, int N) {
    return m.symmetrizable() ? FactoredRational{{1}, {4}}.expand(N) : TruncatedSeries::one(N);
}

/// Least even degree d <= N with dim_Fp P_123 > dim_Q P_123.
inline TorsionCertificate torsion_certificate(InvariantEngine<RationalField>& q_engine,
                                              InvariantEngine<PrimeField>& p_engine) {
    const int N = q_engine.truncation();
    if (p_engine.truncation() != N)
        throw TruncationMismatch("rational scan to t^" + std::to_string(N) + ", modular scan to t^" +
                                 std::to_string(p_engine.truncation()));
    const CartanMatrix& m = q_engine.action().cartan;
    if (classify_type(m) == MatrixType::Finite)
        throw FiniteTypeInput("torsion certificates apply to infinite type; " + m.literal() + " is finite");

    TorsionCertificate cert;
    cert.p = p_engine.field().modulus();
    cert.truncation = N;
    const TruncatedSeries q = q_engine.ring(IndexSet::all()).dims();
    const TruncatedSeries fp = p_engine.ring(IndexSet::all()).dims();

    for (int d = 0; d <= N; d += 2) {
        if (fp[d] > q[d]) {
            cert.status = TorsionStatus::Certified;
            cert.witness_degree = d;
            cert.dim_fp = fp[d];
            cert.dim_q = q[d];
            break;
        }
    }
    if (cert.witness_degree) {
        // independent recomputation of the single witness degree
        const int d = *cert.witness_degree;
        const ReflectionAction r(m);
        const auto again_q = invariant_subspace(r, IndexSet::all(), RationalField{}, d).space.dim(d / 2);
        const auto again_p = invariant_subspace(r, IndexSet::all(), PrimeField(cert.p), d).space.dim(d / 2);
        cert.reverified = static_cast<std::int64_t>(again_q) == cert.dim_q &&
                          static_cast<std::int64_t>(again_p) == cert.dim_fp && again_p > again_q;
    }

    const TruncatedSeries lower = dickson_series(cert.p, N);
    for (int d = 0; d <= N; d += 2)
        if (fp[d] < lower[d]) {
            cert.dickson_bound_holds = false;
            cert.dickson_bound_failure = d;
            break;
        }

    if (*m.matrix_type() == MatrixType::Indefinite)
        cert.rational_matches_prediction = q == predicted_rational_invariants(m, N);

    if (cert.status == TorsionStatus::NoWitnessUpToN) {
        cert.note = "no witness up to t^" + std::to_string(N) +
                    "; p-torsion still exists, the first witness lies beyond the scan";
        const auto deg = dickson_contradiction_degree(cert.p);
        if (deg > N) cert.note += " (the Dickson comparison guarantees one by t^" + std::to_string(deg) + ")";
    }
    return cert;
}

inline TorsionCertificate torsion_certificate(const CartanMatrix& m, std::uint32_t p, int N) {
    const ReflectionAction r(m);
    InvariantEngine<RationalField> q(r, RationalField{}, N);
    InvariantEngine<PrimeField> fp(r, PrimeField(p), N);
    return torsion_certificate(q, fp);
}

} // namespace kmc
