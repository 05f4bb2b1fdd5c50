#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kmc/graded_subspace.hpp"
#include "kmc/polynomial.hpp"
#include "kmc/weyl.hpp"

namespace kmc {

/// P_J = F[w1, w2, w3]^{W_J} up to cohomological degree N.
template <class F>
struct InvariantRing {
    IndexSet J;
    GradedSubspace<F> space;

    TruncatedSeries dims() const { return space.series(); }
};

/// Computes and caches P_J for every J over one field. A polynomial is
/// W_J-invariant iff each generator sigma_j (j in J) fixes it, so P_J is
/// reached from P_{J \ {j}} by cutting out ker(sigma_j - 1), with j the largest label.
template <class F>
class InvariantEngine {
public:
    InvariantEngine(const ReflectionAction& r, F field, int N) : action_(r), field_(std::move(field)), n_(N) {
        if (N < 0) throw PreconditionViolation("negative truncation " + std::to_string(N));
        for (int j = 1; j <= 3; ++j) {
            auto& t = towers_[static_cast<std::size_t>(j - 1)];
            t = std::make_unique<SubstitutionTower<F>>(field_, r.sigma(j));
            t->level(N / 2);
        }
    }

    const ReflectionAction& action() const { return action_; }
    const F& field() const { return field_; }
    int truncation() const { return n_; }

    const SparseSubstitution<F>& substitution(int j, int k) const {
        return towers_[static_cast<std::size_t>(j - 1)]->built_level(k);
    }

    /// Cached; later calls return the same object.
    const InvariantRing<F>& ring(IndexSet J) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(J.bits()); it != cache_.end()) return *it->second;
        }
        auto computed = std::make_unique<InvariantRing<F>>(compute(J));
        std::lock_guard lock(mutex_);
        auto [it, inserted] = cache_.emplace(J.bits(), std::move(computed));
        return *it->second;
    }

    /// True iff every basis vector of P_J is fixed by every sigma_j, j in J.
    bool verify_invariance(const InvariantRing<F>& ring) const {
        for (int k = 0; k <= n_ / 2; ++k)
            for (const auto& v : ring.space.basis(k))
                for (int j : ring.J.labels())
                    if (!is_zero_row(field_, substitution(j, k).apply_minus_identity(field_, v))) return false;
        return true;
    }

private:
    InvariantRing<F> compute(IndexSet J) {
        if (J.empty()) return {J, GradedSubspace<F>::full(field_, n_)};
        const int j = J.labels().back();
        const IndexSet parent = J & IndexSet::from_bits(J.bits() & ~(1u << (j - 1)));
        const InvariantRing<F>& base = ring(parent);
        InvariantRing<F> out{J, GradedSubspace<F>(field_, n_)};
        std::vector<std::vector<typename F::Row>> pieces(static_cast<std::size_t>(n_ / 2) + 1);
        parallel_for(pieces.size(), [&](std::size_t k) {
            pieces[k] = restrict_piece(base.space.basis(static_cast<int>(k)), substitution(j, static_cast<int>(k)));
        });
        for (std::size_t k = 0; k < pieces.size(); ++k) out.space.set_span(static_cast<int>(k), std::move(pieces[k]));
        if (!verify_invariance(out))
            throw InternalInconsistency("computed P_" + J.digits() + " is not fixed by its generators");
        return out;
    }

    /// Vectors of span(basis) fixed by S.
    std::vector<typename F::Row> restrict_piece(const std::vector<typename F::Row>& basis,
                                                const SparseSubstitution<F>& S) const {
        if (basis.empty()) return {};
        const std::size_t m = S.size();
        std::vector<typename F::Row> images;
        images.reserve(basis.size());
        for (const auto& b : basis) images.push_back(S.apply_minus_identity(field_, b));
        const auto relations = null_space(field_, columns_to_rows(field_, images, m), basis.size());
        std::vector<typename F::Row> out;
        out.reserve(relations.size());
        for (const auto& c : relations) out.push_back(combine(field_, basis, c, m));
        return out;
    }

    ReflectionAction action_;
    F field_;
    int n_;
    std::array<std::unique_ptr<SubstitutionTower<F>>, 3> towers_;
    std::mutex mutex_;
    std::map<unsigned, std::unique_ptr<InvariantRing<F>>> cache_;
};

template <class F>
InvariantRing<F> invariant_subspace(const ReflectionAction& r, IndexSet J, F field, int N) {
    InvariantEngine<F> engine(r, std::move(field), N);
    return engine.ring(J);
}

/// Spanning vector of the degree-4 piece of P_123 over Q (coordinates over
/// MonomialBasis(2), content 1, leading coefficient positive), or nothing when
/// that piece is zero.
inline std::optional<std::vector<mpz_class>> killing_form(const ReflectionAction& r) {
    if (classify_type(r.cartan) != MatrixType::Indefinite)
        throw PreconditionViolation("the degree-4 invariant is only classified for indefinite matrices; " +
                                    r.cartan.literal() + " is " + to_string(classify_type(r.cartan)));
    InvariantEngine<RationalField> engine(r, RationalField{}, 4);
    const auto& piece = engine.ring(IndexSet::all()).space.basis(2);
    if (piece.size() >= 2)
        throw UnexpectedDimension("degree-4 invariants of " + r.cartan.literal() + " have dimension " +
                                  std::to_string(piece.size()));
    if (r.cartan.symmetrizable() != (piece.size() == 1))
        throw UnexpectedDimension("degree-4 invariants of " + std::string(r.cartan.symmetrizable() ? "" : "non") +
                                  "symmetrizable " + r.cartan.literal() + " have dimension " +
                                  std::to_string(piece.size()));
    if (piece.empty()) return std::nullopt;
    return piece.front();
}

struct KappaReport {
    std::vector<mpz_class> coordinates;  // over MonomialBasis(2)
    bool fixed_by_sigma1 = false;
    bool fixed_by_sigma2 = false;

    std::string text() const { return polynomial_text(2, coordinates); }
};

/// kappa = a12 w1^2 + a12 a21 w1 w2 + a21 w2^2 + a12 a31 w1 w3 + a21 a32 w2 w3.
inline KappaReport build_kappa(const CartanMatrix& m) {
    if (m.pair_product(1, 2) < 4)
        throw PairNotInfinite("a12*a21 = " + std::to_string(m.pair_product(1, 2)) + " < 4");
    const long a12 = m(1, 2), a21 = m(2, 1), a31 = m(3, 1), a32 = m(3, 2);
    KappaReport rep;
    // basis order: w1^2, w1w2, w1w3, w2^2, w2w3, w3^2
    rep.coordinates = {mpz_class(a12), mpz_class(a12 * a21), mpz_class(a12 * a31),
                       mpz_class(a21), mpz_class(a21 * a32), mpz_class(0)};
    const RationalField q;
    const ReflectionAction r(m);
    for (int j = 1; j <= 2; ++j) {
        SubstitutionTower<RationalField> tower(q, r.sigma(j));
        const bool fixed = is_zero_row(q, tower.level(2).apply_minus_identity(q, rep.coordinates));
        (j == 1 ? rep.fixed_by_sigma1 : rep.fixed_by_sigma2) = fixed;
    }
    return rep;
}

/// Degreewise dimensions of span{kappa^a w3^b} up to t^N.
inline TruncatedSeries kappa_span_dims(const CartanMatrix& m, int N) {
    const RationalField q;
    const HomogeneousPoly<RationalField> kappa{2, build_kappa(m).coordinates};
    const auto w3 = variable(q, 3);
    GradedSubspace<RationalField> span(q, N);
    for (int k = 0; k <= N / 2; ++k) {
        std::vector<RationalField::Row> vecs;
        for (int a = 0; 2 * a <= k; ++a)
            vecs.push_back(multiply(q, power(q, kappa, a), power(q, w3, k - 2 * a)).coeffs);
        span.set_span(k, std::move(vecs));
    }
    return span.series();
}

enum class SumIdentityStatus { HoldsAllDegrees, FirstFailure, DegenerateGenerator };

inline std::string to_string(SumIdentityStatus s) {
    switch (s) {
    case SumIdentityStatus::HoldsAllDegrees: return "holds_all_degrees";
    case SumIdentityStatus::FirstFailure: return "first_failure_degree";
    case SumIdentityStatus::DegenerateGenerator: return "degenerate_generator";
    }
    return "?";
}

struct SumIdentityReport {
    SumIdentityStatus status = SumIdentityStatus::HoldsAllDegrees;
    std::optional<int> first_failure_degree;
    std::vector<int> degenerate_generators;  // sigma_j acting as the identity over the field
    TruncatedSeries sum_dims;
    TruncatedSeries full_dims;
};

/// sigma_j is the identity over F_p iff alpha_j vanishes mod p.
inline bool generator_degenerate(const ReflectionAction& r, int j, FieldSpec f) {
    if (f.is_rational()) return false;
    const long long p = f.characteristic();
    const auto& a = r.roots[static_cast<std::size_t>(j - 1)];
    return std::all_of(a.begin(), a.end(), [p](long long x) { return x % p == 0; });
}

/// Compares dim(sum of P_J over parts) with dim P at each even degree.
template <class F>
SumIdentityReport check_sum_identity(InvariantEngine<F>& engine, const std::vector<IndexSet>& parts) {
    if (parts.empty()) throw PreconditionViolation("check_sum_identity needs at least one part");
    SumIdentityReport rep;
    IndexSet used;
    for (IndexSet J : parts) used = used | J;
    for (int j : used.labels())
        if (generator_degenerate(engine.action(), j, engine.field().spec())) rep.degenerate_generators.push_back(j);

    GradedSubspace<F> sum = engine.ring(parts.front()).space;
    for (std::size_t i = 1; i < parts.size(); ++i) sum = subspace_sum(sum, engine.ring(parts[i]).space);
    rep.sum_dims = sum.series();
    rep.full_dims = engine.ring(IndexSet{}).dims();
    rep.first_failure_degree = rep.sum_dims.first_difference(rep.full_dims);
    if (!rep.degenerate_generators.empty())
        rep.status = SumIdentityStatus::DegenerateGenerator;
    else if (rep.first_failure_degree)
        rep.status = SumIdentityStatus::FirstFailure;
    return rep;
}

} // namespace kmc
