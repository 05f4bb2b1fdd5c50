#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "kmc/linalg.hpp"
#include "kmc/monomial.hpp"
#include "kmc/parallel.hpp"
#include "kmc/series.hpp"

namespace kmc {

/// Subspace of F[w1, w2, w3] given degreewise up to cohomological degree N.
/// Each piece is kept as an echelon basis of coordinate rows over the degree-k
/// monomial basis. Over F_p the echelon form is reduced; over Q it is not,
/// since back-substitution inflates the integer entries.
template <class F>
class GradedSubspace {
public:
    using Row = typename F::Row;

    GradedSubspace(F field, int N) : field_(std::move(field)), n_(N), pieces_(static_cast<std::size_t>(N / 2) + 1) {
        if (N < 0) throw PreconditionViolation("negative truncation " + std::to_string(N));
    }

    static GradedSubspace full(F field, int N) {
        GradedSubspace s(std::move(field), N);
        for (int k = 0; k <= s.max_poly_degree(); ++k) {
            const std::size_t m = monomial_count(k);
            std::vector<Row> rows(m, Row(m, s.field_.zero()));
            for (std::size_t i = 0; i < m; ++i) rows[i][i] = s.field_.one();
            s.pieces_[static_cast<std::size_t>(k)] = std::move(rows);
        }
        return s;
    }

    const F& field() const { return field_; }
    FieldSpec field_spec() const { return field_.spec(); }
    int truncation() const { return n_; }
    int max_poly_degree() const { return n_ / 2; }

    /// Echelon basis of the degree-k piece (cohomological degree 2k).
    const std::vector<Row>& basis(int k) const { return pieces_.at(static_cast<std::size_t>(k)); }
    std::size_t dim(int k) const { return basis(k).size(); }

    /// Replaces the degree-k piece by the span of `vectors`.
    void set_span(int k, std::vector<Row> vectors) {
        constexpr bool reduced = !std::is_same_v<F, RationalField>;
        pieces_.at(static_cast<std::size_t>(k)) =
            echelonize(field_, std::move(vectors), monomial_count(k), reduced).rows;
    }

    /// Dimensions as a series in t (odd coefficients zero).
    TruncatedSeries series() const {
        TruncatedSeries s(n_);
        for (int k = 0; k <= max_poly_degree(); ++k) s[2 * k] = static_cast<std::int64_t>(dim(k));
        return s;
    }

    bool contains(int k, const Row& v) const {
        if (is_zero_row(field_, v)) return true;
        std::vector<Row> rows = basis(k);
        rows.push_back(v);
        return rank_of(field_, std::move(rows), monomial_count(k)) == dim(k);
    }

    /// Same field, truncation, and stored basis vectors (not just the same span).
    bool identical_to(const GradedSubspace& o) const {
        return field_spec() == o.field_spec() && n_ == o.n_ && pieces_ == o.pieces_;
    }

private:
    F field_;
    int n_;
    std::vector<std::vector<Row>> pieces_;
};

namespace detail {
template <class F>
void check_compatible(const GradedSubspace<F>& a, const GradedSubspace<F>& b) {
    if (a.field_spec() != b.field_spec())
        throw FieldMismatch("subspaces over " + a.field_spec().name() + " and " + b.field_spec().name());
    if (a.truncation() != b.truncation())
        throw TruncationMismatch("subspaces truncated at t^" + std::to_string(a.truncation()) + " and t^" +
                                 std::to_string(b.truncation()));
}

template <class F>
std::vector<typename F::Row> intersect_piece(const F& field, const std::vector<typename F::Row>& a,
                                             const std::vector<typename F::Row>& b, std::size_t m) {
    if (a.empty() || b.empty()) return {};
    // Left kernel of the stacked rows [a; b]: x a + y b = 0 gives x a in the intersection.
    std::vector<typename F::Row> stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    const auto relations = null_space(field, columns_to_rows(field, stacked, m), stacked.size());
    std::vector<typename F::Row> out;
    out.reserve(relations.size());
    for (const auto& z : relations) {
        typename F::Row x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(a.size()));
        out.push_back(combine(field, a, x, m));
    }
    return out;
}
} // namespace detail

template <class F>
GradedSubspace<F> subspace_sum(const GradedSubspace<F>& a, const GradedSubspace<F>& b) {
    detail::check_compatible(a, b);
    GradedSubspace<F> out(a.field(), a.truncation());
    std::vector<std::vector<typename F::Row>> pieces(static_cast<std::size_t>(a.max_poly_degree()) + 1);
    parallel_for(pieces.size(), [&](std::size_t k) {
        auto rows = a.basis(static_cast<int>(k));
        const auto& rb = b.basis(static_cast<int>(k));
        rows.insert(rows.end(), rb.begin(), rb.end());
        pieces[k] = std::move(rows);
    });
    for (std::size_t k = 0; k < pieces.size(); ++k) out.set_span(static_cast<int>(k), std::move(pieces[k]));
    return out;
}

template <class F>
GradedSubspace<F> subspace_intersect(const GradedSubspace<F>& a, const GradedSubspace<F>& b) {
    detail::check_compatible(a, b);
    GradedSubspace<F> out(a.field(), a.truncation());
    std::vector<std::vector<typename F::Row>> pieces(static_cast<std::size_t>(a.max_poly_degree()) + 1);
    parallel_for(pieces.size(), [&](std::size_t k) {
        const int kk = static_cast<int>(k);
        pieces[k] = detail::intersect_piece(a.field(), a.basis(kk), b.basis(kk), monomial_count(kk));
    });
    for (std::size_t k = 0; k < pieces.size(); ++k) out.set_span(static_cast<int>(k), std::move(pieces[k]));
    return out;
}

/// Least polynomial degree k where `small` is not inside `big`.
template <class F>
std::optional<int> first_non_containment(const GradedSubspace<F>& big, const GradedSubspace<F>& small) {
    detail::check_compatible(big, small);
    for (int k = 0; k <= big.max_poly_degree(); ++k) {
        if (small.dim(k) == 0) continue;
        auto rows = big.basis(k);
        rows.insert(rows.end(), small.basis(k).begin(), small.basis(k).end());
        if (rank_of(big.field(), std::move(rows), monomial_count(k)) != big.dim(k)) return k;
    }
    return std::nullopt;
}

template <class F>
bool is_subspace(const GradedSubspace<F>& small, const GradedSubspace<F>& big) {
    return !first_non_containment(big, small).has_value();
}

template <class F>
bool same_span(const GradedSubspace<F>& a, const GradedSubspace<F>& b) {
    return a.series() == b.series() && is_subspace(a, b);
}

/// dim big - dim small per degree, as a series in t.
template <class F>
TruncatedSeries quotient_dims(const GradedSubspace<F>& big, const GradedSubspace<F>& small) {
    if (auto k = first_non_containment(big, small))
        throw NotASubspace("not contained at degree " + std::to_string(2 * *k));
    return big.series() - small.series();
}

} // namespace kmc
