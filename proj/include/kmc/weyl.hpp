#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "kmc/cartan.hpp"
#include "kmc/field.hpp"
#include "kmc/monomial.hpp"
#include "kmc/series.hpp"

namespace kmc {

/// 3x3 integer matrix acting on weights by (w1, w2, w3) -> (w1, w2, w3) g:
/// column i holds the coordinates of the image of w_i.
using IntMatrix = std::array<std::array<long long, 3>, 3>;

constexpr IntMatrix identity_matrix() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline IntMatrix matrix_power(const IntMatrix& g, int n) {
    IntMatrix out = identity_matrix();
    for (int i = 0; i < n; ++i) out = out * g;
    return out;
}

/// I - A_j, where A_j keeps only column j of the Cartan matrix (j in 1..3).
inline IntMatrix reflection_matrix(const CartanMatrix& m, int j) {
    if (j < 1 || j > 3) throw PreconditionViolation("generator index " + std::to_string(j) + " not in {1,2,3}");
    IntMatrix g = identity_matrix();
    for (int i = 1; i <= 3; ++i) g[i - 1][j - 1] -= m(i, j);
    return g;
}

/// Coordinates of alpha_j = sum_i a_ij w_i.
inline std::array<long long, 3> simple_root(const CartanMatrix& m, int j) {
    return {m(1, j), m(2, j), m(3, j)};
}

struct ReflectionAction {
    CartanMatrix cartan;
    std::array<IntMatrix, 3> generators;             // generators[j-1] = sigma_j
    std::array<std::array<long long, 3>, 3> roots;   // roots[j-1] = alpha_j

    explicit ReflectionAction(const CartanMatrix& m) : cartan(m) {
        for (int j = 1; j <= 3; ++j) {
            generators[static_cast<std::size_t>(j - 1)] = reflection_matrix(m, j);
            roots[static_cast<std::size_t>(j - 1)] = simple_root(m, j);
        }
    }

    const IntMatrix& sigma(int j) const { return generators.at(static_cast<std::size_t>(j - 1)); }
};

/// (sigma_k sigma_j)^m = id for the Coxeter order m of the pair; true for infinite pairs.
inline bool coxeter_relation_holds(const ReflectionAction& r, int k, int j) {
    const Rank2Type t = rank2_type(r.cartan, k, j);
    if (!t.finite()) return true;
    return matrix_power(r.sigma(k) * r.sigma(j), t.coxeter_order) == identity_matrix();
}

/// Induced substitution on one graded piece, stored by columns: column c lists
/// the nonzero coordinates of the image of monomial c.
template <class F>
struct SparseSubstitution {
    using Entry = std::pair<std::uint32_t, typename F::Scalar>;
    std::vector<std::vector<Entry>> columns;

    std::size_t size() const { return columns.size(); }

    /// S v.
    typename F::Row apply(const F& field, const typename F::Row& v) const {
        typename F::Row out(columns.size(), field.zero());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (field.is_zero(v[c])) continue;
            for (const auto& [r, x] : columns[c]) {
                if constexpr (std::is_same_v<F, RationalField>)
                    mpz_addmul(out[r].get_mpz_t(), v[c].get_mpz_t(), x.get_mpz_t());
                else
                    out[r] = field.add(out[r], field.mul(v[c], x));
            }
        }
        return out;
    }

    /// (S - I) v.
    typename F::Row apply_minus_identity(const F& field, const typename F::Row& v) const {
        typename F::Row out = apply(field, v);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_sub(field, out[i], v[i]);
        return out;
    }

    std::vector<typename F::Row> dense_rows(const F& field) const {
        const std::size_t m = columns.size();
        std::vector<typename F::Row> rows(m, typename F::Row(m, field.zero()));
        for (std::size_t c = 0; c < m; ++c)
            for (const auto& [r, x] : columns[c]) rows[r][c] = x;
        return rows;
    }

private:
    static typename F::Scalar field_sub(const F& field, const typename F::Scalar& a, const typename F::Scalar& b) {
        if constexpr (std::is_same_v<F, RationalField>)
            return a - b;
        else
            return field.sub(a, b);
    }
};

/// Substitutions of one linear map on every graded piece up to some degree,
/// built one degree at a time: image(e) = image(e - u_i) * g(w_i) for the first i with e_i > 0.
template <class F>
class SubstitutionTower {
public:
    SubstitutionTower(F field, const IntMatrix& g) : field_(std::move(field)), g_(g) {
        SparseSubstitution<F> zero;
        zero.columns.push_back({{0u, field_.one()}});
        levels_.push_back(std::move(zero));
    }

    const IntMatrix& matrix() const { return g_; }

    /// Not safe to call concurrently with a call that extends the tower.
    const SparseSubstitution<F>& level(int k) {
        while (static_cast<int>(levels_.size()) <= k) extend();
        return levels_[static_cast<std::size_t>(k)];
    }
    /// Read-only access to an already built level.
    const SparseSubstitution<F>& built_level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    int built_degree() const { return static_cast<int>(levels_.size()) - 1; }

private:
    void extend() {
        const int k = static_cast<int>(levels_.size());
        const MonomialBasis basis(k);
        const auto& prev = levels_.back();
        const MonomialBasis prev_basis(k - 1);
        SparseSubstitution<F> next;
        next.columns.resize(basis.size());
        typename F::Row acc(basis.size(), field_.zero());
        std::vector<std::uint32_t> touched;
        for (std::size_t c = 0; c < basis.size(); ++c) {
            Exponent e = basis[c];
            int i = 0;
            while (e[static_cast<std::size_t>(i)] == 0) ++i;
            --e[static_cast<std::size_t>(i)];
            const auto& src = prev.columns[monomial_index(e)];
            touched.clear();
            for (const auto& [r, x] : src) {
                Exponent f = prev_basis[r];
                for (int t = 0; t < 3; ++t) {
                    const long long coeff = g_[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
                    if (coeff == 0) continue;
                    ++f[static_cast<std::size_t>(t)];
                    const auto idx = static_cast<std::uint32_t>(monomial_index(f));
                    --f[static_cast<std::size_t>(t)];
                    if (field_.is_zero(acc[idx])) touched.push_back(idx);
                    acc[idx] = add_product(acc[idx], x, coeff);
                }
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            auto& col = next.columns[c];
            for (auto idx : touched) {
                if (!field_.is_zero(acc[idx])) col.emplace_back(idx, acc[idx]);
                acc[idx] = field_.zero();
            }
        }
        levels_.push_back(std::move(next));
    }

    typename F::Scalar add_product(const typename F::Scalar& acc, const typename F::Scalar& x, long long coeff) const {
        if constexpr (std::is_same_v<F, RationalField>)
            return acc + x * mpz_class(static_cast<long>(coeff));
        else
            return field_.add(acc, field_.mul(x, field_.from_int(coeff)));
    }

    F field_;
    IntMatrix g_;
    std::vector<SparseSubstitution<F>> levels_;
};

/// Dense matrix (as rows) of the substitution induced by g on the degree-k
/// piece. Column c is the image of monomial c, so substitution_matrix(g, 1) == g
/// and sub(g) * sub(h) == sub(g h).
template <class F>
std::vector<typename F::Row> substitution_matrix(const F& field, const IntMatrix& g, int k) {
    if (k < 0) throw PreconditionViolation("negative polynomial degree " + std::to_string(k));
    SubstitutionTower<F> tower(field, g);
    return tower.level(k).dense_rows(field);
}

struct FiniteWeylGroup {
    IndexSet generating_indices;
    std::vector<IntMatrix> elements;  // identity first, then in order of discovery

    std::size_t order() const { return elements.size(); }
};

inline constexpr std::size_t kGroupCeiling = 64;

/// Expected |W_J| from the Coxeter data (0 if infinite).
inline std::size_t expected_group_order(const CartanMatrix& m, IndexSet J) {
    const auto labels = J.labels();
    if (labels.size() <= 1) return labels.empty() ? 1 : 2;
    if (labels.size() == 2) {
        const Rank2Type t = rank2_type(m, labels[0], labels[1]);
        return t.finite() ? static_cast<std::size_t>(t.weyl_order()) : 0;
    }
    return 0;  // rank-3 Weyl groups of infinite-type matrices are infinite
}

inline FiniteWeylGroup enumerate_group(const ReflectionAction& r, IndexSet J) {
    const auto labels = J.labels();
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b)
            if (!rank2_type(r.cartan, labels[a], labels[b]).finite())
                throw InfiniteGroup("pair {" + std::to_string(labels[a]) + "," + std::to_string(labels[b]) +
                                    "} has infinite Coxeter order");
    FiniteWeylGroup grp;
    grp.generating_indices = J;
    std::set<IntMatrix> seen{identity_matrix()};
    std::deque<IntMatrix> queue{identity_matrix()};
    grp.elements.push_back(identity_matrix());
    while (!queue.empty()) {
        const IntMatrix x = queue.front();
        queue.pop_front();
        for (int j : labels) {
            const IntMatrix y = x * r.sigma(j);
            if (!seen.insert(y).second) continue;
            if (seen.size() > kGroupCeiling)
                throw InfiniteGroup("closure of W_" + J.to_string() + " exceeds " + std::to_string(kGroupCeiling) +
                                    " elements");
            grp.elements.push_back(y);
            queue.push_back(y);
        }
    }
    return grp;
}

/// (1/|G|) sum_g 1/det(I - t^2 g) up to t^N, over Q only.
inline TruncatedSeries molien_series(const FiniteWeylGroup& grp, FieldSpec f, int N) {
    if (!f.is_rational())
        throw ModularNotSupported("Molien averaging over " + f.name() + " is not supported; use kernel dimensions");
    const int top = N / 2;
    std::vector<std::int64_t> total(static_cast<std::size_t>(top) + 1, 0);
    for (const IntMatrix& g : grp.elements) {
        // det(I - s g) = 1 - tr s + c2 s^2 - det s^3
        const long long tr = g[0][0] + g[1][1] + g[2][2];
        const long long c2 = g[0][0] * g[1][1] - g[0][1] * g[1][0] + g[0][0] * g[2][2] - g[0][2] * g[2][0] +
                             g[1][1] * g[2][2] - g[1][2] * g[2][1];
        const long long det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                              g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                              g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        std::vector<std::int64_t> c(static_cast<std::size_t>(top) + 1, 0);
        c[0] = 1;
        for (std::size_t n = 1; n < c.size(); ++n) {
            c[n] = tr * c[n - 1];
            if (n >= 2) c[n] -= c2 * c[n - 2];
            if (n >= 3) c[n] += det * c[n - 3];
        }
        for (std::size_t n = 0; n < c.size(); ++n) total[n] += c[n];
    }
    const auto order = static_cast<std::int64_t>(grp.order());
    TruncatedSeries s(N);
    for (std::size_t n = 0; n < total.size(); ++n) {
        if (total[n] % order != 0)
            throw InternalInconsistency("Molien average not integral at degree " + std::to_string(2 * n));
        s[static_cast<int>(2 * n)] = total[n] / order;
    }
    return s;
}

} // namespace kmc
