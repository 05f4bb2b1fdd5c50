#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <type_traits>
#include <vector>

#include "kmc/field.hpp"

namespace kmc {

/// Row echelon form. With `reduced` the pivot columns are cleared in every
/// other row, which makes the row set a canonical basis of the row space.
template <class F>
struct Echelon {
    std::vector<typename F::Row> rows;  // nonzero rows, pivots increasing
    std::vector<std::size_t> pivots;
    std::size_t cols = 0;

    std::size_t rank() const { return rows.size(); }
};

template <class F>
bool is_zero_row(const F& field, const typename F::Row& row) {
    return std::all_of(row.begin(), row.end(), [&](const auto& x) { return field.is_zero(x); });
}

/// Gauss-Jordan elimination with a deterministic pivot rule (lowest
/// `pivot_cost`, ties broken by row order).
template <class F>
Echelon<F> echelonize(const F& field, std::vector<typename F::Row> rows, std::size_t cols,
                      bool reduced = true) {
    Echelon<F> out;
    out.cols = cols;
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [&](const auto& r) { return is_zero_row(field, r); }),
               rows.end());

    std::size_t next = 0;  // rows[0, next) are pivot rows
    for (std::size_t col = 0; col < cols && next < rows.size(); ++col) {
        std::size_t best = rows.size();
        std::size_t best_cost = 0;
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (field.is_zero(rows[r][col])) continue;
            const std::size_t cost = field.pivot_cost(rows[r], col);
            if (best == rows.size() || cost < best_cost) {
                best = r;
                best_cost = cost;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[next], rows[best]);
        field.normalize(rows[next], col);
        const auto& pivot = rows[next];
        for (std::size_t r = reduced ? 0 : next + 1; r < rows.size(); ++r)
            if (r != next) field.eliminate(rows[r], pivot, col);
        out.pivots.push_back(col);
        ++next;
    }
    rows.resize(next);
    out.rows = std::move(rows);
    return out;
}

template <class F>
std::size_t rank_of(const F& field, std::vector<typename F::Row> rows, std::size_t cols) {
    return echelonize(field, std::move(rows), cols, /*reduced=*/false).rank();
}

/// Null space basis of the matrix whose rows are `rows` (each of length `cols`):
/// one vector per free column of the reduced echelon form.
template <class F>
std::vector<typename F::Row> null_space(const F& field, std::vector<typename F::Row> rows,
                                        std::size_t cols) {
    const Echelon<F> e = echelonize(field, std::move(rows), cols, /*reduced=*/true);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;

    std::vector<typename F::Row> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        typename F::Row x(cols, field.zero());
        if constexpr (std::is_same_v<F, RationalField>) {
            // x_f = L, x_{p_i} = -R_i[f] * L / R_i[p_i] with L the lcm of the pivots involved.
            mpz_class L = 1;
            for (std::size_t i = 0; i < e.rank(); ++i)
                if (sgn(e.rows[i][f]) != 0)
                    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), e.rows[i][e.pivots[i]].get_mpz_t());
            x[f] = L;
            for (std::size_t i = 0; i < e.rank(); ++i) {
                if (sgn(e.rows[i][f]) == 0) continue;
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), L.get_mpz_t(), e.rows[i][e.pivots[i]].get_mpz_t());
                x[e.pivots[i]] = -e.rows[i][f] * q;
            }
            RationalField::make_primitive(x);
        } else {
            x[f] = field.one();
            for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = field.neg(e.rows[i][f]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Transpose a list of column vectors (each of length `len`) into rows.
template <class F>
std::vector<typename F::Row> columns_to_rows(const F& field, const std::vector<typename F::Row>& cols,
                                             std::size_t len) {
    std::vector<typename F::Row> rows(len, typename F::Row(cols.size(), field.zero()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < len; ++r) rows[r][c] = cols[c][r];
    return rows;
}

/// sum_i coeffs[i] * vectors[i]; for Q the result is made primitive.
template <class F>
typename F::Row combine(const F& field, const std::vector<typename F::Row>& vectors,
                        const typename F::Row& coeffs, std::size_t len) {
    typename F::Row out(len, field.zero());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (field.is_zero(coeffs[i])) continue;
        for (std::size_t j = 0; j < len; ++j) {
            if (field.is_zero(vectors[i][j])) continue;
            if constexpr (std::is_same_v<F, RationalField>)
                mpz_addmul(out[j].get_mpz_t(), coeffs[i].get_mpz_t(), vectors[i][j].get_mpz_t());
            else
                out[j] = field.add(out[j], field.mul(coeffs[i], vectors[i][j]));
        }
    }
    if constexpr (std::is_same_v<F, RationalField>) RationalField::make_primitive(out);
    return out;
}

} // namespace kmc
