#pragma once

// Slow reference computations used by the acceptance runner and the tests.
// Nothing here touches the sparse substitution towers, the echelon routines
// or the invariant engine: polynomials are expanded term by term and ranks
// come from a plain dense elimination.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "kmc/cartan.hpp"
#include "kmc/weyl.hpp"

namespace kmc::oracle {

using Poly = std::map<Exponent, mpz_class>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            out[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Image of w1^e1 w2^e2 w3^e3 under w_i -> sum_r g(r,i) w_r.
inline Poly substitute(const IntMatrix& g, const Exponent& e) {
    Poly out{{{0, 0, 0}, 1}};
    for (int i = 0; i < 3; ++i) {
        Poly lin;
        for (int r = 0; r < 3; ++r) {
            const long long c = g[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
            if (c == 0) continue;
            Exponent x{0, 0, 0};
            x[static_cast<std::size_t>(r)] = 1;
            lin[x] = static_cast<long>(c);
        }
        for (int n = 0; n < e[static_cast<std::size_t>(i)]; ++n) out = poly_mul(out, lin);
    }
    return out;
}

/// All monomials of degree k, w1^k first.
inline std::vector<Exponent> monomials(int k) {
    std::vector<Exponent> out;
    for (int a = k; a >= 0; --a)
        for (int b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
    return out;
}

/// Dense integer matrix of (g - 1) on degree-k polynomials; row = source monomial.
inline std::vector<std::vector<mpz_class>> minus_identity(const IntMatrix& g, int k) {
    const auto mons = monomials(k);
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
    std::vector<std::vector<mpz_class>> rows;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        std::vector<mpz_class> row(mons.size(), 0);
        for (const auto& [e, c] : substitute(g, mons[i])) row[index.at(e)] += c;
        row[i] -= 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Rank over Q (p == 0) or F_p.
inline std::size_t dense_rank(std::vector<std::vector<mpz_class>> a, std::uint32_t p) {
    if (a.empty()) return 0;
    const std::size_t cols = a.front().size();
    std::size_t rank = 0;
    if (p == 0) {
        std::vector<std::vector<mpq_class>> q;
        for (auto& row : a) q.emplace_back(row.begin(), row.end());
        for (std::size_t c = 0; c < cols && rank < q.size(); ++c) {
            std::size_t r = rank;
            while (r < q.size() && sgn(q[r][c]) == 0) ++r;
            if (r == q.size()) continue;
            std::swap(q[rank], q[r]);
            for (std::size_t i = rank + 1; i < q.size(); ++i) {
                if (sgn(q[i][c]) == 0) continue;
                const mpq_class f = q[i][c] / q[rank][c];
                for (std::size_t j = c; j < cols; ++j) q[i][j] -= f * q[rank][j];
            }
            ++rank;
        }
        return rank;
    }
    std::vector<std::vector<std::int64_t>> m;
    for (auto& row : a) {
        std::vector<std::int64_t> x;
        for (auto& v : row) {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
            x.push_back(static_cast<std::int64_t>(r.get_ui()));
        }
        m.push_back(std::move(x));
    }
    const std::int64_t P = p;
    auto inverse = [P](std::int64_t x) {
        std::int64_t r = 1, e = P - 2;
        for (x %= P; e; e >>= 1, x = x * x % P)
            if (e & 1) r = r * x % P;
        return r;
    };
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t r = rank;
        while (r < m.size() && m[r][c] == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[rank], m[r]);
        const std::int64_t inv = inverse(m[rank][c]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            const std::int64_t f = m[i][c] * inv % P;
            for (std::size_t j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % P + P) % P;
        }
        ++rank;
    }
    return rank;
}

/// dim of degree-k polynomials fixed by sigma_j for all j in J: the joint kernel
/// of the stacked (sigma_j - 1), transposed so that kernels become left kernels.
inline std::size_t invariant_dim(const CartanMatrix& m, IndexSet J, int k, std::uint32_t p) {
    const std::size_t n = monomials(k).size();
    std::vector<std::vector<mpz_class>> stacked(n);
    for (int j : J.labels()) {
        const auto d = minus_identity(reflection_matrix(m, j), k);
        for (std::size_t r = 0; r < n; ++r) stacked[r].insert(stacked[r].end(), d[r].begin(), d[r].end());
    }
    if (J.empty()) return n;
    return n - dense_rank(stacked, p);
}

/// Brute force over F_2: counts the degree-k polynomials fixed by every
/// sigma_j, j in J, by testing each of the 2^n coefficient vectors. Only
/// sensible for n = (k+1)(k+2)/2 <= 20.
inline std::uint64_t count_invariants_mod2(const CartanMatrix& m, IndexSet J, int k) {
    const auto mons = monomials(k);
    const std::size_t n = mons.size();
    if (n > 20) throw PreconditionViolation("brute force over 2^" + std::to_string(n) + " vectors");
    // columns of (sigma_j - 1) mod 2 as bitmasks: image of monomial i
    std::vector<std::vector<std::uint32_t>> images;
    for (int j : J.labels()) {
        const auto d = minus_identity(reflection_matrix(m, j), k);
        std::vector<std::uint32_t> img(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < n; ++c)
                if (mpz_odd_p(d[i][c].get_mpz_t())) img[i] |= 1u << c;
        images.push_back(std::move(img));
    }
    std::uint64_t count = 0;
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
        bool fixed = true;
        for (const auto& img : images) {
            std::uint32_t acc = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (v >> i & 1u) acc ^= img[i];
            if (acc) {
                fixed = false;
                break;
            }
        }
        count += fixed;
    }
    return count;
}

/// Coefficients of prod_i 1/(1 - t^{d_i}) up to t^N by repeated convolution.
inline std::vector<std::int64_t> expand_denominator(const std::vector<int>& degrees, int N) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(N) + 1, 0);
    c[0] = 1;
    for (int d : degrees) {
        std::vector<std::int64_t> next(c.size(), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i; j < c.size(); j += static_cast<std::size_t>(d)) next[j] += c[i];
        c = std::move(next);
    }
    return c;
}

} // namespace kmc::oracle
