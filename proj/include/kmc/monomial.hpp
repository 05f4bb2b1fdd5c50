#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "kmc/error.hpp"

namespace kmc {

using Exponent = std::array<int, 3>;

/// Number of monomials of degree k in three variables.
constexpr std::size_t monomial_count(int k) {
    return k < 0 ? 0 : static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k + 2) / 2;
}

/// Position of w1^e1 w2^e2 w3^e3 in the degree-(e1+e2+e3) basis.
/// Order: exponent triples sorted lexicographically descending, so w1^k comes first.
constexpr std::size_t monomial_index(const Exponent& e) {
    const int k = e[0] + e[1] + e[2];
    const std::size_t a = static_cast<std::size_t>(k - e[0]);
    return a * (a + 1) / 2 + static_cast<std::size_t>(k - e[0] - e[1]);
}

/// Monomials in w1, w2, w3 of polynomial degree k (cohomological degree 2k).
class MonomialBasis {
public:
    explicit MonomialBasis(int k) : k_(k) {
        if (k < 0) throw PreconditionViolation("negative polynomial degree " + std::to_string(k));
        monomials_.reserve(monomial_count(k));
        for (int e1 = k; e1 >= 0; --e1)
            for (int e2 = k - e1; e2 >= 0; --e2) monomials_.push_back({e1, e2, k - e1 - e2});
    }

    int poly_degree() const { return k_; }
    int cohomological_degree() const { return 2 * k_; }
    std::size_t size() const { return monomials_.size(); }
    const Exponent& operator[](std::size_t i) const { return monomials_[i]; }
    std::size_t index_of(const Exponent& e) const { return monomial_index(e); }
    const std::vector<Exponent>& monomials() const { return monomials_; }

private:
    int k_;
    std::vector<Exponent> monomials_;
};

/// "w1^2*w3" style rendering of a monomial.
inline std::string monomial_string(const Exponent& e) {
    std::string s;
    for (int i = 0; i < 3; ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "w" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

} // namespace kmc
