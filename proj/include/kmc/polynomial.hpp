#pragma once

#include <string>
#include <vector>

#include "kmc/linalg.hpp"
#include "kmc/monomial.hpp"

namespace kmc {

/// Homogeneous polynomial of degree k as a coordinate row over MonomialBasis(k).
template <class F>
struct HomogeneousPoly {
    int degree = 0;
    typename F::Row coeffs;
};

template <class F>
HomogeneousPoly<F> variable(const F& field, int i) {
    HomogeneousPoly<F> p{1, typename F::Row(3, field.zero())};
    p.coeffs[static_cast<std::size_t>(i - 1)] = field.one();
    return p;
}

template <class F>
HomogeneousPoly<F> multiply(const F& field, const HomogeneousPoly<F>& a, const HomogeneousPoly<F>& b) {
    const MonomialBasis ba(a.degree), bb(b.degree);
    HomogeneousPoly<F> out{a.degree + b.degree, typename F::Row(monomial_count(a.degree + b.degree), field.zero())};
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (field.is_zero(a.coeffs[i])) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) {
            if (field.is_zero(b.coeffs[j])) continue;
            const Exponent e{ba[i][0] + bb[j][0], ba[i][1] + bb[j][1], ba[i][2] + bb[j][2]};
            auto& slot = out.coeffs[monomial_index(e)];
            if constexpr (std::is_same_v<F, RationalField>)
                slot += a.coeffs[i] * b.coeffs[j];
            else
                slot = field.add(slot, field.mul(a.coeffs[i], b.coeffs[j]));
        }
    }
    return out;
}

template <class F>
HomogeneousPoly<F> power(const F& field, const HomogeneousPoly<F>& a, int n) {
    HomogeneousPoly<F> out{0, typename F::Row{field.one()}};
    for (int i = 0; i < n; ++i) out = multiply(field, out, a);
    return out;
}

/// "2*w1^2 - w1*w3" style rendering of integer coordinates.
template <class Scalar>
std::string polynomial_text(int degree, const std::vector<Scalar>& coeffs) {
    const MonomialBasis basis(degree);
    std::string s;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Scalar& c = coeffs[i];
        if (c == 0) continue;
        const bool negative = c < 0;
        const Scalar mag = negative ? Scalar(-c) : c;
        s += s.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
        const std::string mono = monomial_string(basis[i]);
        if (mag != 1 || mono == "1") {
            if constexpr (std::is_integral_v<Scalar>)
                s += std::to_string(mag);
            else
                s += mag.get_str();
            if (mono != "1") s += "*";
        }
        if (mono != "1") s += mono;
    }
    return s.empty() ? "0" : s;
}

} // namespace kmc
