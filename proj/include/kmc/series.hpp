#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmc/error.hpp"

namespace kmc {

/// Integer power series sum c_d t^d for d = 0..N, indexed by cohomological degree.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(int N) : c_(static_cast<std::size_t>(check_n(N)) + 1, 0) {}
    TruncatedSeries(int N, std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) {
        c_.resize(static_cast<std::size_t>(check_n(N)) + 1, 0);
    }

    /// The constant series 1.
    static TruncatedSeries one(int N) {
        TruncatedSeries s(N);
        s.c_[0] = 1;
        return s;
    }
    /// t^d (zero if d > N).
    static TruncatedSeries monomial(int N, int d, std::int64_t coeff = 1) {
        TruncatedSeries s(N);
        if (d >= 0 && d <= N) s.c_[static_cast<std::size_t>(d)] = coeff;
        return s;
    }

    int truncation() const { return static_cast<int>(c_.size()) - 1; }
    std::int64_t operator[](int d) const { return c_.at(static_cast<std::size_t>(d)); }
    std::int64_t& operator[](int d) { return c_.at(static_cast<std::size_t>(d)); }
    const std::vector<std::int64_t>& coefficients() const { return c_; }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        same_truncation(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        same_truncation(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.same_truncation(b);
        TruncatedSeries out(a.truncation());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < a.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }
    TruncatedSeries scaled(std::int64_t k) const {
        TruncatedSeries out = *this;
        for (auto& x : out.c_) x *= k;
        return out;
    }

    /// Multiplication by t^k; terms pushed past N are dropped.
    TruncatedSeries shift(int k) const {
        if (k < 0) throw PreconditionViolation("negative shift " + std::to_string(k));
        TruncatedSeries out(truncation());
        for (std::size_t i = 0; i + static_cast<std::size_t>(k) < c_.size(); ++i)
            out.c_[i + static_cast<std::size_t>(k)] = c_[i];
        return out;
    }

    /// Same coefficients cut to a smaller truncation.
    TruncatedSeries truncated(int N) const {
        if (N > truncation())
            throw TruncationMismatch("cannot extend a series known to t^" + std::to_string(truncation()) +
                                     " to t^" + std::to_string(N));
        return TruncatedSeries(N, std::vector<std::int64_t>(c_.begin(), c_.begin() + N + 1));
    }

    /// Least degree where the two differ, if any.
    std::optional<int> first_difference(const TruncatedSeries& o) const {
        same_truncation(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return static_cast<int>(i);
        return std::nullopt;
    }

    bool is_zero() const { return std::all_of(c_.begin(), c_.end(), [](auto x) { return x == 0; }); }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    static int check_n(int N) {
        if (N < 0) throw PreconditionViolation("negative truncation " + std::to_string(N));
        return N;
    }
    void same_truncation(const TruncatedSeries& o) const {
        if (truncation() != o.truncation())
            throw TruncationMismatch("series truncated at t^" + std::to_string(truncation()) + " and t^" +
                                     std::to_string(o.truncation()));
    }

    std::vector<std::int64_t> c_{0};
};

/// "1 + 2t^7 - t^9" style; "0" for the zero polynomial.
inline std::string polynomial_string(const std::vector<std::int64_t>& coeffs) {
    std::string s;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        const std::int64_t c = coeffs[d];
        if (c == 0) continue;
        const std::int64_t mag = c < 0 ? -c : c;
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (mag != 1 || d == 0) s += std::to_string(mag);
        if (d >= 1) s += "t";
        if (d >= 2) s += "^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

inline std::string series_string(const TruncatedSeries& s) {
    return polynomial_string(s.coefficients()) + " + O(t^" + std::to_string(s.truncation() + 1) + ")";
}

/// numerator(t) / prod_d (1 - t^d).
struct FactoredRational {
    std::vector<std::int64_t> numerator;  // coefficient of t^i at index i
    std::vector<int> denominator_exponents;

    TruncatedSeries expand(int N) const {
        std::vector<std::int64_t> c(static_cast<std::size_t>(N) + 1, 0);
        for (std::size_t i = 0; i < numerator.size() && i < c.size(); ++i) c[i] = numerator[i];
        for (int d : denominator_exponents) {
            if (d <= 0) throw PreconditionViolation("denominator factor (1-t^" + std::to_string(d) + ")");
            for (std::size_t i = static_cast<std::size_t>(d); i < c.size(); ++i) c[i] += c[i - static_cast<std::size_t>(d)];
        }
        return TruncatedSeries(N, std::move(c));
    }

    /// "(1 + t^5)/((1-t^4)(1-t^6))"; repeated factors are written with a power.
    std::string to_string() const {
        std::map<int, int> mult;
        for (int d : denominator_exponents) ++mult[d];
        std::string den;
        for (auto [d, k] : mult) {
            den += "(1-t" + (d == 1 ? std::string() : "^" + std::to_string(d)) + ")";
            if (k > 1) den += "^" + std::to_string(k);
        }
        std::string num = polynomial_string(numerator);
        if (den.empty()) return num;
        const bool single_term = std::count_if(numerator.begin(), numerator.end(), [](auto x) { return x != 0; }) <= 1;
        if (!single_term) num = "(" + num + ")";
        if (mult.size() > 1 || (mult.size() == 1 && mult.begin()->second > 1)) den = "(" + den + ")";
        return num + "/" + den;
    }

    friend bool operator==(const FactoredRational&, const FactoredRational&) = default;
};

/// Multiplies s by prod (1 - t^d). Succeeds when the top guard window (the last
/// max(d) coefficients up to N) vanishes; returns the polynomial without trailing zeros.
inline std::optional<std::vector<std::int64_t>> reconstruct_numerator(const TruncatedSeries& s,
                                                                      const std::vector<int>& denominator_exponents) {
    std::vector<std::int64_t> q = s.coefficients();
    int guard = 0;
    for (int d : denominator_exponents) {
        if (d <= 0) throw PreconditionViolation("denominator factor (1-t^" + std::to_string(d) + ")");
        guard = std::max(guard, d);
        for (std::size_t i = q.size(); i-- > static_cast<std::size_t>(d);) q[i] -= q[i - static_cast<std::size_t>(d)];
    }
    if (guard > static_cast<int>(q.size())) return std::nullopt;
    for (std::size_t i = q.size() - static_cast<std::size_t>(guard); i < q.size(); ++i)
        if (q[i] != 0) return std::nullopt;
    while (!q.empty() && q.back() == 0) q.pop_back();
    return q;
}

} // namespace kmc
