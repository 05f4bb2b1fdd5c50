#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kmc/error.hpp"

namespace kmc {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Coefficient field of a computation: the rationals or a prime field F_p.
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }

    static FieldSpec prime(std::uint32_t p) {
        if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
        // products of two residues must fit in 64 bits
        if (p >= (1u << 31)) throw NotPrime("prime " + std::to_string(p) + " exceeds 2^31");
        return FieldSpec{Kind::PrimeField, p};
    }

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rationals; }
    std::uint32_t characteristic() const { return p_; }

    /// "Q" or "F<p>".
    std::string name() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    FieldSpec(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::uint32_t p_;
};

/// Arithmetic policy for F_p. Rows are dense vectors of residues in [0, p).
class PrimeField {
public:
    using Scalar = std::uint32_t;
    using Row = std::vector<Scalar>;

    explicit PrimeField(std::uint32_t p) : spec_(FieldSpec::prime(p)), p_(p) {}

    FieldSpec spec() const { return spec_; }
    std::uint32_t modulus() const { return p_; }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1 % p_; }

    Scalar from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<Scalar>(r < 0 ? r + p_ : r);
    }
    Scalar from_int(const mpz_class& v) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
        return static_cast<Scalar>(r.get_ui());
    }

    bool is_zero(Scalar s) const { return s == 0; }
    Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
    Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
    Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }

    Scalar inv(Scalar a) const {
        // Fermat; a != 0
        std::uint64_t base = a, result = 1, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<Scalar>(result);
    }

    /// Scale so that row[lead] == 1.
    void normalize(Row& row, std::size_t lead) const {
        const Scalar s = inv(row[lead]);
        if (s == 1) return;
        for (std::size_t i = lead; i < row.size(); ++i) row[i] = mul(row[i], s);
    }

    /// target -= target[col] * pivot, where pivot[col] == 1 and pivot is zero before col.
    void eliminate(Row& target, const Row& pivot, std::size_t col) const {
        const Scalar c = target[col];
        if (c == 0) return;
        const std::uint64_t m = p_ - c;
        for (std::size_t i = col; i < target.size(); ++i)
            if (pivot[i]) target[i] = static_cast<Scalar>((target[i] + m * pivot[i]) % p_);
    }

    /// Pivot preference when several rows are eligible; lower is better.
    std::size_t pivot_cost(const Row&, std::size_t) const { return 0; }

private:
    FieldSpec spec_;
    std::uint32_t p_;
};

/// Arithmetic policy for Q. Vectors are stored projectively as primitive
/// integer rows (content 1, first nonzero entry positive), so every
/// elimination step is fraction-free.
class RationalField {
public:
    using Scalar = mpz_class;
    using Row = std::vector<Scalar>;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    Scalar from_int(long long v) const { return Scalar(static_cast<long>(v)); }
    Scalar from_int(const mpz_class& v) const { return v; }

    bool is_zero(const Scalar& s) const { return sgn(s) == 0; }

    /// Divide by the content and make row[lead] positive.
    void normalize(Row& row, std::size_t lead) const {
        make_primitive(row);
        if (sgn(row[lead]) < 0)
            for (auto& x : row) x = -x;
    }

    static void make_primitive(Row& row) {
        mpz_class g = 0;
        for (const auto& x : row) {
            if (sgn(x) == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) return;
        }
        if (g <= 1) return;
        for (auto& x : row)
            if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }

    /// target := pivot[col] * target - target[col] * pivot, then primitive.
    void eliminate(Row& target, const Row& pivot, std::size_t col) const {
        if (sgn(target[col]) == 0) return;
        const mpz_class d = pivot[col];
        const mpz_class c = target[col];
        for (std::size_t i = 0; i < target.size(); ++i) {
            if (sgn(pivot[i]) == 0) {
                if (sgn(target[i]) != 0 && d != 1) target[i] *= d;
                continue;
            }
            if (d != 1) target[i] *= d;
            mpz_submul(target[i].get_mpz_t(), c.get_mpz_t(), pivot[i].get_mpz_t());
        }
        make_primitive(target);
    }

    std::size_t pivot_cost(const Row& row, std::size_t col) const {
        return mpz_sizeinbase(row[col].get_mpz_t(), 2);
    }
};

/// Runs fn with the arithmetic policy matching f.
template <class Fn>
decltype(auto) with_field(FieldSpec f, Fn&& fn) {
    if (f.is_rational()) return fn(RationalField{});
    return fn(PrimeField(f.characteristic()));
}

} // namespace kmc
