#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmc/error.hpp"

namespace kmc {

/// Subset of the generator labels {1, 2, 3}.
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr IndexSet(std::initializer_list<int> labels) {
        for (int l : labels) bits_ |= bit(l);
    }
    static constexpr IndexSet from_bits(unsigned bits) {
        IndexSet s;
        s.bits_ = static_cast<std::uint8_t>(bits & 7u);
        return s;
    }
    static constexpr IndexSet all() { return from_bits(7u); }

    constexpr unsigned bits() const { return bits_; }
    constexpr bool contains(int label) const { return (bits_ & bit(label)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1); }
    constexpr bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }

    std::vector<int> labels() const {
        std::vector<int> out;
        for (int l = 1; l <= 3; ++l)
            if (contains(l)) out.push_back(l);
        return out;
    }

    /// Concatenated labels, e.g. "12"; empty string for the empty set.
    std::string digits() const {
        std::string s;
        for (int l : labels()) s += static_cast<char>('0' + l);
        return s;
    }

    /// "{1,2}" style.
    std::string to_string() const {
        std::string s = "{";
        for (int l : labels()) {
            if (s.size() > 1) s += ",";
            s += static_cast<char>('0' + l);
        }
        return s + "}";
    }

    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return from_bits(a.bits_ | b.bits_); }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return from_bits(a.bits_ & b.bits_); }
    friend constexpr bool operator==(IndexSet, IndexSet) = default;
    friend constexpr auto operator<=>(IndexSet a, IndexSet b) {
        // by size, then lexicographically by labels
        if (a.size() != b.size()) return a.size() <=> b.size();
        return order_key(a) <=> order_key(b);
    }

private:
    static constexpr unsigned bit(int label) {
        return (label >= 1 && label <= 3) ? (1u << (label - 1)) : 0u;
    }
    static constexpr unsigned order_key(IndexSet s) {
        // {1,2} < {1,3} < {2,3}; {1} < {2} < {3}
        unsigned key = 0;
        for (int l = 1; l <= 3; ++l)
            if (s.contains(l)) key = key * 4 + static_cast<unsigned>(l);
        return key;
    }
    std::uint8_t bits_ = 0;
};

/// Relabeling of {1,2,3}; image[i-1] is the new label of i.
class Permutation {
public:
    constexpr Permutation() = default;
    constexpr explicit Permutation(std::array<int, 3> image) : image_(image) {}

    constexpr int operator()(int label) const { return image_[label - 1]; }
    constexpr const std::array<int, 3>& image() const { return image_; }

    IndexSet apply(IndexSet s) const {
        IndexSet out;
        for (int l : s.labels()) out = out | IndexSet{(*this)(l)};
        return out;
    }
    Permutation inverse() const {
        std::array<int, 3> inv{};
        for (int i = 1; i <= 3; ++i) inv[image_[i - 1] - 1] = i;
        return Permutation(inv);
    }
    bool is_identity() const { return image_ == std::array<int, 3>{1, 2, 3}; }

    static std::vector<Permutation> all_lexicographic() {
        std::array<int, 3> a{1, 2, 3};
        std::vector<Permutation> out;
        do {
            out.emplace_back(a);
        } while (std::next_permutation(a.begin(), a.end()));
        return out;
    }

    friend constexpr bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::array<int, 3> image_{1, 2, 3};
};

enum class MatrixType { Finite, Affine, Indefinite };

inline std::string to_string(MatrixType t) {
    switch (t) {
    case MatrixType::Finite: return "Finite";
    case MatrixType::Affine: return "Affine";
    case MatrixType::Indefinite: return "Indefinite";
    }
    return "?";
}

/// Rank-3 generalized Cartan matrix. Construction validates the axioms and
/// fills in decomposability, type, and symmetrizability.
class CartanMatrix {
public:
    using Entries = std::array<std::array<int, 3>, 3>;

    static CartanMatrix from_entries(const Entries& a) {
        for (int i = 0; i < 3; ++i) {
            if (a[i][i] != 2)
                throw AxiomViolation("diagonal entry a" + std::to_string(i + 1) + std::to_string(i + 1) +
                                     " = " + std::to_string(a[i][i]) + " (must be 2)");
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                if (a[i][j] > 0)
                    throw AxiomViolation("off-diagonal entry a" + std::to_string(i + 1) + std::to_string(j + 1) +
                                         " = " + std::to_string(a[i][j]) + " is positive");
                if ((a[i][j] == 0) != (a[j][i] == 0))
                    throw AxiomViolation("a" + std::to_string(i + 1) + std::to_string(j + 1) + " = " +
                                         std::to_string(a[i][j]) + " but a" + std::to_string(j + 1) +
                                         std::to_string(i + 1) + " = " + std::to_string(a[j][i]) +
                                         " (zeros must be paired)");
            }
        }
        CartanMatrix m;
        m.a_ = a;
        int edges = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (a[i][j] != 0) ++edges;
        // three vertices are connected iff at least two of the three possible edges exist
        m.indecomposable_ = edges >= 2;
        m.symmetrizable_ = static_cast<long long>(a[0][1]) * a[1][2] * a[2][0] ==
                           static_cast<long long>(a[0][2]) * a[2][1] * a[1][0];
        if (m.indecomposable_) m.type_ = type_from_minors(m);
        return m;
    }

    /// 1-based access a_ij.
    int operator()(int i, int j) const { return a_[i - 1][j - 1]; }
    const Entries& entries() const { return a_; }

    bool indecomposable() const { return indecomposable_; }
    bool symmetrizable() const { return symmetrizable_; }
    /// Present only for indecomposable matrices.
    std::optional<MatrixType> matrix_type() const { return type_; }

    long long pair_product(int i, int j) const { return static_cast<long long>((*this)(i, j)) * (*this)(j, i); }

    long long determinant() const {
        const auto& a = a_;
        return static_cast<long long>(a[0][0]) * (static_cast<long long>(a[1][1]) * a[2][2] - static_cast<long long>(a[1][2]) * a[2][1]) -
               static_cast<long long>(a[0][1]) * (static_cast<long long>(a[1][0]) * a[2][2] - static_cast<long long>(a[1][2]) * a[2][0]) +
               static_cast<long long>(a[0][2]) * (static_cast<long long>(a[1][0]) * a[2][1] - static_cast<long long>(a[1][1]) * a[2][0]);
    }

    /// Simultaneous row/column relabeling: result(perm(i), perm(j)) = a_ij.
    CartanMatrix permuted(const Permutation& perm) const {
        Entries b{};
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) b[perm(i) - 1][perm(j) - 1] = (*this)(i, j);
        return from_entries(b);
    }

    /// Matrix literal, rows separated by ';' and entries by ','.
    std::string literal() const {
        std::string s;
        for (int i = 0; i < 3; ++i) {
            if (i) s += ";";
            for (int j = 0; j < 3; ++j) {
                if (j) s += ",";
                s += std::to_string(a_[i][j]);
            }
        }
        return s;
    }

    friend bool operator==(const CartanMatrix& x, const CartanMatrix& y) { return x.a_ == y.a_; }

private:
    static MatrixType type_from_minors(const CartanMatrix& m) {
        // 1x1 minors are all 2; proper 2x2 principal minors are 4 - a_ij a_ji.
        const bool proper_positive =
            m.pair_product(1, 2) < 4 && m.pair_product(1, 3) < 4 && m.pair_product(2, 3) < 4;
        const long long det = m.determinant();
        if (proper_positive && det > 0) return MatrixType::Finite;
        if (proper_positive && det == 0) return MatrixType::Affine;
        return MatrixType::Indefinite;
    }

    Entries a_{};
    bool indecomposable_ = false;
    bool symmetrizable_ = false;
    std::optional<MatrixType> type_;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Parse "2,-1,-3;-3,2,-1;-2,-4,2".
inline CartanMatrix parse_matrix(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw SyntaxError("empty matrix literal");
    std::vector<std::vector<int>> rows;
    for (auto row_text : split(text, ';')) {
        std::vector<int> row;
        for (auto cell : split(row_text, ',')) {
            cell = trim(cell);
            if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
            int v = 0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
                throw SyntaxError("cannot read integer entry '" + std::string(cell) + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != 3)
        throw NotRank3("expected 3 rows, found " + std::to_string(rows.size()));
    CartanMatrix::Entries e{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (rows[i].size() != 3)
            throw NotRank3("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                           " entries, expected 3");
        for (std::size_t j = 0; j < 3; ++j) e[i][j] = rows[i][j];
    }
    return CartanMatrix::from_entries(e);
}

inline MatrixType classify_type(const CartanMatrix& m) {
    if (!m.indecomposable())
        throw DecomposableInput("matrix " + m.literal() + " is decomposable");
    return *m.matrix_type();
}

/// Coxeter data of the pair {k, j}.
struct Rank2Type {
    long long product = 0;   // a_kj * a_jk
    int coxeter_order = 0;   // 2, 3, 4, 6, or 0 for infinity
    bool is_g2 = false;

    bool finite() const { return coxeter_order != 0; }

    /// "A1xA1", "A2", "B2", "G2" or "infinite".
    std::string name() const {
        switch (coxeter_order) {
        case 2: return "A1xA1";
        case 3: return "A2";
        case 4: return "B2";
        case 6: return "G2";
        default: return "infinite";
        }
    }
    /// Order of the dihedral group generated by the two reflections (0 if infinite).
    int weyl_order() const { return 2 * coxeter_order; }
};

inline Rank2Type rank2_type(const CartanMatrix& m, int k, int j) {
    Rank2Type t;
    t.product = m.pair_product(k, j);
    switch (t.product) {
    case 0: t.coxeter_order = 2; break;
    case 1: t.coxeter_order = 3; break;
    case 2: t.coxeter_order = 4; break;
    case 3: t.coxeter_order = 6; break;
    default: t.coxeter_order = 0; break;
    }
    t.is_g2 = t.product == 3;
    return t;
}

enum class ParabolicClass { I, II, III, IV };
enum class RefinedClass { i, ii, iii, iv, v, vi, vii, viii, ix, x };

inline std::string to_string(ParabolicClass c) {
    static constexpr std::array<const char*, 4> names{"I", "II", "III", "IV"};
    return names[static_cast<int>(c)];
}
inline std::string to_string(RefinedClass c) {
    static constexpr std::array<const char*, 10> names{"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x"};
    return names[static_cast<int>(c)];
}

inline ParabolicClass coarse_class(RefinedClass r) {
    switch (r) {
    case RefinedClass::i: return ParabolicClass::I;
    case RefinedClass::ii:
    case RefinedClass::iii: return ParabolicClass::II;
    case RefinedClass::iv:
    case RefinedClass::v:
    case RefinedClass::vi: return ParabolicClass::III;
    default: return ParabolicClass::IV;
    }
}

/// The three pairs in canonical order.
inline constexpr std::array<IndexSet, 3> kPairs{IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}};

/// Finite and G2 pairs of the canonical representative (in canonical labels).
struct CanonicalShape {
    std::vector<IndexSet> finite_pairs;
    std::vector<IndexSet> g2_pairs;
};

inline CanonicalShape canonical_shape(RefinedClass r) {
    const IndexSet p12{1, 2}, p13{1, 3}, p23{2, 3};
    switch (r) {
    case RefinedClass::i: return {{}, {}};
    case RefinedClass::ii: return {{p12}, {}};
    case RefinedClass::iii: return {{p12}, {p12}};
    case RefinedClass::iv: return {{p12, p13}, {}};
    case RefinedClass::v: return {{p12, p13}, {p12}};
    case RefinedClass::vi: return {{p12, p13}, {p12, p13}};
    case RefinedClass::vii: return {{p12, p13, p23}, {}};
    case RefinedClass::viii: return {{p12, p13, p23}, {p12}};
    case RefinedClass::ix: return {{p12, p13, p23}, {p12, p13}};
    case RefinedClass::x: return {{p12, p13, p23}, {p12, p13, p23}};
    }
    return {};
}

/// Maximal finite-type parabolic subsets in canonical labels.
inline std::vector<IndexSet> canonical_maximal_finite(ParabolicClass c) {
    switch (c) {
    case ParabolicClass::I: return {IndexSet{1}, IndexSet{2}, IndexSet{3}};
    case ParabolicClass::II: return {IndexSet{3}, IndexSet{1, 2}};
    case ParabolicClass::III: return {IndexSet{1, 2}, IndexSet{1, 3}};
    case ParabolicClass::IV: return {IndexSet{1, 2}, IndexSet{1, 3}, IndexSet{2, 3}};
    }
    return {};
}

struct ParabolicProfile {
    std::vector<IndexSet> finite_subsets;  // sorted, includes the empty set
    std::vector<IndexSet> maximal_finite;  // P(A), sorted
    ParabolicClass class_label = ParabolicClass::I;
    RefinedClass refined_label = RefinedClass::i;
    std::map<IndexSet, Rank2Type> rank2_types;  // finite pairs only
    /// Maps input labels to canonical labels.
    Permutation permutation;

    bool is_finite(IndexSet s) const {
        return std::find(finite_subsets.begin(), finite_subsets.end(), s) != finite_subsets.end();
    }
    bool is_g2(IndexSet pair) const {
        auto it = rank2_types.find(pair);
        return it != rank2_types.end() && it->second.is_g2;
    }
    /// Input-label subset corresponding to a canonical-label subset.
    IndexSet to_input(IndexSet canonical) const { return permutation.inverse().apply(canonical); }
};

inline ParabolicProfile parabolic_profile(const CartanMatrix& m) {
    const MatrixType type = classify_type(m);
    if (type == MatrixType::Finite)
        throw FiniteTypeInput("matrix " + m.literal() + " is of finite type; no infinite-type classification applies");

    ParabolicProfile prof;
    prof.finite_subsets = {IndexSet{}, IndexSet{1}, IndexSet{2}, IndexSet{3}};
    std::vector<IndexSet> finite_pairs, g2_pairs;
    for (IndexSet pair : kPairs) {
        const auto labels = pair.labels();
        const Rank2Type t = rank2_type(m, labels[0], labels[1]);
        if (!t.finite()) continue;
        prof.finite_subsets.push_back(pair);
        prof.rank2_types[pair] = t;
        finite_pairs.push_back(pair);
        if (t.is_g2) g2_pairs.push_back(pair);
    }
    std::sort(prof.finite_subsets.begin(), prof.finite_subsets.end());

    for (IndexSet s : prof.finite_subsets) {
        if (s.empty()) continue;
        const bool maximal = std::none_of(prof.finite_subsets.begin(), prof.finite_subsets.end(),
                                          [&](IndexSet t) { return t != s && s.subset_of(t); });
        if (maximal) prof.maximal_finite.push_back(s);
    }
    std::sort(prof.maximal_finite.begin(), prof.maximal_finite.end());

    const auto nf = finite_pairs.size();
    const auto ng = g2_pairs.size();
    switch (nf) {
    case 0: prof.refined_label = RefinedClass::i; break;
    case 1: prof.refined_label = ng ? RefinedClass::iii : RefinedClass::ii; break;
    case 2: prof.refined_label = ng == 0 ? RefinedClass::iv : ng == 1 ? RefinedClass::v : RefinedClass::vi; break;
    default:
        prof.refined_label = ng == 0   ? RefinedClass::vii
                             : ng == 1 ? RefinedClass::viii
                             : ng == 2 ? RefinedClass::ix
                                       : RefinedClass::x;
    }
    prof.class_label = coarse_class(prof.refined_label);

    const CanonicalShape shape = canonical_shape(prof.refined_label);
    auto in = [](const std::vector<IndexSet>& v, IndexSet s) { return std::find(v.begin(), v.end(), s) != v.end(); };
    bool found = false;
    for (const Permutation& perm : Permutation::all_lexicographic()) {
        const bool ok = std::all_of(kPairs.begin(), kPairs.end(), [&](IndexSet pair) {
            const IndexSet image = perm.apply(pair);
            return in(finite_pairs, pair) == in(shape.finite_pairs, image) &&
                   in(g2_pairs, pair) == in(shape.g2_pairs, image);
        });
        if (ok) {
            prof.permutation = perm;
            found = true;
            break;
        }
    }
    if (!found) throw InternalInconsistency("no relabeling reaches the canonical form of class " + to_string(prof.refined_label));
    return prof;
}

} // namespace kmc
