#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kmc/cartan.hpp"
#include "kmc/graded_subspace.hpp"
#include "kmc/invariants.hpp"

namespace kmc {

/// Expression over invariant rings P_J built from + and intersection.
/// Constructors normalize: nested operations are flattened, sums drop any P_K
/// contained in another term P_J (J subset of K), and intersections of atoms
/// merge into one atom since P_J and P_K together are invariant under W_{J u K}.
class LatticeExpr {
public:
    enum class Op { Atom, Sum, Intersect };

    static LatticeExpr atom(IndexSet J) {
        LatticeExpr e;
        e.op_ = Op::Atom;
        e.set_ = J;
        return e;
    }

    static LatticeExpr sum(std::vector<LatticeExpr> terms) {
        std::vector<LatticeExpr> flat;
        for (auto& t : terms) {
            if (t.op_ == Op::Sum)
                flat.insert(flat.end(), t.terms_.begin(), t.terms_.end());
            else
                flat.push_back(std::move(t));
        }
        std::vector<LatticeExpr> kept;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            const bool redundant = flat[i].op_ == Op::Atom &&
                                   std::any_of(flat.begin(), flat.end(), [&](const LatticeExpr& o) {
                                       return o.op_ == Op::Atom && o.set_ != flat[i].set_ &&
                                              o.set_.subset_of(flat[i].set_);
                                   });
            if (!redundant) kept.push_back(flat[i]);
        }
        return combine(Op::Sum, std::move(kept));
    }

    static LatticeExpr intersect(std::vector<LatticeExpr> terms) {
        std::vector<LatticeExpr> flat;
        IndexSet merged;
        bool any_atom = false;
        for (auto& t : terms) {
            if (t.op_ == Op::Intersect) {
                for (auto& s : t.terms_) {
                    if (s.op_ == Op::Atom) {
                        merged = merged | s.set_;
                        any_atom = true;
                    } else {
                        flat.push_back(s);
                    }
                }
            } else if (t.op_ == Op::Atom) {
                merged = merged | t.set_;
                any_atom = true;
            } else {
                flat.push_back(std::move(t));
            }
        }
        if (any_atom) flat.push_back(atom(merged));
        return combine(Op::Intersect, std::move(flat));
    }

    Op op() const { return op_; }
    IndexSet set() const { return set_; }
    const std::vector<LatticeExpr>& terms() const { return terms_; }

    LatticeExpr relabeled(const Permutation& perm) const {
        if (op_ == Op::Atom) return atom(perm.apply(set_));
        std::vector<LatticeExpr> mapped;
        for (const auto& t : terms_) mapped.push_back(t.relabeled(perm));
        return op_ == Op::Sum ? sum(std::move(mapped)) : intersect(std::move(mapped));
    }

    /// "P1∩(P2+P3)"; the full ring is "P".
    std::string to_string() const {
        if (op_ == Op::Atom) return "P" + set_.digits();
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += op_ == Op::Sum ? "+" : "∩";
            const bool paren = t.op_ != Op::Atom && op_ == Op::Intersect;
            s += paren ? "(" + t.to_string() + ")" : t.to_string();
        }
        return s;
    }

    friend bool operator==(const LatticeExpr& a, const LatticeExpr& b) { return a.to_string() == b.to_string(); }

private:
    static LatticeExpr combine(Op op, std::vector<LatticeExpr> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const LatticeExpr& a, const LatticeExpr& b) { return a.to_string() < b.to_string(); });
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        if (terms.size() == 1) return terms.front();
        LatticeExpr e;
        e.op_ = op;
        e.terms_ = std::move(terms);
        return e;
    }

    Op op_ = Op::Atom;
    IndexSet set_;
    std::vector<LatticeExpr> terms_;
};

/// Evaluates expressions against an invariant engine, caching by expression text.
template <class F>
class LatticeEvaluator {
public:
    explicit LatticeEvaluator(InvariantEngine<F>& engine) : engine_(engine) {}

    const GradedSubspace<F>& evaluate(const LatticeExpr& e) {
        if (e.op() == LatticeExpr::Op::Atom) return engine_.ring(e.set()).space;
        const std::string key = e.to_string();
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        GradedSubspace<F> acc = evaluate(e.terms().front());
        for (std::size_t i = 1; i < e.terms().size(); ++i) {
            const auto& next = evaluate(e.terms()[i]);
            acc = e.op() == LatticeExpr::Op::Sum ? subspace_sum(acc, next) : subspace_intersect(acc, next);
        }
        return cache_.emplace(key, std::move(acc)).first->second;
    }

    InvariantEngine<F>& engine() { return engine_; }

private:
    InvariantEngine<F>& engine_;
    std::map<std::string, GradedSubspace<F>> cache_;
};

} // namespace kmc
