// Set-based lattice evaluation over a finite element family.
//
// Elements are subsets of a carrier {0..n-1}. The family is closed under
// nothing in particular: join(x, y) is the least family element containing
// x ∪ y and is undefined when no containing element exists or no least one
// does. Complement is the plain set complement. Meet is derived from join by
// the De Morgan dual, matching how meets behave in orthomodular families:
// the meet can be strictly smaller than the set intersection when the
// intersection is not itself an element.

#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_logic.hpp"

namespace qlogic {

using ElementSet = std::vector<int>; // sorted, duplicate-free

namespace detail {

inline ElementSet normalized_set(ElementSet s, int carrier) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && (s.front() < 0 || s.back() >= carrier))
        throw std::invalid_argument("element out of carrier range");
    return s;
}

inline bool subset_of(const ElementSet& a, const ElementSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace detail

class LatticeFamily {
public:
    // Family from explicit subsets. ∅ and the full carrier are adjoined so
    // the family always has bounds; duplicates collapse. Elements are kept
    // sorted by (size, lexicographic content): the deterministic order every
    // search below walks in.
    static LatticeFamily from_sets(int carrier_size,
                                   std::vector<ElementSet> elements) {
        if (carrier_size <= 0)
            throw std::invalid_argument("LatticeFamily: empty carrier");
        std::set<ElementSet> pool;
        for (auto& e : elements)
            pool.insert(detail::normalized_set(std::move(e), carrier_size));
        pool.insert(ElementSet{});
        ElementSet full(carrier_size);
        for (int i = 0; i < carrier_size; ++i) full[i] = i;
        pool.insert(std::move(full));

        LatticeFamily fam;
        fam.carrier_ = carrier_size;
        fam.elements_.assign(pool.begin(), pool.end());
        std::sort(fam.elements_.begin(), fam.elements_.end(),
                  [](const ElementSet& a, const ElementSet& b) {
                      if (a.size() != b.size()) return a.size() < b.size();
                      return a < b;
                  });
        return fam;
    }

    // Family generated by a partition logic: all blocks of every context,
    // plus every union of blocks taken within a single context. That closure
    // keeps each context's worth of propositions present while leaving
    // cross-context combinations to join/meet evaluation.
    static LatticeFamily from_partition_logic(const PartitionLogic& pl) {
        std::vector<ElementSet> elems;
        for (const auto& ctx : pl.blocks) {
            const std::size_t m = ctx.size();
            if (m >= 20)
                throw std::invalid_argument(
                    "LatticeFamily: context too wide to expand");
            for (std::size_t mask = 1; mask < (1u << m); ++mask) {
                ElementSet e;
                for (std::size_t k = 0; k < m; ++k)
                    if (mask & (1u << k))
                        e.insert(e.end(), ctx[k].begin(), ctx[k].end());
                std::sort(e.begin(), e.end());
                elems.push_back(std::move(e));
            }
        }
        return from_sets(pl.state_count, std::move(elems));
    }

    int carrier_size() const { return carrier_; }
    const std::vector<ElementSet>& elements() const { return elements_; }

    bool contains(const ElementSet& e) const {
        return std::binary_search(
            elements_.begin(), elements_.end(), e,
            [](const ElementSet& a, const ElementSet& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
            });
    }

    ElementSet complement(const ElementSet& x) const {
        ElementSet out;
        std::size_t i = 0;
        for (int v = 0; v < carrier_; ++v) {
            if (i < x.size() && x[i] == v) { ++i; continue; }
            out.push_back(v);
        }
        return out;
    }

    // Least family element containing x ∪ y; nullopt when none exists or
    // the minimal containing elements are incomparable.
    std::optional<ElementSet> join(const ElementSet& x,
                                   const ElementSet& y) const {
        ElementSet u;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(),
                       std::back_inserter(u));
        std::optional<ElementSet> least;
        for (const auto& e : elements_) {
            if (!detail::subset_of(u, e)) continue;
            if (!least) { least = e; continue; }
            // Elements are size-ordered, so e can only tie or beat on size
            // when equal; a later candidate not containing the current least
            // means two incomparable minimal covers.
            if (detail::subset_of(*least, e)) continue;
            if (detail::subset_of(e, *least)) { least = e; continue; }
            return std::nullopt;
        }
        return least;
    }

    // De Morgan dual of join. Undefined exactly when the dual join is.
    std::optional<ElementSet> meet(const ElementSet& x,
                                   const ElementSet& y) const {
        auto j = join(complement(x), complement(y));
        if (!j) return std::nullopt;
        return complement(*j);
    }

private:
    int carrier_ = 0;
    std::vector<ElementSet> elements_;
};

// Expression tree over a family. Leaves must be family elements; evaluation
// returns nullopt when any join/meet along the way is undefined.
class LatticeExpr {
public:
    enum class Op { Leaf, Meet, Join, Complement };

    static LatticeExpr leaf(ElementSet e) {
        LatticeExpr x;
        x.op_ = Op::Leaf;
        x.leaf_ = std::move(e);
        return x;
    }
    static LatticeExpr meet(LatticeExpr a, LatticeExpr b) {
        return binary(Op::Meet, std::move(a), std::move(b));
    }
    static LatticeExpr join(LatticeExpr a, LatticeExpr b) {
        return binary(Op::Join, std::move(a), std::move(b));
    }
    static LatticeExpr complement(LatticeExpr a) {
        LatticeExpr x;
        x.op_ = Op::Complement;
        x.lhs_ = std::make_shared<LatticeExpr>(std::move(a));
        return x;
    }

    Op op() const { return op_; }
    const ElementSet& leaf_value() const { return leaf_; }
    const LatticeExpr& lhs() const { return *lhs_; }
    const LatticeExpr& rhs() const { return *rhs_; }

private:
    static LatticeExpr binary(Op op, LatticeExpr a, LatticeExpr b) {
        LatticeExpr x;
        x.op_ = op;
        x.lhs_ = std::make_shared<LatticeExpr>(std::move(a));
        x.rhs_ = std::make_shared<LatticeExpr>(std::move(b));
        return x;
    }

    Op op_ = Op::Leaf;
    ElementSet leaf_;
    std::shared_ptr<LatticeExpr> lhs_, rhs_;
};

// Evaluates an expression. Throws on malformed input (a leaf that is not a
// family element); returns nullopt for "undefined" results.
inline std::optional<ElementSet> lattice_eval(const LatticeFamily& fam,
                                              const LatticeExpr& expr) {
    switch (expr.op()) {
    case LatticeExpr::Op::Leaf: {
        if (!fam.contains(expr.leaf_value()))
            throw std::invalid_argument(
                "lattice_eval: leaf is not an element of the family");
        return expr.leaf_value();
    }
    case LatticeExpr::Op::Complement: {
        auto v = lattice_eval(fam, expr.lhs());
        if (!v) return std::nullopt;
        return fam.complement(*v);
    }
    case LatticeExpr::Op::Meet: {
        auto a = lattice_eval(fam, expr.lhs());
        auto b = lattice_eval(fam, expr.rhs());
        if (!a || !b) return std::nullopt;
        return fam.meet(*a, *b);
    }
    case LatticeExpr::Op::Join: {
        auto a = lattice_eval(fam, expr.lhs());
        auto b = lattice_eval(fam, expr.rhs());
        if (!a || !b) return std::nullopt;
        return fam.join(*a, *b);
    }
    }
    throw std::logic_error("lattice_eval: bad op");
}

struct DistributivityWitness {
    ElementSet x, y, z;
    std::optional<ElementSet> lhs; // x ∧ (y ∨ z)
    std::optional<ElementSet> rhs; // (x ∧ y) ∨ (x ∧ z)
};

// First triple (in the family's deterministic element order) where both
// sides of the distributive law are defined but differ. nullopt when the
// law holds across the whole family.
inline std::optional<DistributivityWitness>
find_nondistributive_witness(const LatticeFamily& fam) {
    const auto& es = fam.elements();
    for (const auto& x : es)
        for (const auto& y : es)
            for (const auto& z : es) {
                auto yz = fam.join(y, z);
                if (!yz) continue;
                auto lhs = fam.meet(x, *yz);
                if (!lhs) continue;
                auto xy = fam.meet(x, y);
                auto xz = fam.meet(x, z);
                if (!xy || !xz) continue;
                auto rhs = fam.join(*xy, *xz);
                if (!rhs) continue;
                if (*lhs != *rhs)
                    return DistributivityWitness{x, y, z, lhs, rhs};
            }
    return std::nullopt;
}

} // namespace qlogic
