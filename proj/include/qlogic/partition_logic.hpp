// Partition logics: the state-indexed view of an orthogonality hypergraph.
//
// Fix the canonical state list S = enumerate_two_valued_states(logic). Each
// context c induces a partition of {0..|S|-1}: state i sits in the block of
// the atom that i makes true within c. Blocks are kept in the context's atom
// order, so "block index within context c" is a stable symbol. A ball type
// is the tuple of those symbols, one per context; it is a complete recipe
// for answering every context's question about one underlying state.

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ortho_logic.hpp"

namespace qlogic {

struct PartitionLogic {
    int state_count = 0;
    // blocks[c][k] = sorted state ids; k runs in context c's atom order.
    // Empty blocks (atoms true in no state) never occur here; construction
    // requires a unital state set.
    std::vector<std::vector<std::vector<int>>> blocks;
    // block_atom[c][k] = atom id the block answers for.
    std::vector<std::vector<int>> block_atom;

    int context_count() const { return static_cast<int>(blocks.size()); }
};

// Per-state symbol tuple; symbols[c] is the block index within context c.
struct BallType {
    std::vector<int> symbols;

    // Compact digit string ("012") when every symbol is a single digit,
    // dotted ("0.10.2") otherwise.
    std::string to_string() const {
        bool compact = true;
        for (int s : symbols) compact = compact && s >= 0 && s <= 9;
        std::string out;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (compact) {
                out += static_cast<char>('0' + symbols[i]);
            } else {
                if (i) out += '.';
                out += std::to_string(symbols[i]);
            }
        }
        return out;
    }

    friend bool operator==(const BallType&, const BallType&) = default;
    friend auto operator<=>(const BallType&, const BallType&) = default;
};

// Builds the partition logic from an explicit state list (canonical order
// expected). Fails when some atom is true in no state: that atom's block
// would be empty and the partition view loses the atom entirely, so the
// construction refuses and names the offending atoms.
inline PartitionLogic
build_partition_logic(const OrthoLogic& logic,
                      const std::vector<TwoValuedState>& states) {
    if (states.empty())
        throw std::invalid_argument(
            "build_partition_logic: no two-valued states; nothing to partition");
    std::vector<int> truth_count(logic.atom_count(), 0);
    for (const auto& s : states) {
        if (!satisfies_one_per_context(logic, s))
            throw std::invalid_argument(
                "build_partition_logic: state violates one-per-context");
        for (int a = 0; a < logic.atom_count(); ++a)
            if (s.values[a]) ++truth_count[a];
    }
    std::string dead;
    for (int a = 0; a < logic.atom_count(); ++a)
        if (truth_count[a] == 0)
            dead += (dead.empty() ? "" : ", ") + logic.atom_name(a);
    if (!dead.empty())
        throw std::invalid_argument(
            "build_partition_logic: state set is not unital; atoms true in no "
            "state: " + dead);

    PartitionLogic out;
    out.state_count = static_cast<int>(states.size());
    out.blocks.resize(logic.context_count());
    out.block_atom.resize(logic.context_count());
    for (int c = 0; c < logic.context_count(); ++c) {
        for (int atom : logic.context(c)) {
            std::vector<int> block;
            for (int i = 0; i < static_cast<int>(states.size()); ++i)
                if (states[i].values[atom]) block.push_back(i);
            out.blocks[c].push_back(std::move(block));
            out.block_atom[c].push_back(atom);
        }
    }
    return out;
}

inline PartitionLogic build_partition_logic(const OrthoLogic& logic) {
    return build_partition_logic(logic, enumerate_two_valued_states(logic));
}

// One ball type per state, in state order. symbols[c] = index of the block
// of context c that contains the state.
inline std::vector<BallType> ball_types(const PartitionLogic& pl) {
    std::vector<BallType> out(pl.state_count);
    for (auto& b : out) b.symbols.assign(pl.context_count(), -1);
    for (int c = 0; c < pl.context_count(); ++c) {
        for (int k = 0; k < static_cast<int>(pl.blocks[c].size()); ++k)
            for (int i : pl.blocks[c][k]) out[i].symbols[c] = k;
    }
    for (const auto& b : out)
        for (int s : b.symbols)
            if (s < 0)
                throw std::logic_error("ball_types: partition does not cover");
    return out;
}

// Canonical form of a partition family, invariant under renaming of states,
// reordering of contexts, and reordering of blocks within a context. Blocks
// lose their atom association here on purpose: two partition logics are
// "the same" when their bare partition families coincide up to a state
// bijection.
//
// Shape: contexts, each a list of blocks, each a sorted list of state ids;
// blocks sorted within contexts, contexts sorted, all under the relabeling
// that minimizes the whole encoding.
using CanonicalPartitions = std::vector<std::vector<std::vector<int>>>;

namespace detail {

inline CanonicalPartitions
relabel_and_sort(const std::vector<std::vector<std::vector<int>>>& parts,
                 const std::vector<int>& perm) {
    CanonicalPartitions out;
    out.reserve(parts.size());
    for (const auto& ctx : parts) {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(ctx.size());
        for (const auto& blk : ctx) {
            std::vector<int> b;
            b.reserve(blk.size());
            for (int i : blk) b.push_back(perm[i]);
            std::sort(b.begin(), b.end());
            blocks.push_back(std::move(b));
        }
        std::sort(blocks.begin(), blocks.end());
        out.push_back(std::move(blocks));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Canonical labeling by colour refinement plus individualization, the
// standard recipe for isomorphism-complete canonical forms. State counts in
// this codebase are tiny (<= a few dozen), so no further pruning is needed.
class PartitionCanonicalizer {
public:
    PartitionCanonicalizer(const std::vector<std::vector<std::vector<int>>>& parts,
                           int state_count)
        : parts_(parts), n_(state_count) {
        block_of_.assign(parts_.size(), std::vector<int>(n_, -1));
        for (std::size_t c = 0; c < parts_.size(); ++c)
            for (std::size_t k = 0; k < parts_[c].size(); ++k)
                for (int i : parts_[c][k]) {
                    if (i < 0 || i >= n_)
                        throw std::invalid_argument(
                            "canonical_partitions: state id out of range");
                    block_of_[c][i] = static_cast<int>(k);
                }
    }

    CanonicalPartitions run() {
        std::vector<int> colors(n_, 0);
        refine(colors);
        best_set_ = false;
        descend(colors);
        return best_;
    }

private:
    const std::vector<std::vector<std::vector<int>>>& parts_;
    int n_;
    std::vector<std::vector<int>> block_of_; // [context][state] -> block idx
    CanonicalPartitions best_;
    bool best_set_ = false;

    // 1-dimensional refinement: a state's signature is, per context, the
    // sorted colour multiset of its block; contexts contribute as an
    // unordered multiset of signatures.
    void refine(std::vector<int>& colors) const {
        for (;;) {
            std::vector<std::vector<std::vector<int>>> sig(n_);
            for (int i = 0; i < n_; ++i) {
                for (std::size_t c = 0; c < parts_.size(); ++c) {
                    const int k = block_of_[c][i];
                    std::vector<int> blk_colors;
                    if (k >= 0)
                        for (int j : parts_[c][k]) blk_colors.push_back(colors[j]);
                    std::sort(blk_colors.begin(), blk_colors.end());
                    sig[i].push_back(std::move(blk_colors));
                }
                std::sort(sig[i].begin(), sig[i].end());
            }
            std::map<std::pair<int, std::vector<std::vector<int>>>, int> rank;
            for (int i = 0; i < n_; ++i)
                rank.try_emplace({colors[i], sig[i]}, -1);
            int next = 0;
            for (auto& [key, r] : rank) r = next++;
            std::vector<int> fresh(n_);
            for (int i = 0; i < n_; ++i) fresh[i] = rank.at({colors[i], sig[i]});
            if (fresh == colors) return;
            colors = std::move(fresh);
        }
    }

    // Smallest colour class with >= 2 members, by colour value.
    std::vector<int> pick_cell(const std::vector<int>& colors) const {
        std::map<int, std::vector<int>> cells;
        for (int i = 0; i < n_; ++i) cells[colors[i]].push_back(i);
        std::vector<int> best_cell;
        for (const auto& [col, members] : cells) {
            if (members.size() < 2) continue;
            if (best_cell.empty() || members.size() < best_cell.size())
                best_cell = members;
        }
        return best_cell;
    }

    void descend(std::vector<int> colors) {
        const auto cell = pick_cell(colors);
        if (cell.empty()) {
            // Discrete colouring: colours order the states directly.
            std::vector<int> perm(n_);
            for (int i = 0; i < n_; ++i) perm[i] = colors[i];
            auto cand = relabel_and_sort(parts_, perm);
            if (!best_set_ || cand < best_) {
                best_ = std::move(cand);
                best_set_ = true;
            }
            return;
        }
        for (int pick : cell) {
            auto branched = colors;
            // Individualize: give the pick a colour just below its cell.
            for (int i = 0; i < n_; ++i)
                branched[i] = branched[i] * 2 + (i == pick ? 0 : 1);
            refine(branched);
            descend(std::move(branched));
        }
    }
};

} // namespace detail

inline CanonicalPartitions
canonical_partitions(const std::vector<std::vector<std::vector<int>>>& parts,
                     int state_count) {
    return detail::PartitionCanonicalizer(parts, state_count).run();
}

inline CanonicalPartitions canonical_form(const PartitionLogic& pl) {
    return canonical_partitions(pl.blocks, pl.state_count);
}

inline bool partition_logic_equivalent(const PartitionLogic& a,
                                       const PartitionLogic& b) {
    if (a.state_count != b.state_count) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace qlogic
