// Orthogonality hypergraphs and their two-valued states.
//
// An OrthoLogic is a finite set of atoms together with a list of contexts.
// A context is an ordered list of pairwise co-measurable, mutually exclusive
// atoms; the order is presentation order and is significant downstream
// (symbols name positions within a context). Contexts may overlap in atoms;
// that overlap is the whole point of the structure.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlogic {

class OrthoLogic {
public:
    // contexts: per context the atom ids in presentation order.
    // labels: optional display names, one per atom when nonempty.
    OrthoLogic(int atom_count, std::vector<std::vector<int>> contexts,
               std::vector<std::string> labels = {})
        : atom_count_(atom_count),
          contexts_(std::move(contexts)),
          labels_(std::move(labels)) {
        if (atom_count_ <= 0)
            throw std::invalid_argument("OrthoLogic: atom_count must be positive");
        if (contexts_.empty())
            throw std::invalid_argument("OrthoLogic: at least one context required");
        if (!labels_.empty() && static_cast<int>(labels_.size()) != atom_count_)
            throw std::invalid_argument("OrthoLogic: label count != atom count");

        std::set<std::vector<int>> seen;
        incidence_.assign(atom_count_, {});
        for (int c = 0; c < static_cast<int>(contexts_.size()); ++c) {
            const auto& ctx = contexts_[c];
            if (ctx.size() < 2)
                throw std::invalid_argument("OrthoLogic: context needs >= 2 atoms");
            std::set<int> distinct;
            for (int a : ctx) {
                if (a < 0 || a >= atom_count_)
                    throw std::invalid_argument("OrthoLogic: atom id out of range");
                if (!distinct.insert(a).second)
                    throw std::invalid_argument("OrthoLogic: repeated atom in context");
                incidence_[a].push_back(c);
            }
            std::vector<int> key(distinct.begin(), distinct.end());
            if (!seen.insert(std::move(key)).second)
                throw std::invalid_argument("OrthoLogic: duplicate context");
        }
        for (int a = 0; a < atom_count_; ++a)
            if (incidence_[a].empty())
                throw std::invalid_argument("OrthoLogic: atom in no context");
    }

    int atom_count() const { return atom_count_; }
    int context_count() const { return static_cast<int>(contexts_.size()); }
    const std::vector<std::vector<int>>& contexts() const { return contexts_; }
    const std::vector<int>& context(int c) const { return contexts_.at(c); }

    // Contexts an atom belongs to, ascending.
    const std::vector<int>& contexts_of(int atom) const { return incidence_.at(atom); }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string atom_name(int a) const {
        if (a < 0 || a >= atom_count_) throw std::out_of_range("atom_name: bad id");
        if (!labels_.empty()) return labels_[a];
        return "#" + std::to_string(a);
    }

    // Position of an atom inside a context, or -1 when absent.
    int position_in_context(int c, int atom) const {
        const auto& ctx = contexts_.at(c);
        auto it = std::find(ctx.begin(), ctx.end(), atom);
        return it == ctx.end() ? -1 : static_cast<int>(it - ctx.begin());
    }

private:
    int atom_count_;
    std::vector<std::vector<int>> contexts_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> incidence_;
};

// A {0,1}-valued assignment over the atoms. The defining constraint is
// "exactly one 1 per context"; enumerate_two_valued_states only produces
// assignments satisfying it, and consumers re-validate on entry.
struct TwoValuedState {
    std::vector<std::uint8_t> values; // one bit per atom

    bool value(int atom) const { return values.at(atom) != 0; }

    std::vector<int> true_atoms() const {
        std::vector<int> out;
        for (int a = 0; a < static_cast<int>(values.size()); ++a)
            if (values[a]) out.push_back(a);
        return out;
    }

    friend bool operator==(const TwoValuedState&, const TwoValuedState&) = default;
};

inline bool satisfies_one_per_context(const OrthoLogic& logic,
                                      const TwoValuedState& s) {
    if (static_cast<int>(s.values.size()) != logic.atom_count()) return false;
    for (const auto& ctx : logic.contexts()) {
        int ones = 0;
        for (int a : ctx) ones += s.values[a] ? 1 : 0;
        if (ones != 1) return false;
    }
    return true;
}

namespace detail {

// Backtracking enumerator with unit propagation. Assignments use
// -1 = unknown, 0, 1. Branching picks an unsatisfied context with the
// fewest unknown atoms and tries each unknown atom as the context's 1;
// those branches are disjoint, so no solution is produced twice.
class StateEnumerator {
public:
    explicit StateEnumerator(const OrthoLogic& logic)
        : logic_(logic), value_(logic.atom_count(), -1) {}

    std::vector<TwoValuedState> run() {
        states_.clear();
        search();
        return std::move(states_);
    }

private:
    const OrthoLogic& logic_;
    std::vector<int> value_;
    std::vector<TwoValuedState> states_;

    struct Frame {
        std::vector<int> touched; // atoms assigned since the frame opened
    };

    bool set_value(int atom, int v, Frame& frame) {
        if (value_[atom] != -1) return value_[atom] == v;
        value_[atom] = v;
        frame.touched.push_back(atom);
        if (v == 1) {
            for (int c : logic_.contexts_of(atom))
                for (int other : logic_.context(c))
                    if (other != atom && !set_value(other, 0, frame)) return false;
        } else {
            for (int c : logic_.contexts_of(atom))
                if (!propagate_context(c, frame)) return false;
        }
        return true;
    }

    // After a 0 lands in a context: fail on all-0, force the last unknown
    // when it is the only candidate left.
    bool propagate_context(int c, Frame& frame) {
        int ones = 0, unknown = 0, candidate = -1;
        for (int a : logic_.context(c)) {
            if (value_[a] == 1) ++ones;
            else if (value_[a] == -1) { ++unknown; candidate = a; }
        }
        if (ones > 1) return false;
        if (ones == 1) return true;
        if (unknown == 0) return false;
        if (unknown == 1) return set_value(candidate, 1, frame);
        return true;
    }

    void undo(const Frame& frame) {
        for (int a : frame.touched) value_[a] = -1;
    }

    // Unsatisfied context with the fewest unknowns, or -1 when all are done.
    int pick_context() const {
        int best = -1, best_unknown = -1;
        for (int c = 0; c < logic_.context_count(); ++c) {
            int ones = 0, unknown = 0;
            for (int a : logic_.context(c)) {
                if (value_[a] == 1) ++ones;
                else if (value_[a] == -1) ++unknown;
            }
            if (ones > 0) continue;
            if (best == -1 || unknown < best_unknown) {
                best = c;
                best_unknown = unknown;
            }
        }
        return best;
    }

    void search() {
        const int c = pick_context();
        if (c == -1) {
            TwoValuedState s;
            s.values.assign(value_.begin(), value_.end());
            for (auto& b : s.values)
                if (b == static_cast<std::uint8_t>(-1))
                    return; // unreachable: every atom sits in some context
            states_.push_back(std::move(s));
            return;
        }
        for (int a : logic_.context(c)) {
            if (value_[a] != -1) continue;
            Frame frame;
            if (set_value(a, 1, frame)) search();
            undo(frame);
        }
    }
};

} // namespace detail

// All two-valued states, in canonical order: descending lexicographic over
// the atom-bit vector read from atom 0 upward. An empty result is an answer
// (it certifies that no classical {0,1} assignment exists), not an error.
inline std::vector<TwoValuedState>
enumerate_two_valued_states(const OrthoLogic& logic) {
    auto states = detail::StateEnumerator(logic).run();
    std::sort(states.begin(), states.end(),
              [](const TwoValuedState& a, const TwoValuedState& b) {
                  return a.values > b.values;
              });
    return states;
}

struct StateSetSummary {
    int state_count = 0;
    bool unital = false;     // every atom is true in at least one state
    bool separating = false; // distinct atoms get distinct truth rows
};

// Summary over an explicit state list (normally the full enumeration).
// Throws if any state violates the one-per-context constraint.
inline StateSetSummary classify_state_set(const OrthoLogic& logic,
                                          const std::vector<TwoValuedState>& states) {
    std::vector<std::vector<std::uint8_t>> rows(logic.atom_count());
    for (const auto& s : states) {
        if (!satisfies_one_per_context(logic, s))
            throw std::invalid_argument(
                "classify_state_set: state violates one-per-context");
        for (int a = 0; a < logic.atom_count(); ++a)
            rows[a].push_back(s.values[a]);
    }
    StateSetSummary out;
    out.state_count = static_cast<int>(states.size());
    out.unital = true;
    for (int a = 0; a < logic.atom_count(); ++a) {
        bool hit = false;
        for (auto b : rows[a]) hit = hit || (b != 0);
        if (!hit) { out.unital = false; break; }
    }
    out.separating = true;
    std::set<std::vector<std::uint8_t>> distinct;
    for (int a = 0; a < logic.atom_count(); ++a)
        if (!distinct.insert(rows[a]).second) { out.separating = false; break; }
    if (states.empty()) {
        out.unital = false;
        out.separating = logic.atom_count() == 1;
    }
    return out;
}

// Parity certificate for the absence of two-valued states: a context subset
// in which every occurring atom occurs an even number of times, while the
// subset itself has odd size. Summing "exactly one 1 per context" over such
// a subset gives even = odd, so no state can exist.
inline bool parity_obstruction(const OrthoLogic& logic,
                               const std::vector<int>& context_subset) {
    std::set<int> chosen;
    for (int c : context_subset) {
        if (c < 0 || c >= logic.context_count())
            throw std::invalid_argument("parity_obstruction: context id out of range");
        if (!chosen.insert(c).second)
            throw std::invalid_argument("parity_obstruction: repeated context id");
    }
    if (chosen.empty()) return false;
    std::vector<int> occ(logic.atom_count(), 0);
    for (int c : chosen)
        for (int a : logic.context(c)) ++occ[a];
    for (int a = 0; a < logic.atom_count(); ++a)
        if (occ[a] % 2 != 0) return false;
    return chosen.size() % 2 == 1;
}

// Restriction to a context subset. Atoms outside the chosen contexts are
// dropped and the rest renumbered compactly; atom_map[new] = old id.
inline OrthoLogic sub_logic(const OrthoLogic& logic,
                            const std::vector<int>& context_subset,
                            std::vector<int>* atom_map = nullptr) {
    std::set<int> chosen(context_subset.begin(), context_subset.end());
    if (chosen.empty())
        throw std::invalid_argument("sub_logic: empty context subset");
    std::vector<int> old_to_new(logic.atom_count(), -1);
    std::vector<int> new_to_old;
    std::vector<std::vector<int>> ctxs;
    std::vector<std::string> labels;
    for (int c : chosen) {
        if (c < 0 || c >= logic.context_count())
            throw std::invalid_argument("sub_logic: context id out of range");
        std::vector<int> ctx;
        for (int a : logic.context(c)) {
            if (old_to_new[a] == -1) {
                old_to_new[a] = static_cast<int>(new_to_old.size());
                new_to_old.push_back(a);
                if (logic.has_labels()) labels.push_back(logic.labels()[a]);
            }
            ctx.push_back(old_to_new[a]);
        }
        ctxs.push_back(std::move(ctx));
    }
    if (atom_map) *atom_map = new_to_old;
    return OrthoLogic(static_cast<int>(new_to_old.size()), std::move(ctxs),
                      std::move(labels));
}

// Pasting: glue standalone contexts along shared atoms. blocks lists each
// context as atom ids in a private universe; identifications are pairs
// (atom, atom) declared equal. Identifying two atoms of the same block is
// rejected, as is any identification chain that would collapse a block.
inline OrthoLogic paste(const std::vector<std::vector<int>>& blocks,
                        const std::vector<std::pair<int, int>>& identifications,
                        std::vector<std::string> labels = {}) {
    int universe = 0;
    for (const auto& b : blocks)
        for (int a : b) {
            if (a < 0) throw std::invalid_argument("paste: negative atom id");
            universe = std::max(universe, a + 1);
        }
    if (blocks.empty()) throw std::invalid_argument("paste: no blocks");

    std::vector<int> parent(universe);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (auto [a, b] : identifications) {
        if (a < 0 || a >= universe || b < 0 || b >= universe)
            throw std::invalid_argument("paste: identification id out of range");
        parent[find(a)] = find(b);
    }

    // Any two atoms inside one block must stay distinct after gluing.
    for (const auto& blk : blocks) {
        std::set<int> reps;
        for (int a : blk)
            if (!reps.insert(find(a)).second)
                throw std::invalid_argument(
                    "paste: identification collapses a block");
    }

    std::vector<int> rep_to_atom(universe, -1);
    int next_atom = 0;
    std::vector<std::vector<int>> ctxs;
    for (const auto& blk : blocks) {
        std::vector<int> ctx;
        for (int a : blk) {
            const int r = find(a);
            if (rep_to_atom[r] == -1) rep_to_atom[r] = next_atom++;
            ctx.push_back(rep_to_atom[r]);
        }
        ctxs.push_back(std::move(ctx));
    }
    return OrthoLogic(next_atom, std::move(ctxs), std::move(labels));
}

} // namespace qlogic
