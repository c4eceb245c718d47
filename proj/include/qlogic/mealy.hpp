// Finite Mealy machines and the experiment partitions they induce.
//
// An input symbol x partitions the state set: two states land in one block
// exactly when the machine answers x with the same output. Those partitions
// are the initial-state knowledge an experimenter can extract with a single
// input, and feeding them to logic_from_partitions yields the associated
// orthogonality hypergraph.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ortho_logic.hpp"

namespace qlogic {

struct MealyMachine {
    int state_count = 0;
    int input_count = 0;
    int output_count = 0;
    std::vector<std::vector<int>> delta;  // [state][input] -> next state
    std::vector<std::vector<int>> lambda; // [state][input] -> output

    MealyMachine(int states, int inputs, int outputs,
                 std::vector<std::vector<int>> d,
                 std::vector<std::vector<int>> l)
        : state_count(states), input_count(inputs), output_count(outputs),
          delta(std::move(d)), lambda(std::move(l)) {
        if (states <= 0 || inputs <= 0 || outputs <= 0)
            throw std::invalid_argument("MealyMachine: empty component");
        auto check = [&](const std::vector<std::vector<int>>& t, int range,
                         const char* what) {
            if (static_cast<int>(t.size()) != states)
                throw std::invalid_argument(std::string("MealyMachine: ") +
                                            what + " not total");
            for (const auto& row : t) {
                if (static_cast<int>(row.size()) != inputs)
                    throw std::invalid_argument(std::string("MealyMachine: ") +
                                                what + " not total");
                for (int v : row)
                    if (v < 0 || v >= range)
                        throw std::invalid_argument(
                            std::string("MealyMachine: ") + what +
                            " value out of range");
            }
        };
        check(delta, states, "delta");
        check(lambda, outputs, "lambda");
    }

    int step(int state, int input) const { return delta.at(state).at(input); }
    int emit(int state, int input) const { return lambda.at(state).at(input); }
};

// Per input: the partition of states by output. Blocks are ordered by
// ascending output id (outputs emitted by no state contribute no block) and
// each block lists its states ascending.
inline std::vector<std::vector<std::vector<int>>>
automaton_partitions(const MealyMachine& m) {
    std::vector<std::vector<std::vector<int>>> out;
    out.reserve(m.input_count);
    for (int x = 0; x < m.input_count; ++x) {
        std::map<int, std::vector<int>> by_output;
        for (int s = 0; s < m.state_count; ++s)
            by_output[m.emit(s, x)].push_back(s);
        std::vector<std::vector<int>> partition;
        partition.reserve(by_output.size());
        for (auto& [output, block] : by_output)
            partition.push_back(std::move(block));
        out.push_back(std::move(partition));
    }
    return out;
}

// Orthogonality hypergraph of a partition family over {0..carrier-1}.
// Atoms are the distinct blocks (identified across partitions by content);
// each partition becomes a context listing its blocks' atoms in block
// order. atom_sets receives, per atom, the block it stands for.
//
// Rejects partitions that fail to cover the carrier or overlap; rejects
// single-block partitions (the would-be context has fewer than two atoms).
inline OrthoLogic
logic_from_partitions(int carrier,
                      const std::vector<std::vector<std::vector<int>>>& partitions,
                      std::vector<std::vector<int>>* atom_sets = nullptr) {
    if (carrier <= 0)
        throw std::invalid_argument("logic_from_partitions: empty carrier");
    std::map<std::vector<int>, int> atom_of_block;
    std::vector<std::vector<int>> sets;
    std::vector<std::vector<int>> contexts;
    std::set<std::vector<int>> context_keys; // inputs inducing equal
                                             // partitions share one context
    for (const auto& partition : partitions) {
        std::vector<char> seen(carrier, 0);
        std::vector<int> ctx;
        for (const auto& raw : partition) {
            std::vector<int> block = raw;
            std::sort(block.begin(), block.end());
            if (block.empty())
                throw std::invalid_argument(
                    "logic_from_partitions: empty block");
            for (int v : block) {
                if (v < 0 || v >= carrier)
                    throw std::invalid_argument(
                        "logic_from_partitions: element out of range");
                if (seen[v]++)
                    throw std::invalid_argument(
                        "logic_from_partitions: blocks overlap");
            }
            auto [it, fresh] =
                atom_of_block.try_emplace(block, static_cast<int>(sets.size()));
            if (fresh) sets.push_back(block);
            ctx.push_back(it->second);
        }
        for (int v = 0; v < carrier; ++v)
            if (!seen[v])
                throw std::invalid_argument(
                    "logic_from_partitions: partition does not cover carrier");
        std::vector<int> key = ctx;
        std::sort(key.begin(), key.end());
        if (context_keys.insert(std::move(key)).second)
            contexts.push_back(std::move(ctx));
    }
    if (atom_sets) *atom_sets = sets;
    return OrthoLogic(static_cast<int>(sets.size()), std::move(contexts));
}

inline OrthoLogic logic_from_automaton(const MealyMachine& m,
                                       std::vector<std::vector<int>>* atom_sets = nullptr) {
    return logic_from_partitions(m.state_count, automaton_partitions(m),
                                 atom_sets);
}

} // namespace qlogic
