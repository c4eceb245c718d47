#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

#include "qlogic/catalog.hpp"
#include "qlogic/mealy.hpp"
#include "qlogic/partition_logic.hpp"

using qlogic::MealyMachine;

namespace {

// Four internal states probed by three inputs; outputs chosen so the three
// induced partitions are {{0},{2,3},{1}}, {{1},{0,3},{2}}, {{2},{1,3},{0}}.
MealyMachine triangle_machine() {
    const std::vector<std::vector<int>> delta = {
        {0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}};
    const std::vector<std::vector<int>> lambda = {
        {0, 1, 2}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1}};
    return MealyMachine(4, 3, 3, delta, lambda);
}

} // namespace

TEST_CASE("machine construction validates totality and ranges") {
    CHECK_THROWS_AS(MealyMachine(0, 1, 1, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(MealyMachine(2, 1, 1, {{0}}, {{0}, {0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MealyMachine(2, 1, 1, {{0}, {2}}, {{0}, {0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MealyMachine(2, 1, 1, {{0}, {1}}, {{0}, {1}}),
                    std::invalid_argument);
    CHECK_NOTHROW(MealyMachine(2, 1, 2, {{0}, {1}}, {{0}, {1}}));
}

TEST_CASE("per-input partitions group states by output") {
    const auto m = triangle_machine();
    const auto parts = qlogic::automaton_partitions(m);
    REQUIRE(parts.size() == 3);
    // Blocks come in ascending output id; states ascending inside.
    CHECK(parts[0] == std::vector<std::vector<int>>{{0}, {2, 3}, {1}});
    CHECK(parts[1] == std::vector<std::vector<int>>{{1}, {0, 3}, {2}});
    CHECK(parts[2] == std::vector<std::vector<int>>{{2}, {1, 3}, {0}});
}

TEST_CASE("outputs emitted by no state contribute no block") {
    const MealyMachine m(2, 1, 4, {{0}, {1}}, {{0}, {3}});
    const auto parts = qlogic::automaton_partitions(m);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("the induced logic of the probe machine matches the triangle") {
    std::vector<std::vector<int>> atom_sets;
    const auto logic = qlogic::logic_from_automaton(triangle_machine(),
                                                    &atom_sets);
    REQUIRE(logic.atom_count() == 6);
    REQUIRE(logic.context_count() == 3);
    REQUIRE(atom_sets.size() == 6);

    const auto pl = qlogic::build_partition_logic(logic);
    const auto ref =
        qlogic::build_partition_logic(qlogic::catalog("triangle").logic);
    CHECK(qlogic::partition_logic_equivalent(pl, ref));
}

TEST_CASE("atoms are shared between contexts exactly for equal blocks") {
    std::vector<std::vector<int>> atom_sets;
    const auto logic = qlogic::logic_from_automaton(triangle_machine(),
                                                    &atom_sets);
    // The singleton blocks {0},{1},{2} each recur in two contexts and fuse
    // into one shared atom there; the two-element blocks are unique.
    int shared = 0;
    for (int a = 0; a < logic.atom_count(); ++a) {
        int occurrences = 0;
        for (int c = 0; c < logic.context_count(); ++c)
            if (logic.position_in_context(c, a) >= 0) ++occurrences;
        if (occurrences == 2) ++shared;
        REQUIRE(occurrences >= 1);
    }
    CHECK(shared == 3);
}

TEST_CASE("inputs inducing the same partition share one context") {
    // Two inputs with identical output behaviour collapse to one context.
    const MealyMachine m(4, 2, 2,
                         {{0, 0}, {1, 1}, {2, 2}, {3, 3}},
                         {{0, 0}, {0, 0}, {1, 1}, {1, 1}});
    const auto logic = qlogic::logic_from_automaton(m);
    CHECK(logic.context_count() == 1);
    CHECK(logic.atom_count() == 2);
}

TEST_CASE("partition families are validated before building a logic") {
    CHECK_THROWS_AS(qlogic::logic_from_partitions(3, {{{0, 1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qlogic::logic_from_partitions(3, {{{0, 1}, {1, 2}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qlogic::logic_from_partitions(3, {{{0, 1}, {2}, {}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qlogic::logic_from_partitions(3, {{{0, 1}, {2, 3}}}),
                    std::invalid_argument);
    // A single-block partition would make a one-atom context.
    CHECK_THROWS_AS(qlogic::logic_from_partitions(3, {{{0, 1, 2}}}),
                    std::invalid_argument);
}

TEST_CASE("logic_from_partitions keeps blocks in presentation order") {
    std::vector<std::vector<int>> atom_sets;
    const auto logic = qlogic::logic_from_partitions(
        4, {{{3, 2}, {0, 1}}, {{0, 2}, {1, 3}}}, &atom_sets);
    REQUIRE(logic.atom_count() == 4);
    // Blocks are stored sorted; atom 0 is the first block mentioned.
    CHECK(atom_sets[0] == std::vector<int>{2, 3});
    CHECK(atom_sets[1] == std::vector<int>{0, 1});
    CHECK(logic.context(0) == std::vector<int>{0, 1});
    CHECK(logic.context(1) == std::vector<int>{2, 3});
}
