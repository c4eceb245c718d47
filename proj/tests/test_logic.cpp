#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qlogic/catalog.hpp"
#include "qlogic/ortho_logic.hpp"
#include "test_support.hpp"

using qlogic::OrthoLogic;
using qlogic::TwoValuedState;

namespace {

std::vector<std::vector<int>>
true_sets(const std::vector<TwoValuedState>& states) {
    std::vector<std::vector<int>> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.true_atoms());
    return out;
}

std::set<std::vector<int>> as_set(std::vector<std::vector<int>> v) {
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("construction rejects malformed context lists") {
    CHECK_THROWS_AS(OrthoLogic(2, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(OrthoLogic(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(OrthoLogic(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(OrthoLogic(2, {{0, -1}}), std::invalid_argument);
    CHECK_THROWS_AS(OrthoLogic(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(OrthoLogic(3, {{0, 1}}), std::invalid_argument);
    CHECK_NOTHROW(OrthoLogic(3, {{0, 1}, {1, 2}}));
}

TEST_CASE("enumeration agrees with the brute-force subset oracle") {
    for (const char* name : {"L_AB", "fig3b", "triangle", "fig3a"}) {
        const auto& logic = qlogic::catalog(name).logic;
        const auto states = qlogic::enumerate_two_valued_states(logic);
        CHECK(as_set(true_sets(states)) ==
              as_set(support::brute_force_true_sets(logic)));
    }
}

TEST_CASE("state counts for the catalog entries") {
    auto count = [](const char* name) {
        return qlogic::enumerate_two_valued_states(qlogic::catalog(name).logic)
            .size();
    };
    CHECK(count("L_AB") == 4);
    CHECK(count("fig3a") == 14);
    CHECK(count("fig3b") == 5);
    CHECK(count("triangle") == 4);
    CHECK(count("cabello18") == 0);
    CHECK(count("peres24") == 0);
}

TEST_CASE("fig3a states match the hand tabulation as a set") {
    const auto& logic = qlogic::catalog("fig3a").logic;
    const auto states = qlogic::enumerate_two_valued_states(logic);
    CHECK(as_set(true_sets(states)) == as_set(support::fig3a_ref::states()));
}

TEST_CASE("triangle states match the hand tabulation as a set") {
    const auto& logic = qlogic::catalog("triangle").logic;
    const auto states = qlogic::enumerate_two_valued_states(logic);
    CHECK(as_set(true_sets(states)) ==
          as_set(support::triangle_ref::states()));
}

TEST_CASE("enumeration returns states in descending bit-vector order") {
    for (const char* name : {"L_AB", "fig3b", "triangle", "fig3a"}) {
        const auto states = qlogic::enumerate_two_valued_states(
            qlogic::catalog(name).logic);
        for (std::size_t i = 1; i < states.size(); ++i)
            REQUIRE(states[i - 1].values > states[i].values);
    }
}

TEST_CASE("every enumerated state satisfies one-per-context") {
    const auto& logic = qlogic::catalog("fig3a").logic;
    for (const auto& s : qlogic::enumerate_two_valued_states(logic))
        REQUIRE(qlogic::satisfies_one_per_context(logic, s));
}

TEST_CASE("classification of the standard entries") {
    auto classify = [](const char* name) {
        const auto& logic = qlogic::catalog(name).logic;
        return qlogic::classify_state_set(
            logic, qlogic::enumerate_two_valued_states(logic));
    };
    const auto tri = classify("triangle");
    CHECK(tri.state_count == 4);
    CHECK(tri.unital);
    CHECK(tri.separating);
    const auto f3a = classify("fig3a");
    CHECK(f3a.state_count == 14);
    CHECK(f3a.unital);
    CHECK(f3a.separating);
    const auto lab = classify("L_AB");
    CHECK(lab.unital);
    CHECK(lab.separating);
}

TEST_CASE("a logic with dead atoms is reported as non-unital") {
    // Atom 3 forces every state to pick it in the last context, starving
    // atoms 1 and 2: the single state is {0, 3}.
    const OrthoLogic logic(4, {{0, 1}, {0, 2}, {1, 2, 3}});
    const auto states = qlogic::enumerate_two_valued_states(logic);
    REQUIRE(states.size() == 1);
    CHECK(states[0].true_atoms() == std::vector<int>{0, 3});
    const auto summary = qlogic::classify_state_set(logic, states);
    CHECK_FALSE(summary.unital);
    CHECK_FALSE(summary.separating);
}

TEST_CASE("classification rejects a state violating the invariant") {
    const OrthoLogic logic(3, {{0, 1}, {1, 2}});
    TwoValuedState bad{{1, 1, 0}};
    CHECK_THROWS_AS(qlogic::classify_state_set(logic, {bad}),
                    std::invalid_argument);
}

TEST_CASE("parity obstruction flags the 9-context family and not others") {
    const auto& c18 = qlogic::catalog("cabello18").logic;
    std::vector<int> all(c18.context_count());
    for (int i = 0; i < c18.context_count(); ++i) all[i] = i;
    CHECK(qlogic::parity_obstruction(c18, all));

    // Even-size subsets can never obstruct.
    std::vector<int> eight(all.begin(), all.begin() + 8);
    CHECK_FALSE(qlogic::parity_obstruction(c18, eight));

    // The full 24-context family is even-sized, hence silent.
    const auto& p24 = qlogic::catalog("peres24").logic;
    std::vector<int> all24(p24.context_count());
    for (int i = 0; i < p24.context_count(); ++i) all24[i] = i;
    CHECK_FALSE(qlogic::parity_obstruction(p24, all24));

    // Odd subset with odd atom occurrences: no obstruction either.
    const auto& tri = qlogic::catalog("triangle").logic;
    CHECK_FALSE(qlogic::parity_obstruction(tri, {0, 1, 2}));
}

TEST_CASE("parity obstruction validates its subset argument") {
    const auto& tri = qlogic::catalog("triangle").logic;
    CHECK_THROWS_AS(qlogic::parity_obstruction(tri, {0, 0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qlogic::parity_obstruction(tri, {0, 3}),
                    std::invalid_argument);
    CHECK_FALSE(qlogic::parity_obstruction(tri, {}));
}

TEST_CASE("a parity-obstructed family has no states by enumeration") {
    const auto& c18 = qlogic::catalog("cabello18").logic;
    CHECK(qlogic::enumerate_two_valued_states(c18).empty());
    CHECK(support::brute_force_true_sets(c18).empty());
}

TEST_CASE("sub_logic compacts atoms and preserves incidence") {
    const auto& c18 = qlogic::catalog("cabello18").logic;
    std::vector<int> atom_map;
    const auto sub = qlogic::sub_logic(c18, {0, 1, 2}, &atom_map);
    REQUIRE(sub.context_count() == 3);
    // Every atom of the sub-logic occurs in some kept context and the map
    // points back at an atom of the original.
    REQUIRE(static_cast<int>(atom_map.size()) == sub.atom_count());
    for (int a = 0; a < sub.atom_count(); ++a) {
        REQUIRE(atom_map[a] >= 0);
        REQUIRE(atom_map[a] < c18.atom_count());
    }
    // Context contents correspond under the map.
    for (int c = 0; c < 3; ++c) {
        const auto& orig = c18.context(c);
        const auto& got = sub.context(c);
        REQUIRE(got.size() == orig.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            REQUIRE(atom_map[got[i]] == orig[i]);
    }
    // A three-context restriction of the family is colorable again.
    CHECK_FALSE(qlogic::enumerate_two_valued_states(sub).empty());
}

TEST_CASE("sub_logic of every context reproduces the whole logic") {
    const auto& c18 = qlogic::catalog("cabello18").logic;
    std::vector<int> all(c18.context_count());
    for (int i = 0; i < c18.context_count(); ++i) all[i] = i;
    const auto same = qlogic::sub_logic(c18, all);
    REQUIRE(same.atom_count() == c18.atom_count());
    REQUIRE(same.context_count() == c18.context_count());
    CHECK(qlogic::enumerate_two_valued_states(same).empty());
}

TEST_CASE("pasting three blocks in a cycle behaves like the triangle") {
    // Three 3-atom blocks glued cyclically at one atom per joint.
    const auto pasted = qlogic::paste({{0, 1, 2}, {3, 4, 5}, {6, 7, 8}},
                                      {{2, 3}, {5, 6}, {8, 0}});
    REQUIRE(pasted.atom_count() == 6);
    REQUIRE(pasted.context_count() == 3);
    const auto a = qlogic::enumerate_two_valued_states(pasted);
    const auto b = qlogic::enumerate_two_valued_states(
        qlogic::catalog("triangle").logic);
    REQUIRE(a.size() == b.size());
}

TEST_CASE("pasting two blocks at a single atom gives the fig3b count") {
    const auto pasted =
        qlogic::paste({{0, 1, 2}, {3, 4, 5}}, {{0, 3}}, {});
    REQUIRE(pasted.atom_count() == 5);
    REQUIRE(pasted.context_count() == 2);
    CHECK(qlogic::enumerate_two_valued_states(pasted).size() == 5);
}

TEST_CASE("pasting rejects identifications that collapse a block") {
    CHECK_THROWS_AS(qlogic::paste({{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {0, 4}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(qlogic::paste({{0, 1, 2}}, {{0, 1}}),
                    std::invalid_argument);
}

TEST_CASE("atom names fall back to ids when no labels exist") {
    const auto& tri = qlogic::catalog("triangle").logic;
    CHECK_FALSE(tri.has_labels());
    CHECK(tri.atom_name(2) == "#2");
    const auto& lab = qlogic::catalog("L_AB").logic;
    REQUIRE(lab.has_labels());
    CHECK(lab.atom_name(0) == "a1");
    CHECK(lab.atom_name(3) == "b2");
}
