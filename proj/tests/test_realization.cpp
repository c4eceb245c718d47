#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "qlogic/catalog.hpp"
#include "qlogic/realization_search.hpp"

TEST_CASE("the two-context three-dimensional family is found quickly") {
    const auto& logic = qlogic::catalog("fig3b").logic;
    const auto res = qlogic::search_realization(logic, 3, 20, 1234);
    REQUIRE(res.found);
    CHECK(res.residual < 1e-8);
    CHECK(res.min_pair_angle_deg > 1.0);
    REQUIRE(res.vectors.size() == 5);
    for (const auto& v : res.vectors) {
        REQUIRE(v.size() == 3);
        double n2 = 0;
        for (double x : v) n2 += x * x;
        CHECK(n2 == Catch::Approx(1.0).margin(1e-9));
    }
    const auto rep = qlogic::check_realization(
        logic, res.vectors, 1e-7, 1.0 * 3.14159265358979 / 180.0);
    CHECK(rep.ok);
}

TEST_CASE("the two-color family is found in the plane") {
    const auto& logic = qlogic::catalog("L_AB").logic;
    const auto res = qlogic::search_realization(logic, 2, 20, 7);
    REQUIRE(res.found);
    CHECK(res.residual < 1e-8);
    CHECK(res.min_pair_angle_deg > 1.0);
}

TEST_CASE("the triangle admits no three-dimensional realization") {
    const auto& logic = qlogic::catalog("triangle").logic;
    const auto res = qlogic::search_realization(logic, 3, 40, 99);
    CHECK_FALSE(res.found);
    // The obstruction is faithfulness: contexts can be made orthogonal
    // only by collapsing distinct atoms onto one line.
    CHECK(res.min_pair_angle_deg <= 1.0);
}

TEST_CASE("search results are deterministic for a fixed seed") {
    const auto& logic = qlogic::catalog("fig3b").logic;
    const auto a = qlogic::search_realization(logic, 3, 12, 42);
    const auto b = qlogic::search_realization(logic, 3, 12, 42);
    REQUIRE(a.found == b.found);
    REQUIRE(a.restart_index == b.restart_index);
    REQUIRE(a.residual == b.residual);
    REQUIRE(a.vectors == b.vectors);
}

TEST_CASE("thread count does not change the result") {
    const auto& logic = qlogic::catalog("fig3b").logic;
    qlogic::RealizationSearchOptions serial;
    serial.threads = 1;
    qlogic::RealizationSearchOptions parallel;
    parallel.threads = 3;
    const auto a = qlogic::search_realization(logic, 3, 12, 42, serial);
    const auto b = qlogic::search_realization(logic, 3, 12, 42, parallel);
    REQUIRE(a.found == b.found);
    REQUIRE(a.restart_index == b.restart_index);
    REQUIRE(a.residual == b.residual);
    REQUIRE(a.vectors == b.vectors);
}

TEST_CASE("different seeds explore different starting points") {
    const auto& logic = qlogic::catalog("fig3b").logic;
    const auto a = qlogic::search_realization(logic, 3, 1, 1);
    const auto b = qlogic::search_realization(logic, 3, 1, 2);
    CHECK(a.vectors != b.vectors);
}

TEST_CASE("search validates its arguments") {
    const auto& logic = qlogic::catalog("fig3b").logic;
    CHECK_THROWS_AS(qlogic::search_realization(logic, 1, 5, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(qlogic::search_realization(logic, 3, 0, 0),
                    std::invalid_argument);
    const auto& tri = qlogic::catalog("triangle").logic;
    CHECK_THROWS_AS(qlogic::search_realization(tri, 2, 5, 0),
                    std::invalid_argument);
}
