#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qlogic/catalog.hpp"
#include "qlogic/ray.hpp"

using qlogic::Ray;

namespace {

std::vector<std::vector<int>> sorted_context_sets(const qlogic::OrthoLogic& l) {
    std::vector<std::vector<int>> out;
    for (const auto& ctx : l.contexts()) {
        auto c = ctx;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("normalization divides by the gcd and fixes the leading sign") {
    CHECK(qlogic::normalized(Ray{{2, -4, 6}}).comps ==
          std::vector<long long>{1, -2, 3});
    CHECK(qlogic::normalized(Ray{{-2, 4}}).comps ==
          std::vector<long long>{1, -2});
    CHECK(qlogic::normalized(Ray{{0, -5, 0}}).comps ==
          std::vector<long long>{0, 1, 0});
    CHECK_THROWS_AS(qlogic::normalized(Ray{{0, 0}}), std::invalid_argument);
}

TEST_CASE("dot and parallel behave on integer rays") {
    CHECK(qlogic::dot(Ray{{1, 0, 1}}, Ray{{0, 1, 0}}) == 0);
    CHECK(qlogic::dot(Ray{{1, 2}}, Ray{{3, 4}}) == 11);
    CHECK(qlogic::parallel(Ray{{1, -1}}, Ray{{-3, 3}}));
    CHECK(qlogic::parallel(Ray{{2, 4}}, Ray{{1, 2}}));
    CHECK_FALSE(qlogic::parallel(Ray{{1, 0}}, Ray{{1, 1}}));
}

TEST_CASE("clique search rebuilds the stored contexts of every ray catalog") {
    for (const char* name : {"fig3b", "fig3a", "cabello18", "peres24"}) {
        const auto& entry = qlogic::catalog(name);
        const int arity = static_cast<int>(entry.logic.context(0).size());
        const auto derived = qlogic::contexts_from_rays(entry.rays, arity);
        REQUIRE(derived.atom_count() == entry.logic.atom_count());
        CHECK(sorted_context_sets(derived) ==
              sorted_context_sets(entry.logic));
    }
}

TEST_CASE("derived contexts come sorted ascending by atom ids") {
    const auto& entry = qlogic::catalog("cabello18");
    const auto derived = qlogic::contexts_from_rays(entry.rays, 4);
    const auto& ctxs = derived.contexts();
    for (const auto& ctx : ctxs)
        REQUIRE(std::is_sorted(ctx.begin(), ctx.end()));
    for (std::size_t i = 1; i < ctxs.size(); ++i)
        REQUIRE(ctxs[i - 1] < ctxs[i]);
}

TEST_CASE("occurrence profile of the two four-dimensional families") {
    auto occurrences = [](const qlogic::OrthoLogic& l, int atom) {
        int n = 0;
        for (int c = 0; c < l.context_count(); ++c)
            if (l.position_in_context(c, atom) >= 0) ++n;
        return n;
    };
    const auto& c18 = qlogic::catalog("cabello18").logic;
    REQUIRE(c18.context_count() == 9);
    for (int a = 0; a < c18.atom_count(); ++a)
        CHECK(occurrences(c18, a) == 2);
    const auto& p24 = qlogic::catalog("peres24").logic;
    REQUIRE(p24.context_count() == 24);
    for (const auto& ctx : p24.contexts()) REQUIRE(ctx.size() == 4);
    for (int a = 0; a < p24.atom_count(); ++a)
        CHECK(occurrences(p24, a) == 4);
}

TEST_CASE("clique search rejects parallel ray pairs") {
    const std::vector<Ray> rays = {{{1, 0}}, {{0, 1}}, {{2, 0}}};
    CHECK_THROWS_AS(qlogic::contexts_from_rays(rays, 2),
                    std::invalid_argument);
}

TEST_CASE("clique search keeps only maximal cliques") {
    // Rays 0,1,2 are mutually orthogonal, so each of their pairs extends
    // to a triple and must be dropped at arity 2. Rays 3,4,5 give each of
    // 0,1,2 exactly one unextendable partner.
    const std::vector<Ray> rays = {{{1, 0, 0}},  {{0, 1, 2}}, {{0, 2, -1}},
                                   {{1, 2, -1}}, {{0, 1, 1}}, {{1, 1, 2}}};
    const auto logic = qlogic::contexts_from_rays(rays, 2);
    const auto sets = sorted_context_sets(logic);
    const std::vector<std::vector<int>> want = {{0, 4}, {1, 3}, {2, 5}};
    CHECK(sets == want);
}

TEST_CASE("exact realization check accepts the shipped catalogs") {
    for (const char* name : {"L_AB", "fig3b", "fig3a", "cabello18", "peres24"}) {
        const auto& entry = qlogic::catalog(name);
        REQUIRE_FALSE(entry.rays.empty());
        const auto rep = qlogic::check_realization(entry.logic, entry.rays);
        CHECK(rep.ok);
        CHECK(rep.nonorthogonal.empty());
        CHECK(rep.parallel_pairs.empty());
    }
}

TEST_CASE("exact realization check reports violating pairs") {
    const auto& entry = qlogic::catalog("fig3b");
    auto rays = entry.rays;
    rays[1] = Ray{{1, 1, 0}}; // breaks orthogonality inside context 0
    const auto rep = qlogic::check_realization(entry.logic, rays);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.nonorthogonal.empty());

    // Faithfulness: the same ray on two distinct atoms is flagged.
    auto dup = entry.rays;
    dup[3] = dup[4];
    const auto rep2 = qlogic::check_realization(entry.logic, dup);
    CHECK_FALSE(rep2.ok);
    REQUIRE_FALSE(rep2.parallel_pairs.empty());
    CHECK(rep2.parallel_pairs.front() == std::pair<int, int>{3, 4});
}

TEST_CASE("assigning one ray to two triangle atoms is unfaithful") {
    const auto& tri = qlogic::catalog("triangle").logic;
    // Any in-context-orthogonal assignment with rays[1] == rays[4] fails.
    const std::vector<Ray> rays = {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}},
                                   {{1, 1, 0}}, {{0, 1, 0}}, {{1, 0, 1}}};
    const auto rep = qlogic::check_realization(tri, rays);
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (auto [i, j] : rep.parallel_pairs)
        if (i == 1 && j == 4) found = true;
    CHECK(found);
}

TEST_CASE("realization check validates the ray list shape") {
    const auto& entry = qlogic::catalog("fig3b");
    CHECK_THROWS_AS(
        qlogic::check_realization(entry.logic, std::vector<Ray>{{{1, 0, 0}}}),
        std::invalid_argument);
    std::vector<Ray> mixed = entry.rays;
    mixed[2] = Ray{{1, 0}};
    CHECK_THROWS_AS(qlogic::check_realization(entry.logic, mixed),
                    std::invalid_argument);
}

TEST_CASE("float realization check accepts exact vectors and tolerances") {
    const auto& entry = qlogic::catalog("fig3b");
    std::vector<std::vector<double>> vecs;
    for (const auto& r : entry.rays) {
        std::vector<double> v;
        for (long long c : r.comps) v.push_back(static_cast<double>(c));
        vecs.push_back(std::move(v));
    }
    const auto rep =
        qlogic::check_realization(entry.logic, vecs, 1e-9, 0.017);
    CHECK(rep.ok);

    auto bent = vecs;
    bent[1][0] = 0.2; // breaks orthogonality with rays 0 inside context 0
    const auto rep2 =
        qlogic::check_realization(entry.logic, bent, 1e-9, 0.017);
    CHECK_FALSE(rep2.ok);
}
