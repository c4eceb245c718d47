// Built-in logics used across tests, tools and protocol configurations.
//
// Entries with rays store one integer ray per atom (canonical projective
// form) and satisfy check_realization exactly; contexts_from_rays on the
// stored rays reproduces the stored contexts up to presentation order.
// Context atom order is presentation order: block symbols, ball types and
// protocol transcripts all read positions from it, so it is part of each
// entry's identity and is never silently re-sorted.
//
//   L_AB      two separate binary measurements; the smallest family whose
//             block pasting is nondistributive.
//   fig3b     two three-atom contexts glued at one atom.
//   fig3a     three four-atom contexts pasted into a cycle; admits exactly
//             14 two-valued states.
//   triangle  cyclic pasting of three three-atom contexts; has states but
//             no faithful vector realization in dimension three.
//   cabello18 18 rays in nine contexts, every ray in exactly two; its
//             parity structure rules out two-valued states outright.
//   peres24   24 rays in 24 contexts, the larger family around cabello18.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ortho_logic.hpp"
#include "ray.hpp"

namespace qlogic {

struct CatalogEntry {
    std::string name;
    std::string summary;
    OrthoLogic logic;
    std::vector<Ray> rays; // empty when no realization is bundled
};

namespace detail {

inline std::map<std::string, CatalogEntry> build_catalog() {
    std::map<std::string, CatalogEntry> cat;

    {
        std::vector<Ray> rays = {{{0, 1}}, {{1, 0}}, {{1, -1}}, {{1, 1}}};
        OrthoLogic logic(4, {{0, 1}, {2, 3}}, {"a1", "a2", "b1", "b2"});
        cat.emplace("L_AB", CatalogEntry{"L_AB",
                                         "two disconnected binary contexts",
                                         std::move(logic), std::move(rays)});
    }

    {
        std::vector<Ray> rays = {
            {{1, 0, 0}}, {{0, 1, 1}}, {{0, 1, -1}}, {{0, 1, 0}}, {{0, 0, 1}}};
        std::vector<std::string> labels;
        for (const auto& r : rays) labels.push_back(r.to_string());
        OrthoLogic logic(5, {{0, 1, 2}, {0, 3, 4}}, std::move(labels));
        cat.emplace("fig3b",
                    CatalogEntry{"fig3b", "two triads glued at one atom",
                                 std::move(logic), std::move(rays)});
    }

    {
        std::vector<Ray> rays = {
            {{1, 0, 0, 0}}, {{0, 1, 1, 0}}, {{0, 1, -1, 0}}, {{0, 0, 0, 1}},
            {{1, 0, 1, 0}}, {{1, 0, -1, 0}}, {{0, 1, 0, 0}}, {{0, 0, 1, -1}},
            {{0, 0, 1, 1}}};
        std::vector<std::string> labels;
        for (const auto& r : rays) labels.push_back(r.to_string());
        OrthoLogic logic(9, {{0, 1, 2, 3}, {4, 5, 6, 3}, {0, 6, 7, 8}},
                         std::move(labels));
        cat.emplace("fig3a",
                    CatalogEntry{"fig3a", "three tetrads pasted in a cycle",
                                 std::move(logic), std::move(rays)});
    }

    {
        OrthoLogic logic(6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}});
        cat.emplace("triangle",
                    CatalogEntry{"triangle",
                                 "cyclic pasting of three triads; no faithful "
                                 "three-dimensional realization",
                                 std::move(logic),
                                 {}});
    }

    {
        // Contexts derived from the rays by exact orthogonality (arity 4);
        // frozen here so the table is data, not a computation.
        std::vector<Ray> rays = {
            {{0, 0, 0, 1}},   {{0, 0, 1, -1}},  {{0, 0, 1, 1}},
            {{0, 1, -1, 0}},  {{0, 1, 0, -1}},  {{0, 1, 0, 0}},
            {{0, 1, 1, 0}},   {{1, -1, -1, -1}}, {{1, -1, 0, 0}},
            {{1, -1, 1, -1}}, {{1, 0, -1, 0}},  {{1, 0, 0, 0}},
            {{1, 0, 0, 1}},   {{1, 0, 1, 0}},   {{1, 1, -1, -1}},
            {{1, 1, -1, 1}},  {{1, 1, 1, -1}},  {{1, 1, 1, 1}}};
        std::vector<std::vector<int>> ctxs = {
            {0, 3, 6, 11},  {0, 5, 10, 13}, {1, 2, 5, 11},
            {1, 8, 14, 17}, {2, 8, 15, 16}, {3, 7, 12, 16},
            {4, 7, 13, 15}, {4, 9, 10, 17}, {6, 9, 12, 14}};
        std::vector<std::string> labels;
        for (const auto& r : rays) labels.push_back(r.to_string());
        OrthoLogic logic(18, std::move(ctxs), std::move(labels));
        cat.emplace("cabello18",
                    CatalogEntry{"cabello18",
                                 "18 rays, nine contexts, every ray in two",
                                 std::move(logic), std::move(rays)});
    }

    {
        std::vector<Ray> rays = {
            {{0, 0, 0, 1}},   {{0, 0, 1, -1}},  {{0, 0, 1, 0}},
            {{0, 0, 1, 1}},   {{0, 1, -1, 0}},  {{0, 1, 0, -1}},
            {{0, 1, 0, 0}},   {{0, 1, 0, 1}},   {{0, 1, 1, 0}},
            {{1, -1, -1, -1}}, {{1, -1, -1, 1}}, {{1, -1, 0, 0}},
            {{1, -1, 1, -1}}, {{1, -1, 1, 1}},  {{1, 0, -1, 0}},
            {{1, 0, 0, -1}},  {{1, 0, 0, 0}},   {{1, 0, 0, 1}},
            {{1, 0, 1, 0}},   {{1, 1, -1, -1}}, {{1, 1, -1, 1}},
            {{1, 1, 0, 0}},   {{1, 1, 1, -1}},  {{1, 1, 1, 1}}};
        std::vector<std::vector<int>> ctxs = {
            {0, 2, 6, 16},   {0, 2, 11, 21},  {0, 4, 8, 16},
            {0, 6, 14, 18},  {1, 3, 6, 16},   {1, 3, 11, 21},
            {1, 9, 13, 21},  {1, 11, 19, 23}, {2, 5, 7, 16},
            {2, 6, 15, 17},  {3, 10, 12, 21}, {3, 11, 20, 22},
            {4, 8, 15, 17},  {4, 9, 17, 22},  {4, 10, 15, 23},
            {5, 7, 14, 18},  {5, 9, 18, 20},  {5, 12, 14, 23},
            {7, 10, 18, 19}, {7, 13, 14, 22}, {8, 12, 17, 19},
            {8, 13, 15, 20}, {9, 13, 20, 22}, {10, 12, 19, 23}};
        std::vector<std::string> labels;
        for (const auto& r : rays) labels.push_back(r.to_string());
        OrthoLogic logic(24, std::move(ctxs), std::move(labels));
        cat.emplace("peres24",
                    CatalogEntry{"peres24", "24 rays in 24 interlinked contexts",
                                 std::move(logic), std::move(rays)});
    }

    return cat;
}

inline const std::map<std::string, CatalogEntry>& catalog_map() {
    static const std::map<std::string, CatalogEntry> cat = build_catalog();
    return cat;
}

} // namespace detail

inline const CatalogEntry& catalog(const std::string& name) {
    const auto& cat = detail::catalog_map();
    auto it = cat.find(name);
    if (it == cat.end()) {
        std::string names;
        for (const auto& [n, e] : cat) names += (names.empty() ? "" : ", ") + n;
        throw std::invalid_argument("catalog: unknown logic '" + name +
                                    "'; available: " + names);
    }
    return it->second;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& [n, e] : detail::catalog_map()) out.push_back(n);
    return out;
}

} // namespace qlogic
