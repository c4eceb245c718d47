// JSON interchange for logics:
//   { "atoms": N,
//     "labels": ["..."],        optional, one per atom
//     "contexts": [[ids...]],   presentation order preserved
//     "rays": [[ints...]] }     optional, one integer ray per atom
//
// Loading validates exactly as the in-memory constructors do; a file either
// yields a well-formed LogicBundle or a diagnostic.

#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "ortho_logic.hpp"
#include "ray.hpp"

namespace qlogic {

struct LogicBundle {
    OrthoLogic logic;
    std::vector<Ray> rays; // empty when the source had none
};

inline LogicBundle logic_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("logic json: top level must be an object");
    if (!j.contains("atoms") || !j["atoms"].is_number_integer())
        throw std::invalid_argument("logic json: integer field 'atoms' required");
    if (!j.contains("contexts") || !j["contexts"].is_array())
        throw std::invalid_argument("logic json: array field 'contexts' required");

    const int atoms = j["atoms"].get<int>();
    std::vector<std::vector<int>> contexts;
    for (const auto& ctx : j["contexts"]) {
        if (!ctx.is_array())
            throw std::invalid_argument("logic json: each context is an array");
        std::vector<int> c;
        for (const auto& v : ctx) {
            if (!v.is_number_integer())
                throw std::invalid_argument(
                    "logic json: context entries are atom ids");
            c.push_back(v.get<int>());
        }
        contexts.push_back(std::move(c));
    }

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            throw std::invalid_argument("logic json: 'labels' must be an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_string())
                throw std::invalid_argument("logic json: labels are strings");
            labels.push_back(l.get<std::string>());
        }
    }

    std::vector<Ray> rays;
    if (j.contains("rays") && !j["rays"].is_null()) {
        if (!j["rays"].is_array())
            throw std::invalid_argument("logic json: 'rays' must be an array");
        for (const auto& rj : j["rays"]) {
            if (!rj.is_array())
                throw std::invalid_argument("logic json: each ray is an array");
            Ray r;
            for (const auto& v : rj) {
                if (!v.is_number_integer())
                    throw std::invalid_argument(
                        "logic json: ray components are integers");
                r.comps.push_back(v.get<long long>());
            }
            rays.push_back(std::move(r));
        }
        if (static_cast<int>(rays.size()) != atoms)
            throw std::invalid_argument("logic json: one ray per atom required");
        const int d = rays.empty() ? 0 : rays[0].dim();
        for (const auto& r : rays) {
            if (r.dim() != d)
                throw std::invalid_argument("logic json: mixed ray dimensions");
            (void)normalized(r); // rejects the zero ray
        }
    }

    return LogicBundle{OrthoLogic(atoms, std::move(contexts), std::move(labels)),
                       std::move(rays)};
}

inline nlohmann::json logic_to_json(const OrthoLogic& logic,
                                    const std::vector<Ray>& rays = {}) {
    nlohmann::json j;
    j["atoms"] = logic.atom_count();
    if (logic.has_labels()) j["labels"] = logic.labels();
    j["contexts"] = logic.contexts();
    if (!rays.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rays) arr.push_back(r.comps);
        j["rays"] = arr;
    }
    return j;
}

// Resolves a logic source argument: a catalog name first, else a path to a
// JSON file.
inline LogicBundle resolve_logic_source(const std::string& src) {
    const auto& names = detail::catalog_map();
    auto it = names.find(src);
    if (it != names.end())
        return LogicBundle{it->second.logic, it->second.rays};
    std::ifstream in(src);
    if (!in)
        throw std::invalid_argument(
            "unknown logic '" + src +
            "': not a catalog name and not a readable file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("failed to parse '" + src +
                                    "' as JSON: " + e.what());
    }
    return logic_from_json(j);
}

} // namespace qlogic
