// JSON persistence of facet enumerations, keyed by a hash of the scenario
// in a cache directory.  Cached payloads are fully deterministic, so a
// forced recomputation reproduces the stored bytes.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "bellpoly/canonical.hpp"
#include "bellpoly/dd.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

inline std::string scenario_hash(const Scenario& s) {
    // FNV-1a over the canonical scenario string
    uint64_t h = 1469598103934665603ULL;
    for (char c : s.str()) {
        h ^= uint64_t(uint8_t(c));
        h *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf);
}

inline nlohmann::json enumeration_to_json(const FacetEnumeration& fe) {
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : fe.facets) facets.push_back(inequality_to_json(f));
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : fe.classes)
        classes.push_back(nlohmann::json{{"label", label_name(c.cls.label)},
                                         {"canonical", inequality_to_json(c.cls.canonical)},
                                         {"multiplicity", c.multiplicity}});
    return nlohmann::json{{"schema", 1},
                          {"scenario", scenario_to_json(fe.scenario)},
                          {"facets", facets},
                          {"classes", classes}};
}

inline FacetEnumeration enumeration_from_json(const nlohmann::json& j) {
    if (!j.contains("schema") || j.at("schema").get<int>() != 1)
        throw std::invalid_argument("facet cache: unsupported schema");
    FacetEnumeration fe;
    fe.scenario = scenario_from_json(j.at("scenario"));
    for (const auto& f : j.at("facets")) fe.facets.push_back(inequality_from_json(f));
    for (const auto& c : j.at("classes")) {
        FacetClassEntry e;
        std::string l = c.at("label").get<std::string>();
        e.cls.label = l == "positivity" ? Label::positivity
                                        : (l == "chsh" ? Label::chsh : Label::other);
        e.cls.canonical = inequality_from_json(c.at("canonical"));
        e.multiplicity = c.at("multiplicity").get<long long>();
        fe.classes.push_back(std::move(e));
    }
    return fe;
}

inline std::filesystem::path cache_file(const std::string& dir, const Scenario& s) {
    return std::filesystem::path(dir) / ("facets_" + scenario_hash(s) + ".json");
}

inline std::optional<FacetEnumeration> load_cached(const std::string& dir, const Scenario& s) {
    auto path = cache_file(dir, s);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    in >> j;
    FacetEnumeration fe = enumeration_from_json(j);
    if (!(fe.scenario == s)) return std::nullopt;  // hash collision guard
    return fe;
}

inline void store_cached(const std::string& dir, const FacetEnumeration& fe) {
    std::filesystem::create_directories(dir);
    auto path = cache_file(dir, fe.scenario);
    std::ofstream out(path);
    out << enumeration_to_json(fe).dump(1) << "\n";
}

// Cache-through facet enumeration; cache_hit reports whether the result
// was read back rather than recomputed.
inline FacetEnumeration facets_cached(const Scenario& s, const std::string& dir, bool force,
                                      long long max_vertices, bool* cache_hit = nullptr) {
    if (!force && !dir.empty()) {
        if (auto fe = load_cached(dir, s)) {
            if (cache_hit) *cache_hit = true;
            return *fe;
        }
    }
    FacetEnumeration fe = dd_facets(s, max_vertices);
    if (!dir.empty()) store_cached(dir, fe);
    if (cache_hit) *cache_hit = false;
    return fe;
}

}  // namespace bellpoly
