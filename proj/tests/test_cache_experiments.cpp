#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "bellpoly/cache.hpp"
#include "bellpoly/experiments.hpp"

using namespace bellpoly;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bellpoly-test-" + std::to_string(uintptr_t(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("enumeration JSON round trips and cache replays bit-identically") {
    Scenario s{{{2, 2}, {2, 2}}};
    auto fe = dd_facets(s);
    auto j = enumeration_to_json(fe);
    auto fe2 = enumeration_from_json(j);
    CHECK(enumeration_to_json(fe2).dump() == j.dump());

    TempDir tmp;
    bool hit = true;
    auto first = facets_cached(s, tmp.path.string(), false, 200, &hit);
    CHECK_FALSE(hit);
    auto second = facets_cached(s, tmp.path.string(), false, 200, &hit);
    CHECK(hit);
    CHECK(enumeration_to_json(first).dump() == enumeration_to_json(second).dump());
    // forced recomputation matches the cached bytes
    auto forced = facets_cached(s, tmp.path.string(), true, 200, &hit);
    CHECK_FALSE(hit);
    CHECK(enumeration_to_json(forced).dump() == enumeration_to_json(first).dump());
}

TEST_CASE("scenario hashes separate nearby scenarios") {
    CHECK(scenario_hash(Scenario{{{2, 2}, {2, 2}}}) != scenario_hash(Scenario{{{2, 2}, {2, 3}}}));
    CHECK(scenario_hash(Scenario{{{2, 2}, {2, 2}}}).size() == 16);
}

TEST_CASE("theorem4 experiment produces five certificates") {
    ExperimentOptions opt;
    opt.n_min = 2;
    opt.n_max = 4;
    auto rep = run_theorem4(opt);
    CHECK(rep.pass);
    CHECK(rep.result.at("certificates").size() == 3);
}

TEST_CASE("fine-lemma experiment passes with a reduced case count") {
    ExperimentOptions opt;
    opt.cases = 25;
    auto rep = run_fine_lemma(opt);
    CHECK(rep.pass);
    for (const auto& sc : rep.result.at("scenarios")) CHECK(sc.at("failures") == 0);
}

TEST_CASE("experiment reports are deterministic given the cache") {
    TempDir tmp;
    ExperimentOptions opt;
    opt.cache_dir = tmp.path.string();
    opt.max_w = 0;
    // restrict to the base scenario for speed: explicit grid of (2,2)
    opt.max_w = 2;
    opt.max_n = 2;
    auto r1 = run_theorem1(opt);
    auto r2 = run_theorem1(opt);
    CHECK(r1.pass);
    CHECK(r1.result.dump() == r2.result.dump());
    opt.force = true;
    auto r3 = run_theorem1(opt);
    CHECK(r1.result.dump() == r3.result.dump());
}

TEST_CASE("unknown experiment ids are rejected") {
    CHECK_THROWS_AS(run_experiment("nope", ExperimentOptions{}), std::invalid_argument);
}
