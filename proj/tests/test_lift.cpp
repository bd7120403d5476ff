#include <doctest.h>

#include <random>

#include "bellpoly/canonical.hpp"
#include "bellpoly/dd.hpp"
#include "bellpoly/families.hpp"
#include "bellpoly/lift.hpp"

using namespace bellpoly;

namespace {

LiftMap identity_map(const Scenario& s) {
    LiftMap m;
    m.setting_of.resize(size_t(s.num_parties()));
    m.grouping.resize(size_t(s.num_parties()));
    for (int p = 0; p < s.num_parties(); ++p) {
        for (int x = 1; x <= s.num_settings(p); ++x) {
            m.setting_of[size_t(p)].push_back(x);
            std::vector<int> g;
            for (int a = 1; a <= s.outcomes(p, x); ++a) g.push_back(a);
            m.grouping[size_t(p)].push_back(std::move(g));
        }
    }
    return m;
}

Behavior random_local_behavior(const Scenario& s, std::mt19937_64& rng) {
    auto vertices = enumerate_vertices(s);
    FullLayout fl(s);
    Behavior b{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    Int total = 0;
    std::vector<Int> wts(vertices.size());
    for (auto& w : wts) {
        w = long(rng() % 4);
        total += w;
    }
    if (total == 0) { wts[0] = 1; total = 1; }
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (wts[i] == 0) continue;
        Rat w = Rat(wts[i]) / Rat(total);
        for (size_t k = 0; k < b.table.size(); ++k) b.table[k] += w * vertices[i].table[k];
    }
    return b;
}

}  // namespace

TEST_CASE("identity lift returns the same inequality") {
    BellInequality ch = make(FamilyId::ch());
    CHECK(lift(ch, ch.scenario, identity_map(ch.scenario)) == ch);
}

TEST_CASE("CHSH lifted to three outcomes on B is a facet") {
    BellInequality ch = make(FamilyId::ch());
    Scenario target{{{2, 2}, {3, 3}}};
    LiftMap m = identity_map(ch.scenario);
    // group target outcomes {1,2} -> 1, {3} -> 2 on both B settings
    m.grouping[1][0] = {1, 1, 2};
    m.grouping[1][1] = {1, 1, 2};
    BellInequality lifted = lift(ch, target, m);
    CHECK(std::holds_alternative<FacetCertificate>(check_facet(target, lifted)));
    CHECK(classify(lifted) == Label::chsh);
}

TEST_CASE("CHSH lifted to an extra ignored setting is a facet") {
    BellInequality ch = make(FamilyId::ch());
    Scenario target{{{2, 2}, {2, 2, 2}}};
    LiftMap m = identity_map(ch.scenario);  // B's third setting never selected
    BellInequality lifted = lift(ch, target, m);
    CHECK(std::holds_alternative<FacetCertificate>(check_facet(target, lifted)));
    CHECK(classify(lifted) == Label::chsh);
}

TEST_CASE("lift evaluates as the source on the coarse-grained behavior") {
    std::mt19937_64 rng(67);
    BellInequality ch = make(FamilyId::ch());
    Scenario target{{{2, 2, 2}, {3, 2}}};
    LiftMap m;
    m.setting_of = {{2, 3}, {1, 2}};
    m.grouping = {{{1, 2}, {2, 1}}, {{1, 2, 1}, {1, 2}}};
    BellInequality lifted = lift(ch, target, m);
    for (int t = 0; t < 15; ++t) {
        Behavior b = random_local_behavior(target, rng);
        CHECK(evaluate(lifted, b) == evaluate(ch, coarse_grain(b, ch.scenario, m)));
    }
    // lift preserves validity on every target vertex
    CHECK(valid_for_all_vertices(lifted));
    CHECK(classify(lifted) == Label::chsh);
}

TEST_CASE("non-surjective groupings are rejected") {
    BellInequality ch = make(FamilyId::ch());
    Scenario target{{{2, 2}, {3, 3}}};
    LiftMap m = identity_map(ch.scenario);
    m.grouping[1][0] = {1, 1, 1};  // outcome 2 never hit
    m.grouping[1][1] = {1, 1, 2};
    CHECK_THROWS_AS(lift(ch, target, m), std::invalid_argument);
}

TEST_CASE("party embedding lifts CHSH to a tripartite facet") {
    BellInequality ch = make(FamilyId::ch());
    Scenario target{{{2, 2}, {2, 2}, {2, 2}}};
    PartyEmbedding m;
    m.target_party = {0, 2};
    m.setting_of = {{1, 2}, {1, 2}};
    m.grouping = {{{1, 2}, {1, 2}}, {{1, 2}, {1, 2}}};
    m.conditioning = {{1, 1}};  // middle party fixed to setting 1, outcome 1
    BellInequality lifted = embed(ch, target, m);
    CHECK(valid_for_all_vertices(lifted));
    CHECK(std::holds_alternative<FacetCertificate>(check_facet(target, lifted)));
    CHECK(classify(lifted) == Label::chsh);
}
