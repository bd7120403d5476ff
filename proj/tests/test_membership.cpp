#include <doctest.h>

#include <random>

#include "bellpoly/canonical.hpp"
#include "bellpoly/families.hpp"
#include "bellpoly/membership.hpp"

using namespace bellpoly;

namespace {

Behavior pr_box() {
    Scenario s{{{2, 2}, {2, 2}}};
    FullLayout fl(s);
    Behavior pr{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        if (((a[0] - 1) ^ (a[1] - 1)) == (x[0] - 1) * (x[1] - 1))
            pr.table[size_t(flat)] = make_rat(1, 2);
    });
    return pr;
}

}  // namespace

TEST_CASE("a deterministic vertex decomposes as itself") {
    Scenario s{{{2, 2}, {2, 2}}};
    auto strategies = enumerate_strategies(s);
    auto r = membership(behavior_of_strategy(s, strategies[7]));
    auto* loc = std::get_if<LocalDecomposition>(&r);
    REQUIRE(loc != nullptr);
    REQUIRE(loc->weights.size() == 1);
    CHECK(loc->weights[0].first == 7);
    CHECK(loc->weights[0].second == 1);
}

TEST_CASE("the uniform behavior is local with weights that reconstruct it") {
    Scenario s{{{2, 2}, {2, 2}}};
    Behavior u = uniform_behavior(s);
    auto r = membership(u);
    auto* loc = std::get_if<LocalDecomposition>(&r);
    REQUIRE(loc != nullptr);
    // weights are a convex combination reproducing the behavior
    auto vertices = enumerate_vertices(s);
    Rat total = 0;
    Behavior mix{s, std::vector<Rat>(u.table.size(), Rat(0))};
    for (auto& [idx, w] : loc->weights) {
        CHECK(w > 0);
        total += w;
        for (size_t k = 0; k < mix.table.size(); ++k)
            mix.table[k] += w * vertices[size_t(idx)].table[k];
    }
    CHECK(total == 1);
    CHECK(mix == u);
}

TEST_CASE("the PR box is nonlocal with a CHSH-class separating facet") {
    Behavior pr = pr_box();
    auto r = membership(pr);
    auto* nl = std::get_if<NonLocality>(&r);
    REQUIRE(nl != nullptr);
    CHECK(evaluate(nl->separating, pr) > Rat(nl->separating.bound));
    CHECK(valid_for_all_vertices(nl->separating));
    CHECK(classify(nl->separating) == Label::chsh);
    CHECK(!nl->certificate.multipliers.empty());
}

TEST_CASE("noisy PR boxes cross the local boundary at visibility 1/2") {
    Scenario s{{{2, 2}, {2, 2}}};
    Behavior pr = pr_box();
    Behavior u = uniform_behavior(s);
    auto mix = [&](const Rat& v) {
        Behavior b{s, std::vector<Rat>(pr.table.size(), Rat(0))};
        for (size_t k = 0; k < b.table.size(); ++k)
            b.table[k] = v * pr.table[k] + (1 - v) * u.table[k];
        return b;
    };
    // exactly at the boundary: still local
    auto at = membership(mix(make_rat(1, 2)));
    CHECK(std::holds_alternative<LocalDecomposition>(at));
    // just inside
    auto in = membership(mix(make_rat(49, 100)));
    CHECK(std::holds_alternative<LocalDecomposition>(in));
    // just outside
    auto out = membership(mix(make_rat(51, 100)));
    auto* nl = std::get_if<NonLocality>(&out);
    REQUIRE(nl != nullptr);
    CHECK(classify(nl->separating) == Label::chsh);
}

TEST_CASE("membership certificates on a larger scenario") {
    // lift the PR box to [(2 2),(2 3)] by adding a third outcome that
    // never occurs on B's second setting
    Scenario s{{{2, 2}, {2, 3}}};
    Scenario s0{{{2, 2}, {2, 2}}};
    Behavior pr0 = pr_box();
    FullLayout fl(s), fl0(s0);
    Behavior pr{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        if (a[1] > 2) return;  // extra outcome has probability 0
        pr.table[size_t(flat)] = pr0.table[size_t(fl0.index(x, a))];
    });
    validate_behavior(pr);
    auto r = membership(pr);
    auto* nl = std::get_if<NonLocality>(&r);
    REQUIRE(nl != nullptr);
    CHECK(evaluate(nl->separating, pr) > Rat(nl->separating.bound));
    CHECK(valid_for_all_vertices(nl->separating));
    CHECK(std::holds_alternative<FacetCertificate>(
        check_facet(s, normalize(nl->separating))));
}

TEST_CASE("random local mixtures always come back local") {
    std::mt19937_64 rng(79);
    Scenario s{{{2, 2}, {2, 2}}};
    auto vertices = enumerate_vertices(s);
    for (int t = 0; t < 20; ++t) {
        Behavior b{s, std::vector<Rat>(vertices[0].table.size(), Rat(0))};
        Int total = 0;
        std::vector<Int> wts(vertices.size());
        for (auto& w : wts) {
            w = long(rng() % 5);
            total += w;
        }
        if (total == 0) { wts[3] = 1; total = 1; }
        for (size_t i = 0; i < vertices.size(); ++i) {
            if (wts[i] == 0) continue;
            Rat w = Rat(wts[i]) / Rat(total);
            for (size_t k = 0; k < b.table.size(); ++k) b.table[k] += w * vertices[i].table[k];
        }
        auto r = membership(b);
        CHECK(std::holds_alternative<LocalDecomposition>(r));
    }
}
