#include <doctest.h>

#include <random>

#include "bellpoly/families.hpp"
#include "bellpoly/inequality.hpp"

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

TEST_CASE("CHSH evaluates to the conventional Bell values") {
    Scenario s{{{2, 2}, {2, 2}}};
    BellInequality chsh = make(FamilyId::chsh());
    auto strategies = enumerate_strategies(s);
    // deterministic vertex with every outcome on the first label
    CHECK(evaluate(chsh, behavior_of_strategy(s, strategies[0])) == 2);
    CHECK(chsh.bound == 2);
    // PR box attains 4
    Behavior pr = pr_box();
    validate_behavior(pr);
    CHECK(evaluate(chsh, pr) == 4);
    // CH form saturates its lower bound 0 on the all-first vertex
    BellInequality ch = make(FamilyId::ch());
    CHECK(evaluate(ch, behavior_of_strategy(s, strategies[0])) == 0);
}

TEST_CASE("local bounds of the named functionals") {
    BellInequality chsh = make(FamilyId::chsh());
    CHECK(local_bound(chsh) == 2);
    BellInequality ch = make(FamilyId::ch());
    CHECK(local_bound(ch) == 1);
    CHECK(local_minimum(ch) == 0);
    // the [(2 3),(2 2 2)] inequality, stored as <= 0: its negation (the
    // printed >= 0 form) has local minimum 0
    BellInequality e3 = make(FamilyId::newineq3());
    CHECK(local_bound(e3) == 0);
    CHECK(valid_for_all_vertices(e3));
}

TEST_CASE("evaluate rejects mismatched scenarios") {
    BellInequality chsh = make(FamilyId::chsh());
    Behavior u = uniform_behavior(Scenario{{{2, 2}, {3, 3}}});
    CHECK_THROWS_AS(evaluate(chsh, u), std::invalid_argument);
}

TEST_CASE("normalization folds the offset and is idempotent") {
    BellInequality chsh = make(FamilyId::chsh());
    CHECK(chsh.offset == 2);  // the four-term form carries a constant in CG coordinates
    BellInequality n = normalize(chsh);
    CHECK(n.offset == 0);
    CHECK(n.bound == 0);
    Int g = content(n.coeffs);
    CHECK(gcd(g, n.bound) == 1);
    CHECK(normalize(n) == n);
    // normalized CHSH equals the negated CH expression
    BellInequality ch = make(FamilyId::ch());
    BellInequality chsh_low = n;
    BellInequality ch_up = normalize(ch);
    // they are different orbit members but live at the same local bound
    CHECK(valid_for_all_vertices(chsh_low));
    CHECK(valid_for_all_vertices(ch_up));
}

TEST_CASE("full <-> CG functional maps invert each other") {
    std::mt19937_64 rng(41);
    for (Scenario s : {Scenario{{{2, 2}, {2, 2}}}, Scenario{{{2, 3}, {2, 2}}},
                       Scenario{{{2, 2}, {2, 2}, {2, 2}}}}) {
        CgLayout layout(s);
        for (int t = 0; t < 10; ++t) {
            BellInequality i;
            i.scenario = s;
            for (int k = 0; k < s.cg_dim(); ++k) i.coeffs.push_back(Int(long(rng() % 9) - 4));
            i.offset = Int(long(rng() % 5) - 2);
            i.bound = Int(long(rng() % 7) - 3);
            BellInequality rt = cg_from_full(full_from_cg(i));
            CHECK(rt == i);
        }
    }
}

TEST_CASE("inequality JSON round trip and rendering") {
    BellInequality chsh = make(FamilyId::chsh());
    BellInequality rt = inequality_from_json(inequality_to_json(chsh));
    CHECK(rt == chsh);
    // homogeneous facets serialize without an offset key
    nlohmann::json nj = inequality_to_json(normalize(chsh));
    CHECK_FALSE(nj.contains("offset"));
    CHECK(nj.contains("cg_coeffs"));
    CHECK(nj.contains("bound"));
    CHECK(nj.contains("scenario"));
    std::string text = render(make(FamilyId::ch()));
    CHECK(text == "P_A(1|1) + P_B(1|1) - P(1 1|1 1) - P(1 1|1 2) - P(1 1|2 1) + P(1 1|2 2) <= 1");
    std::string full_text = render_full(make(FamilyId::chsh()));
    CHECK(full_text.find("P(1 1|1 1)") != std::string::npos);
}
