#include <doctest.h>

#include <random>
#include <set>

#include "bellpoly/dd.hpp"
#include "bellpoly/fm.hpp"
#include "oracles.hpp"

using namespace bellpoly;

TEST_CASE("single elimination pairs lower with upper bounds") {
    LinearSystem sys;
    sys.vars = {"x", "y"};
    sys.add_inequality({Rat(-1), Rat(0)}, Rat(-1));  // x <= 1
    sys.add_inequality({Rat(1), Rat(0)}, Rat(0));    // x >= 0
    sys.add_inequality({Rat(1), Rat(-1)}, Rat(0));   // x >= y
    auto out = fm_eliminate(sys, "x");
    // y <= 1 plus the vacuous 0 >= -1 from pairing (x>=0, x<=1)
    REQUIRE(out.inequalities.size() == 2);
    CHECK(out.inequalities[0].coeffs == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(out.inequalities[0].rhs == -1);
    CHECK(out.inequalities[1].coeffs == std::vector<Rat>{Rat(0), Rat(-1)});
    CHECK(out.inequalities[1].rhs == -1);
    // the vacuous row disappears under redundancy removal
    CHECK(remove_redundant(out).inequalities.size() == 1);
    CHECK_THROWS_AS(fm_eliminate(sys, "z"), std::invalid_argument);
}

TEST_CASE("equalities act as substitution pivots") {
    LinearSystem sys;
    sys.vars = {"x", "y"};
    sys.add_equality({Rat(2), Rat(-2)}, Rat(0));    // x = y
    sys.add_inequality({Rat(1), Rat(1)}, Rat(2));   // x + y >= 2
    auto out = fm_eliminate(sys, "x");
    CHECK(out.equalities.empty());
    REQUIRE(out.inequalities.size() == 1);
    CHECK(out.inequalities[0].coeffs == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(out.inequalities[0].rhs == 1);
}

TEST_CASE("the 3-cube projects to the unit square") {
    LinearSystem cube;
    cube.vars = {"x", "y", "z"};
    for (int v = 0; v < 3; ++v) {
        LinearRow lo, hi;
        lo.coeffs.assign(3, Rat(0));
        hi.coeffs.assign(3, Rat(0));
        lo.coeffs[size_t(v)] = 1;
        lo.rhs = 0;
        hi.coeffs[size_t(v)] = -1;
        hi.rhs = -1;
        cube.inequalities.push_back(lo);
        cube.inequalities.push_back(hi);
    }
    auto out = remove_redundant(fm_eliminate(cube, "z"));
    CHECK(out.inequalities.size() == 4);
    std::set<std::string> keys;
    for (const auto& r : out.inequalities) keys.insert(row_key(r));
    LinearSystem square;
    square.vars = {"x", "y", "z"};
    square.add_inequality({Rat(1), Rat(0), Rat(0)}, Rat(0));
    square.add_inequality({Rat(-1), Rat(0), Rat(0)}, Rat(-1));
    square.add_inequality({Rat(0), Rat(1), Rat(0)}, Rat(0));
    square.add_inequality({Rat(0), Rat(-1), Rat(0)}, Rat(-1));
    std::set<std::string> expect;
    for (const auto& r : square.inequalities) expect.insert(row_key(r));
    CHECK(keys == expect);
}

TEST_CASE("remove_redundant on the stated cases") {
    LinearSystem sys;
    sys.vars = {"x"};
    sys.add_inequality({Rat(1)}, Rat(0));   // x >= 0
    sys.add_inequality({Rat(1)}, Rat(-1));  // x >= -1 (implied)
    auto out = remove_redundant(sys);
    REQUIRE(out.inequalities.size() == 1);
    CHECK(out.inequalities[0].rhs == 0);

    LinearSystem dup;
    dup.vars = {"x"};
    dup.add_inequality({Rat(2)}, Rat(2));
    dup.add_inequality({Rat(1)}, Rat(1));  // same primitive row
    auto out2 = remove_redundant(dup);
    CHECK(out2.inequalities.size() == 1);
}

TEST_CASE("infeasible systems pass through remove_redundant unchanged") {
    LinearSystem sys;
    sys.vars = {"x"};
    sys.add_inequality({Rat(1)}, Rat(1));
    sys.add_inequality({Rat(-1)}, Rat(0));
    auto out = remove_redundant(sys);
    CHECK(out.inequalities.size() == 2);
}

TEST_CASE("the fine system has the right shape and a feasible local point") {
    Scenario s{{{2, 2}, {3, 3}}};
    LinearSystem sys = build_fine_system(s);
    CHECK(sys.vars.size() == size_t(s.cg_dim()) + 1 + 4);  // CG + P(11) + S(b|y)
    CHECK(sys.inequalities.size() == 4 * 3 + 4 * 3);       // 4 w_y per setting
    CHECK(sys.equalities.empty());

    // the uniform local behavior extends to a feasible point of the system
    auto res = lp_feasible(sys);
    CHECK(res.status == LpStatus::Optimal);

    CHECK_THROWS_AS(build_fine_system(Scenario{{{2, 3}, {2, 2}}}), std::invalid_argument);
}

TEST_CASE("fine pipeline equals double description on [(2 2),(2 2)]") {
    Scenario s{{{2, 2}, {2, 2}}};
    auto fine = fine_facets(s);
    auto fe = dd_facets(s);
    REQUIRE(fine.size() == fe.facets.size());
    for (size_t i = 0; i < fine.size(); ++i) CHECK(fine[i] == fe.facets[i]);
    CHECK(fine.size() == 24);
}

TEST_CASE("raw elimination output reduces to exactly the 24 facets") {
    // run the eliminations WITHOUT interleaved pruning, then prune once
    Scenario s{{{2, 2}, {2, 2}}};
    LinearSystem sys = build_fine_system(s);
    for (const auto& v : fine_elimination_order(s)) sys = fm_eliminate(sys, v);
    auto pruned = remove_redundant(sys);
    CHECK(pruned.inequalities.size() == 24);
    std::set<std::string> keys;
    for (const auto& r : pruned.inequalities) {
        BellInequality f;
        f.scenario = s;
        for (int k = 0; k < s.cg_dim(); ++k) {
            f.coeffs.push_back(-Int(Rat(r.coeffs[size_t(k)]).get_num()));
        }
        f.bound = -Int(Rat(r.rhs).get_num());
        keys.insert(inequality_key(normalize(f)));
    }
    auto fe = dd_facets(s);
    std::set<std::string> expect;
    for (const auto& f : fe.facets) expect.insert(inequality_key(f));
    CHECK(keys == expect);
}

TEST_CASE("projection agrees with the vertex-based oracle on random systems") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 12; ++t) {
        const int d = 3 + int(rng() % 2);
        LinearSystem sys;
        for (int v = 0; v < d; ++v) sys.vars.push_back("x" + std::to_string(v));
        // bounding box [0, 3]^d keeps everything bounded
        for (int v = 0; v < d; ++v) {
            LinearRow lo, hi;
            lo.coeffs.assign(size_t(d), Rat(0));
            hi.coeffs.assign(size_t(d), Rat(0));
            lo.coeffs[size_t(v)] = 1;
            lo.rhs = 0;
            hi.coeffs[size_t(v)] = -1;
            hi.rhs = -3;
            sys.inequalities.push_back(lo);
            sys.inequalities.push_back(hi);
        }
        // random cuts through a strictly interior point
        std::vector<Rat> star;
        for (int v = 0; v < d; ++v) star.push_back(make_rat(long(rng() % 5) + 1, 2));
        int extra = 2 + int(rng() % 3);
        for (int r = 0; r < extra; ++r) {
            LinearRow row;
            row.coeffs.resize(size_t(d));
            for (int v = 0; v < d; ++v) row.coeffs[size_t(v)] = long(rng() % 7) - 3;
            row.rhs = dot(row.coeffs, star) - Rat(long(rng() % 2) + 1);
            sys.inequalities.push_back(std::move(row));
        }

        auto verts = oracles::brute_force_vertices(sys);
        REQUIRE(!verts.empty());
        auto projected = project_out(sys, {sys.vars.back()});

        // (a) every projected original vertex satisfies the FM output
        for (auto v : verts) {
            v[size_t(d - 1)] = 0;  // eliminated column is zero in the output rows
            CHECK(satisfies(projected, v));
        }
        // (b) every vertex of the FM output lies in the hull of the
        // projected original vertices
        std::vector<std::vector<Rat>> proj_pts;
        for (auto v : verts) proj_pts.push_back(std::vector<Rat>(v.begin(), v.end() - 1));
        LinearSystem flat;  // same system over the surviving variables
        for (int v = 0; v < d - 1; ++v) flat.vars.push_back(sys.vars[size_t(v)]);
        for (const auto& row : projected.inequalities) {
            LinearRow r;
            r.coeffs.assign(row.coeffs.begin(), row.coeffs.end() - 1);
            r.rhs = row.rhs;
            flat.inequalities.push_back(std::move(r));
        }
        for (const auto& w : oracles::brute_force_vertices(flat))
            CHECK(oracles::hull_contains(proj_pts, w));
    }
}
