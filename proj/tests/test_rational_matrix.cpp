#include <doctest.h>

#include <random>

#include "bellpoly/behavior.hpp"
#include "bellpoly/matrix.hpp"
#include "bellpoly/rational.hpp"
#include "bellpoly/scenario.hpp"

using namespace bellpoly;

TEST_CASE("rationals are always reduced with positive denominator") {
    Rat a = rat_from_string("2/4");
    CHECK(a.get_num() == 1);
    CHECK(a.get_den() == 2);
    Rat b = rat_from_string("-6/-4");
    CHECK(b.get_num() == 3);
    CHECK(b.get_den() == 2);
    Rat c = make_rat(3, -6);
    CHECK(c.get_num() == -1);
    CHECK(c.get_den() == 2);
    CHECK(rat_to_string(a + b) == "2");
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        Rat x = make_rat(long(rng() % 41) - 20, long(rng() % 19) + 1);
        Rat y = make_rat(long(rng() % 41) - 20, long(rng() % 19) + 1);
        for (Rat v : {Rat(x + y), Rat(x * y), Rat(x - y)}) {
            CHECK(v.get_den() > 0);
            CHECK(gcd(Int(v.get_num()), Int(v.get_den())) == 1);
        }
    }
}

TEST_CASE("integer row normalization is primitive") {
    std::vector<Rat> row = {make_rat(2, 3), make_rat(-4, 3), Rat(0)};
    std::vector<Int> ic;
    Int ir;
    integerize_row(row, make_rat(2, 3), ic, ir);
    CHECK(ic == std::vector<Int>{1, -2, 0});
    CHECK(ir == 1);
}

TEST_CASE("rank on the stated small cases") {
    CHECK(rank(RatMatrix::identity(2)) == 2);
    CHECK(rank(RatMatrix(3, 4)) == 0);
    RatMatrix prop = RatMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
    CHECK(rank(prop) == 1);
}

TEST_CASE("rank equals rank of the transpose on random matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
        RatMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m.at(i, j) = make_rat(long(rng() % 7) - 3, long(rng() % 3) + 1);
        CHECK(rank(m) == rank(transpose(m)));
    }
}

TEST_CASE("affine rank on the stated cases") {
    CHECK(affine_rank({{Rat(3), Rat(4)}}) == 1);
    // three collinear distinct points in the plane
    CHECK(affine_rank({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}}) == 2);
    CHECK_THROWS_AS(affine_rank({}), std::invalid_argument);

    // the 16 vertices of [(2 2),(2 2)] in CG coordinates: 1 + dimension,
    // with the dimension given by the closed-form product 3*3 - 1 = 8
    Scenario s{{{2, 2}, {2, 2}}};
    CgLayout layout(s);
    std::vector<std::vector<Rat>> pts;
    for (const auto& d : enumerate_strategies(s)) {
        auto cg = cg_of_strategy(layout, d);
        pts.emplace_back(cg.begin(), cg.end());
    }
    CHECK(pts.size() == 16);
    CHECK(affine_rank(pts) == 9);
}

TEST_CASE("affine basis indices give an independent subset of full rank") {
    Scenario s{{{2, 2}, {2, 2}}};
    CgLayout layout(s);
    std::vector<std::vector<Rat>> pts;
    for (const auto& d : enumerate_strategies(s)) {
        auto cg = cg_of_strategy(layout, d);
        pts.emplace_back(cg.begin(), cg.end());
    }
    auto idx = affine_basis_indices(pts);
    CHECK(idx.size() == 9);
    std::vector<std::vector<Rat>> sub;
    for (int i : idx) sub.push_back(pts[size_t(i)]);
    CHECK(affine_rank(sub) == 9);
}

TEST_CASE("solve_square and nullspace") {
    RatMatrix m = RatMatrix::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(3)}});
    auto sol = solve_square(m, {Rat(5), Rat(10)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 1);
    CHECK((*sol)[1] == 3);

    RatMatrix sing = RatMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
    CHECK_FALSE(solve_square(sing, {Rat(1), Rat(1)}).has_value());

    auto ns = nullspace(sing);
    REQUIRE(ns.size() == 1);
    CHECK(dot(ns[0], {Rat(1), Rat(2)}) == 0);
}
