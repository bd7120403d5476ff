// Local-model membership: exact LP over convex combinations of the
// deterministic vertices in CG coordinates.  Feasible points come back
// with their convex weights; infeasible points come back with the
// verified Farkas certificate plus a separating inequality that is a
// genuine facet, obtained by maximizing the violation over the polar
// polytope and purifying the optimum to one of its vertices.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bellpoly/behavior.hpp"
#include "bellpoly/inequality.hpp"
#include "bellpoly/matrix.hpp"
#include "bellpoly/scenario.hpp"
#include "bellpoly/simplex.hpp"

namespace bellpoly {

struct LocalDecomposition {
    // (vertex index in strategy-lexicographic order, weight), weights > 0.
    std::vector<std::pair<long long, Rat>> weights;
};

struct NonLocality {
    BellInequality separating;   // valid facet violated by the behavior
    FarkasCertificate certificate;  // infeasibility of the decomposition LP
};

using MembershipResult = std::variant<LocalDecomposition, NonLocality>;

namespace detail {

// Maximizes <target - x0, g> over the polar {g : <v_i - x0, g> <= 1} and
// walks the optimum to a vertex of the polar without decreasing the
// objective; vertices of the polar are facets of the polytope.
inline BellInequality separating_facet(const Scenario& s,
                                       const std::vector<std::vector<Rat>>& verts,
                                       const std::vector<Rat>& target) {
    const int d = int(target.size());
    std::vector<Rat> x0(size_t(d), Rat(0));
    for (const auto& v : verts)
        for (int k = 0; k < d; ++k) x0[size_t(k)] += v[size_t(k)];
    for (int k = 0; k < d; ++k) x0[size_t(k)] /= long(verts.size());

    LinearSystem polar;
    for (int k = 0; k < d; ++k) polar.vars.push_back("g" + std::to_string(k));
    for (const auto& v : verts) {
        LinearRow row;
        row.coeffs.resize(size_t(d));
        for (int k = 0; k < d; ++k) row.coeffs[size_t(k)] = x0[size_t(k)] - v[size_t(k)];
        row.rhs = -1;  // <v - x0, g> <= 1
        polar.inequalities.push_back(std::move(row));
    }
    std::vector<Rat> objective((size_t(d)));
    for (int k = 0; k < d; ++k) objective[size_t(k)] = x0[size_t(k)] - target[size_t(k)];
    auto res = lp_minimize(polar, objective, std::vector<bool>(size_t(d), false));
    if (res.status != LpStatus::Optimal)
        throw std::logic_error("separating_facet: polar LP must be bounded and feasible");
    std::vector<Rat> g = res.solution;
    if (-res.objective <= 1)
        throw std::logic_error("separating_facet: point is not outside the polytope");

    auto row_value = [&](size_t i) {
        Rat v = 0;
        for (int k = 0; k < d; ++k) v += (verts[i][size_t(k)] - x0[size_t(k)]) * g[size_t(k)];
        return v;
    };

    // purification: grow the saturated set until it has full rank d
    while (true) {
        std::vector<size_t> sat;
        for (size_t i = 0; i < verts.size(); ++i)
            if (row_value(i) == 1) sat.push_back(i);
        RatMatrix m(int(sat.size()), d);
        for (size_t r = 0; r < sat.size(); ++r)
            for (int k = 0; k < d; ++k)
                m.at(int(r), k) = verts[sat[r]][size_t(k)] - x0[size_t(k)];
        if (rank(m) == d) break;
        auto ns = nullspace(m);
        if (ns.empty()) throw std::logic_error("separating_facet: purification stalled");
        std::vector<Rat> h = ns.front();
        Rat dh = 0;
        for (int k = 0; k < d; ++k) dh += (target[size_t(k)] - x0[size_t(k)]) * h[size_t(k)];
        if (dh < 0)
            for (Rat& q : h) q = -q;
        // largest step keeping polar feasibility; bounded because the
        // polytope is full-dimensional and x0 interior
        bool found = false;
        Rat tmax = 0;
        for (size_t i = 0; i < verts.size(); ++i) {
            Rat den = 0;
            for (int k = 0; k < d; ++k)
                den += (verts[i][size_t(k)] - x0[size_t(k)]) * h[size_t(k)];
            if (den <= 0) continue;
            Rat t = (Rat(1) - row_value(i)) / den;
            if (!found || t < tmax) { tmax = t; found = true; }
        }
        if (!found || tmax <= 0)
            throw std::logic_error("separating_facet: purification step failed");
        for (int k = 0; k < d; ++k) g[size_t(k)] += tmax * h[size_t(k)];
    }

    // facet inequality: <g, x> <= <g, x0> + 1, scaled to primitive ints
    Rat rhs = 1;
    for (int k = 0; k < d; ++k) rhs += g[size_t(k)] * x0[size_t(k)];
    std::vector<Int> ic;
    Int ir;
    integerize_row(g, rhs, ic, ir);
    BellInequality f;
    f.scenario = s;
    f.coeffs = std::move(ic);
    f.bound = ir;
    return f;
}

}  // namespace detail

inline MembershipResult membership(const Behavior& b, long long max_vertices = 200) {
    validate_behavior(b);
    const Scenario& s = b.scenario;
    long long nv = s.vertex_count();
    if (nv > max_vertices)
        throw std::runtime_error("membership: scenario " + s.str() + " has " +
                                 std::to_string(nv) + " vertices, exceeding the cap of " +
                                 std::to_string(max_vertices));
    CgLayout layout(s);
    const int d = layout.dim();
    auto strategies = enumerate_strategies(s);
    std::vector<std::vector<Rat>> verts;
    verts.reserve(strategies.size());
    for (const auto& st : strategies) {
        auto cg = cg_of_strategy(layout, st);
        verts.emplace_back(cg.begin(), cg.end());
    }
    std::vector<Rat> target = to_cg(b).coords;

    // decomposition LP: q >= 0, sum q = 1, sum q_i v_i = target
    LinearSystem sys;
    for (size_t i = 0; i < verts.size(); ++i) sys.vars.push_back("q" + std::to_string(i));
    for (int k = 0; k < d; ++k) {
        LinearRow row;
        row.coeffs.resize(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) row.coeffs[i] = verts[i][size_t(k)];
        row.rhs = target[size_t(k)];
        sys.equalities.push_back(std::move(row));
    }
    {
        LinearRow row;
        row.coeffs.assign(verts.size(), Rat(1));
        row.rhs = 1;
        sys.equalities.push_back(std::move(row));
    }
    auto res = lp_feasible(sys, std::vector<bool>(verts.size(), true));
    if (res.status == LpStatus::Optimal) {
        LocalDecomposition dec;
        for (size_t i = 0; i < verts.size(); ++i)
            if (res.solution[i] != 0) dec.weights.emplace_back((long long)i, res.solution[i]);
        return dec;
    }
    if (res.status != LpStatus::Infeasible)
        throw std::logic_error("membership: decomposition LP cannot be unbounded");

    // The Farkas multipliers themselves give a valid violated inequality;
    // re-verify it, then return the facet-tightened separator.
    {
        const auto& y = res.farkas.multipliers;  // one per equality row (d coords + normalization)
        std::vector<Rat> gr((size_t(d)));
        for (int k = 0; k < d; ++k) gr[size_t(k)] = y[size_t(k)];
        const Rat& ynorm = y[size_t(d)];
        std::vector<Int> ic;
        Int ir;
        integerize_row(gr, -ynorm, ic, ir);  // functional g, level -ynorm
        BellInequality raw;
        raw.scenario = s;
        raw.coeffs = std::move(ic);
        bool first = true;
        Int maxv = 0;
        for (const auto& v : verts) {
            Int val = 0;
            for (int k = 0; k < d; ++k)
                if (v[size_t(k)] != 0) val += raw.coeffs[size_t(k)] * Int(v[size_t(k)].get_num());
            if (first || val > maxv) { maxv = val; first = false; }
        }
        raw.bound = maxv;
        if (evaluate_cg(raw, target) <= Rat(raw.bound))
            throw std::logic_error("membership: Farkas-derived inequality fails to separate");
    }

    NonLocality nl;
    nl.certificate = res.farkas;
    nl.separating = detail::separating_facet(s, verts, target);
    if (evaluate_cg(nl.separating, target) <= Rat(nl.separating.bound))
        throw std::logic_error("membership: separating facet fails to separate");
    if (!valid_for_all_vertices(nl.separating))
        throw std::logic_error("membership: separating facet is not valid");
    return nl;
}

}  // namespace bellpoly
