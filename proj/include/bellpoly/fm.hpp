// Fourier-Motzkin projection with interleaved LP-based redundancy
// removal, and the specialized linear system whose elimination reproduces
// the complete facet list of [(2 2),(w_1 ... w_n)] scenarios: variables
// are the behavior's CG coordinates, the A-side joint P(11), and the
// partial sums S(b|y); eliminating every S(b|y) (in order of b, per
// setting y) and then P(11) leaves exactly the Bell inequalities.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bellpoly/inequality.hpp"
#include "bellpoly/linear_system.hpp"
#include "bellpoly/scenario.hpp"
#include "bellpoly/simplex.hpp"

namespace bellpoly {

// Projects out one variable.  If the variable occurs in an equality, that
// equality is used as a pivot (Gaussian substitution); otherwise every
// lower bound is paired with every upper bound.  The variable stays in the
// variable list with an all-zero column.
inline LinearSystem fm_eliminate(const LinearSystem& sys, const std::string& var) {
    int v = sys.var_index(var);
    if (v < 0) throw std::invalid_argument("fm_eliminate: unknown variable " + var);
    sys.validate();
    LinearSystem out;
    out.vars = sys.vars;

    // equality pivot path
    for (size_t e = 0; e < sys.equalities.size(); ++e) {
        const LinearRow& piv = sys.equalities[e];
        if (piv.coeffs[size_t(v)] == 0) continue;
        Rat pc = piv.coeffs[size_t(v)];
        auto substitute = [&](const LinearRow& row) {
            LinearRow r = row;
            Rat f = r.coeffs[size_t(v)] / pc;
            if (f != 0) {
                for (size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] -= f * piv.coeffs[k];
                r.rhs -= f * piv.rhs;
                r.coeffs[size_t(v)] = 0;
            }
            normalize_row(r);
            return r;
        };
        for (size_t k = 0; k < sys.equalities.size(); ++k) {
            if (k == e) continue;
            out.equalities.push_back(substitute(sys.equalities[k]));
        }
        for (const auto& row : sys.inequalities) out.inequalities.push_back(substitute(row));
        dedupe_inequalities(out);
        return out;
    }

    out.equalities = sys.equalities;
    std::vector<const LinearRow*> lower, upper;
    for (const auto& row : sys.inequalities) {
        int sg = sgn(row.coeffs[size_t(v)]);
        if (sg > 0) lower.push_back(&row);       // row gives var >= ...
        else if (sg < 0) upper.push_back(&row);  // row gives var <= ...
        else out.inequalities.push_back(row);
    }
    for (const LinearRow* lo : lower)
        for (const LinearRow* up : upper) {
            const Rat a = lo->coeffs[size_t(v)];   // > 0
            const Rat b = up->coeffs[size_t(v)];   // < 0
            LinearRow r;
            r.coeffs.resize(sys.vars.size());
            for (size_t k = 0; k < sys.vars.size(); ++k)
                r.coeffs[k] = (-b) * lo->coeffs[k] + a * up->coeffs[k];
            r.rhs = (-b) * lo->rhs + a * up->rhs;
            r.coeffs[size_t(v)] = 0;
            normalize_row(r);
            out.inequalities.push_back(std::move(r));
        }
    dedupe_inequalities(out);
    return out;
}

// Drops every inequality implied by the rest (LP test, exact).  Scans in
// input order and removes greedily, so the result is deterministic.  An
// infeasible system is returned unchanged.
inline LinearSystem remove_redundant(const LinearSystem& sys) {
    LinearSystem cur = sys;
    dedupe_inequalities(cur, /*drop_vacuous=*/true);
    {
        auto feas = lp_feasible(cur);
        if (feas.status == LpStatus::Infeasible) return cur;
    }
    const size_t nv = cur.vars.size();
    size_t i = 0;
    while (i < cur.inequalities.size()) {
        const LinearRow target = cur.inequalities[i];
        // dual of: minimize target.coeffs . x subject to the others
        //   max  sum_j d_j u_j + sum_k f_k v_k
        //   s.t. C^T u + E^T v = target.coeffs,  u >= 0
        LinearSystem dual;
        std::vector<const LinearRow*> rest;
        for (size_t j = 0; j < cur.inequalities.size(); ++j)
            if (j != i) rest.push_back(&cur.inequalities[j]);
        const size_t nu = rest.size();
        const size_t nw = cur.equalities.size();
        for (size_t j = 0; j < nu; ++j) dual.vars.push_back("u" + std::to_string(j));
        for (size_t k = 0; k < nw; ++k) dual.vars.push_back("v" + std::to_string(k));
        for (size_t t = 0; t < nv; ++t) {
            LinearRow eq;
            eq.coeffs.resize(nu + nw);
            for (size_t j = 0; j < nu; ++j) eq.coeffs[j] = rest[j]->coeffs[t];
            for (size_t k = 0; k < nw; ++k) eq.coeffs[nu + k] = cur.equalities[k].coeffs[t];
            eq.rhs = target.coeffs[t];
            dual.equalities.push_back(std::move(eq));
        }
        std::vector<Rat> objective(nu + nw);  // minimize the negated dual objective
        for (size_t j = 0; j < nu; ++j) objective[j] = -rest[j]->rhs;
        for (size_t k = 0; k < nw; ++k) objective[nu + k] = -cur.equalities[k].rhs;
        std::vector<bool> nonneg(nu + nw, false);
        for (size_t j = 0; j < nu; ++j) nonneg[j] = true;

        Rat stop = -target.rhs;  // dual value >= rhs proves redundancy
        auto res = lp_minimize(dual, objective, nonneg, &stop);
        bool redundant;
        if (res.status == LpStatus::Infeasible) {
            redundant = false;  // primal unbounded below
        } else if (res.status == LpStatus::Unbounded) {
            throw std::logic_error("remove_redundant: dual unbounded on a feasible system");
        } else {
            redundant = res.early_stopped || -res.objective >= target.rhs;
        }
        if (redundant)
            cur.inequalities.erase(cur.inequalities.begin() + long(i));
        else
            ++i;
    }
    return cur;
}

// Eliminates the named variables in order, pruning redundancy after every
// single elimination (plain FM blows up double-exponentially otherwise).
inline LinearSystem project_out(LinearSystem sys, const std::vector<std::string>& vars) {
    for (const auto& v : vars) {
        sys = fm_eliminate(sys, v);
        sys = remove_redundant(sys);
    }
    return sys;
}

namespace detail {

inline void require_fine_shape(const Scenario& s) {
    if (s.num_parties() != 2 || s.num_settings(0) != 2 || s.outcomes(0, 1) != 2 ||
        s.outcomes(0, 2) != 2)
        throw std::invalid_argument(
            "build_fine_system: party A must have exactly two dichotomic settings");
}

}  // namespace detail

inline std::string s_var_name(int b, int y) {
    return "S(" + std::to_string(b) + "|" + std::to_string(y) + ")";
}

// Elimination order: S(1|y), ..., S(w_y-1|y) per setting y, then P(11).
inline std::vector<std::string> fine_elimination_order(const Scenario& s) {
    detail::require_fine_shape(s);
    std::vector<std::string> order;
    for (int y = 1; y <= s.num_settings(1); ++y)
        for (int b = 1; b <= s.outcomes(1, y) - 1; ++b) order.push_back(s_var_name(b, y));
    order.push_back("P(11)");
    return order;
}

// The inequality system P(a1 a2 b | y) >= 0 written in the independent
// variables {CG coordinates, P(11), S(b|y)}.  Per setting y with w
// outcomes there are exactly 4w inequalities: four for outcome 1, four
// per middle outcome, and four for the last outcome.
inline LinearSystem build_fine_system(const Scenario& s) {
    detail::require_fine_shape(s);
    CgLayout layout(s);
    const int n = s.num_settings(1);

    LinearSystem sys;
    for (const CgCoord& c : layout.coords) sys.vars.push_back(cg_coord_name(s, c));
    sys.vars.push_back("P(11)");
    for (int y = 1; y <= n; ++y)
        for (int b = 1; b <= s.outcomes(1, y) - 1; ++b) sys.vars.push_back(s_var_name(b, y));

    auto cg_name = [&](std::vector<int> party, std::vector<int> setting, std::vector<int> outcome) {
        return cg_coord_name(s, CgCoord{std::move(party), std::move(setting), std::move(outcome)});
    };
    const std::string pa1 = cg_name({0}, {1}, {1});
    const std::string pa2 = cg_name({0}, {2}, {1});
    auto pb = [&](int b, int y) { return cg_name({1}, {y}, {b}); };
    auto j1 = [&](int b, int y) { return cg_name({0, 1}, {1, y}, {1, b}); };
    auto j2 = [&](int b, int y) { return cg_name({0, 1}, {2, y}, {1, b}); };

    for (int y = 1; y <= n; ++y) {
        const int w = s.outcomes(1, y);
        const std::string s1 = s_var_name(1, y);
        const std::string sw = s_var_name(w - 1, y);

        // P(a1 a2 1 | y) >= 0
        sys.add_inequality_terms({{s1, 1}}, 0);
        sys.add_inequality_terms({{s1, 1}, {pb(1, y), 1}, {j1(1, y), -1}, {j2(1, y), -1}}, 0);
        sys.add_inequality_terms({{j1(1, y), 1}, {s1, -1}}, 0);
        sys.add_inequality_terms({{j2(1, y), 1}, {s1, -1}}, 0);

        // P(a1 a2 b | y) >= 0 for middle outcomes
        for (int b = 2; b <= w - 1; ++b) {
            const std::string sb = s_var_name(b, y);
            const std::string sp = s_var_name(b - 1, y);
            sys.add_inequality_terms({{sb, 1}, {sp, -1}}, 0);
            sys.add_inequality_terms(
                {{sb, 1}, {pb(b, y), 1}, {j1(b, y), -1}, {j2(b, y), -1}, {sp, -1}}, 0);
            sys.add_inequality_terms({{sp, 1}, {j1(b, y), 1}, {sb, -1}}, 0);
            sys.add_inequality_terms({{sp, 1}, {j2(b, y), 1}, {sb, -1}}, 0);
        }

        // P(a1 a2 w | y) >= 0
        sys.add_inequality_terms({{"P(11)", 1}, {sw, -1}}, 0);
        {
            std::map<std::string, Rat> terms{{"P(11)", 1}, {sw, -1}, {pa1, -1}, {pa2, -1}};
            for (int b = 1; b <= w - 1; ++b) {
                terms[pb(b, y)] = -1;
                terms[j1(b, y)] = 1;
                terms[j2(b, y)] = 1;
            }
            sys.add_inequality_terms(terms, -1);
        }
        {
            std::map<std::string, Rat> terms{{sw, 1}, {pa1, 1}, {"P(11)", -1}};
            for (int b = 1; b <= w - 1; ++b) terms[j1(b, y)] = -1;
            sys.add_inequality_terms(terms, 0);
        }
        {
            std::map<std::string, Rat> terms{{sw, 1}, {pa2, 1}, {"P(11)", -1}};
            for (int b = 1; b <= w - 1; ++b) terms[j2(b, y)] = -1;
            sys.add_inequality_terms(terms, 0);
        }
    }
    return sys;
}

// Runs the elimination pipeline and reads the surviving inequalities as
// Bell inequalities over the CG coordinates (normalized, sorted).
inline std::vector<BellInequality> fine_facets(const Scenario& s) {
    LinearSystem sys = build_fine_system(s);
    sys = project_out(std::move(sys), fine_elimination_order(s));
    const int dim = s.cg_dim();
    std::vector<BellInequality> out;
    for (const auto& row : sys.inequalities) {
        for (size_t k = size_t(dim); k < row.coeffs.size(); ++k)
            if (row.coeffs[k] != 0)
                throw std::logic_error("fine_facets: eliminated variable resurfaced");
        BellInequality f;
        f.scenario = s;
        f.coeffs.reserve(size_t(dim));
        for (int k = 0; k < dim; ++k) {
            const Rat& c = row.coeffs[size_t(k)];
            if (c.get_den() != 1) throw std::logic_error("fine_facets: non-integer row");
            f.coeffs.push_back(-Int(c.get_num()));
        }
        if (row.rhs.get_den() != 1) throw std::logic_error("fine_facets: non-integer rhs");
        f.bound = -Int(row.rhs.get_num());
        out.push_back(normalize(f));
    }
    std::sort(out.begin(), out.end(), [](const BellInequality& a, const BellInequality& b) {
        return canonical_compare(a, b) < 0;
    });
    return out;
}

}  // namespace bellpoly
