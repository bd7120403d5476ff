// Exact rational two-phase simplex over named linear systems.
//
// Pivot rule: Bland's smallest-index rule everywhere, so the solver is
// deterministic and cannot cycle.  Infeasible systems come back with a
// Farkas certificate (one multiplier per constraint, nonnegative on the
// inequalities) whose nonnegative combination of the rows reads
// 0 . x >= positive; the certificate is re-verified by substitution before
// it is returned.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bellpoly/linear_system.hpp"
#include "bellpoly/rational.hpp"

namespace bellpoly {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct FarkasCertificate {
    // One multiplier per constraint, equalities first (in system order),
    // then inequalities.  Multipliers of inequalities are >= 0.
    std::vector<Rat> multipliers;
};

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    std::vector<Rat> solution;  // per system variable, when Optimal
    Rat objective = 0;
    bool early_stopped = false;
    FarkasCertificate farkas;  // when Infeasible
};

// Checks that the multipliers really certify infeasibility: the combined
// coefficient must vanish on free variables and be <= 0 on nonnegative
// ones, while the combined right-hand side is > 0.
inline bool verify_farkas(const LinearSystem& sys, const std::vector<bool>& nonneg,
                          const FarkasCertificate& cert) {
    const size_t ne = sys.equalities.size();
    const size_t ni = sys.inequalities.size();
    if (cert.multipliers.size() != ne + ni) return false;
    for (size_t j = 0; j < ni; ++j)
        if (cert.multipliers[ne + j] < 0) return false;
    std::vector<Rat> combined(sys.vars.size(), Rat(0));
    Rat combined_rhs = 0;
    for (size_t i = 0; i < ne; ++i) {
        const Rat& mu = cert.multipliers[i];
        if (mu == 0) continue;
        for (size_t v = 0; v < sys.vars.size(); ++v) combined[v] += mu * sys.equalities[i].coeffs[v];
        combined_rhs += mu * sys.equalities[i].rhs;
    }
    for (size_t j = 0; j < ni; ++j) {
        const Rat& mu = cert.multipliers[ne + j];
        if (mu == 0) continue;
        for (size_t v = 0; v < sys.vars.size(); ++v) combined[v] += mu * sys.inequalities[j].coeffs[v];
        combined_rhs += mu * sys.inequalities[j].rhs;
    }
    for (size_t v = 0; v < sys.vars.size(); ++v) {
        if (nonneg[v]) {
            if (combined[v] > 0) return false;
        } else {
            if (combined[v] != 0) return false;
        }
    }
    return combined_rhs > 0;
}

namespace detail {

struct SimplexTableau {
    // Column classes, in index order: structural (x+ and optional x-),
    // slacks, artificials.  Artificial columns never re-enter the basis.
    int ncols = 0;
    int nrows = 0;
    std::vector<std::vector<Rat>> tab;  // nrows x ncols
    std::vector<Rat> rhs;               // nrows, kept >= 0
    std::vector<int> basis;             // per row: basic column
    std::vector<Rat> rc;                // reduced costs per column
    Rat obj = 0;
    int first_artificial = 0;

    void pivot(int enter, int lrow) {
        Rat piv = tab[lrow][enter];
        Rat theta = rhs[lrow] / piv;
        obj += rc[enter] * theta;
        Rat inv = 1 / piv;
        for (Rat& t : tab[lrow]) t *= inv;
        rhs[lrow] = theta;
        for (int r = 0; r < nrows; ++r) {
            if (r == lrow) continue;
            Rat f = tab[r][enter];
            if (f == 0) continue;
            for (int c = 0; c < ncols; ++c)
                if (tab[lrow][c] != 0) tab[r][c] -= f * tab[lrow][c];
            tab[r][enter] = 0;
            rhs[r] -= f * rhs[lrow];
        }
        Rat fc = rc[enter];
        if (fc != 0) {
            for (int c = 0; c < ncols; ++c)
                if (tab[lrow][c] != 0) rc[c] -= fc * tab[lrow][c];
            rc[enter] = 0;
        }
        basis[lrow] = enter;
    }

    // Bland: smallest-index entering column with rc < 0 (artificials are
    // never candidates); leaving row = min ratio, ties by smallest basic
    // column index.  Returns false when optimal, throws on unbounded.
    enum class StepResult { Pivoted, Optimal, Unbounded };

    StepResult bland_step() {
        int enter = -1;
        for (int c = 0; c < first_artificial; ++c) {
            if (rc[c] < 0) { enter = c; break; }
        }
        if (enter < 0) return StepResult::Optimal;
        int lrow = -1;
        Rat best;
        for (int r = 0; r < nrows; ++r) {
            if (tab[r][enter] <= 0) continue;
            Rat ratio = rhs[r] / tab[r][enter];
            if (lrow < 0 || ratio < best || (ratio == best && basis[r] < basis[lrow])) {
                lrow = r;
                best = ratio;
            }
        }
        if (lrow < 0) return StepResult::Unbounded;
        pivot(enter, lrow);
        return StepResult::Pivoted;
    }

    void set_costs(const std::vector<Rat>& costs) {
        rc = costs;
        obj = 0;
        for (int r = 0; r < nrows; ++r) {
            const Rat& cb = costs[basis[r]];
            if (cb == 0) continue;
            obj += cb * rhs[r];
            for (int c = 0; c < ncols; ++c)
                if (tab[r][c] != 0) rc[c] -= cb * tab[r][c];
        }
    }
};

}  // namespace detail

// Minimizes objective . x subject to sys, with x_v >= 0 where nonneg[v].
// If stop_at_or_below is given, phase 2 returns as soon as the current
// basic solution reaches that objective value (early_stopped = true); the
// returned point is feasible but possibly not optimal.
inline LpResult lp_minimize(const LinearSystem& sys, const std::vector<Rat>& objective,
                            const std::vector<bool>& nonneg,
                            const Rat* stop_at_or_below = nullptr) {
    using detail::SimplexTableau;
    const size_t nv = sys.vars.size();
    if (objective.size() != nv || nonneg.size() != nv)
        throw std::invalid_argument("lp_minimize: objective/nonneg width mismatch");
    sys.validate();

    const size_t ne = sys.equalities.size();
    const size_t ni = sys.inequalities.size();
    const int nrows = int(ne + ni);

    // Column layout: for each variable one column (x+), plus an extra
    // negated column (x-) for free variables; then one slack per
    // inequality; then one artificial per row.
    std::vector<int> pos_col(nv), neg_col(nv, -1);
    int ncols = 0;
    for (size_t v = 0; v < nv; ++v) {
        pos_col[v] = ncols++;
        if (!nonneg[v]) neg_col[v] = ncols++;
    }
    const int first_slack = ncols;
    ncols += int(ni);
    const int first_artificial = ncols;
    ncols += nrows;

    SimplexTableau t;
    t.ncols = ncols;
    t.nrows = nrows;
    t.first_artificial = first_artificial;
    t.tab.assign(nrows, std::vector<Rat>(ncols, Rat(0)));
    t.rhs.assign(nrows, Rat(0));
    t.basis.resize(nrows);

    std::vector<int> flip(nrows, 1);
    auto load_row = [&](int r, const LinearRow& row, int slack) {
        int s = row.rhs < 0 ? -1 : 1;
        flip[r] = s;
        for (size_t v = 0; v < nv; ++v) {
            if (row.coeffs[v] == 0) continue;
            Rat c = s * row.coeffs[v];
            t.tab[r][pos_col[v]] = c;
            if (neg_col[v] >= 0) t.tab[r][neg_col[v]] = -c;
        }
        if (slack >= 0) t.tab[r][slack] = Rat(-s);
        t.rhs[r] = s * row.rhs;
        t.tab[r][first_artificial + r] = 1;
        t.basis[r] = first_artificial + r;
    };
    for (size_t i = 0; i < ne; ++i) load_row(int(i), sys.equalities[i], -1);
    for (size_t j = 0; j < ni; ++j) load_row(int(ne + j), sys.inequalities[j], first_slack + int(j));

    // Phase 1: minimize the sum of artificials.
    {
        std::vector<Rat> costs(ncols, Rat(0));
        for (int c = first_artificial; c < ncols; ++c) costs[c] = 1;
        t.set_costs(costs);
        while (true) {
            auto s = t.bland_step();
            if (s == SimplexTableau::StepResult::Optimal) break;
            if (s == SimplexTableau::StepResult::Unbounded)
                throw std::logic_error("lp_minimize: phase 1 unbounded");
        }
    }

    LpResult res;
    if (t.obj > 0) {
        res.status = LpStatus::Infeasible;
        // Row prices y_i = 1 - rc(artificial_i); map back through the row
        // sign flips.  Multipliers on inequality rows are >= 0 because the
        // slack column price condition enforces it at phase-1 optimality.
        res.farkas.multipliers.resize(nrows);
        for (int r = 0; r < nrows; ++r) {
            Rat y = Rat(1) - t.rc[first_artificial + r];
            res.farkas.multipliers[r] = Rat(flip[r]) * y;
        }
        if (!verify_farkas(sys, nonneg, res.farkas))
            throw std::logic_error("lp_minimize: Farkas certificate failed verification");
        return res;
    }

    // Drive leftover zero-level artificials out of the basis; rows that
    // cannot pivot are redundant equalities and are dropped.
    {
        std::vector<int> keep;
        for (int r = 0; r < t.nrows; ++r) {
            if (t.basis[r] < first_artificial) {
                keep.push_back(r);
                continue;
            }
            int enter = -1;
            for (int c = 0; c < first_artificial; ++c)
                if (t.tab[r][c] != 0) { enter = c; break; }
            if (enter >= 0) {
                t.pivot(enter, r);
                keep.push_back(r);
            }
        }
        if (int(keep.size()) != t.nrows) {
            std::vector<std::vector<Rat>> tab2;
            std::vector<Rat> rhs2;
            std::vector<int> basis2;
            for (int r : keep) {
                tab2.push_back(std::move(t.tab[r]));
                rhs2.push_back(std::move(t.rhs[r]));
                basis2.push_back(t.basis[r]);
            }
            t.tab = std::move(tab2);
            t.rhs = std::move(rhs2);
            t.basis = std::move(basis2);
            t.nrows = int(t.tab.size());
        }
    }

    // Phase 2.
    {
        std::vector<Rat> costs(ncols, Rat(0));
        for (size_t v = 0; v < nv; ++v) {
            if (objective[v] == 0) continue;
            costs[pos_col[v]] = objective[v];
            if (neg_col[v] >= 0) costs[neg_col[v]] = -objective[v];
        }
        t.set_costs(costs);
        while (true) {
            if (stop_at_or_below != nullptr && t.obj <= *stop_at_or_below) {
                res.early_stopped = true;
                break;
            }
            auto s = t.bland_step();
            if (s == SimplexTableau::StepResult::Optimal) break;
            if (s == SimplexTableau::StepResult::Unbounded) {
                res.status = LpStatus::Unbounded;
                return res;
            }
        }
    }

    res.status = LpStatus::Optimal;
    res.objective = t.obj;
    std::vector<Rat> colval(ncols, Rat(0));
    for (int r = 0; r < t.nrows; ++r) colval[t.basis[r]] = t.rhs[r];
    res.solution.resize(nv);
    for (size_t v = 0; v < nv; ++v) {
        res.solution[v] = colval[pos_col[v]];
        if (neg_col[v] >= 0) res.solution[v] -= colval[neg_col[v]];
    }
    return res;
}

// Feasibility probe (zero objective).  Optimal => feasible with an exact
// solution; Infeasible => verified Farkas certificate.
inline LpResult lp_feasible(const LinearSystem& sys, const std::vector<bool>& nonneg) {
    return lp_minimize(sys, std::vector<Rat>(sys.vars.size(), Rat(0)), nonneg);
}

inline LpResult lp_feasible(const LinearSystem& sys) {
    return lp_feasible(sys, std::vector<bool>(sys.vars.size(), false));
}

// Checks an exact solution against every constraint (no tolerance).
inline bool satisfies(const LinearSystem& sys, const std::vector<Rat>& x) {
    for (const auto& row : sys.equalities)
        if (dot(row.coeffs, x) != row.rhs) return false;
    for (const auto& row : sys.inequalities)
        if (dot(row.coeffs, x) < row.rhs) return false;
    return true;
}

}  // namespace bellpoly
