// Lifting of Bell inequalities to larger scenarios: extra settings are
// ignored (zero coefficients) and extra outcomes are coarse-grained onto
// the source outcomes.  The general form also embeds a source with fewer
// parties by conditioning every unassigned target party on a fixed
// (setting, outcome) pair; liftings of facets are facets.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "bellpoly/behavior.hpp"
#include "bellpoly/inequality.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

// Same-party-count lift map.
struct LiftMap {
    // setting_of[p][s-1]: target setting carrying source setting s of
    // party p (injective per party); unlisted target settings get zero
    // coefficients.
    std::vector<std::vector<int>> setting_of;
    // grouping[p][s-1][a_t-1]: source outcome that target outcome a_t of
    // the carrying setting coarse-grains to (surjective onto the source
    // outcomes).
    std::vector<std::vector<std::vector<int>>> grouping;
};

// General embedding: source party sp lands on target party
// target_party[sp]; unassigned target parties are fixed to conditioning
// pairs (setting, outcome), listed in ascending target-party order.
struct PartyEmbedding {
    std::vector<int> target_party;
    std::vector<std::vector<int>> setting_of;
    std::vector<std::vector<std::vector<int>>> grouping;
    std::vector<std::pair<int, int>> conditioning;
};

inline void validate_embedding(const Scenario& src, const Scenario& target,
                               const PartyEmbedding& m) {
    const int SP = src.num_parties();
    const int TP = target.num_parties();
    if (int(m.target_party.size()) != SP || int(m.setting_of.size()) != SP ||
        int(m.grouping.size()) != SP)
        throw std::invalid_argument("embed: map arity mismatch");
    std::vector<bool> taken(TP, false);
    for (int sp = 0; sp < SP; ++sp) {
        int tp = m.target_party[sp];
        if (tp < 0 || tp >= TP || taken[tp]) throw std::invalid_argument("embed: bad party map");
        taken[tp] = true;
        if (int(m.setting_of[sp].size()) != src.num_settings(sp) ||
            int(m.grouping[sp].size()) != src.num_settings(sp))
            throw std::invalid_argument("embed: setting map arity mismatch");
        std::vector<bool> used(target.num_settings(tp), false);
        for (int ss = 1; ss <= src.num_settings(sp); ++ss) {
            int ts = m.setting_of[sp][ss - 1];
            if (ts < 1 || ts > target.num_settings(tp) || used[ts - 1])
                throw std::invalid_argument("embed: setting selection not injective");
            used[ts - 1] = true;
            const auto& g = m.grouping[sp][ss - 1];
            if (int(g.size()) != target.outcomes(tp, ts))
                throw std::invalid_argument("embed: grouping arity mismatch");
            std::vector<bool> hit(src.outcomes(sp, ss), false);
            for (int a : g) {
                if (a < 1 || a > src.outcomes(sp, ss))
                    throw std::invalid_argument("embed: grouping target out of range");
                hit[a - 1] = true;
            }
            for (bool h : hit)
                if (!h) throw std::invalid_argument("embed: grouping not surjective");
        }
    }
    size_t ci = 0;
    for (int tp = 0; tp < TP; ++tp) {
        if (taken[tp]) continue;
        if (ci >= m.conditioning.size())
            throw std::invalid_argument("embed: missing conditioning for unassigned party");
        auto [z, c] = m.conditioning[ci++];
        if (z < 1 || z > target.num_settings(tp) || c < 1 || c > target.outcomes(tp, z))
            throw std::invalid_argument("embed: conditioning out of range");
    }
    if (ci != m.conditioning.size())
        throw std::invalid_argument("embed: too many conditioning entries");
}

inline BellInequality embed(const BellInequality& src, const Scenario& target,
                            const PartyEmbedding& m, const CgLayout& src_cg,
                            const FullLayout& src_full, const CgLayout& target_cg,
                            const FullLayout& target_full) {
    validate_embedding(src.scenario, target, m);
    FullFunctional f = full_from_cg(src, src_cg, src_full);
    const int SP = src.scenario.num_parties();
    const int TP = target.num_parties();
    std::vector<int> source_of(TP, -1);
    for (int sp = 0; sp < SP; ++sp) source_of[m.target_party[sp]] = sp;
    std::vector<std::pair<int, int>> cond_of(TP, {0, 0});
    {
        size_t ci = 0;
        for (int tp = 0; tp < TP; ++tp)
            if (source_of[tp] < 0) cond_of[tp] = m.conditioning[ci++];
    }

    FullFunctional g{target, std::vector<Rat>(size_t(target_full.size), Rat(0)), f.bound};
    std::vector<int> xs(SP), as(SP);
    target_full.for_each([&](const std::vector<int>& xt, const std::vector<int>& at,
                             long long flat) {
        for (int tp = 0; tp < TP; ++tp) {
            int sp = source_of[tp];
            if (sp < 0) {
                if (xt[tp] != cond_of[tp].first || at[tp] != cond_of[tp].second) return;
            } else {
                int ss = -1;
                for (int cand = 1; cand <= src.scenario.num_settings(sp); ++cand)
                    if (m.setting_of[sp][cand - 1] == xt[tp]) { ss = cand; break; }
                if (ss < 0) return;  // unselected target setting
                xs[sp] = ss;
                as[sp] = m.grouping[sp][ss - 1][at[tp] - 1];
            }
        }
        g.coeffs[size_t(flat)] = f.coeffs[size_t(src_full.index(xs, as))];
    });

    // Adding parties turns the bound into a coefficient: the facet lift of
    // f . P <= c conditioned on the new parties' (z0, c0) pairs is
    // f . P(.. c0 | .. z0) - c P(c0|z0) <= 0.  Only deterministic points
    // that produce c0 at z0 touch the functional, all others sit at 0.
    if (SP < TP && f.bound != 0) {
        std::vector<int> x(TP), a(TP);
        for (int tp = 0; tp < TP; ++tp) {
            if (source_of[tp] < 0) {
                x[tp] = cond_of[tp].first;
                a[tp] = cond_of[tp].second;
            } else {
                x[tp] = 1;  // any completion of P(c0|z0); setting 1 works
            }
        }
        std::vector<int> active;
        for (int tp = 0; tp < TP; ++tp)
            if (source_of[tp] >= 0) active.push_back(tp);
        std::vector<int> oradix;
        for (int tp : active) oradix.push_back(target.outcomes(tp, 1));
        Odometer od(oradix);
        do {
            for (size_t k = 0; k < active.size(); ++k) a[active[k]] = od.value[k];
            g.coeffs[size_t(target_full.index(x, a))] -= f.bound;
        } while (od.next());
        g.bound = 0;
    }
    return cg_from_full(g, target_cg, target_full);
}

inline BellInequality embed(const BellInequality& src, const Scenario& target,
                            const PartyEmbedding& m) {
    CgLayout scg(src.scenario), tcg(target);
    FullLayout sfl(src.scenario), tfl(target);
    return embed(src, target, m, scg, sfl, tcg, tfl);
}

// Same-party-count lift.
inline BellInequality lift(const BellInequality& i, const Scenario& target, const LiftMap& map) {
    if (i.scenario.num_parties() != target.num_parties())
        throw std::invalid_argument("lift: party count mismatch (use embed for party lifts)");
    PartyEmbedding m;
    m.target_party.resize(size_t(i.scenario.num_parties()));
    for (int p = 0; p < i.scenario.num_parties(); ++p) m.target_party[p] = p;
    m.setting_of = map.setting_of;
    m.grouping = map.grouping;
    return embed(i, target, m);
}

// Coarse-grains a target behavior back to the source scenario of a lift
// map:  P_src(a|x) = sum over target outcomes grouped onto a, at the
// selected settings.  evaluate(lift(i), b) == evaluate(i, coarse_grain(b)).
inline Behavior coarse_grain(const Behavior& b, const Scenario& src, const LiftMap& map) {
    const Scenario& tgt = b.scenario;
    if (src.num_parties() != tgt.num_parties())
        throw std::invalid_argument("coarse_grain: party count mismatch");
    FullLayout sfl(src), tfl(tgt);
    Behavior out{src, std::vector<Rat>(size_t(sfl.size), Rat(0))};
    sfl.for_each([&](const std::vector<int>& xs, const std::vector<int>& as, long long flat) {
        std::vector<int> xt(src.num_parties());
        for (int p = 0; p < src.num_parties(); ++p) xt[p] = map.setting_of[p][xs[p] - 1];
        // sum over target outcomes that group to as
        std::vector<int> oradix;
        for (int p = 0; p < src.num_parties(); ++p) oradix.push_back(tgt.outcomes(p, xt[p]));
        Odometer od(oradix);
        Rat sum = 0;
        do {
            bool match = true;
            for (int p = 0; p < src.num_parties(); ++p)
                if (map.grouping[p][xs[p] - 1][od.value[p] - 1] != as[p]) { match = false; break; }
            if (match) sum += b.table[size_t(tfl.index(xt, od.value))];
        } while (od.next());
        out.table[size_t(flat)] = sum;
    });
    return out;
}

}  // namespace bellpoly
