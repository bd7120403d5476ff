// Behaviors: full conditional-probability tables P(a...|x...) with exact
// rational entries, their invariants (normalization, no-signalling), and
// the linear round trip to Collins-Gisin coordinates.

#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "bellpoly/rational.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

struct Behavior {
    Scenario scenario;
    std::vector<Rat> table;  // FullLayout order

    bool operator==(const Behavior& o) const {
        return scenario == o.scenario && table == o.table;
    }
};

struct CGVector {
    Scenario scenario;
    std::vector<Rat> coords;  // CgLayout order; the all-skip coordinate (constant 1) is omitted

    bool operator==(const CGVector& o) const {
        return scenario == o.scenario && coords == o.coords;
    }
};

inline Behavior behavior_of_strategy(const Scenario& s, const DeterministicStrategy& d) {
    FullLayout fl(s);
    Behavior b{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        bool hit = true;
        for (int p = 0; p < s.num_parties(); ++p)
            if (d.outcome(p, x[p]) != a[p]) { hit = false; break; }
        if (hit) b.table[size_t(flat)] = 1;
    });
    return b;
}

// All local deterministic vertices, in strategy-lexicographic order.
inline std::vector<Behavior> enumerate_vertices(const Scenario& s) {
    std::vector<Behavior> out;
    auto strategies = enumerate_strategies(s);
    out.reserve(strategies.size());
    for (const auto& d : strategies) out.push_back(behavior_of_strategy(s, d));
    return out;
}

inline Behavior uniform_behavior(const Scenario& s) {
    FullLayout fl(s);
    Behavior b{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>&, long long flat) {
        long long block = 1;
        for (int p = 0; p < s.num_parties(); ++p) block *= s.outcomes(p, x[p]);
        b.table[size_t(flat)] = Rat(1, long(block));
    });
    return b;
}

// Exact validation of the Behavior invariants: nonnegativity,
// normalization per joint setting, and no-signalling (each party's
// removal marginal is independent of that party's setting).
inline void validate_behavior(const Behavior& b) {
    b.scenario.validate();
    FullLayout fl(b.scenario);
    if ((long long)b.table.size() != fl.size)
        throw std::invalid_argument("Behavior: table size mismatch");
    for (const Rat& q : b.table)
        if (q < 0) throw std::invalid_argument("Behavior: negative entry");

    const Scenario& s = b.scenario;
    std::vector<int> sradix;
    for (int p = 0; p < s.num_parties(); ++p) sradix.push_back(s.num_settings(p));
    Odometer xs(sradix);
    do {
        std::vector<int> oradix;
        for (int p = 0; p < s.num_parties(); ++p) oradix.push_back(s.outcomes(p, xs.value[p]));
        Odometer as(oradix);
        Rat sum = 0;
        do {
            sum += b.table[size_t(fl.index(xs.value, as.value))];
        } while (as.next());
        if (sum != 1) throw std::invalid_argument("Behavior: block not normalized");
    } while (xs.next());

    // No-signalling: for each party p and each context of the others,
    // the marginal over p's outcome must not depend on p's setting.
    for (int p = 0; p < s.num_parties(); ++p) {
        std::vector<int> other_sradix;
        for (int q = 0; q < s.num_parties(); ++q)
            if (q != p) other_sradix.push_back(s.num_settings(q));
        Odometer oxs(other_sradix.empty() ? std::vector<int>{1} : other_sradix);
        do {
            std::vector<int> x(s.num_parties());
            {
                int k = 0;
                for (int q = 0; q < s.num_parties(); ++q)
                    if (q != p) x[q] = other_sradix.empty() ? 1 : oxs.value[k++];
            }
            std::vector<int> other_oradix;
            std::vector<int> others;
            for (int q = 0; q < s.num_parties(); ++q)
                if (q != p) {
                    others.push_back(q);
                    other_oradix.push_back(s.outcomes(q, x[q]));
                }
            Odometer oas(other_oradix.empty() ? std::vector<int>{1} : other_oradix);
            do {
                Rat reference = 0;
                bool have_reference = false;
                for (int xp = 1; xp <= s.num_settings(p); ++xp) {
                    x[p] = xp;
                    std::vector<int> a(s.num_parties());
                    for (size_t k = 0; k < others.size(); ++k) a[others[k]] = oas.value[k];
                    Rat m = 0;
                    for (int ap = 1; ap <= s.outcomes(p, xp); ++ap) {
                        a[p] = ap;
                        m += b.table[size_t(fl.index(x, a))];
                    }
                    if (!have_reference) {
                        reference = m;
                        have_reference = true;
                    } else if (m != reference) {
                        throw std::invalid_argument("Behavior: no-signalling violated");
                    }
                }
            } while (!other_oradix.empty() && oas.next());
        } while (!other_sradix.empty() && oxs.next());
    }
}

// Marginal P(a_S | x_S) computed from the full table, completing the
// missing parties with setting 1 (any completion agrees under
// no-signalling).
inline Rat marginal(const Behavior& b, const FullLayout& fl, const CgCoord& c) {
    const Scenario& s = b.scenario;
    std::vector<int> x(s.num_parties(), 1);
    for (size_t j = 0; j < c.party.size(); ++j) x[c.party[j]] = c.setting[j];
    std::vector<int> missing;
    for (int p = 0; p < s.num_parties(); ++p) {
        bool in = false;
        for (int cp : c.party)
            if (cp == p) { in = true; break; }
        if (!in) missing.push_back(p);
    }
    std::vector<int> a(s.num_parties(), 1);
    for (size_t j = 0; j < c.party.size(); ++j) a[c.party[j]] = c.outcome[j];
    if (missing.empty()) return b.table[size_t(fl.index(x, a))];
    std::vector<int> mradix;
    for (int p : missing) mradix.push_back(s.outcomes(p, x[p]));
    Odometer ms(mradix);
    Rat sum = 0;
    do {
        for (size_t k = 0; k < missing.size(); ++k) a[missing[k]] = ms.value[k];
        sum += b.table[size_t(fl.index(x, a))];
    } while (ms.next());
    return sum;
}

// Linear map to Collins-Gisin coordinates.
inline CGVector to_cg(const Behavior& b) {
    CgLayout layout(b.scenario);
    FullLayout fl(b.scenario);
    CGVector v{b.scenario, {}};
    v.coords.reserve(layout.coords.size());
    for (const CgCoord& c : layout.coords) v.coords.push_back(marginal(b, fl, c));
    return v;
}

namespace detail {

// Expands one full-table probability P(a|x) over the CG basis:
// each party contributes either its coordinate (outcome below last) or
// 1 - sum of that setting's coordinates (last outcome).  Calls
// f(sign, cg_index or -1 for the constant term) per expansion term.
template <typename F>
inline void expand_full_coordinate(const CgLayout& layout, const std::vector<int>& x,
                                   const std::vector<int>& a, F&& f) {
    const Scenario& s = layout.scenario;
    const int P = s.num_parties();
    std::vector<int> sel_party, sel_setting, sel_outcome;
    std::function<void(int, int)> rec = [&](int p, int sign) {
        if (p == P) {
            if (sel_party.empty()) {
                f(sign, -1);
            } else {
                CgCoord c{sel_party, sel_setting, sel_outcome};
                f(sign, layout.index(c));
            }
            return;
        }
        int w = s.outcomes(p, x[p]);
        if (a[p] < w) {
            sel_party.push_back(p);
            sel_setting.push_back(x[p]);
            sel_outcome.push_back(a[p]);
            rec(p + 1, sign);
            sel_party.pop_back();
            sel_setting.pop_back();
            sel_outcome.pop_back();
        } else {
            // last outcome: 1 - sum_{b<w} coordinate(b)
            rec(p + 1, sign);
            for (int bo = 1; bo < w; ++bo) {
                sel_party.push_back(p);
                sel_setting.push_back(x[p]);
                sel_outcome.push_back(bo);
                rec(p + 1, -sign);
                sel_party.pop_back();
                sel_setting.pop_back();
                sel_outcome.pop_back();
            }
        }
    };
    rec(0, 1);
}

}  // namespace detail

// Inverse of to_cg on the no-signalling affine space.  The result always
// satisfies the normalization and no-signalling identities by
// construction; entries may be negative when the input vector does not
// come from a genuine behavior.
inline Behavior from_cg(const CGVector& v) {
    CgLayout layout(v.scenario);
    if (v.coords.size() != layout.coords.size())
        throw std::invalid_argument("from_cg: coordinate count mismatch");
    FullLayout fl(v.scenario);
    Behavior b{v.scenario, std::vector<Rat>(size_t(fl.size), Rat(0))};
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        Rat val = 0;
        detail::expand_full_coordinate(layout, x, a, [&](int sign, int idx) {
            if (idx < 0)
                val += sign;
            else if (v.coords[size_t(idx)] != 0)
                val += Rat(sign) * v.coords[size_t(idx)];
        });
        b.table[size_t(flat)] = val;
    });
    return b;
}

// JSON: flat list of {"settings":[...],"outcomes":[...],"p":"num/den"}.
inline nlohmann::json behavior_to_json(const Behavior& b) {
    FullLayout fl(b.scenario);
    nlohmann::json entries = nlohmann::json::array();
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        entries.push_back(nlohmann::json{{"settings", x},
                                         {"outcomes", a},
                                         {"p", rat_to_string(b.table[size_t(flat)])}});
    });
    return entries;
}

inline Behavior behavior_from_json(const Scenario& s, const nlohmann::json& j) {
    FullLayout fl(s);
    Behavior b{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    std::vector<bool> seen(size_t(fl.size), false);
    if (!j.is_array()) throw std::invalid_argument("behavior JSON: expected array");
    for (const auto& e : j) {
        auto x = e.at("settings").get<std::vector<int>>();
        auto a = e.at("outcomes").get<std::vector<int>>();
        if (int(x.size()) != s.num_parties() || int(a.size()) != s.num_parties())
            throw std::invalid_argument("behavior JSON: tuple arity mismatch");
        long long idx = fl.index(x, a);
        b.table[size_t(idx)] = rat_from_string(e.at("p").get<std::string>());
        seen[size_t(idx)] = true;
    }
    for (bool f : seen)
        if (!f) throw std::invalid_argument("behavior JSON: missing entries");
    validate_behavior(b);
    return b;
}

}  // namespace bellpoly
