// Relabelings of a Bell scenario: permutations of parties (between parties
// whose profiles can be matched), of settings within a party (between
// settings with equal outcome counts), and of outcomes within a setting.
// They act on behaviors, strategies and inequalities; inequalities are
// relabeled in full conditional-probability coordinates and projected back
// to CG form, so the group action is exact.

#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bellpoly/behavior.hpp"
#include "bellpoly/inequality.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

struct Relabeling {
    // party_perm[p] = image party; setting_perm[p][s-1] = image setting in
    // the image party; outcome_perm[p][s-1][a-1] = image outcome.  Setting
    // and outcome maps are indexed by the ORIGINAL party and setting.
    std::vector<int> party_perm;
    std::vector<std::vector<int>> setting_perm;
    std::vector<std::vector<std::vector<int>>> outcome_perm;

    static Relabeling identity(const Scenario& s) {
        Relabeling r;
        r.party_perm.resize(s.num_parties());
        r.setting_perm.resize(s.num_parties());
        r.outcome_perm.resize(s.num_parties());
        for (int p = 0; p < s.num_parties(); ++p) {
            r.party_perm[p] = p;
            r.setting_perm[p].resize(s.num_settings(p));
            r.outcome_perm[p].resize(s.num_settings(p));
            for (int x = 1; x <= s.num_settings(p); ++x) {
                r.setting_perm[p][x - 1] = x;
                r.outcome_perm[p][x - 1].resize(s.outcomes(p, x));
                for (int a = 1; a <= s.outcomes(p, x); ++a) r.outcome_perm[p][x - 1][a - 1] = a;
            }
        }
        return r;
    }
};

inline void validate_relabeling(const Scenario& s, const Relabeling& r) {
    const int P = s.num_parties();
    if (int(r.party_perm.size()) != P || int(r.setting_perm.size()) != P ||
        int(r.outcome_perm.size()) != P)
        throw std::invalid_argument("Relabeling: arity mismatch");
    std::vector<bool> pseen(P, false);
    for (int p = 0; p < P; ++p) {
        int q = r.party_perm[p];
        if (q < 0 || q >= P || pseen[q]) throw std::invalid_argument("Relabeling: bad party map");
        pseen[q] = true;
        if (s.num_settings(p) != s.num_settings(q))
            throw std::invalid_argument("Relabeling: party profiles incompatible");
        std::vector<bool> sseen(s.num_settings(p), false);
        for (int x = 1; x <= s.num_settings(p); ++x) {
            int xi = r.setting_perm[p][x - 1];
            if (xi < 1 || xi > s.num_settings(q) || sseen[xi - 1])
                throw std::invalid_argument("Relabeling: bad setting map");
            sseen[xi - 1] = true;
            if (s.outcomes(p, x) != s.outcomes(q, xi))
                throw std::invalid_argument("Relabeling: outcome counts differ");
            std::vector<bool> oseen(s.outcomes(p, x), false);
            if (int(r.outcome_perm[p][x - 1].size()) != s.outcomes(p, x))
                throw std::invalid_argument("Relabeling: outcome map arity");
            for (int a = 1; a <= s.outcomes(p, x); ++a) {
                int ai = r.outcome_perm[p][x - 1][a - 1];
                if (ai < 1 || ai > s.outcomes(p, x) || oseen[ai - 1])
                    throw std::invalid_argument("Relabeling: bad outcome map");
                oseen[ai - 1] = true;
            }
        }
    }
}

// Image of a (joint setting, joint outcome) pair.
inline void relabel_index(const Relabeling& r, const std::vector<int>& x,
                          const std::vector<int>& a, std::vector<int>& x_out,
                          std::vector<int>& a_out) {
    const int P = int(x.size());
    x_out.assign(P, 0);
    a_out.assign(P, 0);
    for (int p = 0; p < P; ++p) {
        int q = r.party_perm[p];
        x_out[q] = r.setting_perm[p][x[p] - 1];
        a_out[q] = r.outcome_perm[p][x[p] - 1][a[p] - 1];
    }
}

// r2 after r1 (apply r1 first).
inline Relabeling compose(const Scenario& s, const Relabeling& r2, const Relabeling& r1) {
    Relabeling out = Relabeling::identity(s);
    for (int p = 0; p < s.num_parties(); ++p) {
        int mid = r1.party_perm[p];
        out.party_perm[p] = r2.party_perm[mid];
        for (int x = 1; x <= s.num_settings(p); ++x) {
            int xm = r1.setting_perm[p][x - 1];
            out.setting_perm[p][x - 1] = r2.setting_perm[mid][xm - 1];
            for (int a = 1; a <= s.outcomes(p, x); ++a) {
                int am = r1.outcome_perm[p][x - 1][a - 1];
                out.outcome_perm[p][x - 1][a - 1] = r2.outcome_perm[mid][xm - 1][am - 1];
            }
        }
    }
    return out;
}

inline Relabeling inverse(const Scenario& s, const Relabeling& r) {
    Relabeling out = Relabeling::identity(s);
    for (int p = 0; p < s.num_parties(); ++p) {
        int q = r.party_perm[p];
        out.party_perm[q] = p;
        for (int x = 1; x <= s.num_settings(p); ++x) {
            int xi = r.setting_perm[p][x - 1];
            out.setting_perm[q][xi - 1] = x;
            for (int a = 1; a <= s.outcomes(p, x); ++a) {
                int ai = r.outcome_perm[p][x - 1][a - 1];
                out.outcome_perm[q][xi - 1][ai - 1] = a;
            }
        }
    }
    return out;
}

inline DeterministicStrategy apply_relabeling(const Scenario& s, const DeterministicStrategy& d,
                                              const Relabeling& r) {
    DeterministicStrategy out;
    out.choice.resize(s.num_parties());
    for (int p = 0; p < s.num_parties(); ++p)
        out.choice[r.party_perm[p]].resize(s.num_settings(p));
    for (int p = 0; p < s.num_parties(); ++p)
        for (int x = 1; x <= s.num_settings(p); ++x) {
            int q = r.party_perm[p];
            int xi = r.setting_perm[p][x - 1];
            out.choice[q][xi - 1] = r.outcome_perm[p][x - 1][d.outcome(p, x) - 1];
        }
    return out;
}

inline Behavior apply_relabeling(const Behavior& b, const Relabeling& r) {
    FullLayout fl(b.scenario);
    Behavior out{b.scenario, std::vector<Rat>(b.table.size(), Rat(0))};
    std::vector<int> xi, ai;
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        relabel_index(r, x, a, xi, ai);
        out.table[size_t(fl.index(xi, ai))] = b.table[size_t(flat)];
    });
    return out;
}

// Relabeled inequality i' with i'(relabeled P) = i(P): carried out in full
// coordinates and projected back, so bounds and Bell values are preserved.
inline BellInequality apply_relabeling(const BellInequality& i, const Relabeling& r) {
    validate_relabeling(i.scenario, r);
    FullFunctional f = full_from_cg(i);
    FullLayout fl(i.scenario);
    FullFunctional g{i.scenario, std::vector<Rat>(f.coeffs.size(), Rat(0)), f.bound};
    std::vector<int> xi, ai;
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        if (f.coeffs[size_t(flat)] == 0) return;
        relabel_index(r, x, a, xi, ai);
        g.coeffs[size_t(fl.index(xi, ai))] += f.coeffs[size_t(flat)];
    });
    return cg_from_full(g);
}

// The full relabeling group of a scenario.  Sizes stay modest at desk
// scale (<= ~10^4); a guard throws beyond the cap.
inline std::vector<Relabeling> enumerate_relabelings(const Scenario& s,
                                                     long long cap = 2'000'000) {
    s.validate();
    const int P = s.num_parties();

    // All party permutations with compatible profiles (ordered profiles
    // may differ if a setting permutation can align them, so compatibility
    // is checked as a multiset).
    std::vector<std::vector<int>> party_perms;
    {
        std::vector<int> perm(P);
        std::vector<bool> used(P, false);
        std::function<void(int)> rec = [&](int p) {
            if (p == P) {
                party_perms.push_back(perm);
                return;
            }
            for (int q = 0; q < P; ++q) {
                if (used[q]) continue;
                auto a = s.parties[p], b = s.parties[q];
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (a != b) continue;
                used[q] = true;
                perm[p] = q;
                rec(p + 1);
                used[q] = false;
            }
        };
        rec(0);
    }

    // Per (source party, target party): all compatible setting bijections.
    std::vector<Relabeling> out;
    std::function<void(const std::vector<int>&, int, Relabeling&)> per_party =
        [&](const std::vector<int>& pperm, int p, Relabeling& r) {
            if (p == P) {
                out.push_back(r);
                if ((long long)out.size() > cap)
                    throw std::overflow_error("enumerate_relabelings: group too large");
                return;
            }
            const int q = pperm[p];
            const int ns = s.num_settings(p);
            std::vector<int> sperm(ns);
            std::vector<bool> used(ns, false);
            std::function<void(int)> settings_rec = [&](int x0) {
                if (x0 == ns) {
                    // settings fixed; now all outcome permutations per setting
                    r.setting_perm[p] = sperm;
                    std::function<void(int)> outcome_rec = [&](int x1) {
                        if (x1 == ns) {
                            per_party(pperm, p + 1, r);
                            return;
                        }
                        const int w = s.outcomes(p, x1 + 1);
                        std::vector<int> operm(w);
                        for (int a = 0; a < w; ++a) operm[a] = a + 1;
                        do {
                            r.outcome_perm[p][x1] = operm;
                            outcome_rec(x1 + 1);
                        } while (std::next_permutation(operm.begin(), operm.end()));
                    };
                    outcome_rec(0);
                    return;
                }
                for (int xt = 1; xt <= ns; ++xt) {
                    if (used[xt - 1]) continue;
                    if (s.outcomes(p, x0 + 1) != s.outcomes(q, xt)) continue;
                    used[xt - 1] = true;
                    sperm[x0] = xt;
                    settings_rec(x0 + 1);
                    used[xt - 1] = false;
                }
            };
            settings_rec(0);
        };

    for (const auto& pperm : party_perms) {
        Relabeling r = Relabeling::identity(s);
        r.party_perm = pperm;
        per_party(pperm, 0, r);
    }
    return out;
}

}  // namespace bellpoly
