// Equivalence of inequalities under relabelings: orbit enumeration,
// canonical forms (lexicographic minimum of the normalized orbit), and
// classification into positivity / CHSH-lift / other.
//
// CHSH detection is by membership in an explicitly generated lift family
// (all party embeddings, setting pairs and outcome groupings of the eight
// base forms), not by structural pattern matching; the generated family is
// closed under relabelings, so membership is a plain hash lookup on the
// normalized form.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bellpoly/inequality.hpp"
#include "bellpoly/lift.hpp"
#include "bellpoly/relabeling.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

// Per-scenario symmetry data, built once: the full relabeling group and
// its action as a permutation of the full-coordinate layout.
class ScenarioSymmetry {
   public:
    explicit ScenarioSymmetry(const Scenario& s)
        : scenario_(s), cg_(s), full_(s), elements_(enumerate_relabelings(s)) {
        perms_.reserve(elements_.size());
        for (const auto& r : elements_) {
            std::vector<long long> perm(size_t(full_.size));
            std::vector<int> xi, ai;
            full_.for_each([&](const std::vector<int>& x, const std::vector<int>& a,
                               long long flat) {
                relabel_index(r, x, a, xi, ai);
                perm[size_t(flat)] = full_.index(xi, ai);
            });
            perms_.push_back(std::move(perm));
        }
    }

    const Scenario& scenario() const { return scenario_; }
    const CgLayout& cg() const { return cg_; }
    const FullLayout& full() const { return full_; }
    const std::vector<Relabeling>& elements() const { return elements_; }
    size_t size() const { return elements_.size(); }

    // Image of a NORMALIZED inequality under element e, normalized again.
    BellInequality apply(const FullFunctional& f, size_t e) const {
        const auto& perm = perms_[e];
        FullFunctional g{scenario_, std::vector<Rat>(f.coeffs.size(), Rat(0)), f.bound};
        for (size_t k = 0; k < f.coeffs.size(); ++k)
            if (f.coeffs[k] != 0) g.coeffs[size_t(perm[k])] += f.coeffs[k];
        return normalize(cg_from_full(g, cg_, full_));
    }

    FullFunctional lift_full(const BellInequality& normalized) const {
        return full_from_cg(normalized, cg_, full_);
    }

   private:
    Scenario scenario_;
    CgLayout cg_;
    FullLayout full_;
    std::vector<Relabeling> elements_;
    std::vector<std::vector<long long>> perms_;
};

inline const ScenarioSymmetry& symmetry_of(const Scenario& s) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<ScenarioSymmetry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[s.str()];
    if (!slot) slot = std::make_unique<ScenarioSymmetry>(s);
    return *slot;
}

// Full normalized orbit of an inequality; each member keeps the index of
// one group element that produces it from normalize(i).
inline std::map<std::string, std::pair<BellInequality, size_t>> orbit(const BellInequality& i) {
    const ScenarioSymmetry& sym = symmetry_of(i.scenario);
    BellInequality n = normalize(i);
    FullFunctional f = sym.lift_full(n);
    std::map<std::string, std::pair<BellInequality, size_t>> out;
    for (size_t e = 0; e < sym.size(); ++e) {
        BellInequality img = sym.apply(f, e);
        std::string key = inequality_key(img);
        out.emplace(std::move(key), std::make_pair(std::move(img), e));
    }
    return out;
}

// ---- classification families ------------------------------------------

enum class Label { positivity, chsh, other };

inline std::string label_name(Label l) {
    switch (l) {
        case Label::positivity: return "positivity";
        case Label::chsh: return "chsh";
        default: return "other";
    }
}

namespace detail {

// Normalized keys of all positivity facets -P(a|x) <= 0.
inline std::unordered_set<std::string> build_positivity_keys(const Scenario& s) {
    CgLayout cg(s);
    FullLayout fl(s);
    std::unordered_set<std::string> keys;
    fl.for_each([&](const std::vector<int>&, const std::vector<int>&, long long flat) {
        FullFunctional f{s, std::vector<Rat>(size_t(fl.size), Rat(0)), Rat(0)};
        f.coeffs[size_t(flat)] = -1;
        keys.insert(inequality_key(normalize(cg_from_full(f, cg, fl))));
    });
    return keys;
}

// The eight normalized CHSH facets of [(2 2),(2 2)]: orbit of the CH form.
inline std::vector<BellInequality> chsh_base_forms() {
    Scenario s0{{{2, 2}, {2, 2}}};
    CgLayout cg(s0);
    BellInequality ch;
    ch.scenario = s0;
    ch.coeffs.assign(size_t(s0.cg_dim()), Int(0));
    auto idx = [&](std::vector<int> party, std::vector<int> setting, std::vector<int> outcome) {
        return cg.index(CgCoord{std::move(party), std::move(setting), std::move(outcome)});
    };
    // P_A(1|1) + P_B(1|1) - P(11|11) - P(11|21) - P(11|12) + P(11|22) <= 1
    ch.coeffs[size_t(idx({0}, {1}, {1}))] = 1;
    ch.coeffs[size_t(idx({1}, {1}, {1}))] = 1;
    ch.coeffs[size_t(idx({0, 1}, {1, 1}, {1, 1}))] = -1;
    ch.coeffs[size_t(idx({0, 1}, {2, 1}, {1, 1}))] = -1;
    ch.coeffs[size_t(idx({0, 1}, {1, 2}, {1, 1}))] = -1;
    ch.coeffs[size_t(idx({0, 1}, {2, 2}, {1, 1}))] = 1;
    ch.bound = 1;
    std::vector<BellInequality> forms;
    for (auto& [key, member] : orbit(ch)) forms.push_back(member.first);
    if (forms.size() != 8) throw std::logic_error("chsh_base_forms: expected 8 forms");
    return forms;
}

// All CHSH lifts on a scenario: choose two target parties, embed the two
// base parties onto them (both assignments), select an ordered pair of
// settings per active party with a surjective 2-outcome grouping each, and
// condition every inactive party on each (setting, outcome) pair.
inline std::unordered_set<std::string> build_chsh_keys(const Scenario& s) {
    for (const auto& pp : s.parties)
        for (int w : pp)
            if (w < 2) return {};  // CHSH needs dichotomic effective outcomes
    if (s.num_parties() < 2) return {};

    static const std::vector<BellInequality> base = chsh_base_forms();
    Scenario s0 = base.front().scenario;
    CgLayout scg(s0), tcg(s);
    FullLayout sfl(s0), tfl(s);

    std::unordered_set<std::string> keys;
    const int TP = s.num_parties();

    // Surjective groupings of w target outcomes onto {1,2}: all subsets G
    // (mapped to source outcome 1) with G nonempty and proper.
    auto groupings = [](int w) {
        std::vector<std::vector<int>> out;
        for (int mask = 1; mask < (1 << w) - 1; ++mask) {
            std::vector<int> g(w);
            for (int a = 0; a < w; ++a) g[a] = (mask >> a) & 1 ? 1 : 2;
            out.push_back(std::move(g));
        }
        return out;
    };

    std::vector<int> active(2);
    for (active[0] = 0; active[0] < TP; ++active[0])
        for (active[1] = 0; active[1] < TP; ++active[1]) {
            if (active[1] == active[0]) continue;
            // conditioning choices for inactive parties
            std::vector<int> inactive;
            for (int p = 0; p < TP; ++p)
                if (p != active[0] && p != active[1]) inactive.push_back(p);
            std::vector<std::vector<std::pair<int, int>>> cond_choices{{}};
            for (int q : inactive) {
                std::vector<std::vector<std::pair<int, int>>> next;
                for (const auto& partial : cond_choices)
                    for (int z = 1; z <= s.num_settings(q); ++z)
                        for (int c = 1; c <= s.outcomes(q, z); ++c) {
                            auto ext = partial;
                            ext.emplace_back(z, c);
                            next.push_back(std::move(ext));
                        }
                cond_choices = std::move(next);
            }

            // per active party: ordered setting pairs x (grouping per pick)
            std::vector<std::vector<std::pair<std::vector<int>, std::vector<std::vector<int>>>>>
                party_maps(2);
            for (int k = 0; k < 2; ++k) {
                int tp = active[size_t(k)];
                for (int s1 = 1; s1 <= s.num_settings(tp); ++s1)
                    for (int s2 = 1; s2 <= s.num_settings(tp); ++s2) {
                        if (s1 == s2) continue;
                        for (const auto& g1 : groupings(s.outcomes(tp, s1)))
                            for (const auto& g2 : groupings(s.outcomes(tp, s2)))
                                party_maps[size_t(k)].push_back(
                                    {{s1, s2}, {g1, g2}});
                    }
            }

            for (const auto& m0 : party_maps[0])
                for (const auto& m1 : party_maps[1])
                    for (const auto& cond : cond_choices) {
                        PartyEmbedding m;
                        m.target_party = {active[0], active[1]};
                        m.setting_of = {m0.first, m1.first};
                        m.grouping = {m0.second, m1.second};
                        m.conditioning = cond;
                        for (const BellInequality& b : base) {
                            BellInequality lifted =
                                embed(b, s, m, scg, sfl, tcg, tfl);
                            keys.insert(inequality_key(normalize(lifted)));
                        }
                    }
        }
    return keys;
}

inline const std::unordered_set<std::string>& positivity_keys(const Scenario& s) {
    static std::mutex mu;
    static std::map<std::string, std::unordered_set<std::string>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(s.str());
    if (it == cache.end()) it = cache.emplace(s.str(), build_positivity_keys(s)).first;
    return it->second;
}

inline const std::unordered_set<std::string>& chsh_keys(const Scenario& s) {
    static std::mutex mu;
    static std::map<std::string, std::unordered_set<std::string>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(s.str());
    if (it == cache.end()) it = cache.emplace(s.str(), build_chsh_keys(s)).first;
    return it->second;
}

}  // namespace detail

inline Label classify(const BellInequality& i) {
    std::string key = inequality_key(normalize(i));
    if (detail::positivity_keys(i.scenario).count(key)) return Label::positivity;
    if (detail::chsh_keys(i.scenario).count(key)) return Label::chsh;
    return Label::other;
}

struct InequalityClass {
    BellInequality canonical;
    Label label = Label::other;
    // Relabeling mapping the canonical representative to (the normalized
    // form of) the inequality it was computed from.
    std::optional<Relabeling> witness;
};

// Canonical form: the (bound, coeffs)-lexicographic minimum over the
// normalized relabeling orbit.
inline InequalityClass canonicalize(const BellInequality& i) {
    const ScenarioSymmetry& sym = symmetry_of(i.scenario);
    BellInequality n = normalize(i);
    FullFunctional f = sym.lift_full(n);
    BellInequality best;
    size_t best_e = 0;
    bool first = true;
    for (size_t e = 0; e < sym.size(); ++e) {
        BellInequality img = sym.apply(f, e);
        if (first || canonical_compare(img, best) < 0) {
            best = std::move(img);
            best_e = e;
            first = false;
        }
    }
    InequalityClass out;
    out.canonical = std::move(best);
    out.label = classify(i);
    // best = apply(n, e*), so e*^{-1} maps the canonical form back to n.
    out.witness = inverse(i.scenario, sym.elements()[best_e]);
    return out;
}

}  // namespace bellpoly
