// Bell scenarios and their combinatorial structure: party/setting/outcome
// tables, deterministic strategies (the local vertices), the full
// conditional-probability table layout, and the Collins-Gisin coordinate
// layout in which the local polytope is full-dimensional.
//
// Conventions: parties are 0-based positions; settings and outcomes are
// 1-based labels, in code and in JSON alike.

#pragma once

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellpoly/rational.hpp"

namespace bellpoly {

struct Scenario {
    // parties[p][s-1] = number of outcomes of setting s of party p.
    std::vector<std::vector<int>> parties;

    int num_parties() const { return int(parties.size()); }
    int num_settings(int p) const { return int(parties[p].size()); }
    int outcomes(int p, int setting) const { return parties[p][setting - 1]; }

    void validate() const {
        if (parties.empty()) throw std::invalid_argument("Scenario: needs at least one party");
        for (const auto& pp : parties) {
            if (pp.empty()) throw std::invalid_argument("Scenario: party with no settings");
            for (int w : pp)
                if (w < 1) throw std::invalid_argument("Scenario: outcome count < 1");
        }
    }

    // Every setting has at least two outcomes (and there are >= 2 parties
    // with >= 2 settings each in the scenarios the experiments use).
    bool is_nontrivial() const {
        for (const auto& pp : parties)
            for (int w : pp)
                if (w < 2) return false;
        return true;
    }

    long long vertex_count() const {
        long long n = 1;
        for (const auto& pp : parties)
            for (int w : pp) {
                n *= w;
                if (n > (1LL << 50)) throw std::overflow_error("Scenario: vertex count overflow");
            }
        return n;
    }

    // Collins-Gisin dimension: prod_p (1 + sum_s (w_ps - 1)) - 1.
    int cg_dim() const {
        long long d = 1;
        for (const auto& pp : parties) {
            long long t = 1;
            for (int w : pp) t += w - 1;
            d *= t;
            if (d > (1 << 28)) throw std::overflow_error("Scenario: CG dimension overflow");
        }
        return int(d - 1);
    }

    std::string str() const {
        std::string s = "[";
        for (size_t p = 0; p < parties.size(); ++p) {
            if (p) s += ",";
            s += "(";
            for (size_t i = 0; i < parties[p].size(); ++i) {
                if (i) s += " ";
                s += std::to_string(parties[p][i]);
            }
            s += ")";
        }
        s += "]";
        return s;
    }

    bool operator==(const Scenario& o) const { return parties == o.parties; }
    bool operator<(const Scenario& o) const { return parties < o.parties; }
};

inline nlohmann::json scenario_to_json(const Scenario& s) {
    return nlohmann::json{{"parties", s.parties}};
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("parties"))
        throw std::invalid_argument("scenario JSON: expected {\"parties\": [[..],..]}");
    Scenario s;
    s.parties = j.at("parties").get<std::vector<std::vector<int>>>();
    s.validate();
    return s;
}

// Counts through tuples of 1-based values with given radices, last
// position fastest, so the sequence is lexicographic.
struct Odometer {
    std::vector<int> radix;
    std::vector<int> value;

    explicit Odometer(std::vector<int> r) : radix(std::move(r)), value(radix.size(), 1) {
        for (int x : radix)
            if (x < 1) throw std::invalid_argument("Odometer: radix < 1");
    }
    bool next() {
        for (int i = int(value.size()) - 1; i >= 0; --i) {
            if (value[i] < radix[i]) {
                ++value[i];
                std::fill(value.begin() + i + 1, value.end(), 1);
                return true;
            }
        }
        return false;
    }
    long long count() const {
        long long n = 1;
        for (int x : radix) n *= x;
        return n;
    }
};

// One deterministic local strategy: a chosen outcome per (party, setting).
struct DeterministicStrategy {
    // choice[p][s-1] = chosen outcome (1-based) of setting s of party p.
    std::vector<std::vector<int>> choice;

    int outcome(int p, int setting) const { return choice[p][setting - 1]; }
    bool operator==(const DeterministicStrategy& o) const { return choice == o.choice; }
};

// All strategies in lexicographic order over the flattened
// (party-major, setting-minor) outcome tuple.
inline std::vector<DeterministicStrategy> enumerate_strategies(const Scenario& s) {
    s.validate();
    std::vector<int> radix;
    for (int p = 0; p < s.num_parties(); ++p)
        for (int x = 1; x <= s.num_settings(p); ++x) radix.push_back(s.outcomes(p, x));
    std::vector<DeterministicStrategy> out;
    out.reserve(size_t(s.vertex_count()));
    Odometer od(radix);
    do {
        DeterministicStrategy d;
        d.choice.resize(s.num_parties());
        int k = 0;
        for (int p = 0; p < s.num_parties(); ++p) {
            d.choice[p].resize(s.num_settings(p));
            for (int x = 0; x < s.num_settings(p); ++x) d.choice[p][x] = od.value[k++];
        }
        out.push_back(std::move(d));
    } while (od.next());
    return out;
}

// Indexing of the full conditional-probability table P(a...|x...):
// blocks ordered by the joint setting tuple (lexicographic), inside a
// block the joint outcome tuple (lexicographic).  Block sizes vary with
// the chosen settings.
struct FullLayout {
    Scenario scenario;
    std::vector<long long> block_offset;  // per joint-setting index
    long long size = 0;

    explicit FullLayout(Scenario s) : scenario(std::move(s)) {
        scenario.validate();
        std::vector<int> sradix;
        for (int p = 0; p < scenario.num_parties(); ++p) sradix.push_back(scenario.num_settings(p));
        Odometer od(sradix);
        do {
            block_offset.push_back(size);
            long long block = 1;
            for (int p = 0; p < scenario.num_parties(); ++p)
                block *= scenario.outcomes(p, od.value[p]);
            size += block;
        } while (od.next());
    }

    long long setting_index(const std::vector<int>& x) const {
        long long idx = 0;
        for (int p = 0; p < scenario.num_parties(); ++p) {
            if (x[p] < 1 || x[p] > scenario.num_settings(p))
                throw std::out_of_range("FullLayout: setting out of range");
            idx = idx * scenario.num_settings(p) + (x[p] - 1);
        }
        return idx;
    }

    long long index(const std::vector<int>& x, const std::vector<int>& a) const {
        long long idx = 0;
        for (int p = 0; p < scenario.num_parties(); ++p) {
            int w = scenario.outcomes(p, x[p]);
            if (a[p] < 1 || a[p] > w) throw std::out_of_range("FullLayout: outcome out of range");
            idx = idx * w + (a[p] - 1);
        }
        return block_offset[size_t(setting_index(x))] + idx;
    }

    // Visits every (joint setting, joint outcome) pair in layout order.
    template <typename F>
    void for_each(F&& f) const {
        std::vector<int> sradix;
        for (int p = 0; p < scenario.num_parties(); ++p) sradix.push_back(scenario.num_settings(p));
        Odometer xs(sradix);
        long long flat = 0;
        do {
            std::vector<int> oradix;
            for (int p = 0; p < scenario.num_parties(); ++p)
                oradix.push_back(scenario.outcomes(p, xs.value[p]));
            Odometer as(oradix);
            do {
                f(xs.value, as.value, flat);
                ++flat;
            } while (as.next());
        } while (xs.next());
    }
};

// One Collins-Gisin coordinate: a nonempty party subset, a setting for
// each member, and an outcome strictly below that setting's last outcome.
struct CgCoord {
    std::vector<int> party;    // ascending
    std::vector<int> setting;  // parallel, 1-based
    std::vector<int> outcome;  // parallel, 1-based, < outcomes(party, setting)
};

struct CgLayout {
    Scenario scenario;
    std::vector<CgCoord> coords;
    std::map<std::vector<int>, int> index_of;  // key: flattened (p,s,a) triples

    explicit CgLayout(Scenario s) : scenario(std::move(s)) {
        scenario.validate();
        const int P = scenario.num_parties();
        // Party subsets ordered by (size, lexicographic members).
        std::vector<std::vector<int>> subsets;
        for (int k = 1; k <= P; ++k) {
            std::vector<int> comb(k);
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == k) {
                    subsets.push_back(comb);
                    return;
                }
                for (int p = start; p < P; ++p) {
                    comb[depth] = p;
                    rec(p + 1, depth + 1);
                }
            };
            rec(0, 0);
        }
        for (const auto& sub : subsets) {
            std::vector<int> sradix;
            for (int p : sub) sradix.push_back(scenario.num_settings(p));
            Odometer xs(sradix);
            do {
                std::vector<int> oradix;
                bool ok = true;
                for (size_t i = 0; i < sub.size(); ++i) {
                    int w = scenario.outcomes(sub[i], xs.value[i]) - 1;
                    if (w < 1) { ok = false; break; }
                    oradix.push_back(w);
                }
                if (!ok) continue;  // single-outcome settings contribute no coordinate
                Odometer as(oradix);
                do {
                    CgCoord c{sub, xs.value, as.value};
                    index_of.emplace(key(c), int(coords.size()));
                    coords.push_back(std::move(c));
                } while (as.next());
            } while (xs.next());
        }
        if (int(coords.size()) != scenario.cg_dim())
            throw std::logic_error("CgLayout: dimension mismatch");
    }

    int dim() const { return int(coords.size()); }

    static std::vector<int> key(const CgCoord& c) {
        std::vector<int> k;
        for (size_t i = 0; i < c.party.size(); ++i) {
            k.push_back(c.party[i]);
            k.push_back(c.setting[i]);
            k.push_back(c.outcome[i]);
        }
        return k;
    }

    int index(const CgCoord& c) const {
        auto it = index_of.find(key(c));
        if (it == index_of.end()) throw std::out_of_range("CgLayout: no such coordinate");
        return it->second;
    }
};

// CG coordinates of a deterministic strategy are 0/1: the coordinate is 1
// exactly when the strategy picks the coordinate's outcome at every listed
// (party, setting).
inline std::vector<int> cg_of_strategy(const CgLayout& layout, const DeterministicStrategy& d) {
    std::vector<int> v(layout.coords.size());
    for (size_t i = 0; i < layout.coords.size(); ++i) {
        const CgCoord& c = layout.coords[i];
        int hit = 1;
        for (size_t j = 0; j < c.party.size(); ++j) {
            if (d.outcome(c.party[j], c.setting[j]) != c.outcome[j]) {
                hit = 0;
                break;
            }
        }
        v[i] = hit;
    }
    return v;
}

// Scenario dimension (the affine dimension of the local polytope).
inline int dimension(const Scenario& s) { return s.cg_dim(); }

}  // namespace bellpoly
