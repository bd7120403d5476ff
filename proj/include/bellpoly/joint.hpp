// Joint distributions over complete outcome assignments (one outcome per
// party per setting) and the extended Fine construction: rebuilding a full
// joint from per-setting distributions of the last party that share one
// A-side marginal.

#pragma once

#include <stdexcept>
#include <vector>

#include "bellpoly/behavior.hpp"
#include "bellpoly/rational.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

// probs[i] is the probability of the i-th complete assignment, indexed
// exactly like enumerate_strategies(s) (an assignment is a deterministic
// strategy).
struct JointDistribution {
    Scenario scenario;
    std::vector<Rat> probs;
};

inline long long assignment_count(const Scenario& s) { return s.vertex_count(); }

inline void validate_joint(const JointDistribution& d) {
    d.scenario.validate();
    if ((long long)d.probs.size() != assignment_count(d.scenario))
        throw std::invalid_argument("JointDistribution: size mismatch");
    Rat sum = 0;
    for (const Rat& q : d.probs) {
        if (q < 0) throw std::invalid_argument("JointDistribution: negative entry");
        sum += q;
    }
    if (sum != 1) throw std::invalid_argument("JointDistribution: not normalized");
}

// P(a|x) = sum over assignments that choose a_p at x_p for every party.
// This is exactly the local-model mixture of deterministic vertices with
// the joint's weights, so the output is a valid no-signalling behavior.
inline Behavior joint_to_behavior(const JointDistribution& d) {
    const Scenario& s = d.scenario;
    FullLayout fl(s);
    Behavior b{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    auto strategies = enumerate_strategies(s);
    if (strategies.size() != d.probs.size())
        throw std::invalid_argument("joint_to_behavior: size mismatch");
    for (size_t i = 0; i < strategies.size(); ++i) {
        if (d.probs[i] == 0) continue;
        fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
            for (int p = 0; p < s.num_parties(); ++p)
                if (strategies[i].outcome(p, x[p]) != a[p]) return;
            b.table[size_t(flat)] += d.probs[i];
        });
    }
    return b;
}

// --- A-side / last-party decomposition used by the Fine construction ---
//
// The "A side" is every party except the last; an A-assignment fixes an
// outcome for each of their settings.  For each setting y of the last
// party, a per-y table holds P(A-assignment, b | y).

struct FineShape {
    Scenario scenario;
    std::vector<int> a_radix;  // outcome counts of all A-side (party,setting) slots
    long long a_count = 1;
    int last_party = 0;
    int n = 0;  // settings of the last party

    explicit FineShape(Scenario s) : scenario(std::move(s)) {
        scenario.validate();
        if (scenario.num_parties() < 2)
            throw std::invalid_argument("FineShape: needs at least two parties");
        last_party = scenario.num_parties() - 1;
        n = scenario.num_settings(last_party);
        for (int p = 0; p < last_party; ++p)
            for (int x = 1; x <= scenario.num_settings(p); ++x) {
                a_radix.push_back(scenario.outcomes(p, x));
                a_count *= scenario.outcomes(p, x);
            }
    }

    long long a_index(const std::vector<int>& a_values) const {
        long long idx = 0;
        for (size_t i = 0; i < a_radix.size(); ++i) idx = idx * a_radix[i] + (a_values[i] - 1);
        return idx;
    }
};

using PerSettingTables = std::vector<std::vector<Rat>>;  // [y-1][aIdx * w_y + (b-1)]

// Marginalizes a full joint to the n per-y tables P(A-assignment, b | y).
inline PerSettingTables marginalize_per_setting(const JointDistribution& d) {
    FineShape shape(d.scenario);
    const Scenario& s = d.scenario;
    PerSettingTables out(size_t(shape.n));
    for (int y = 1; y <= shape.n; ++y)
        out[size_t(y - 1)].assign(size_t(shape.a_count) * s.outcomes(shape.last_party, y), Rat(0));
    auto strategies = enumerate_strategies(s);
    for (size_t i = 0; i < strategies.size(); ++i) {
        if (d.probs[i] == 0) continue;
        std::vector<int> a_values;
        for (int p = 0; p < shape.last_party; ++p)
            for (int x = 1; x <= s.num_settings(p); ++x)
                a_values.push_back(strategies[i].outcome(p, x));
        long long aIdx = shape.a_index(a_values);
        for (int y = 1; y <= shape.n; ++y) {
            int b = strategies[i].outcome(shape.last_party, y);
            int w = s.outcomes(shape.last_party, y);
            out[size_t(y - 1)][size_t(aIdx) * w + (b - 1)] += d.probs[i];
        }
    }
    return out;
}

inline std::vector<Rat> a_side_marginal(const FineShape& shape, const std::vector<Rat>& per_y,
                                        int y) {
    const int w = shape.scenario.outcomes(shape.last_party, y);
    std::vector<Rat> m(size_t(shape.a_count), Rat(0));
    for (long long a = 0; a < shape.a_count; ++a)
        for (int b = 0; b < w; ++b) m[size_t(a)] += per_y[size_t(a) * w + b];
    return m;
}

// Product-over-y construction divided by the shared A-side marginal raised
// to the given exponent; entries with vanishing A-marginal are 0.  No
// output validation: callers probe normalization themselves.
inline JointDistribution reconstruct_joint_with_exponent(const PerSettingTables& per_y,
                                                         const Scenario& s, int exponent) {
    FineShape shape(s);
    if (int(per_y.size()) != shape.n)
        throw std::invalid_argument("reconstruct_joint: expected one table per last-party setting");
    for (int y = 1; y <= shape.n; ++y) {
        const auto& tab = per_y[size_t(y - 1)];
        if ((long long)tab.size() != shape.a_count * s.outcomes(shape.last_party, y))
            throw std::invalid_argument("reconstruct_joint: table size mismatch");
        Rat sum = 0;
        for (const Rat& q : tab) {
            if (q < 0) throw std::invalid_argument("reconstruct_joint: negative entry");
            sum += q;
        }
        if (sum != 1) throw std::invalid_argument("reconstruct_joint: table not normalized");
    }
    // Lemma precondition: all tables share one A-side marginal.
    std::vector<Rat> pa = a_side_marginal(shape, per_y[0], 1);
    for (int y = 2; y <= shape.n; ++y)
        if (a_side_marginal(shape, per_y[size_t(y - 1)], y) != pa)
            throw std::invalid_argument("reconstruct_joint: A-side marginals differ between settings");

    JointDistribution out{s, std::vector<Rat>(size_t(assignment_count(s)), Rat(0))};
    auto strategies = enumerate_strategies(s);
    for (size_t i = 0; i < strategies.size(); ++i) {
        std::vector<int> a_values;
        for (int p = 0; p < shape.last_party; ++p)
            for (int x = 1; x <= s.num_settings(p); ++x)
                a_values.push_back(strategies[i].outcome(p, x));
        long long aIdx = shape.a_index(a_values);
        if (pa[size_t(aIdx)] == 0) continue;  // zero branch
        Rat val = 1;
        for (int y = 1; y <= shape.n; ++y) {
            int b = strategies[i].outcome(shape.last_party, y);
            int w = s.outcomes(shape.last_party, y);
            val *= per_y[size_t(y - 1)][size_t(aIdx) * w + (b - 1)];
        }
        for (int k = 0; k < exponent; ++k) val /= pa[size_t(aIdx)];
        out.probs[i] = val;
    }
    return out;
}

// Default exponent n-1 (one less than the number of per-setting factors),
// which is the one that normalizes; the output is validated.
inline JointDistribution reconstruct_joint(const PerSettingTables& per_y, const Scenario& s) {
    FineShape shape(s);
    JointDistribution out = reconstruct_joint_with_exponent(per_y, s, shape.n - 1);
    validate_joint(out);
    return out;
}

}  // namespace bellpoly
