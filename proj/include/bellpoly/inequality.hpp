// Bell inequalities in Collins-Gisin coordinates: integer functionals with
// an integer bound (sense <=) and an integer constant term, so that
// generator-built inequalities evaluate to the conventional Bell values of
// their full-coordinate form.  Includes the exact linear round trip
// between full-coordinate functionals and CG functionals, local bounds
// over the deterministic vertices, gcd normalization, JSON and a
// human-readable rendering in probability notation.

#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "bellpoly/behavior.hpp"
#include "bellpoly/rational.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

struct BellInequality {
    Scenario scenario;
    std::vector<Int> coeffs;  // one per CG coordinate
    Int offset = 0;           // constant term: value(P) = offset + coeffs . cg(P)
    Int bound = 0;            // valid when value(P) <= bound on every local P

    bool operator==(const BellInequality& o) const {
        return scenario == o.scenario && coeffs == o.coeffs && offset == o.offset &&
               bound == o.bound;
    }
};

inline Rat evaluate_cg(const BellInequality& i, const std::vector<Rat>& cg) {
    if (cg.size() != i.coeffs.size())
        throw std::invalid_argument("evaluate_cg: coordinate count mismatch");
    Rat v(i.offset);
    for (size_t k = 0; k < cg.size(); ++k)
        if (i.coeffs[k] != 0 && cg[k] != 0) v += Rat(i.coeffs[k]) * cg[k];
    return v;
}

inline Rat evaluate(const BellInequality& i, const Behavior& b) {
    if (!(i.scenario == b.scenario))
        throw std::invalid_argument("evaluate: scenario mismatch");
    return evaluate_cg(i, to_cg(b).coords);
}

inline Int evaluate_strategy(const BellInequality& i, const CgLayout& layout,
                             const DeterministicStrategy& d) {
    auto cg = cg_of_strategy(layout, d);
    Int v = i.offset;
    for (size_t k = 0; k < cg.size(); ++k)
        if (cg[k]) v += i.coeffs[k];
    return v;
}

// Max of the functional over all local deterministic vertices.
inline Int local_bound(const BellInequality& i, const Scenario& s) {
    if (!(i.scenario == s)) throw std::invalid_argument("local_bound: scenario mismatch");
    CgLayout layout(s);
    auto strategies = enumerate_strategies(s);
    bool first = true;
    Int best = 0;
    for (const auto& d : strategies) {
        Int v = evaluate_strategy(i, layout, d);
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

inline Int local_bound(const BellInequality& i) { return local_bound(i, i.scenario); }

inline Int local_minimum(const BellInequality& i) {
    BellInequality neg = i;
    for (Int& c : neg.coeffs) c = -c;
    neg.offset = -neg.offset;
    return -local_bound(neg);
}

// True when every deterministic vertex satisfies value <= bound.
inline bool valid_for_all_vertices(const BellInequality& i) {
    CgLayout layout(i.scenario);
    for (const auto& d : enumerate_strategies(i.scenario))
        if (evaluate_strategy(i, layout, d) > i.bound) return false;
    return true;
}

// Homogeneous primitive form: the constant is folded into the bound and
// the gcd of all coefficients and the bound is 1.  Idempotent.
inline BellInequality normalize(const BellInequality& i) {
    BellInequality out = i;
    out.bound -= out.offset;
    out.offset = 0;
    Int dummy = 0;
    primitive_normalize(out.coeffs, out.bound, dummy);
    return out;
}

// Deterministic total order on normalized inequalities: (bound, coeffs)
// lexicographically.
inline int canonical_compare(const BellInequality& a, const BellInequality& b) {
    int c = cmp(a.bound, b.bound);
    if (c != 0) return c;
    return lex_compare(a.coeffs, b.coeffs);
}

inline std::string inequality_key(const BellInequality& i) {
    return i.bound.get_str() + "|" + int_vec_key(i.coeffs);
}

// ---- full-coordinate functionals ------------------------------------

struct FullFunctional {
    Scenario scenario;
    std::vector<Rat> coeffs;  // FullLayout order
    Rat bound = 0;
};

// Lifts a CG functional to full coordinates: each CG coefficient lands on
// the marginal's expansion with missing parties completed at setting 1,
// and the constant term is spread over the all-settings-1 block.
inline FullFunctional full_from_cg(const BellInequality& i, const CgLayout& layout,
                                   const FullLayout& fl) {
    if (i.coeffs.size() != layout.coords.size())
        throw std::invalid_argument("full_from_cg: coefficient count mismatch");
    FullFunctional f{i.scenario, std::vector<Rat>(size_t(fl.size), Rat(0)), Rat(i.bound)};
    const Scenario& s = i.scenario;
    for (size_t k = 0; k < layout.coords.size(); ++k) {
        if (i.coeffs[k] == 0) continue;
        const CgCoord& c = layout.coords[k];
        std::vector<int> x(s.num_parties(), 1), a(s.num_parties(), 1);
        for (size_t j = 0; j < c.party.size(); ++j) {
            x[c.party[j]] = c.setting[j];
            a[c.party[j]] = c.outcome[j];
        }
        std::vector<int> missing;
        for (int p = 0; p < s.num_parties(); ++p) {
            bool in = false;
            for (int cp : c.party)
                if (cp == p) { in = true; break; }
            if (!in) missing.push_back(p);
        }
        if (missing.empty()) {
            f.coeffs[size_t(fl.index(x, a))] += Rat(i.coeffs[k]);
        } else {
            std::vector<int> mradix;
            for (int p : missing) mradix.push_back(s.outcomes(p, 1));
            Odometer ms(mradix);
            do {
                for (size_t t = 0; t < missing.size(); ++t) a[missing[t]] = ms.value[t];
                f.coeffs[size_t(fl.index(x, a))] += Rat(i.coeffs[k]);
            } while (ms.next());
        }
    }
    if (i.offset != 0) {
        std::vector<int> x(s.num_parties(), 1);
        std::vector<int> oradix;
        for (int p = 0; p < s.num_parties(); ++p) oradix.push_back(s.outcomes(p, 1));
        Odometer as(oradix);
        do {
            f.coeffs[size_t(fl.index(x, as.value))] += Rat(i.offset);
        } while (as.next());
    }
    return f;
}

inline FullFunctional full_from_cg(const BellInequality& i) {
    CgLayout layout(i.scenario);
    FullLayout fl(i.scenario);
    return full_from_cg(i, layout, fl);
}

// Projects a full-coordinate functional onto the CG basis (exact on the
// no-signalling space).  Rational inputs are scaled to a primitive
// integer representation; integer inputs keep their scale, so conventional
// Bell values survive the round trip.
inline BellInequality cg_from_full(const FullFunctional& f, const CgLayout& layout,
                                   const FullLayout& fl) {
    if ((long long)f.coeffs.size() != fl.size)
        throw std::invalid_argument("cg_from_full: coefficient count mismatch");
    std::vector<Rat> cg(layout.coords.size(), Rat(0));
    Rat constant = 0;
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        const Rat& c = f.coeffs[size_t(flat)];
        if (c == 0) return;
        detail::expand_full_coordinate(layout, x, a, [&](int sign, int idx) {
            if (idx < 0)
                constant += Rat(sign) * c;
            else
                cg[size_t(idx)] += Rat(sign) * c;
        });
    });
    Int L = 1;
    for (const Rat& q : cg) L = lcm(L, Int(q.get_den()));
    L = lcm(L, Int(constant.get_den()));
    L = lcm(L, Int(f.bound.get_den()));
    BellInequality out;
    out.scenario = f.scenario;
    out.coeffs.reserve(cg.size());
    for (const Rat& q : cg) out.coeffs.push_back(Int(q.get_num()) * (L / q.get_den()));
    out.offset = Int(constant.get_num()) * (L / constant.get_den());
    out.bound = Int(f.bound.get_num()) * (L / f.bound.get_den());
    return out;
}

inline BellInequality cg_from_full(const FullFunctional& f) {
    CgLayout layout(f.scenario);
    FullLayout fl(f.scenario);
    return cg_from_full(f, layout, fl);
}

// ---- naming and rendering -------------------------------------------

inline std::string party_letter(int p) {
    if (p < 26) return std::string(1, char('A' + p));
    return "#" + std::to_string(p);
}

inline std::string cg_coord_name(const Scenario& s, const CgCoord& c) {
    auto join = [](const std::vector<int>& v) {
        std::string r;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) r += " ";
            r += std::to_string(v[i]);
        }
        return r;
    };
    if (c.party.size() == 1)
        return "P_" + party_letter(c.party[0]) + "(" + join(c.outcome) + "|" + join(c.setting) + ")";
    if (int(c.party.size()) == s.num_parties())
        return "P(" + join(c.outcome) + "|" + join(c.setting) + ")";
    std::string tag;
    for (int p : c.party) tag += party_letter(p);
    return "P_" + tag + "(" + join(c.outcome) + "|" + join(c.setting) + ")";
}

// CH-style rendering over the CG coordinates, e.g.
//   -P_A(1|1) - P_B(1|1) + P(1 1|1 1) + ... <= 0
inline std::string render(const BellInequality& i) {
    CgLayout layout(i.scenario);
    std::string out;
    bool any = false;
    auto term = [&](const Int& c, const std::string& name) {
        if (c == 0) return;
        std::string mag = Int(abs(c)).get_str();
        if (!any) {
            out += (sgn(c) < 0 ? "-" : "");
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        if (name.empty()) {
            out += mag;
        } else {
            if (mag != "1") out += mag + " ";
            out += name;
        }
        any = true;
    };
    term(i.offset, "");
    for (size_t k = 0; k < i.coeffs.size(); ++k)
        term(i.coeffs[k], cg_coord_name(i.scenario, layout.coords[k]));
    if (!any) out += "0";
    out += " <= " + i.bound.get_str();
    return out;
}

// Expanded rendering as sum_{a,x} c(a|x) P(a|x) over full coordinates.
inline std::string render_full(const BellInequality& i) {
    FullFunctional f = full_from_cg(i);
    FullLayout fl(i.scenario);
    std::string out;
    bool any = false;
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        const Rat& c = f.coeffs[size_t(flat)];
        if (c == 0) return;
        std::string mag = Rat(abs(c)).get_str();
        out += any ? (sgn(c) < 0 ? " - " : " + ") : (sgn(c) < 0 ? "-" : "");
        any = true;
        if (mag != "1") out += mag + " ";
        out += "P(";
        for (size_t j = 0; j < a.size(); ++j) out += (j ? " " : "") + std::to_string(a[j]);
        out += "|";
        for (size_t j = 0; j < x.size(); ++j) out += (j ? " " : "") + std::to_string(x[j]);
        out += ")";
    });
    if (!any) out += "0";
    out += " <= " + f.bound.get_str();
    return out;
}

// ---- JSON -------------------------------------------------------------

inline long long int_to_ll(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("inequality JSON: coefficient too large");
    return v.get_si();
}

inline nlohmann::json inequality_to_json(const BellInequality& i) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Int& c : i.coeffs) coeffs.push_back(int_to_ll(c));
    nlohmann::json j{{"scenario", scenario_to_json(i.scenario)},
                     {"cg_coeffs", coeffs},
                     {"bound", int_to_ll(i.bound)}};
    if (i.offset != 0) j["offset"] = int_to_ll(i.offset);
    return j;
}

inline BellInequality inequality_from_json(const nlohmann::json& j) {
    BellInequality i;
    i.scenario = scenario_from_json(j.at("scenario"));
    for (const auto& c : j.at("cg_coeffs")) i.coeffs.push_back(Int(long(c.get<long long>())));
    i.bound = Int(long(j.at("bound").get<long long>()));
    if (j.contains("offset")) i.offset = Int(long(j.at("offset").get<long long>()));
    if (int(i.coeffs.size()) != i.scenario.cg_dim())
        throw std::invalid_argument("inequality JSON: coefficient count mismatch");
    return i;
}

}  // namespace bellpoly
