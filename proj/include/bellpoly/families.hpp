// Generators for the named inequality families: CHSH in its four-term
// full-coordinate form, the CH form, the CHSH lift family on
// [(2 2),(w_1...w_n)] scenarios, the n-setting generalization on
// L_n = [(2 n),(2...2)] together with its saturating vertex family and
// facet certificate, plus the stored CGLMP and I3322 reference forms used
// to label enumeration output.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bellpoly/dd.hpp"
#include "bellpoly/inequality.hpp"
#include "bellpoly/matrix.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

struct FamilyId {
    enum class Kind { chsh, ch, chsh_lift, newineq3, ineq2, cglmp, froissart } kind = Kind::chsh;
    int n = 0;                  // ineq2: number of B settings
    std::vector<int> w;         // chsh_lift: B-side outcome counts
    int y = 0, yp = 0;          // chsh_lift: the two B settings combined
    std::vector<int> G, Gp;     // chsh_lift: outcome subsets (of 1..w-1)
    int a_choice = 1;           // chsh_lift: which A marginal appears
    bool upper = false;         // chsh_lift: the <= 1 side instead of the >= 0 side

    static FamilyId chsh() { return of(Kind::chsh); }
    static FamilyId ch() { return of(Kind::ch); }
    static FamilyId newineq3() { return of(Kind::newineq3); }
    static FamilyId cglmp() { return of(Kind::cglmp); }
    static FamilyId froissart() { return of(Kind::froissart); }
    static FamilyId ineq2(int n) {
        FamilyId f = of(Kind::ineq2);
        f.n = n;
        return f;
    }
    static FamilyId chsh_lift(std::vector<int> w, int y, int yp, std::vector<int> G,
                              std::vector<int> Gp, int a_choice = 1, bool upper = false) {
        FamilyId f = of(Kind::chsh_lift);
        f.w = std::move(w);
        f.y = y;
        f.yp = yp;
        f.G = std::move(G);
        f.Gp = std::move(Gp);
        f.a_choice = a_choice;
        f.upper = upper;
        return f;
    }

   private:
    static FamilyId of(Kind k) {
        FamilyId f;
        f.kind = k;
        return f;
    }
};

namespace detail {

inline int cg_idx(const CgLayout& cg, std::vector<int> party, std::vector<int> setting,
                  std::vector<int> outcome) {
    return cg.index(CgCoord{std::move(party), std::move(setting), std::move(outcome)});
}

}  // namespace detail

// L_n scenario: A has a dichotomic and an n-outcome setting, B has n
// dichotomic settings.
inline Scenario ln_scenario(int n) {
    if (n < 2) throw std::invalid_argument("ln_scenario: n must be >= 2");
    return Scenario{{{2, n}, std::vector<int>(size_t(n), 2)}};
}

inline BellInequality make(const FamilyId& f) {
    using Kind = FamilyId::Kind;
    switch (f.kind) {
        case Kind::chsh: {
            // sum_{a,b,x,y} (-1)^{a+b+xy} P(ab|xy) <= 2 with 0/1 labels,
            // i.e. first outcomes and settings carrying label 0.
            Scenario s{{{2, 2}, {2, 2}}};
            FullLayout fl(s);
            FullFunctional ff{s, std::vector<Rat>(size_t(fl.size), Rat(0)), Rat(2)};
            fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
                int e = (a[0] - 1) + (a[1] - 1) + (x[0] - 1) * (x[1] - 1);
                ff.coeffs[size_t(flat)] = (e % 2 == 0) ? 1 : -1;
            });
            return cg_from_full(ff);
        }
        case Kind::ch: {
            // P_A(1|1) + P_B(1|1) - P(11|11) - P(11|21) - P(11|12) + P(11|22) <= 1
            Scenario s{{{2, 2}, {2, 2}}};
            CgLayout cg(s);
            BellInequality i;
            i.scenario = s;
            i.coeffs.assign(size_t(s.cg_dim()), Int(0));
            i.coeffs[size_t(detail::cg_idx(cg, {0}, {1}, {1}))] = 1;
            i.coeffs[size_t(detail::cg_idx(cg, {1}, {1}, {1}))] = 1;
            i.coeffs[size_t(detail::cg_idx(cg, {0, 1}, {1, 1}, {1, 1}))] = -1;
            i.coeffs[size_t(detail::cg_idx(cg, {0, 1}, {2, 1}, {1, 1}))] = -1;
            i.coeffs[size_t(detail::cg_idx(cg, {0, 1}, {1, 2}, {1, 1}))] = -1;
            i.coeffs[size_t(detail::cg_idx(cg, {0, 1}, {2, 2}, {1, 1}))] = 1;
            i.bound = 1;
            return i;
        }
        case Kind::chsh_lift: {
            // 1 >= P_A(1|a) + P_B(G|y) - P(1G|1y) - P(1G|2y)
            //              -+ P(1G'|1y') +- P(1G'|2y')  >= 0
            if (f.w.size() < 2) throw std::invalid_argument("chsh_lift: need >= 2 B settings");
            for (int w : f.w)
                if (w < 2) throw std::invalid_argument("chsh_lift: outcome counts must be >= 2");
            const int n = int(f.w.size());
            if (f.y < 1 || f.y > n || f.yp < 1 || f.yp > n || f.y == f.yp)
                throw std::invalid_argument("chsh_lift: invalid setting pair");
            if (f.G.empty() || f.Gp.empty())
                throw std::invalid_argument("chsh_lift: subsets must be nonempty");
            for (int g : f.G)
                if (g < 1 || g > f.w[size_t(f.y - 1)] - 1)
                    throw std::invalid_argument("chsh_lift: G out of range");
            for (int g : f.Gp)
                if (g < 1 || g > f.w[size_t(f.yp - 1)] - 1)
                    throw std::invalid_argument("chsh_lift: G' out of range");
            if (f.a_choice != 1 && f.a_choice != 2)
                throw std::invalid_argument("chsh_lift: a_choice must be 1 or 2");
            Scenario s{{{2, 2}, f.w}};
            CgLayout cg(s);
            std::vector<Int> expr(size_t(s.cg_dim()), Int(0));
            expr[size_t(detail::cg_idx(cg, {0}, {f.a_choice}, {1}))] += 1;
            int sgn_yp = (f.a_choice == 1) ? -1 : 1;
            for (int g : f.G) {
                expr[size_t(detail::cg_idx(cg, {1}, {f.y}, {g}))] += 1;
                expr[size_t(detail::cg_idx(cg, {0, 1}, {1, f.y}, {1, g}))] -= 1;
                expr[size_t(detail::cg_idx(cg, {0, 1}, {2, f.y}, {1, g}))] -= 1;
            }
            for (int g : f.Gp) {
                expr[size_t(detail::cg_idx(cg, {0, 1}, {1, f.yp}, {1, g}))] += sgn_yp;
                expr[size_t(detail::cg_idx(cg, {0, 1}, {2, f.yp}, {1, g}))] -= sgn_yp;
            }
            BellInequality i;
            i.scenario = s;
            if (f.upper) {
                i.coeffs = std::move(expr);
                i.bound = 1;
            } else {
                i.coeffs.reserve(expr.size());
                for (const Int& c : expr) i.coeffs.push_back(-c);
                i.bound = 0;
            }
            return i;
        }
        case Kind::newineq3:
            return make(FamilyId::ineq2(3));
        case Kind::ineq2: {
            // P_A(1|1) + sum_{k<n} P_B(1|k) - sum_{k<=n} P(11|1k)
            //   - sum_{k<n} P(k1|2k) + sum_{k<n} P(k1|2n) >= 0,
            // stored as the <= 0 form of the negated expression.
            const int n = f.n;
            if (n < 2) throw std::invalid_argument("ineq2: n must be >= 2");
            Scenario s = ln_scenario(n);
            CgLayout cg(s);
            std::vector<Int> expr(size_t(s.cg_dim()), Int(0));
            expr[size_t(detail::cg_idx(cg, {0}, {1}, {1}))] += 1;
            for (int k = 1; k <= n - 1; ++k)
                expr[size_t(detail::cg_idx(cg, {1}, {k}, {1}))] += 1;
            for (int k = 1; k <= n; ++k)
                expr[size_t(detail::cg_idx(cg, {0, 1}, {1, k}, {1, 1}))] -= 1;
            for (int k = 1; k <= n - 1; ++k)
                expr[size_t(detail::cg_idx(cg, {0, 1}, {2, k}, {k, 1}))] -= 1;
            for (int k = 1; k <= n - 1; ++k)
                expr[size_t(detail::cg_idx(cg, {0, 1}, {2, n}, {k, 1}))] += 1;
            BellInequality i;
            i.scenario = s;
            i.coeffs.reserve(expr.size());
            for (const Int& c : expr) i.coeffs.push_back(-c);
            i.bound = 0;
            return i;
        }
        case Kind::cglmp: {
            // I3 <= 2 on [(3 3),(3 3)]:
            //   + P(A1=B1) + P(B1=A2+1) + P(A2=B2) + P(B2=A1)
            //   - P(A1=B1-1) - P(B1=A2) - P(A2=B2-1) - P(B2=A1-1)
            // with P(Ax=By+k) = sum_j P(a=j+k, b=j | x y) mod 3.
            Scenario s{{{3, 3}, {3, 3}}};
            FullLayout fl(s);
            FullFunctional ff{s, std::vector<Rat>(size_t(fl.size), Rat(0)), Rat(2)};
            auto add_term = [&](int x, int y, int k, int sign) {
                for (int j = 0; j < 3; ++j) {
                    int a = ((j + k) % 3) + 1;
                    int b = j + 1;
                    ff.coeffs[size_t(fl.index({x, y}, {a, b}))] += sign;
                }
            };
            add_term(1, 1, 0, +1);
            add_term(2, 1, 2, +1);  // P(B1 = A2 + 1): a = b - 1 = b + 2 mod 3
            add_term(2, 2, 0, +1);
            add_term(1, 2, 0, +1);
            add_term(1, 1, 2, -1);  // P(A1 = B1 - 1)
            add_term(2, 1, 0, -1);
            add_term(2, 2, 2, -1);
            add_term(1, 2, 1, -1);  // P(B2 = A1 - 1): a = b + 1
            return cg_from_full(ff);
        }
        case Kind::froissart: {
            // I3322 <= 0 on [(2 2 2),(2 2 2)] in the marginal form
            //   -P_A(1|1) - 2 P_B(1|1) - P_B(1|2)
            //   + P(11|11) + P(11|12) + P(11|13)
            //   + P(11|21) + P(11|22) - P(11|23)
            //   + P(11|31) - P(11|32)
            Scenario s{{{2, 2, 2}, {2, 2, 2}}};
            CgLayout cg(s);
            BellInequality i;
            i.scenario = s;
            i.coeffs.assign(size_t(s.cg_dim()), Int(0));
            auto joint = [&](int x, int y) {
                return detail::cg_idx(cg, {0, 1}, {x, y}, {1, 1});
            };
            i.coeffs[size_t(detail::cg_idx(cg, {0}, {1}, {1}))] = -1;
            i.coeffs[size_t(detail::cg_idx(cg, {1}, {1}, {1}))] = -2;
            i.coeffs[size_t(detail::cg_idx(cg, {1}, {2}, {1}))] = -1;
            static const int table[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
            for (int x = 1; x <= 3; ++x)
                for (int y = 1; y <= 3; ++y)
                    if (table[x - 1][y - 1] != 0)
                        i.coeffs[size_t(joint(x, y))] = table[x - 1][y - 1];
            i.bound = 0;
            return i;
        }
    }
    throw std::logic_error("make: unreachable");
}

// The n(n+2) deterministic points that saturate make(ineq2(n)), grouped in
// the four published subsets; all affinely independent.
inline std::vector<DeterministicStrategy> saturating_family(int n) {
    if (n < 2) throw std::invalid_argument("saturating_family: n must be >= 2");
    std::vector<DeterministicStrategy> out;
    auto point = [&](int a1, int a2, const std::vector<int>& beta) {
        DeterministicStrategy d;
        d.choice = {{a1, a2}, beta};
        return d;
    };
    // (1) alpha = (1, k), all beta_l = 1
    for (int k = 1; k <= n; ++k) out.push_back(point(1, k, std::vector<int>(size_t(n), 1)));
    // (2) alpha = (1, k), beta_l = 2, other beta = 1, k != l
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
            if (k == l) continue;
            std::vector<int> beta(size_t(n), 1);
            beta[size_t(l - 1)] = 2;
            out.push_back(point(1, k, beta));
        }
    // (3) alpha = (2, k), all beta_l = 2
    for (int k = 1; k <= n; ++k) out.push_back(point(2, k, std::vector<int>(size_t(n), 2)));
    // (4) alpha = (2, k), beta_k = 1, other beta = 2
    for (int k = 1; k <= n; ++k) {
        std::vector<int> beta(size_t(n), 2);
        beta[size_t(k - 1)] = 1;
        out.push_back(point(2, k, beta));
    }
    if ((long long)out.size() != (long long)n * (n + 2))
        throw std::logic_error("saturating_family: size mismatch");
    return out;
}

// Facet certificate for make(ineq2(n)) on L_n: validity over all 2n * 2^n
// vertices, saturation of the published family, and affine rank n(n+2).
inline FacetCertificate verify_theorem4(int n) {
    if (n < 2) throw std::invalid_argument("verify_theorem4: n must be >= 2");
    Scenario s = ln_scenario(n);
    BellInequality ineq = make(FamilyId::ineq2(n));
    CgLayout layout(s);
    for (const auto& d : enumerate_strategies(s))
        if (evaluate_strategy(ineq, layout, d) > ineq.bound)
            throw std::logic_error("verify_theorem4: a vertex violates the inequality");
    auto family = saturating_family(n);
    std::vector<std::vector<Rat>> pts;
    pts.reserve(family.size());
    for (const auto& d : family) {
        if (evaluate_strategy(ineq, layout, d) != ineq.bound)
            throw std::logic_error("verify_theorem4: family point does not saturate");
        auto cg = cg_of_strategy(layout, d);
        pts.emplace_back(cg.begin(), cg.end());
    }
    const int dim = s.cg_dim();
    if (dim != n * (n + 2)) throw std::logic_error("verify_theorem4: dimension mismatch");
    if (affine_rank(pts) != dim)
        throw std::logic_error("verify_theorem4: family is not affinely independent");
    FacetCertificate cert;
    cert.inequality = std::move(ineq);
    cert.saturating = std::move(family);
    cert.affine_rank_witness.resize(size_t(dim));
    for (int k = 0; k < dim; ++k) cert.affine_rank_witness[size_t(k)] = k;
    return cert;
}

inline std::vector<std::string> family_registry() {
    return {
        "chsh                 CHSH in the four-term form, bound 2, on [(2 2),(2 2)]",
        "ch                   CH form of CHSH, bounds 0..1, on [(2 2),(2 2)]",
        "chsh-lift            lift family on [(2 2),(w1..wn)]; params y, yp, G, Gp, a, upper",
        "newineq3             the non-CHSH facet of [(2 3),(2 2 2)] (equals ineq2 at n=3)",
        "ineq2                n-setting family on [(2 n),(2..2)]; param n >= 2",
        "cglmp                reference CGLMP form on [(3 3),(3 3)]",
        "froissart            reference I3322 form on [(2 2 2),(2 2 2)]",
    };
}

}  // namespace bellpoly
