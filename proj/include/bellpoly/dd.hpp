// Facet enumeration of local polytopes by the double description method,
// run on the homogenization cone of the vertex set in CG coordinates
// (where the polytope is full-dimensional), plus facet certification.
//
// Rays are primitive integer vectors; adjacency of two rays is decided by
// the algebraic rank test on their common saturated vertex set.  For the
// 0/1 lifted-vertex rows the rank runs fraction-free over int64 with
// int128 intermediates (the Hadamard bound keeps every minor of a 0/1
// matrix with <= 36 columns inside int64); wider systems fall back to the
// arbitrary-precision path.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bellpoly/canonical.hpp"
#include "bellpoly/inequality.hpp"
#include "bellpoly/matrix.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

struct CapExceeded : std::runtime_error {
    long long vertices;
    long long cap;
    CapExceeded(const std::string& what, long long v, long long c)
        : std::runtime_error(what), vertices(v), cap(c) {}
};

struct FacetCertificate {
    BellInequality inequality;
    std::vector<DeterministicStrategy> saturating;
    std::vector<int> affine_rank_witness;  // indices into saturating, size = dimension
};

struct NotFacet {
    enum class Reason { violated_by_vertex, insufficient_rank };
    Reason reason;
    std::string detail;
};

using CheckFacetResult = std::variant<FacetCertificate, NotFacet>;

// Validity over all vertices, then affine rank of the saturating set.
inline CheckFacetResult check_facet(const Scenario& s, const BellInequality& i) {
    if (!(i.scenario == s)) throw std::invalid_argument("check_facet: scenario mismatch");
    CgLayout layout(s);
    auto strategies = enumerate_strategies(s);
    std::vector<DeterministicStrategy> saturating;
    std::vector<std::vector<Rat>> sat_points;
    for (const auto& d : strategies) {
        Int v = evaluate_strategy(i, layout, d);
        if (v > i.bound) {
            std::string detail = "violated by vertex (value " + v.get_str() + " > bound " +
                                 i.bound.get_str() + ")";
            return NotFacet{NotFacet::Reason::violated_by_vertex, detail};
        }
        if (v == i.bound) {
            saturating.push_back(d);
            auto cg = cg_of_strategy(layout, d);
            sat_points.emplace_back(cg.begin(), cg.end());
        }
    }
    const int dim = s.cg_dim();
    if (saturating.empty())
        return NotFacet{NotFacet::Reason::insufficient_rank, "no saturating vertex"};
    int ar = affine_rank(sat_points);
    if (ar != dim) {
        return NotFacet{NotFacet::Reason::insufficient_rank,
                        "saturating affine rank " + std::to_string(ar) + " < dimension " +
                            std::to_string(dim)};
    }
    FacetCertificate cert;
    cert.inequality = i;
    cert.saturating = std::move(saturating);
    cert.affine_rank_witness = affine_basis_indices(sat_points);
    if (int(cert.affine_rank_witness.size()) != dim)
        throw std::logic_error("check_facet: witness size mismatch");
    return cert;
}

namespace detail {

using Bitset = std::vector<uint64_t>;

inline void bitset_set(Bitset& b, int i) { b[size_t(i) >> 6] |= uint64_t(1) << (i & 63); }
inline bool bitset_get(const Bitset& b, int i) {
    return (b[size_t(i) >> 6] >> (i & 63)) & 1;
}

inline int popcount_and3(const Bitset& a, const Bitset& b, const Bitset& mask) {
    int n = 0;
    for (size_t w = 0; w < a.size(); ++w) n += __builtin_popcountll(a[w] & b[w] & mask[w]);
    return n;
}

// Fraction-free rank of selected 0/1 rows; int64 entries stay exact as
// long as every minor obeys the Hadamard bound for 0/1 matrices, which
// holds up to 36 columns.
inline int rank_rows_i64(const std::vector<std::vector<int>>& rows,
                         const std::vector<int>& select, int cols) {
    std::vector<std::vector<long long>> m;
    m.reserve(select.size());
    for (int r : select) m.emplace_back(rows[size_t(r)].begin(), rows[size_t(r)].end());
    const int nr = int(m.size());
    long long prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < nr; ++col) {
        int pivot = -1;
        for (int r = rank; r < nr; ++r)
            if (m[r][size_t(col)] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[size_t(rank)], m[size_t(pivot)]);
        for (int r = rank + 1; r < nr; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                __int128 num = (__int128)m[size_t(rank)][size_t(col)] * m[size_t(r)][size_t(c)] -
                               (__int128)m[size_t(r)][size_t(col)] * m[size_t(rank)][size_t(c)];
                m[size_t(r)][size_t(c)] = (long long)(num / prev);
            }
            m[size_t(r)][size_t(col)] = 0;
        }
        prev = m[size_t(rank)][size_t(col)];
        ++rank;
    }
    return rank;
}

inline int rank_rows_exact(const std::vector<std::vector<int>>& rows,
                           const std::vector<int>& select, int cols) {
    if (cols <= 36) return rank_rows_i64(rows, select, cols);
    std::vector<std::vector<Int>> m;
    m.reserve(select.size());
    for (int r : select) m.emplace_back(rows[size_t(r)].begin(), rows[size_t(r)].end());
    return bareiss_rank(m);
}

struct Ray {
    std::vector<Int> v;  // primitive, length dim+1
    Bitset zero;         // saturated rows (over all rows)
};

inline Int ray_dot(const std::vector<int>& row, const std::vector<Int>& v) {
    Int s = 0;
    for (size_t k = 0; k < row.size(); ++k) {
        if (row[k] == 0) continue;
        if (row[k] == 1)
            s += v[k];
        else
            s += row[k] * v[k];
    }
    return s;
}

inline void make_primitive(std::vector<Int>& v) {
    Int g = content(v);
    if (g > 1)
        for (Int& x : v) x /= g;
}

}  // namespace detail

struct FacetClassEntry {
    InequalityClass cls;
    long long multiplicity = 0;
};

struct FacetEnumeration {
    Scenario scenario;
    std::vector<BellInequality> facets;    // normalized, canonically sorted
    std::vector<FacetClassEntry> classes;  // partition of facets, sorted by canonical form
};

namespace detail {

// Double description: extreme rays of {y : (1, v_i) . y >= 0 for all
// lifted vertices v_i}.  Vertex rows are processed in CG-lexicographic
// order starting from a simplicial row basis.
inline std::vector<Ray> dd_cone(const std::vector<std::vector<int>>& rows, int dim1) {
    const int nrows = int(rows.size());
    const size_t words = size_t((nrows + 63) / 64);

    // simplicial start: greedily take rows that increase rank
    std::vector<int> basis_rows;
    {
        std::vector<int> chosen;
        for (int r = 0; r < nrows && int(chosen.size()) < dim1; ++r) {
            chosen.push_back(r);
            if (rank_rows_exact(rows, chosen, dim1) != int(chosen.size())) chosen.pop_back();
        }
        if (int(chosen.size()) != dim1)
            throw std::logic_error("dd_cone: vertex set does not span (polytope not full-dim?)");
        basis_rows = std::move(chosen);
    }

    // rays = columns of the inverse of the basis row matrix
    std::vector<Ray> rays;
    {
        RatMatrix m(dim1, dim1);
        for (int r = 0; r < dim1; ++r)
            for (int c = 0; c < dim1; ++c) m.at(r, c) = rows[size_t(basis_rows[r])][size_t(c)];
        for (int col = 0; col < dim1; ++col) {
            std::vector<Rat> e(size_t(dim1), Rat(0));
            e[size_t(col)] = 1;
            auto sol = solve_square(m, e);
            if (!sol) throw std::logic_error("dd_cone: singular basis");
            Int L = 1;
            for (const Rat& q : *sol) L = lcm(L, Int(q.get_den()));
            Ray ray;
            ray.v.reserve(size_t(dim1));
            for (const Rat& q : *sol) ray.v.push_back(Int(q.get_num()) * (L / q.get_den()));
            make_primitive(ray.v);
            rays.push_back(std::move(ray));
        }
    }

    auto fill_zero = [&](Ray& ray) {
        ray.zero.assign(words, 0);
        for (int r = 0; r < nrows; ++r)
            if (ray_dot(rows[size_t(r)], ray.v) == 0) bitset_set(ray.zero, r);
    };
    for (Ray& r : rays) fill_zero(r);

    Bitset processed(words, 0);
    std::vector<bool> done(size_t(nrows), false);
    for (int r : basis_rows) {
        bitset_set(processed, r);
        done[size_t(r)] = true;
    }

    std::vector<int> order;
    for (int r = 0; r < nrows; ++r)
        if (!done[size_t(r)]) order.push_back(r);

    std::vector<int> select;
    for (int row : order) {
        std::vector<Int> dot(rays.size());
        std::vector<int> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            dot[i] = ray_dot(rows[size_t(row)], rays[i].v);
            int sg = sgn(dot[i]);
            if (sg > 0) pos.push_back(int(i));
            else if (sg < 0) neg.push_back(int(i));
        }
        if (!neg.empty()) {
            // adjacent (positive, negative) pairs spawn the new rays
            std::vector<Ray> created;
            for (int p : pos)
                for (int n : neg) {
                    int common = popcount_and3(rays[size_t(p)].zero, rays[size_t(n)].zero,
                                               processed);
                    if (common < dim1 - 2) continue;
                    select.clear();
                    for (int r = 0; r < nrows; ++r)
                        if (bitset_get(processed, r) && bitset_get(rays[size_t(p)].zero, r) &&
                            bitset_get(rays[size_t(n)].zero, r))
                            select.push_back(r);
                    if (rank_rows_exact(rows, select, dim1) != dim1 - 2) continue;
                    Ray nr;
                    nr.v.resize(size_t(dim1));
                    for (int k = 0; k < dim1; ++k)
                        nr.v[size_t(k)] = dot[size_t(p)] * rays[size_t(n)].v[size_t(k)] -
                                          dot[size_t(n)] * rays[size_t(p)].v[size_t(k)];
                    make_primitive(nr.v);
                    fill_zero(nr);
                    created.push_back(std::move(nr));
                }
            std::vector<Ray> next;
            next.reserve(rays.size() - neg.size() + created.size());
            for (size_t i = 0; i < rays.size(); ++i)
                if (sgn(dot[i]) >= 0) next.push_back(std::move(rays[i]));
            for (Ray& nr : created) next.push_back(std::move(nr));
            rays = std::move(next);
        }
        bitset_set(processed, row);
    }
    return rays;
}

}  // namespace detail

// Exact facet enumeration with canonical classification.  Refuses
// scenarios whose vertex count exceeds the cap.
inline FacetEnumeration dd_facets(const Scenario& s, long long max_vertices = 200) {
    s.validate();
    long long nv = s.vertex_count();
    if (nv > max_vertices)
        throw CapExceeded("dd_facets: scenario " + s.str() + " has " + std::to_string(nv) +
                              " vertices, exceeding the cap of " + std::to_string(max_vertices),
                          nv, max_vertices);
    CgLayout layout(s);
    const int dim = layout.dim();
    auto strategies = enumerate_strategies(s);

    // lifted vertex rows (1, cg), sorted by CG coordinates
    std::vector<std::vector<int>> rows;
    rows.reserve(strategies.size());
    for (const auto& d : strategies) {
        std::vector<int> row(size_t(dim) + 1);
        row[0] = 1;
        auto cg = cg_of_strategy(layout, d);
        for (int k = 0; k < dim; ++k) row[size_t(k) + 1] = cg[size_t(k)];
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());

    auto rays = detail::dd_cone(rows, dim + 1);

    FacetEnumeration out;
    out.scenario = s;
    for (const auto& ray : rays) {
        bool all_zero = true;
        for (int k = 1; k <= dim; ++k)
            if (ray.v[size_t(k)] != 0) { all_zero = false; break; }
        if (all_zero) continue;  // the trivial 1 >= 0 ray
        BellInequality f;
        f.scenario = s;
        f.coeffs.reserve(size_t(dim));
        for (int k = 1; k <= dim; ++k) f.coeffs.push_back(-ray.v[size_t(k)]);
        f.bound = ray.v[0];
        out.facets.push_back(normalize(f));
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const BellInequality& a, const BellInequality& b) {
                  return canonical_compare(a, b) < 0;
              });

    // Group into relabeling classes by orbit flooding.  Every orbit member
    // of a facet must itself be a facet; anything else is a bug.
    std::unordered_map<std::string, size_t> index_of;
    for (size_t i = 0; i < out.facets.size(); ++i)
        index_of.emplace(inequality_key(out.facets[i]), i);
    std::vector<bool> assigned(out.facets.size(), false);
    for (size_t i = 0; i < out.facets.size(); ++i) {
        if (assigned[i]) continue;
        auto orb = orbit(out.facets[i]);
        FacetClassEntry entry;
        // Facets are canonical-sorted and the whole orbit is present, so
        // the first unassigned member is its orbit's minimum.
        entry.cls.canonical = out.facets[i];
        for (auto& [key, member] : orb) {
            if (canonical_compare(member.first, entry.cls.canonical) < 0)
                throw std::logic_error("dd_facets: canonical form out of order");
            auto it = index_of.find(key);
            if (it == index_of.end())
                throw std::logic_error("dd_facets: orbit member is not a facet");
            if (!assigned[it->second]) {
                assigned[it->second] = true;
                ++entry.multiplicity;
            }
        }
        entry.cls.label = classify(entry.cls.canonical);
        out.classes.push_back(std::move(entry));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const FacetClassEntry& a, const FacetClassEntry& b) {
                  return canonical_compare(a.cls.canonical, b.cls.canonical) < 0;
              });
    long long total = 0;
    for (const auto& c : out.classes) total += c.multiplicity;
    if (total != (long long)out.facets.size())
        throw std::logic_error("dd_facets: class multiplicities do not partition the facets");
    return out;
}

}  // namespace bellpoly
