// Exact scalar types used everywhere in bellpoly: arbitrary-precision
// integers and always-reduced rationals (GMP-backed), plus small helpers
// for parsing, printing and integer-vector normalization.
//
// Invariants: Rat is always canonical (reduced, denominator > 0).  All
// arithmetic in this library is exact; there is no tolerance parameter
// anywhere.

#pragma once

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellpoly {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "num/den" or "num".  mpq set_str does not reduce, so canonicalize.
inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

inline int sign_of(const Rat& q) { return sgn(q); }
inline int sign_of(const Int& n) { return sgn(n); }

// gcd of absolute values over a vector; 0 for the all-zero vector.
inline Int content(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) {
        g = gcd(g, x);
        if (g == 1) break;
    }
    return g;
}

// Divides an integer vector (and attached scalars) by the gcd of all of
// them, so the representation is primitive.  No-op on all-zero input.
inline void primitive_normalize(std::vector<Int>& coeffs, Int& extra1, Int& extra2) {
    Int g = content(coeffs);
    g = gcd(g, extra1);
    g = gcd(g, extra2);
    if (g == 0 || g == 1) return;
    for (Int& c : coeffs) c /= g;
    extra1 /= g;
    extra2 /= g;
}

inline int compare(const Int& a, const Int& b) { return cmp(a, b); }

// Lexicographic comparison of integer vectors (shorter-prefix rule does not
// arise: callers compare equal-length vectors).
inline int lex_compare(const std::vector<Int>& a, const std::vector<Int>& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

// Clears denominators of a rational row: returns integers c_i = q_i * L
// with L = lcm of denominators, made primitive together with the rhs.
inline void integerize_row(const std::vector<Rat>& coeffs, const Rat& rhs,
                           std::vector<Int>& int_coeffs, Int& int_rhs) {
    Int L = 1;
    for (const Rat& q : coeffs) L = lcm(L, Int(q.get_den()));
    L = lcm(L, Int(rhs.get_den()));
    int_coeffs.clear();
    int_coeffs.reserve(coeffs.size());
    for (const Rat& q : coeffs) int_coeffs.push_back(Int(q.get_num()) * (L / q.get_den()));
    int_rhs = Int(rhs.get_num()) * (L / rhs.get_den());
    Int dummy = 0;
    primitive_normalize(int_coeffs, int_rhs, dummy);
}

inline std::string int_vec_key(const std::vector<Int>& v) {
    std::string k;
    for (const Int& x : v) {
        k += x.get_str();
        k += ',';
    }
    return k;
}

inline Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

}  // namespace bellpoly
