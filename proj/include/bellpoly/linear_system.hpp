// Named-variable linear systems: equalities (coeffs . x = rhs) and
// inequalities (coeffs . x >= rhs).  This is the exchange format between
// the Fourier-Motzkin engine, the exact LP solver and the specialized
// system builders.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "bellpoly/rational.hpp"

namespace bellpoly {

struct LinearRow {
    std::vector<Rat> coeffs;
    Rat rhs;
};

struct LinearSystem {
    std::vector<std::string> vars;
    std::vector<LinearRow> equalities;    // coeffs . x  =  rhs
    std::vector<LinearRow> inequalities;  // coeffs . x  >= rhs

    int var_index(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return int(i);
        return -1;
    }

    void add_equality(std::vector<Rat> coeffs, Rat rhs) {
        check_width(coeffs);
        equalities.push_back({std::move(coeffs), std::move(rhs)});
    }
    void add_inequality(std::vector<Rat> coeffs, Rat rhs) {
        check_width(coeffs);
        inequalities.push_back({std::move(coeffs), std::move(rhs)});
    }

    // Sparse builders, convenient for hand-written systems.
    void add_equality_terms(const std::map<std::string, Rat>& terms, Rat rhs) {
        add_equality(dense(terms), std::move(rhs));
    }
    void add_inequality_terms(const std::map<std::string, Rat>& terms, Rat rhs) {
        add_inequality(dense(terms), std::move(rhs));
    }

    std::vector<Rat> dense(const std::map<std::string, Rat>& terms) const {
        std::vector<Rat> row(vars.size(), Rat(0));
        for (const auto& [name, v] : terms) {
            int i = var_index(name);
            if (i < 0) throw std::invalid_argument("LinearSystem: unknown variable " + name);
            row[size_t(i)] = v;
        }
        return row;
    }

    void validate() const {
        for (const auto& r : equalities) check_width(r.coeffs);
        for (const auto& r : inequalities) check_width(r.coeffs);
    }

   private:
    void check_width(const std::vector<Rat>& coeffs) const {
        if (coeffs.size() != vars.size())
            throw std::invalid_argument("LinearSystem: row width does not match variable count");
    }
};

// Primitive integer form of a row, used as a dedup key and for stable
// output: clears denominators and divides by the common gcd.
inline void normalize_row(LinearRow& row) {
    std::vector<Int> ic;
    Int ir;
    integerize_row(row.coeffs, row.rhs, ic, ir);
    for (size_t i = 0; i < row.coeffs.size(); ++i) row.coeffs[i] = Rat(ic[i]);
    row.rhs = Rat(ir);
}

inline std::string row_key(const LinearRow& row) {
    std::vector<Int> ic;
    Int ir;
    integerize_row(row.coeffs, row.rhs, ic, ir);
    return int_vec_key(ic) + "|" + ir.get_str();
}

// Removes exact duplicates (same primitive integer form), keeping first
// occurrences in order; optionally also drops vacuous rows 0 >= rhs with
// rhs <= 0.
inline void dedupe_inequalities(LinearSystem& sys, bool drop_vacuous = false) {
    std::unordered_set<std::string> seen;
    std::vector<LinearRow> kept;
    for (auto& row : sys.inequalities) {
        if (drop_vacuous) {
            bool all_zero = true;
            for (const Rat& c : row.coeffs)
                if (c != 0) { all_zero = false; break; }
            if (all_zero && row.rhs <= 0) continue;
        }
        std::string key = row_key(row);
        if (seen.insert(std::move(key)).second) kept.push_back(std::move(row));
    }
    sys.inequalities = std::move(kept);
}

}  // namespace bellpoly
