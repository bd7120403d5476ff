// Dense exact-rational matrices with rank, affine rank, square solving and
// nullspace computation.  Rank uses fraction-free (integer-preserving)
// Gaussian elimination after clearing denominators, which keeps all
// intermediate values as exact minors of the integer matrix.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bellpoly/rational.hpp"

namespace bellpoly {

struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;  // row-major, rows*cols entries

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), Rat(0)) {
        if (r < 0 || c < 0) throw std::invalid_argument("RatMatrix: negative shape");
    }

    Rat& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows_in) {
        if (rows_in.empty()) return RatMatrix(0, 0);
        RatMatrix m(int(rows_in.size()), int(rows_in[0].size()));
        for (size_t r = 0; r < rows_in.size(); ++r) {
            if (rows_in[r].size() != rows_in[0].size())
                throw std::invalid_argument("RatMatrix::from_rows: ragged rows");
            for (size_t c = 0; c < rows_in[r].size(); ++c) m.at(int(r), int(c)) = rows_in[r][c];
        }
        return m;
    }
};

inline RatMatrix transpose(const RatMatrix& m) {
    RatMatrix t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

namespace detail {

// Fraction-free (Bareiss) rank of an integer matrix, in place.
inline int bareiss_rank(std::vector<std::vector<Int>>& m) {
    if (m.empty()) return 0;
    const int rows = int(m.size());
    const int cols = int(m[0].size());
    Int prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                Int num = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
                mpz_divexact(m[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<Int>> clear_denominators(const RatMatrix& m) {
    std::vector<std::vector<Int>> out(m.rows, std::vector<Int>(m.cols));
    for (int r = 0; r < m.rows; ++r) {
        Int L = 1;
        for (int c = 0; c < m.cols; ++c) L = lcm(L, Int(m.at(r, c).get_den()));
        for (int c = 0; c < m.cols; ++c)
            out[r][c] = Int(m.at(r, c).get_num()) * (L / m.at(r, c).get_den());
    }
    return out;
}

}  // namespace detail

// Rank over the rationals.
inline int rank(const RatMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    auto im = detail::clear_denominators(m);
    return detail::bareiss_rank(im);
}

// 1 + rank of the difference matrix (p_i - p_0): the size of a maximal
// affinely independent subset of the points.
inline int affine_rank(const std::vector<std::vector<Rat>>& points) {
    if (points.empty()) throw std::invalid_argument("affine_rank: empty point list");
    const size_t dim = points[0].size();
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("affine_rank: mixed dimensions");
    if (points.size() == 1) return 1;
    RatMatrix diffs(int(points.size() - 1), int(dim));
    for (size_t i = 1; i < points.size(); ++i)
        for (size_t c = 0; c < dim; ++c) diffs.at(int(i - 1), int(c)) = points[i][c] - points[0][c];
    return 1 + rank(diffs);
}

// Greedy maximal affinely independent subset, scanning points in order.
// Returns indices; the first point is always taken.
inline std::vector<int> affine_basis_indices(const std::vector<std::vector<Rat>>& points) {
    if (points.empty()) throw std::invalid_argument("affine_basis_indices: empty point list");
    std::vector<int> chosen{0};
    std::vector<std::vector<Rat>> basis{points[0]};
    for (size_t i = 1; i < points.size(); ++i) {
        basis.push_back(points[i]);
        if (affine_rank(basis) == int(basis.size())) {
            chosen.push_back(int(i));
        } else {
            basis.pop_back();
        }
    }
    return chosen;
}

// Solves the square system M x = b; nullopt when M is singular.
inline std::optional<std::vector<Rat>> solve_square(RatMatrix m, std::vector<Rat> b) {
    if (m.rows != m.cols || int(b.size()) != m.rows)
        throw std::invalid_argument("solve_square: shape mismatch");
    const int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(col, c), m.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        Rat inv = 1 / m.at(col, col);
        for (int c = col; c < n; ++c) m.at(col, c) *= inv;
        b[col] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || m.at(r, col) == 0) continue;
            Rat f = m.at(r, col);
            for (int c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
            b[r] -= f * b[col];
        }
    }
    return b;
}

// Basis of the right nullspace of m (list of vectors of length m.cols).
inline std::vector<std::vector<Rat>> nullspace(RatMatrix m) {
    const int rows = m.rows, cols = m.cols;
    std::vector<int> pivot_col_of_row;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int rr = r; rr < rows; ++rr)
            if (m.at(rr, c) != 0) { pivot = rr; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int cc = 0; cc < cols; ++cc) std::swap(m.at(r, cc), m.at(pivot, cc));
        Rat inv = 1 / m.at(r, c);
        for (int cc = c; cc < cols; ++cc) m.at(r, cc) *= inv;
        for (int rr = 0; rr < rows; ++rr) {
            if (rr == r || m.at(rr, c) == 0) continue;
            Rat f = m.at(rr, c);
            for (int cc = c; cc < cols; ++cc) m.at(rr, cc) -= f * m.at(r, cc);
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_col_of_row) is_pivot[pc] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_c] = 1;
        for (size_t pr = 0; pr < pivot_col_of_row.size(); ++pr)
            v[pivot_col_of_row[pr]] = -m.at(int(pr), free_c);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace bellpoly
