#pragma once

// Exact dense linear algebra over Q.

#include "arith.hpp"

#include <optional>
#include <vector>

namespace cbwb {

using RatMatrix = std::vector<std::vector<Rational>>; // row-major, rows x cols

inline RatMatrix zero_matrix(std::size_t rows, std::size_t cols)
{
    return RatMatrix(rows, std::vector<Rational>(cols));
}

struct Echelon {
    RatMatrix reduced;             // reduced row echelon form (only the first rank rows are non-zero)
    std::vector<std::size_t> pivots; // pivot column of each non-zero row
    std::size_t rank() const { return pivots.size(); }
};

inline Echelon row_reduce(RatMatrix m, std::size_t cols)
{
    Echelon e;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        const Rational inv = 1 / m[row][c];
        for (std::size_t j = c; j < cols; ++j)
            m[row][j] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0)
                continue;
            const Rational f = m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                if (m[row][j] != 0)
                    m[r][j] -= f * m[row][j];
        }
        e.pivots.push_back(c);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

inline std::size_t rank(const RatMatrix& m, std::size_t cols) { return row_reduce(m, cols).rank(); }

/// Basis of {x : m x = 0}.
inline std::vector<std::vector<Rational>> nullspace(const RatMatrix& m, std::size_t cols)
{
    Echelon e = row_reduce(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < e.rank(); ++r)
            v[e.pivots[r]] = -e.reduced[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Whether v lies in the span of the given vectors (all of length dim).
inline bool in_span(const std::vector<std::vector<Rational>>& vectors, const std::vector<Rational>& v, std::size_t dim)
{
    RatMatrix m = vectors;
    const std::size_t r0 = rank(m, dim);
    m.push_back(v);
    return rank(m, dim) == r0;
}

/// Matrix-vector product.
inline std::vector<Rational> apply(const RatMatrix& m, const std::vector<Rational>& v)
{
    std::vector<Rational> out(m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            if (m[r][c] != 0 && v[c] != 0)
                out[r] += m[r][c] * v[c];
    return out;
}

} // namespace cbwb
