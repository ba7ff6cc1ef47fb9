#pragma once

#include "fsieve/scalar.hpp"

#include <vector>

namespace fsieve {

template <class K>
using Matrix = std::vector<std::vector<K>>;

/// Row echelon form in place; returns the rank.
template <class K>
int row_reduce(Matrix<K> & M, int ncols)
{
    int rank = 0;
    int rows = static_cast<int>(M.size());
    for (int c = 0; c < ncols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!zero_p(M[r][c])) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(M[piv], M[rank]);
        K ip = inv(M[rank][c]);
        for (auto & e : M[rank])
            e = e * ip;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || zero_p(M[r][c]))
                continue;
            K f = M[r][c];
            for (std::size_t j = 0; j < M[r].size(); ++j)
                M[r][j] -= f * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

template <class K>
int matrix_rank(Matrix<K> M)
{
    if (M.empty())
        return 0;
    return row_reduce(M, static_cast<int>(M[0].size()));
}

/// Whether A q = b has a solution (b is the last column of Ab).
template <class K>
bool system_consistent(Matrix<K> Ab)
{
    if (Ab.empty())
        return true;
    int n = static_cast<int>(Ab[0].size()) - 1;
    int r = row_reduce(Ab, n);
    for (std::size_t i = r; i < Ab.size(); ++i)
        if (!zero_p(Ab[i][n]))
            return false;
    return true;
}

} // namespace fsieve
