#ifndef GMAJOR_LINALG_HPP
#define GMAJOR_LINALG_HPP

#include "gmajor/rational.hpp"

#include <optional>
#include <stdexcept>

namespace gmajor {

/// Dense rational matrix stored row-major.
using Mat = std::vector<Vec>;

inline Mat identity(std::size_t n)
{
    Mat m(n, Vec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline Mat transpose(const Mat& a)
{
    if (a.empty())
        return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

inline Mat matmul(const Mat& a, const Mat& b)
{
    std::size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    Mat c(m, Vec(n, Rat(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline Vec matvec(const Mat& a, const Vec& x)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = dot(a[i], x);
    return r;
}

/// Inverse of a square rational matrix by Gauss-Jordan with partial
/// (first-nonzero) pivoting. Returns nullopt when singular.
inline std::optional<Mat> inverse(const Mat& a)
{
    std::size_t n = a.size();
    Mat w = a;
    Mat inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w[piv][col] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(w[piv], w[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = w[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            w[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || w[i][col] == 0)
                continue;
            Rat f = w[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                w[i][j] -= f * w[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Basis of the null space {x : Ax = 0}, by reduced row echelon form.
inline std::vector<Vec> null_space(const Mat& a, std::size_t ncols)
{
    Mat w = a;
    std::size_t nrows = w.size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t piv = row;
        while (piv < nrows && w[piv][col] == 0)
            ++piv;
        if (piv == nrows)
            continue;
        std::swap(w[piv], w[row]);
        Rat p = w[row][col];
        for (std::size_t j = 0; j < ncols; ++j)
            w[row][j] /= p;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == row || w[i][col] == 0)
                continue;
            Rat f = w[i][col];
            for (std::size_t j = 0; j < ncols; ++j)
                w[i][j] -= f * w[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : pivot_col)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(ncols, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = -w[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace gmajor

#endif
