#ifndef GMAJOR_SIMPLEX_HPP
#define GMAJOR_SIMPLEX_HPP

#include "gmajor/rational.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace gmajor {

/// Outcome of an exact nonnegative linear feasibility solve.
///
/// feasible: a solution lambda >= 0 with A*lambda = b exists; `solution`
/// holds one such lambda.
/// infeasible: `farkas` holds u with u^T A_j <= 0 for every column j and
/// u^T b > 0, refuting feasibility.
struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rat> solution;
    Vec farkas;
};

/// Decides {lambda >= 0 : sum_j lambda_j * columns[j] = b} by a phase-1
/// simplex over exact rationals. Bland's smallest-index rule is used for
/// both the entering and leaving choices, so the method terminates even on
/// the heavily degenerate systems that arise at cone boundaries.
inline FeasibilityResult solve_nonneg_combination(const std::vector<Vec>& columns,
                                                  const Vec& b)
{
    const std::size_t m = b.size();
    const std::size_t k = columns.size();
    for (const Vec& c : columns)
        if (c.size() != m)
            throw std::invalid_argument("solve_nonneg_combination: column dimension mismatch");

    // Tableau over variables [lambda_1..lambda_k, s_1..s_m]; artificials s_i
    // start basic. Rows are pre-flipped so the right-hand side is >= 0.
    std::vector<int> flip(m, 1);
    std::vector<std::vector<Rat>> tab(m, std::vector<Rat>(k + m + 1, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0)
            flip[i] = -1;
        for (std::size_t j = 0; j < k; ++j)
            tab[i][j] = Rat(flip[i]) * columns[j][i];
        tab[i][k + i] = 1;
        tab[i][k + m] = Rat(flip[i]) * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = k + i;

    // Phase-1 objective: minimize sum of artificials. Maintain the reduced
    // cost row d and the objective value w; d_j = c_j - sum over basic rows.
    std::vector<Rat> d(k + m, Rat(0));
    Rat w = 0;
    for (std::size_t j = 0; j < k + m; ++j) {
        Rat colsum = 0;
        for (std::size_t i = 0; i < m; ++i)
            colsum += tab[i][j];
        d[j] = Rat(j >= k ? 1 : 0) - colsum;
    }
    for (std::size_t i = 0; i < m; ++i)
        w += tab[i][k + m];

    for (;;) {
        // Bland: smallest-index column with negative reduced cost.
        std::size_t enter = k + m;
        for (std::size_t j = 0; j < k + m; ++j) {
            if (d[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == k + m)
            break;
        // Ratio test, smallest basis index breaks ties.
        std::size_t leave = m;
        Rat best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0)
                continue;
            Rat ratio = tab[i][k + m] / tab[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw std::logic_error("phase-1 simplex: unbounded (cannot happen)");
        // Pivot on (leave, enter).
        Rat p = tab[leave][enter];
        for (std::size_t j = 0; j <= k + m; ++j)
            tab[leave][j] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0)
                continue;
            Rat f = tab[i][enter];
            for (std::size_t j = 0; j <= k + m; ++j)
                tab[i][j] -= f * tab[leave][j];
        }
        Rat fd = d[enter];
        if (fd != 0) {
            for (std::size_t j = 0; j < k + m; ++j)
                d[j] -= fd * tab[leave][j];
            w += fd * tab[leave][k + m];
        }
        basis[leave] = enter;
    }

    FeasibilityResult res;
    if (w == 0) {
        res.feasible = true;
        res.solution.assign(k, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < k)
                res.solution[basis[i]] = tab[i][k + m];
        return res;
    }

    // Infeasible: dual prices y_i = 1 - d(artificial_i), folded back through
    // the row flips, give the Farkas certificate.
    res.feasible = false;
    res.farkas.assign(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        res.farkas[i] = Rat(flip[i]) * (Rat(1) - d[k + i]);
    assert(dot(res.farkas, b) > 0);
#ifndef NDEBUG
    for (std::size_t j = 0; j < k; ++j)
        assert(dot(res.farkas, columns[j]) <= 0);
#endif
    return res;
}

} // namespace gmajor

#endif
