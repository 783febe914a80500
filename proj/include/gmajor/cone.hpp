#ifndef GMAJOR_CONE_HPP
#define GMAJOR_CONE_HPP

#include "gmajor/group.hpp"
#include "gmajor/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>
#include <vector>

namespace gmajor {

/// Fundamental root system of a family, with the derived A-matrix data:
/// primal-cone generators, dual generators (the roots themselves) and a
/// basis of the inessential subspace (the joint null space of the roots).
struct ConeSystem {
    GroupSpec spec;
    std::vector<Vec> roots;           // rows of A, fixed order
    std::vector<Vec> generators;      // generators of the primal cone
    std::vector<Vec> dual_generators; // = roots
    std::vector<Vec> inessential_basis;
};

inline ConeSystem fundamental_roots(const GroupSpec& spec)
{
    const int n = spec.dim;
    ConeSystem cs;
    cs.spec = spec;
    auto unit = [&](int i) {
        Vec e(n, Rat(0));
        e[i] = 1;
        return e;
    };
    auto diff = [&](int i) { // e_i - e_{i+1}
        Vec e(n, Rat(0));
        e[i] = 1;
        e[i + 1] = -1;
        return e;
    };
    switch (spec.family) {
    case Family::SymmetricA:
        for (int i = 0; i + 1 < n; ++i)
            cs.roots.push_back(diff(i));
        break;
    case Family::HyperoctahedralB:
        for (int i = 0; i + 1 < n; ++i)
            cs.roots.push_back(diff(i));
        cs.roots.push_back(unit(n - 1));
        break;
    case Family::DemihyperoctahedralD: {
        if (n < 2)
            throw std::invalid_argument("fundamental_roots: D_n needs n >= 2");
        for (int i = 0; i + 1 < n; ++i)
            cs.roots.push_back(diff(i));
        Vec last(n, Rat(0)); // e_{n-1} + e_n
        last[n - 2] = 1;
        last[n - 1] = 1;
        cs.roots.push_back(std::move(last));
        break;
    }
    case Family::SignChangeZ2n:
        for (int i = 0; i < n; ++i)
            cs.roots.push_back(unit(i));
        break;
    case Family::Z2CoordQuotient:
        cs.roots.push_back(unit(n - 1));
        break;
    case Family::Z2SumQuotient:
        cs.roots.push_back(Vec(n, Rat(1)));
        break;
    case Family::Trivial:
        throw std::invalid_argument("fundamental_roots: trivial group has no roots");
    }
    cs.dual_generators = cs.roots;
    cs.inessential_basis = null_space(cs.roots, n);

    // Primal generators: for square invertible A, exactly the columns of
    // A^{-1}; otherwise the row-space solutions A^T (A A^T)^{-1} e_j plus the
    // inessential directions and their negatives.
    const std::size_t k = cs.roots.size();
    if (k == static_cast<std::size_t>(n)) {
        auto inv = inverse(cs.roots);
        if (inv) {
            Mat cols = transpose(*inv);
            for (auto& c : cols)
                cs.generators.push_back(std::move(c));
            return cs;
        }
    }
    Mat aat = matmul(cs.roots, transpose(cs.roots));
    auto aat_inv = inverse(aat);
    assert(aat_inv);
    Mat pinv = matmul(transpose(cs.roots), *aat_inv); // n x k
    for (std::size_t j = 0; j < k; ++j) {
        Vec g(n);
        for (int i = 0; i < n; ++i)
            g[i] = pinv[i][j];
        cs.generators.push_back(std::move(g));
    }
    for (const Vec& b : cs.inessential_basis) {
        cs.generators.push_back(b);
        cs.generators.push_back(scale(Rat(-1), b));
    }
    return cs;
}

inline bool cone_contains(const ConeSystem& cs, const Vec& x, bool strict = false)
{
    if (x.size() != static_cast<std::size_t>(cs.spec.dim))
        throw std::invalid_argument("cone_contains: dimension mismatch");
    for (const Vec& a : cs.roots) {
        Rat v = dot(a, x);
        if (strict ? (v <= 0) : (v < 0))
            return false;
    }
    return true;
}

/// Canonical representative tilde_x = witness(x) in the closed fundamental
/// cone, with an exact group-element witness.
struct Representative {
    Vec tilde_x;
    GroupElement witness;
};

namespace detail {

// Stable order: |value| descending, original index ascending.
inline std::vector<int> abs_desc_order(const Vec& x)
{
    std::vector<int> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return rat_abs(x[a]) > rat_abs(x[b]);
    });
    return idx;
}

inline GroupElement witness_for(const Vec& x, const std::vector<int>& src,
                                const Vec& tilde)
{
    const int n = static_cast<int>(x.size());
    GroupElement g;
    g.perm.resize(n);
    g.signs.resize(n);
    for (int i = 0; i < n; ++i) {
        g.perm[i] = src[i];
        g.signs[i] = (x[src[i]] != 0 && tilde[i] != x[src[i]]) ? -1 : 1;
    }
    return g;
}

} // namespace detail

inline Representative representative(const GroupSpec& spec, const Vec& x)
{
    const int n = spec.dim;
    if (x.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("representative: dimension mismatch");
    Representative rep;
    switch (spec.family) {
    case Family::SymmetricA: {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return x[a] > x[b]; });
        rep.tilde_x.resize(n);
        for (int i = 0; i < n; ++i)
            rep.tilde_x[i] = x[idx[i]];
        rep.witness = detail::witness_for(x, idx, rep.tilde_x);
        break;
    }
    case Family::HyperoctahedralB: {
        auto idx = detail::abs_desc_order(x);
        rep.tilde_x.resize(n);
        for (int i = 0; i < n; ++i)
            rep.tilde_x[i] = rat_abs(x[idx[i]]);
        rep.witness = detail::witness_for(x, idx, rep.tilde_x);
        break;
    }
    case Family::DemihyperoctahedralD: {
        auto idx = detail::abs_desc_order(x);
        Rat prod = 1;
        for (const Rat& c : x)
            prod *= c;
        rep.tilde_x.resize(n);
        for (int i = 0; i < n; ++i)
            rep.tilde_x[i] = rat_abs(x[idx[i]]);
        // The coordinate product is D_n-invariant; the last coordinate of the
        // representative carries its sign, nonnegative on zero product.
        if (prod < 0)
            rep.tilde_x[n - 1] = -rep.tilde_x[n - 1];
        rep.witness = detail::witness_for(x, idx, rep.tilde_x);
        // Zero product leaves a free sign on a zero coordinate; the flip
        // count is even automatically otherwise.
        int flips = 0;
        for (int s : rep.witness.signs)
            if (s < 0)
                ++flips;
        if (flips % 2 != 0) {
            for (int i = 0; i < n; ++i) {
                if (x[rep.witness.perm[i]] == 0) {
                    rep.witness.signs[i] = -rep.witness.signs[i];
                    break;
                }
            }
        }
        break;
    }
    case Family::SignChangeZ2n: {
        rep.witness = GroupElement::identity(n);
        rep.tilde_x.resize(n);
        for (int i = 0; i < n; ++i) {
            rep.tilde_x[i] = rat_abs(x[i]);
            if (x[i] < 0)
                rep.witness.signs[i] = -1;
        }
        break;
    }
    case Family::Z2CoordQuotient: {
        rep.witness = GroupElement::identity(n);
        rep.tilde_x = x;
        if (x[n - 1] < 0) {
            rep.tilde_x[n - 1] = -x[n - 1];
            rep.witness.signs[n - 1] = -1;
        }
        break;
    }
    case Family::Z2SumQuotient: {
        if (vec_sum(x) >= 0) {
            rep.witness = GroupElement::identity(n);
            rep.tilde_x = x;
        } else {
            rep.witness = GroupElement::sum_hyperplane_reflection(n);
            rep.tilde_x = gmajor::apply(rep.witness, x);
        }
        break;
    }
    case Family::Trivial:
        rep.witness = GroupElement::identity(n);
        rep.tilde_x = x;
        break;
    }
    assert(gmajor::apply(rep.witness, x) == rep.tilde_x);
    return rep;
}

/// Dual-cone membership: v = sum_j eps_j a_j with eps_j >= 0, decided by
/// exact feasibility. The certificate carries the eps coefficients (indexed
/// like the roots) or a separating vector.
inline OrderVerdict dual_cone_membership(const ConeSystem& cs, const Vec& v)
{
    if (v.size() != static_cast<std::size_t>(cs.spec.dim))
        throw std::invalid_argument("dual_cone_membership: dimension mismatch");
    FeasibilityResult lp = solve_nonneg_combination(cs.dual_generators, v);
    OrderVerdict verdict;
    if (lp.feasible) {
        verdict.holds = true;
        verdict.coefficients = lp.solution;
        verdict.support_points = cs.dual_generators;
    } else {
        verdict.holds = false;
        verdict.separating = lp.farkas;
    }
    return verdict;
}

/// One inequality of a family's closed-form order system, evaluated on
/// representatives: <coeff, y~> <= <coeff, x~>.
struct ConeInequality {
    std::string label;
    Vec coeff;
};

inline std::vector<ConeInequality> family_inequalities(const GroupSpec& spec)
{
    const int n = spec.dim;
    std::vector<ConeInequality> rows;
    auto partial = [&](int j) { // indicator of the first j coordinates
        Vec c(n, Rat(0));
        for (int i = 0; i < j; ++i)
            c[i] = 1;
        return c;
    };
    switch (spec.family) {
    case Family::SymmetricA: {
        // Rows of (A_1^T)^{-1}: mean-adjusted partial sums, then the total
        // sum (lower weak majorization).
        for (int j = 1; j < n; ++j) {
            Vec c(n, Rat(-j, n));
            for (int i = 0; i < j; ++i)
                c[i] += 1;
            rows.push_back({"adjusted_partial_sum_" + std::to_string(j), std::move(c)});
        }
        rows.push_back({"total_sum", Vec(n, Rat(1, n))});
        break;
    }
    case Family::HyperoctahedralB:
        for (int j = 1; j <= n; ++j)
            rows.push_back({"abs_partial_sum_" + std::to_string(j), partial(j)});
        break;
    case Family::DemihyperoctahedralD: {
        for (int j = 1; j <= n - 2; ++j)
            rows.push_back({"abs_partial_sum_" + std::to_string(j), partial(j)});
        Vec minus = partial(n - 1);
        minus[n - 1] = -1;
        rows.push_back({"head_minus_last", std::move(minus)});
        rows.push_back({"head_plus_last", partial(n)});
        break;
    }
    case Family::SignChangeZ2n:
        for (int i = 0; i < n; ++i) {
            Vec c(n, Rat(0));
            c[i] = 1;
            rows.push_back({"abs_coord_" + std::to_string(i + 1), std::move(c)});
        }
        break;
    case Family::Z2CoordQuotient: {
        Vec c(n, Rat(0));
        c[n - 1] = 1;
        rows.push_back({"abs_last_coord", std::move(c)});
        break;
    }
    case Family::Z2SumQuotient:
        rows.push_back({"abs_total_sum", Vec(n, Rat(1))});
        break;
    case Family::Trivial:
        throw std::invalid_argument("family_inequalities: unsupported family");
    }
    return rows;
}

/// Closed-form cone-order check: computes representatives and evaluates the
/// family's inequality list exactly. A holds-verdict carries the slack
/// values as conic coefficients on the corresponding dual directions.
inline OrderVerdict cone_order_check(const GroupSpec& spec, const Vec& x, const Vec& y)
{
    Representative rx = representative(spec, x);
    Representative ry = representative(spec, y);
    auto rows = family_inequalities(spec);
    OrderVerdict verdict;
    std::vector<Rat> slacks;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        Rat lhs = dot(rows[j].coeff, ry.tilde_x);
        Rat rhs = dot(rows[j].coeff, rx.tilde_x);
        if (lhs > rhs) {
            verdict.holds = false;
            verdict.violated = InequalityViolation{j, rows[j].label, lhs, rhs};
            return verdict;
        }
        slacks.push_back(rhs - lhs);
    }
    verdict.holds = true;
    verdict.coefficients = std::move(slacks);
    return verdict;
}

/// Inessential basis plus the orthogonal projector onto its complement.
struct EssentialDecomposition {
    std::vector<Vec> inessential_basis;
    Mat projector; // symmetric, idempotent, root-compatible
};

inline EssentialDecomposition essential_decomposition(const ConeSystem& cs)
{
    const int n = cs.spec.dim;
    EssentialDecomposition d;
    d.inessential_basis = cs.inessential_basis;
    d.projector = identity(n);
    if (d.inessential_basis.empty())
        return d;
    // P = I - B (B^T B)^{-1} B^T with B the basis as columns.
    Mat bt(d.inessential_basis.size(), Vec(n));
    for (std::size_t r = 0; r < d.inessential_basis.size(); ++r)
        bt[r] = d.inessential_basis[r];
    Mat b = transpose(bt);
    auto gram_inv = inverse(matmul(bt, b));
    assert(gram_inv);
    Mat correction = matmul(matmul(b, *gram_inv), bt);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d.projector[i][j] -= correction[i][j];
    return d;
}

/// Essential G-majorization: hull membership of the projections onto the
/// orthogonal complement of the inessential subspace.
inline OrderVerdict essential_order(const GroupSpec& spec, const Vec& x, const Vec& y,
                                    std::uint64_t guard = kDefaultGroupGuard)
{
    ConeSystem cs = fundamental_roots(spec);
    EssentialDecomposition d = essential_decomposition(cs);
    return hull_membership(spec, matvec(d.projector, x), matvec(d.projector, y), guard);
}

/// Orthogonal completion of the symmetric-group A-matrix by the all-ones
/// row, with the inverse-transpose whose rows read off the classical and
/// lower-weak inequalities.
struct CompletedAMatrix {
    Mat a1;
    Mat a1_t_inverse;
};

inline CompletedAMatrix complete_a_matrix(const GroupSpec& spec)
{
    if (spec.family != Family::SymmetricA)
        throw std::invalid_argument("complete_a_matrix: family must be SymmetricA");
    const int n = spec.dim;
    ConeSystem cs = fundamental_roots(spec);
    CompletedAMatrix c;
    c.a1 = cs.roots;
    c.a1.push_back(Vec(n, Rat(1)));
    auto inv = inverse(transpose(c.a1));
    assert(inv);
    c.a1_t_inverse = *inv;
    return c;
}

} // namespace gmajor

#endif
