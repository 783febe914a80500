#ifndef GMAJOR_GROUP_HPP
#define GMAJOR_GROUP_HPP

#include "gmajor/rational.hpp"
#include "gmajor/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmajor {

/// Thrown when a group enumeration would exceed the configured guard.
struct GroupTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultGroupGuard = 10'000'000;

enum class Family {
    SymmetricA,
    HyperoctahedralB,
    DemihyperoctahedralD,
    SignChangeZ2n,
    Z2CoordQuotient,
    Z2SumQuotient,
    Trivial,
};

/// Family tag plus dimension; the sole handle for family-dispatched behavior.
struct GroupSpec {
    Family family;
    int dim;
};

inline std::uint64_t group_order(const GroupSpec& spec)
{
    auto factorial = [](int n) {
        std::uint64_t f = 1;
        for (int i = 2; i <= n; ++i)
            f *= static_cast<std::uint64_t>(i);
        return f;
    };
    const int n = spec.dim;
    if (n <= 0)
        throw std::invalid_argument("group_order: dim must be positive");
    if (n > 20)
        throw GroupTooLarge("group order overflows the enumeration guard");
    switch (spec.family) {
    case Family::SymmetricA:
        return factorial(n);
    case Family::HyperoctahedralB:
        return (std::uint64_t{1} << n) * factorial(n);
    case Family::DemihyperoctahedralD:
        return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case Family::SignChangeZ2n:
        return std::uint64_t{1} << n;
    case Family::Z2CoordQuotient:
    case Family::Z2SumQuotient:
        return 2;
    case Family::Trivial:
        return 1;
    }
    throw std::invalid_argument("group_order: unknown family");
}

/// One orthogonal map: a signed permutation acting by
/// result_i = signs_i * x_{perm(i)}, or (for the sum-hyperplane quotient)
/// the reflection through {sum x_i = 0}, which is not a signed permutation
/// and is carried as a special case.
struct GroupElement {
    std::vector<int> perm;  // values in 0..n-1
    std::vector<int> signs; // values in {+1, -1}
    bool sum_reflection = false;

    int dim() const { return static_cast<int>(perm.size()); }

    static GroupElement identity(int n)
    {
        GroupElement e;
        e.perm.resize(n);
        std::iota(e.perm.begin(), e.perm.end(), 0);
        e.signs.assign(n, 1);
        return e;
    }

    static GroupElement sum_hyperplane_reflection(int n)
    {
        GroupElement e = identity(n);
        e.sum_reflection = true;
        return e;
    }

    bool is_identity() const
    {
        if (sum_reflection)
            return false;
        for (int i = 0; i < dim(); ++i)
            if (perm[i] != i || signs[i] != 1)
                return false;
        return true;
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b)
    {
        return a.sum_reflection == b.sum_reflection && a.perm == b.perm &&
               a.signs == b.signs;
    }
    friend auto operator<=>(const GroupElement& a, const GroupElement& b)
    {
        if (auto c = a.sum_reflection <=> b.sum_reflection; c != 0)
            return c;
        if (auto c = a.perm <=> b.perm; c != 0)
            return c;
        return a.signs <=> b.signs;
    }
};

inline Vec apply(const GroupElement& g, const Vec& x)
{
    if (static_cast<std::size_t>(g.dim()) != x.size())
        throw std::invalid_argument("apply: dimension mismatch");
    const int n = g.dim();
    if (g.sum_reflection) {
        Rat shift = Rat(2) * vec_sum(x) / Rat(n);
        Vec r(x.size());
        for (int i = 0; i < n; ++i)
            r[i] = x[i] - shift;
        return r;
    }
    Vec r(x.size());
    for (int i = 0; i < n; ++i)
        r[i] = Rat(g.signs[i]) * x[g.perm[i]];
    return r;
}

/// Composition with apply(compose(g,h), x) == apply(g, apply(h, x)).
inline GroupElement compose(const GroupElement& g, const GroupElement& h)
{
    if (g.dim() != h.dim())
        throw std::invalid_argument("compose: dimension mismatch");
    if (g.sum_reflection || h.sum_reflection) {
        // Only the two-element sum-quotient group carries this kind.
        if (g.sum_reflection && h.sum_reflection)
            return GroupElement::identity(g.dim());
        if (g.sum_reflection && h.is_identity())
            return g;
        if (h.sum_reflection && g.is_identity())
            return h;
        throw std::invalid_argument(
            "compose: sum-hyperplane reflection composes only within its own group");
    }
    const int n = g.dim();
    GroupElement r;
    r.perm.resize(n);
    r.signs.resize(n);
    for (int i = 0; i < n; ++i) {
        r.perm[i] = h.perm[g.perm[i]];
        r.signs[i] = g.signs[i] * h.signs[g.perm[i]];
    }
    return r;
}

inline GroupElement inverse(const GroupElement& g)
{
    if (g.sum_reflection)
        return g; // involution
    const int n = g.dim();
    GroupElement r;
    r.perm.resize(n);
    r.signs.resize(n);
    for (int i = 0; i < n; ++i) {
        r.perm[g.perm[i]] = i;
        r.signs[g.perm[i]] = g.signs[i];
    }
    return r;
}

inline std::vector<GroupElement> enumerate_group(const GroupSpec& spec,
                                                 std::uint64_t guard = kDefaultGroupGuard)
{
    if (group_order(spec) > guard)
        throw GroupTooLarge("group order exceeds enumeration guard");
    const int n = spec.dim;
    std::vector<GroupElement> out;
    auto push_signed_perms = [&](bool even_only, bool all_signs) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            const std::uint64_t nsigns = all_signs ? (std::uint64_t{1} << n) : 1;
            for (std::uint64_t mask = 0; mask < nsigns; ++mask) {
                if (even_only && (std::popcount(mask) % 2) != 0)
                    continue;
                GroupElement g;
                g.perm = p;
                g.signs.resize(n);
                for (int i = 0; i < n; ++i)
                    g.signs[i] = (mask >> i) & 1 ? -1 : 1;
                out.push_back(std::move(g));
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return;
    };
    switch (spec.family) {
    case Family::SymmetricA:
        push_signed_perms(false, false);
        break;
    case Family::HyperoctahedralB:
        push_signed_perms(false, true);
        break;
    case Family::DemihyperoctahedralD:
        push_signed_perms(true, true);
        break;
    case Family::SignChangeZ2n: {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            GroupElement g = GroupElement::identity(n);
            for (int i = 0; i < n; ++i)
                g.signs[i] = (mask >> i) & 1 ? -1 : 1;
            out.push_back(std::move(g));
        }
        break;
    }
    case Family::Z2CoordQuotient: {
        out.push_back(GroupElement::identity(n));
        GroupElement g = GroupElement::identity(n);
        g.signs[n - 1] = -1;
        out.push_back(std::move(g));
        break;
    }
    case Family::Z2SumQuotient:
        out.push_back(GroupElement::identity(n));
        out.push_back(GroupElement::sum_hyperplane_reflection(n));
        break;
    case Family::Trivial:
        out.push_back(GroupElement::identity(n));
        break;
    }
    return out;
}

/// Orbit of x with exact-equality deduplication; size divides the group order.
inline std::set<Vec> orbit(const GroupSpec& spec, const Vec& x,
                           std::uint64_t guard = kDefaultGroupGuard)
{
    std::set<Vec> pts;
    for (const auto& g : enumerate_group(spec, guard))
        pts.insert(gmajor::apply(g, x));
    return pts;
}

inline Rat m_value_enumerated(const GroupSpec& spec, const Vec& z, const Vec& x,
                              std::uint64_t guard = kDefaultGroupGuard)
{
    if (z.size() != x.size())
        throw std::invalid_argument("m_value: dimension mismatch");
    std::optional<Rat> best;
    for (const auto& g : enumerate_group(spec, guard)) {
        Rat v = dot(z, gmajor::apply(g, x));
        if (!best || v > *best)
            best = v;
    }
    return *best;
}

/// Support value m(z,x) = max over the orbit of <z, g x>. Closed forms are
/// used where the family admits them (descending-sort dot products); the
/// remaining families enumerate.
inline Rat m_value(const GroupSpec& spec, const Vec& z, const Vec& x,
                   std::uint64_t guard = kDefaultGroupGuard)
{
    if (z.size() != x.size())
        throw std::invalid_argument("m_value: dimension mismatch");
    auto sorted_desc = [](Vec v) {
        std::sort(v.begin(), v.end(), [](const Rat& a, const Rat& b) { return a > b; });
        return v;
    };
    auto abs_sorted_desc = [&](const Vec& v) {
        Vec a(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            a[i] = rat_abs(v[i]);
        return sorted_desc(std::move(a));
    };
    switch (spec.family) {
    case Family::SymmetricA:
        // Rearrangement inequality: descending-sort dot product.
        return dot(sorted_desc(z), sorted_desc(x));
    case Family::HyperoctahedralB:
        return dot(abs_sorted_desc(z), abs_sorted_desc(x));
    case Family::SignChangeZ2n: {
        Rat s = 0;
        for (std::size_t i = 0; i < z.size(); ++i)
            s += rat_abs(z[i] * x[i]);
        return s;
    }
    case Family::Trivial:
        return dot(z, x);
    case Family::Z2CoordQuotient:
    case Family::Z2SumQuotient:
    case Family::DemihyperoctahedralD:
        return m_value_enumerated(spec, z, x, guard);
    }
    throw std::invalid_argument("m_value: unknown family");
}

struct InequalityViolation {
    std::size_t index = 0;
    std::string label;
    Rat lhs, rhs;
};

/// Verdict of an order decision, with a machine-checkable certificate:
/// convex coefficients reconstructing y on success, or a violated named
/// inequality / separating functional on failure.
struct OrderVerdict {
    bool holds = false;
    std::vector<Rat> coefficients;      // convex (hull) or conic (dual cone)
    std::vector<GroupElement> support;  // elements paired with coefficients
    std::vector<Vec> support_points;    // orbit/generator points paired with coefficients
    std::optional<InequalityViolation> violated;
    std::optional<Vec> separating;
};

/// Exact convex-hull-membership oracle: y in conv(orbit(x))?
/// Decided by exact rational phase-1 simplex. On failure the separating
/// functional z from the dual solution satisfies m(z,y) > m(z,x) exactly.
inline OrderVerdict hull_membership(const GroupSpec& spec, const Vec& x, const Vec& y,
                                    std::uint64_t guard = kDefaultGroupGuard)
{
    if (x.size() != y.size())
        throw std::invalid_argument("hull_membership: dimension mismatch");
    const std::size_t n = x.size();

    // Deduplicated orbit points, each with a witness group element.
    std::map<Vec, GroupElement> pts;
    for (const auto& g : enumerate_group(spec, guard)) {
        Vec p = gmajor::apply(g, x);
        pts.emplace(std::move(p), g);
    }
    std::vector<Vec> columns;
    std::vector<GroupElement> witnesses;
    columns.reserve(pts.size());
    for (const auto& [p, g] : pts) {
        Vec col = p;
        col.push_back(Rat(1)); // convexity row
        columns.push_back(std::move(col));
        witnesses.push_back(g);
    }
    Vec rhs = y;
    rhs.push_back(Rat(1));

    FeasibilityResult lp = solve_nonneg_combination(columns, rhs);
    OrderVerdict v;
    if (lp.feasible) {
        v.holds = true;
        Vec rebuilt(n, Rat(0));
        Rat total = 0;
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (lp.solution[j] == 0)
                continue;
            v.coefficients.push_back(lp.solution[j]);
            v.support.push_back(witnesses[j]);
            Vec p(columns[j].begin(), columns[j].begin() + n);
            for (std::size_t i = 0; i < n; ++i)
                rebuilt[i] += lp.solution[j] * p[i];
            total += lp.solution[j];
            v.support_points.push_back(std::move(p));
        }
        if (rebuilt != y || total != 1)
            throw std::logic_error("hull_membership: certificate failed to reconstruct y");
        return v;
    }
    v.holds = false;
    Vec z(lp.farkas.begin(), lp.farkas.begin() + n);
    // Farkas gives <z, p> + t <= 0 on the orbit and <z, y> + t > 0, so z
    // separates: m(z,y) >= <z,y> > max_p <z,p> = m(z,x).
    Rat mx = dot(z, pts.begin()->first);
    for (const auto& [p, g] : pts)
        mx = std::max(mx, dot(z, p));
    if (!(dot(z, y) > mx))
        throw std::logic_error("hull_membership: separating functional failed verification");
    v.separating = std::move(z);
    return v;
}

} // namespace gmajor

#endif
