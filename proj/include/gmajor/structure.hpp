#ifndef GMAJOR_STRUCTURE_HPP
#define GMAJOR_STRUCTURE_HPP

#include "gmajor/cone.hpp"
#include "gmajor/group.hpp"
#include "gmajor/sampling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmajor {

/// Quotient-order selector for the Z2 quotients of B_n: reflection through
/// the last coordinate hyperplane, or through {sum x_i = 0}.
enum class PhiVariant { None, Coordinate, SumHyperplane };

/// Specs realizing G as an extension of N by H. Only the triples
/// (B_n, D_n, Z2 quotient) and (B_n, Z2^n, S_n) are supported, plus the
/// degenerate (G, G, trivial).
struct ExtensionTriple {
    GroupSpec g, n, h;
    PhiVariant phi = PhiVariant::None;

    std::string name() const;
};

inline ExtensionTriple make_bdz2_triple(int n, PhiVariant phi)
{
    Family hf = phi == PhiVariant::SumHyperplane ? Family::Z2SumQuotient
                                                 : Family::Z2CoordQuotient;
    return ExtensionTriple{{Family::HyperoctahedralB, n},
                           {Family::DemihyperoctahedralD, n},
                           {hf, n},
                           phi};
}

inline ExtensionTriple make_bz2s_triple(int n)
{
    return ExtensionTriple{{Family::HyperoctahedralB, n},
                           {Family::SignChangeZ2n, n},
                           {Family::SymmetricA, n},
                           PhiVariant::None};
}

inline ExtensionTriple make_degenerate_triple(const GroupSpec& g)
{
    return ExtensionTriple{g, g, {Family::Trivial, g.dim}, PhiVariant::None};
}

inline void validate_triple(const ExtensionTriple& t)
{
    if (t.g.dim != t.n.dim || t.g.dim != t.h.dim)
        throw std::invalid_argument("extension triple: dimension mismatch");
    bool bd = t.g.family == Family::HyperoctahedralB &&
              t.n.family == Family::DemihyperoctahedralD &&
              (t.h.family == Family::Z2CoordQuotient ||
               t.h.family == Family::Z2SumQuotient);
    bool bzs = t.g.family == Family::HyperoctahedralB &&
               t.n.family == Family::SignChangeZ2n &&
               t.h.family == Family::SymmetricA;
    bool degenerate = t.g.family == t.n.family && t.h.family == Family::Trivial;
    if (!bd && !bzs && !degenerate)
        throw std::invalid_argument("unsupported extension triple");
    if (group_order(t.g) != group_order(t.n) * group_order(t.h))
        throw std::invalid_argument("extension triple: order product mismatch");
}

// The sum-hyperplane reflection is not a signed permutation, so that variant
// of H is not a subgroup of B_n; the subgroup-based verifications reject it.
inline void require_subgroup_variant(const ExtensionTriple& t, const char* op)
{
    if (t.phi == PhiVariant::SumHyperplane)
        throw std::invalid_argument(std::string(op) +
                                    ": sum-hyperplane variant is not a subgroup of B_n");
}

inline std::string family_name(const GroupSpec& s)
{
    switch (s.family) {
    case Family::SymmetricA: return "S" + std::to_string(s.dim);
    case Family::HyperoctahedralB: return "B" + std::to_string(s.dim);
    case Family::DemihyperoctahedralD: return "D" + std::to_string(s.dim);
    case Family::SignChangeZ2n: return "Z2^" + std::to_string(s.dim);
    case Family::Z2CoordQuotient: return "Z2coord" + std::to_string(s.dim);
    case Family::Z2SumQuotient: return "Z2sum" + std::to_string(s.dim);
    case Family::Trivial: return "trivial" + std::to_string(s.dim);
    }
    return "?";
}

inline std::string ExtensionTriple::name() const
{
    return family_name(g) + ":" + family_name(n) + ":" + family_name(h);
}

/// Structured result of a sampled structural verification, serializable to
/// the CLI's JSON output.
struct StructureReport {
    std::string subject;
    std::string triple;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<Vec> violations;
    std::vector<Vec> witnesses;
    bool symbolic_inclusion = false; // both conic-inclusion directions proved
    bool ok = false;
    std::string detail;
};

/// Checks that the open fundamental region of G is exactly the intersection
/// of those of N and H: sampled strict-membership equivalence, plus a
/// symbolic proof expressing each root system conically in the other.
inline StructureReport verify_region_intersection(const ExtensionTriple& t,
                                                  std::uint64_t samples,
                                                  std::uint64_t seed)
{
    validate_triple(t);
    require_subgroup_variant(t, "verify_region_intersection");
    ConeSystem cg = fundamental_roots(t.g);
    ConeSystem cn = fundamental_roots(t.n);
    ConeSystem ch = fundamental_roots(t.h);

    StructureReport rep;
    rep.subject = "region-intersection";
    rep.triple = t.name();
    rep.samples = samples;
    rep.seed = seed;

    RationalSampler sampler(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec x = sampler.vector(t.g.dim);
        bool in_g = cone_contains(cg, x, true);
        bool in_nh = cone_contains(cn, x, true) && cone_contains(ch, x, true);
        if (in_g != in_nh)
            rep.violations.push_back(x);
    }

    // C_N cap C_H subseteq C_G: each G-root as a nonnegative combination of
    // N- and H-roots; and conversely for C_G subseteq C_N cap C_H.
    std::vector<Vec> union_roots = cn.roots;
    union_roots.insert(union_roots.end(), ch.roots.begin(), ch.roots.end());
    bool symbolic = true;
    for (const Vec& a : cg.roots)
        symbolic = symbolic && solve_nonneg_combination(union_roots, a).feasible;
    for (const Vec& a : union_roots)
        symbolic = symbolic && solve_nonneg_combination(cg.roots, a).feasible;
    rep.symbolic_inclusion = symbolic;
    rep.ok = rep.violations.empty() && symbolic;
    return rep;
}

/// Refinement: y constructed as a convex combination of subgroup-orbit
/// points of x must satisfy hull membership under the full group.
inline StructureReport verify_refinement(const ExtensionTriple& t,
                                         std::uint64_t trials, std::uint64_t seed,
                                         std::uint64_t guard = kDefaultGroupGuard)
{
    validate_triple(t);
    require_subgroup_variant(t, "verify_refinement");
    StructureReport rep;
    rep.subject = "refinement";
    rep.triple = t.name();
    rep.samples = trials;
    rep.seed = seed;

    RationalSampler sampler(seed);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const GroupSpec& sub = (trial % 2 == 0) ? t.n : t.h;
        Vec x = sampler.vector(t.g.dim, 5, 16);
        auto orb = orbit(sub, x, guard);
        std::vector<Vec> pts(orb.begin(), orb.end());
        std::size_t k = 1 + sampler.index(std::min<std::size_t>(pts.size(), 6));
        std::vector<Vec> chosen;
        for (std::size_t i = 0; i < k; ++i)
            chosen.push_back(pts[sampler.index(pts.size())]);
        auto w = convex_weights(sampler, chosen.size());
        Vec y(x.size(), Rat(0));
        for (std::size_t i = 0; i < chosen.size(); ++i)
            y = add(y, scale(w[i], chosen[i]));
        if (!hull_membership(t.g, x, y, guard).holds)
            rep.violations.push_back(x);
    }
    rep.ok = rep.violations.empty();
    return rep;
}

/// Dual-cone Minkowski sum: every G-dual generator is a nonnegative
/// combination of the union of N- and H-dual generators, and sampled
/// membership in C*_G equals feasibility over the combined set.
inline StructureReport dual_sum_check(const ExtensionTriple& t, std::uint64_t samples,
                                      std::uint64_t seed)
{
    validate_triple(t);
    require_subgroup_variant(t, "dual_sum_check");
    ConeSystem cg = fundamental_roots(t.g);
    ConeSystem cn = fundamental_roots(t.n);
    ConeSystem ch = fundamental_roots(t.h);
    std::vector<Vec> combined = cn.dual_generators;
    combined.insert(combined.end(), ch.dual_generators.begin(), ch.dual_generators.end());

    StructureReport rep;
    rep.subject = "dual-sum";
    rep.triple = t.name();
    rep.samples = samples;
    rep.seed = seed;

    bool generators_ok = true;
    for (const Vec& g : cg.dual_generators)
        generators_ok = generators_ok && solve_nonneg_combination(combined, g).feasible;

    RationalSampler sampler(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec v;
        if (i % 2 == 0) {
            v = sampler.vector(t.g.dim);
        } else {
            // Guaranteed members: nonnegative combinations of the G-roots.
            v = Vec(t.g.dim, Rat(0));
            for (const Vec& a : cg.dual_generators)
                v = add(v, scale(sampler.nonneg_rational(5, 8), a));
        }
        bool in_g = dual_cone_membership(cg, v).holds;
        bool in_combined = solve_nonneg_combination(combined, v).feasible;
        if (in_g != in_combined)
            rep.violations.push_back(v);
    }
    rep.symbolic_inclusion = generators_ok;
    rep.ok = generators_ok && rep.violations.empty();
    return rep;
}

/// Certified witness that the union of the two dual cones fails convexity.
struct GapWitness {
    Vec v;                           // v in C*_G, outside C*_N and C*_H
    std::vector<Rat> g_coefficients; // conic certificate over the G-roots
    Vec separator_n;                 // Farkas refutation against C*_N
    Vec separator_h;                 // Farkas refutation against C*_H
};

/// Searches for v in C*_G lying in neither C*_N nor C*_H, trying the known
/// n=3 witness first and then seeded conic samples. Returns nullopt when no
/// gap exists (degenerate triple).
inline std::optional<GapWitness> union_convexity_gap(const ExtensionTriple& t,
                                                     std::uint64_t samples = 500,
                                                     std::uint64_t seed = 7)
{
    validate_triple(t);
    if (t.h.family == Family::Trivial)
        return std::nullopt; // C*_N = C*_G, no gap possible
    require_subgroup_variant(t, "union_convexity_gap");
    ConeSystem cg = fundamental_roots(t.g);
    ConeSystem cn = fundamental_roots(t.n);
    ConeSystem ch = fundamental_roots(t.h);

    auto certify = [&](const Vec& v) -> std::optional<GapWitness> {
        auto in_g = dual_cone_membership(cg, v);
        if (!in_g.holds)
            return std::nullopt;
        auto in_n = dual_cone_membership(cn, v);
        auto in_h = dual_cone_membership(ch, v);
        if (in_n.holds || in_h.holds)
            return std::nullopt;
        GapWitness w;
        w.v = v;
        w.g_coefficients = in_g.coefficients;
        w.separator_n = *in_n.separating;
        w.separator_h = *in_h.separating;
        return w;
    };

    if (t.g.dim == 3 && t.n.family == Family::DemihyperoctahedralD) {
        if (auto w = certify(make_vec({1, 0, 2})))
            return w;
    }
    RationalSampler sampler(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec v(t.g.dim, Rat(0));
        for (const Vec& a : cg.dual_generators)
            v = add(v, scale(sampler.nonneg_rational(5, 8), a));
        if (auto w = certify(v))
            return w;
    }
    return std::nullopt;
}

/// Quotient-order dispatch for the two Z2 realizations.
inline OrderVerdict quotient_order(const ExtensionTriple& t, const Vec& x, const Vec& y)
{
    validate_triple(t);
    switch (t.phi) {
    case PhiVariant::Coordinate:
        return cone_order_check({Family::Z2CoordQuotient, t.g.dim}, x, y);
    case PhiVariant::SumHyperplane:
        return cone_order_check({Family::Z2SumQuotient, t.g.dim}, x, y);
    case PhiVariant::None:
        break;
    }
    throw std::invalid_argument("quotient_order: triple carries no phi variant");
}

} // namespace gmajor

#endif
