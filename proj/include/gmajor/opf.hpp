#ifndef GMAJOR_OPF_HPP
#define GMAJOR_OPF_HPP

#include "gmajor/cone.hpp"
#include "gmajor/group.hpp"
#include "gmajor/sampling.hpp"
#include "gmajor/structure.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gmajor {

using RealVec = std::vector<double>;

/// Scalar function under order-preservation testing. The double evaluator
/// is mandatory; analytic and exact-rational evaluators are attached where
/// the built-in polynomials allow them.
struct ScalarFunction {
    std::string label;
    std::function<double(const RealVec&)> eval;
    std::function<RealVec(const RealVec&)> grad;  // may be empty
    std::function<Rat(const Vec&)> exact_eval;    // may be empty
    std::function<Vec(const Vec&)> exact_grad;    // may be empty
};

// ---- invariant polynomial ring -------------------------------------------

/// g_k = elementary symmetric polynomial of degree k in the squared
/// coordinates, by the product recurrence.
inline Rat invariant_polynomial(int k, const Vec& x)
{
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n)
        throw std::out_of_range("invariant_polynomial: k out of range");
    std::vector<Rat> e(k + 1, Rat(0));
    e[0] = 1;
    for (int i = 0; i < n; ++i) {
        Rat sq = x[i] * x[i];
        for (int j = std::min(k, i + 1); j >= 1; --j)
            e[j] += e[j - 1] * sq;
    }
    return e[k];
}

inline Rat product_polynomial(const Vec& x)
{
    Rat p = 1;
    for (const Rat& c : x)
        p *= c;
    return p;
}

namespace detail {

inline double gk_double(int k, const RealVec& x)
{
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double sq = x[i] * x[i];
        for (int j = std::min<int>(k, static_cast<int>(i) + 1); j >= 1; --j)
            e[j] += e[j - 1] * sq;
    }
    return e[k];
}

inline double h_double(const RealVec& x)
{
    double p = 1.0;
    for (double c : x)
        p *= c;
    return p;
}

inline Vec to_rat(const RealVec& x)
{
    Vec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = Rat(static_cast<long long>(std::llround(x[i] * 1048576.0)), 1048576);
    return v;
}

inline RealVec to_double(const Vec& x)
{
    RealVec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = static_cast<double>(x[i]);
    return v;
}

} // namespace detail

inline ScalarFunction make_gk(int k, int n)
{
    ScalarFunction f;
    f.label = "g" + std::to_string(k);
    f.eval = [k](const RealVec& x) { return detail::gk_double(k, x); };
    f.grad = [k, n](const RealVec& x) {
        // d g_k / d x_i = 2 x_i * e_{k-1}(squares without x_i)
        RealVec g(n);
        for (int i = 0; i < n; ++i) {
            RealVec rest;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    rest.push_back(x[j]);
            g[i] = 2.0 * x[i] * (k == 1 ? 1.0 : detail::gk_double(k - 1, rest));
        }
        return g;
    };
    f.exact_eval = [k](const Vec& x) { return invariant_polynomial(k, x); };
    f.exact_grad = [k, n](const Vec& x) {
        Vec g(n);
        for (int i = 0; i < n; ++i) {
            Vec rest;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    rest.push_back(x[j]);
            g[i] = Rat(2) * x[i] * (k == 1 ? Rat(1) : invariant_polynomial(k - 1, rest));
        }
        return g;
    };
    return f;
}

inline ScalarFunction make_g1(int n) { return make_gk(1, n); }

inline ScalarFunction make_h(int n)
{
    ScalarFunction f;
    f.label = "h";
    f.eval = [](const RealVec& x) { return detail::h_double(x); };
    f.grad = [n](const RealVec& x) {
        RealVec g(n);
        for (int i = 0; i < n; ++i) {
            double p = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    p *= x[j];
            g[i] = p;
        }
        return g;
    };
    f.exact_eval = [](const Vec& x) { return product_polynomial(x); };
    f.exact_grad = [n](const Vec& x) {
        Vec g(n);
        for (int i = 0; i < n; ++i) {
            Rat p = 1;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    p *= x[j];
            g[i] = p;
        }
        return g;
    };
    return f;
}

/// f = a*g1 + b*h, the invariant family of the D_n region analysis.
inline ScalarFunction make_family(const Rat& a, const Rat& b, int n)
{
    ScalarFunction g1 = make_g1(n), h = make_h(n);
    ScalarFunction f;
    f.label = "family:a=" + gmajor::to_string(a) + ",b=" + gmajor::to_string(b);
    double ad = static_cast<double>(a), bd = static_cast<double>(b);
    f.eval = [=](const RealVec& x) { return ad * g1.eval(x) + bd * h.eval(x); };
    f.grad = [=](const RealVec& x) {
        RealVec gg = g1.grad(x), gh = h.grad(x);
        for (std::size_t i = 0; i < gg.size(); ++i)
            gg[i] = ad * gg[i] + bd * gh[i];
        return gg;
    };
    f.exact_eval = [=](const Vec& x) {
        return a * g1.exact_eval(x) + b * h.exact_eval(x);
    };
    f.exact_grad = [=](const Vec& x) {
        Vec gg = g1.exact_grad(x), gh = h.exact_grad(x);
        for (std::size_t i = 0; i < gg.size(); ++i)
            gg[i] = a * gg[i] + b * gh[i];
        return gg;
    };
    return f;
}

/// f = (1/4) g1^2 - |h| on R^4: D_4 order preserving but not B_4.
/// The exact gradient is defined away from the coordinate hyperplanes.
inline ScalarFunction make_paper_counterexample4()
{
    const int n = 4;
    ScalarFunction f;
    f.label = "paper-counterexample-n4";
    f.eval = [](const RealVec& x) {
        double g1 = detail::gk_double(1, x);
        return 0.25 * g1 * g1 - std::abs(detail::h_double(x));
    };
    f.grad = [n](const RealVec& x) {
        double g1 = detail::gk_double(1, x);
        double h = detail::h_double(x);
        double s = h > 0 ? 1.0 : (h < 0 ? -1.0 : 0.0);
        RealVec g(n);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0.0)
                throw std::domain_error("counterexample gradient: coordinate is zero");
            g[i] = g1 * x[i] - s * (h / x[i]);
        }
        return g;
    };
    f.exact_eval = [](const Vec& x) {
        Rat g1 = invariant_polynomial(1, x);
        return g1 * g1 / 4 - rat_abs(product_polynomial(x));
    };
    f.exact_grad = [n](const Vec& x) {
        Rat g1 = invariant_polynomial(1, x);
        Rat h = product_polynomial(x);
        int s = h > 0 ? 1 : (h < 0 ? -1 : 0);
        Vec g(n);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0)
                throw std::domain_error("counterexample gradient: coordinate is zero");
            g[i] = g1 * x[i] - Rat(s) * (h / x[i]);
        }
        return g;
    };
    return f;
}

/// CLI-addressable registry: "g1", "gk:<k>", "h", "family:a=<q>,b=<q>",
/// "paper-counterexample-n4".
inline ScalarFunction function_from_name(const std::string& name, int n)
{
    if (name == "g1")
        return make_g1(n);
    if (name == "h")
        return make_h(n);
    if (name == "paper-counterexample-n4") {
        if (n != 4)
            throw std::invalid_argument("paper-counterexample-n4 requires dimension 4");
        return make_paper_counterexample4();
    }
    if (name.rfind("gk:", 0) == 0)
        return make_gk(std::stoi(name.substr(3)), n);
    if (name.rfind("family:", 0) == 0) {
        std::string body = name.substr(7);
        auto apos = body.find("a=");
        auto comma = body.find(',');
        auto bpos = body.find("b=");
        if (apos != 0 || comma == std::string::npos || bpos != comma + 1)
            throw std::invalid_argument("malformed family spec: " + name);
        Rat a = parse_rational(body.substr(2, comma - 2));
        Rat b = parse_rational(body.substr(bpos + 2));
        return make_family(a, b, n);
    }
    throw std::invalid_argument("unknown function name: " + name);
}

// ---- reports ---------------------------------------------------------------

struct OpfViolation {
    RealVec point;
    std::string detail;
    double value = 0.0;
};

struct ExactViolation {
    Vec point;
    std::string root;
    Rat value;
};

struct OpfReport {
    std::string suite;
    std::string function;
    std::string group;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double worst_margin = 0.0; // most negative checked quantity
    std::vector<OpfViolation> violations;
    std::vector<ExactViolation> exact_violations;
    bool pass = false;
};

// ---- sampling of cone-interior points --------------------------------------

namespace detail {

/// Samples a point strictly inside the fundamental cone: every wall slack at
/// least `margin` and every coordinate bounded away from zero by `margin`
/// (the built-in |h|-type functions are not differentiable on the axes).
inline RealVec sample_interior(const GroupSpec& spec, RationalSampler& s,
                               double margin, double scale)
{
    const int n = spec.dim;
    // Gap size keeps leading-coordinate products below scale^2 at n = 4, so
    // non-strict boundary cases of the invariant family are never refuted by
    // sampling noise; strict refutations come from exact probe points.
    auto gap = [&] { return s.real(margin, margin + 0.15 * scale); };
    RealVec x(n);
    switch (spec.family) {
    case Family::HyperoctahedralB:
        x[n - 1] = gap();
        for (int i = n - 2; i >= 0; --i)
            x[i] = x[i + 1] + gap();
        break;
    case Family::DemihyperoctahedralD: {
        double tail = gap();
        x[n - 1] = s.index(2) ? tail : -tail;
        x[n - 2] = tail + gap();
        for (int i = n - 3; i >= 0; --i)
            x[i] = x[i + 1] + gap();
        break;
    }
    case Family::SymmetricA: {
        double base = s.real(margin, margin + scale);
        x[n - 1] = s.index(2) ? base : -base;
        for (int i = n - 2; i >= 0; --i) {
            x[i] = x[i + 1] + gap();
            if (std::abs(x[i]) < margin)
                x[i] = x[i + 1] + gap() + 2 * margin;
        }
        break;
    }
    case Family::SignChangeZ2n:
        for (int i = 0; i < n; ++i)
            x[i] = gap();
        break;
    case Family::Z2CoordQuotient:
    case Family::Z2SumQuotient:
        for (int i = 0; i < n; ++i)
            x[i] = gap();
        break;
    case Family::Trivial:
        throw std::invalid_argument("sample_interior: trivial group has no cone");
    }
    return x;
}

inline RealVec numeric_gradient(const ScalarFunction& f, const RealVec& x)
{
    if (f.grad)
        return f.grad(x);
    RealVec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double step = 1e-5 * (1.0 + std::abs(x[i]));
        RealVec hi = x, lo = x;
        hi[i] += step;
        lo[i] -= step;
        double fh = f.eval(hi), fl = f.eval(lo);
        if (!std::isfinite(fh) || !std::isfinite(fl))
            throw std::domain_error("gradient_root_condition: non-finite evaluation");
        g[i] = (fh - fl) / (2.0 * step);
    }
    return g;
}

} // namespace detail

// ---- suites -----------------------------------------------------------------

/// |f(gx) - f(x)| <= tol * (1 + |f(x)|) over all enumerated g and sampled x.
inline OpfReport invariance_check(const ScalarFunction& f, const GroupSpec& spec,
                                  std::uint64_t samples, std::uint64_t seed,
                                  double tol = 1e-9,
                                  std::uint64_t guard = kDefaultGroupGuard)
{
    OpfReport rep;
    rep.suite = "invariance";
    rep.function = f.label;
    rep.group = family_name(spec);
    rep.samples = samples;
    rep.seed = seed;
    rep.tolerance = tol;
    auto elements = enumerate_group(spec, guard);
    RationalSampler s(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec xr = s.vector(spec.dim, 2, 32);
        double fx = f.eval(detail::to_double(xr));
        for (const auto& g : elements) {
            double fg = f.eval(detail::to_double(gmajor::apply(g, xr)));
            double dev = std::abs(fg - fx) - tol * (1.0 + std::abs(fx));
            rep.worst_margin = std::min(rep.worst_margin, -dev);
            if (dev > 0) {
                rep.violations.push_back({detail::to_double(xr), "non-invariant image", fg - fx});
                break;
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

/// Gradient root conditions <grad f, a_j> >= -tol at cone-interior samples
/// (and optional exact rational probe points, tested with strict sign).
inline OpfReport gradient_root_condition(const ScalarFunction& f, const GroupSpec& spec,
                                         std::uint64_t samples, std::uint64_t seed,
                                         double tol = 1e-7, double scale = 1.0,
                                         double margin = 0.1,
                                         const std::vector<Vec>& exact_probes = {})
{
    OpfReport rep;
    rep.suite = "gradient";
    rep.function = f.label;
    rep.group = family_name(spec);
    rep.samples = samples;
    rep.seed = seed;
    rep.tolerance = tol;
    ConeSystem cs = fundamental_roots(spec);
    RationalSampler s(seed);

    auto check_double = [&](const RealVec& x) {
        RealVec g = detail::numeric_gradient(f, x);
        for (std::size_t j = 0; j < cs.roots.size(); ++j) {
            double v = 0;
            for (std::size_t i = 0; i < g.size(); ++i)
                v += g[i] * static_cast<double>(cs.roots[j][i]);
            rep.worst_margin = std::min(rep.worst_margin, v);
            if (v < -tol)
                rep.violations.push_back({x, "root " + std::to_string(j + 1), v});
        }
    };

    for (std::uint64_t i = 0; i < samples; ++i)
        check_double(detail::sample_interior(spec, s, margin, scale));

    for (const Vec& p : exact_probes) {
        if (f.exact_grad) {
            Vec g = f.exact_grad(p);
            for (std::size_t j = 0; j < cs.roots.size(); ++j) {
                Rat v = dot(g, cs.roots[j]);
                rep.worst_margin = std::min(rep.worst_margin, static_cast<double>(v));
                if (v < 0)
                    rep.exact_violations.push_back({p, "root " + std::to_string(j + 1), v});
            }
        } else {
            check_double(detail::to_double(p));
        }
    }
    rep.pass = rep.violations.empty() && rep.exact_violations.empty();
    return rep;
}

enum class PairStrategy {
    OrbitMix,  // convex combinations of randomly chosen orbit points
    SignShrink // convex combinations of sign-flip orbit points (shrinks coordinates)
};

/// Sampled order-preservation oracle: builds pairs y ≺_G x as exact convex
/// combinations of orbit points and asserts f(y) <= f(x) + tol*(1+|f(x)|).
inline OpfReport monotonicity_oracle(const ScalarFunction& f, const GroupSpec& spec,
                                     std::uint64_t trials, std::uint64_t seed,
                                     double tol = 1e-7, long scale = 1,
                                     PairStrategy strategy = PairStrategy::OrbitMix,
                                     std::uint64_t guard = kDefaultGroupGuard)
{
    OpfReport rep;
    rep.suite = "monotonic";
    rep.function = f.label;
    rep.group = family_name(spec);
    rep.samples = trials;
    rep.seed = seed;
    rep.tolerance = tol;
    const int n = spec.dim;
    RationalSampler s(seed);

    auto sign_masks = [&](std::uint64_t count) {
        std::vector<std::uint64_t> masks{0};
        while (masks.size() < count) {
            std::uint64_t m = s.engine()() & ((std::uint64_t{1} << n) - 1);
            if (spec.family == Family::DemihyperoctahedralD && std::popcount(m) % 2 != 0)
                continue;
            masks.push_back(m);
        }
        return masks;
    };

    auto check_pair = [&](const Vec& x, const Vec& y) {
        double fx = f.eval(detail::to_double(x));
        double fy = f.eval(detail::to_double(y));
        double dev = fy - fx - tol * (1.0 + std::abs(fx));
        rep.worst_margin = std::min(rep.worst_margin, -(fy - fx));
        if (dev > 0)
            rep.violations.push_back({detail::to_double(x), "f increased along the order", fy - fx});
    };

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        if (strategy == PairStrategy::SignShrink) {
            // Positive x; y_i = c_i x_i with c a convex combination of the
            // family's sign vectors, so |y_i| <= x_i and |h| cannot grow.
            Vec x(n);
            for (auto& c : x)
                c = Rat(scale) * (Rat(1, 4) + Rat(3, 4) * s.nonneg_rational(1, 64));
            if (trial == 0)
                x.assign(n, Rat(scale)); // deterministic large-product probe
            auto masks = sign_masks(trial == 0 ? 2 : 1 + s.index(4));
            if (trial == 0 && n >= 2)
                masks = {0, 3}; // flip the first two coordinates
            auto w = convex_weights(s, masks.size());
            if (trial == 0)
                w = {Rat(1, 2), Rat(1, 2)};
            Vec y(n, Rat(0));
            for (std::size_t m = 0; m < masks.size(); ++m)
                for (int i = 0; i < n; ++i)
                    y[i] += w[m] * Rat((masks[m] >> i) & 1 ? -1 : 1) * x[i];
            check_pair(x, y);
        } else {
            Vec x = s.vector(n, scale, 16);
            auto orb = orbit(spec, x, guard);
            std::vector<Vec> pts(orb.begin(), orb.end());
            std::size_t k = 1 + s.index(std::min<std::size_t>(pts.size(), 8));
            std::vector<Vec> chosen;
            for (std::size_t i = 0; i < k; ++i)
                chosen.push_back(pts[s.index(pts.size())]);
            auto w = convex_weights(s, chosen.size());
            Vec y(n, Rat(0));
            for (std::size_t i = 0; i < chosen.size(); ++i)
                y = add(y, gmajor::scale(w[i], chosen[i]));
            check_pair(x, y);
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

/// Cone-interior probe with top product near 1, fixing the refutation power
/// of the gradient suite on the invariant family.
inline Vec family_gradient_probe(const GroupSpec& spec)
{
    const int n = spec.dim;
    Vec p(n);
    p[0] = Rat(21, 20);
    p[1] = Rat(19, 20);
    Rat step = std::min(Rat(3, 20), (Rat(19, 20) - Rat(1, 5)) / std::max(1, n - 2));
    for (int i = 2; i < n; ++i)
        p[i] = p[i - 1] - step;
    return p;
}

struct RegionPoint {
    Rat a, b;
    bool preserving = false;
};

struct RegionReport {
    std::string group;
    std::uint64_t seed = 0;
    std::vector<RegionPoint> points;
};

/// Classification of one (a,b) point for f = a*g1 + b*h: the gradient suite
/// (with the deterministic probe) plus the sampled monotonicity oracle under
/// both pair strategies.
inline bool family_point_check(const GroupSpec& spec, const Rat& a, const Rat& b,
                               std::uint64_t seed,
                               std::uint64_t guard = kDefaultGroupGuard)
{
    ScalarFunction f = make_family(a, b, spec.dim);
    std::vector<Vec> probes{family_gradient_probe(spec)};
    if (!gradient_root_condition(f, spec, 200, seed, 1e-7, 1.0, 0.1, probes).pass)
        return false;
    if (!monotonicity_oracle(f, spec, 100, seed + 1, 1e-7, 1, PairStrategy::OrbitMix,
                             guard)
             .pass)
        return false;
    return monotonicity_oracle(f, spec, 100, seed + 2, 1e-7, 6,
                               PairStrategy::SignShrink, guard)
        .pass;
}

/// Classifies the (a,b) grid for f = a*g1 + b*h.
inline RegionReport family_region_check(const GroupSpec& spec, const Rat& lo,
                                        const Rat& hi, const Rat& step,
                                        std::uint64_t seed,
                                        std::uint64_t guard = kDefaultGroupGuard)
{
    if (spec.family != Family::HyperoctahedralB &&
        spec.family != Family::DemihyperoctahedralD)
        throw std::invalid_argument("family_region_check: spec must be B_n or D_n");
    RegionReport rep;
    rep.group = family_name(spec);
    rep.seed = seed;
    for (Rat a = lo; a <= hi; a += step)
        for (Rat b = lo; b <= hi; b += step)
            rep.points.push_back({a, b, family_point_check(spec, a, b, seed, guard)});
    return rep;
}

/// The strict-inclusion demonstration F_{B_4} subset F_{D_4}: the quartic
/// (1/4) g1^2 - |h| passes every D_4 suite but fails the e_4 root condition
/// for B_4 at (1,1,1,1/4), exactly.
struct GapDemoReport {
    OpfReport d_gradient;
    OpfReport d_monotonic;
    OpfReport b_gradient;
    Rat b_e4_value;  // exact <grad f, e_4> at the failure point
    Rat d_e34_value; // exact <grad f, e_3+e_4> at the same point
    bool ok = false;
};

inline GapDemoReport inclusion_gap_demo(const ExtensionTriple& t, std::uint64_t seed = 7,
                                        std::uint64_t guard = kDefaultGroupGuard)
{
    if (t.g.dim != 4 || t.g.family != Family::HyperoctahedralB ||
        t.n.family != Family::DemihyperoctahedralD)
        throw std::invalid_argument("inclusion_gap_demo: requires the (B_4, D_4, Z_2) triple");
    ScalarFunction f = make_paper_counterexample4();
    Vec bad{Rat(1), Rat(1), Rat(1), Rat(1, 4)};

    GapDemoReport rep;
    rep.d_gradient = gradient_root_condition(f, t.n, 200, seed);
    rep.d_monotonic = monotonicity_oracle(f, t.n, 500, seed, 1e-7, 1,
                                          PairStrategy::OrbitMix, guard);
    rep.b_gradient = gradient_root_condition(f, t.g, 200, seed, 1e-7, 1.0, 0.1, {bad});

    Vec g = f.exact_grad(bad);
    Vec e4(4, Rat(0));
    e4[3] = 1;
    Vec e34(4, Rat(0));
    e34[2] = 1;
    e34[3] = 1;
    rep.b_e4_value = dot(g, e4);
    rep.d_e34_value = dot(g, e34);
    rep.ok = rep.d_gradient.pass && rep.d_monotonic.pass && !rep.b_gradient.pass &&
             rep.b_e4_value < 0 && rep.d_e34_value > 0;
    return rep;
}

} // namespace gmajor

#endif
