#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmajor/cone.hpp"
#include "gmajor/sampling.hpp"

using namespace gmajor;

namespace {

Mat roots_of(Family fam, int n) { return fundamental_roots({fam, n}).roots; }

/// Order oracle used for cross-checks: hull membership, with the symmetric
/// family reduced to its essential part plus the total-sum inequality.
bool oracle_order(const GroupSpec& spec, const Vec& x, const Vec& y)
{
    switch (spec.family) {
    case Family::SymmetricA:
        return vec_sum(y) <= vec_sum(x) && essential_order(spec, x, y).holds;
    case Family::Z2CoordQuotient:
    case Family::Z2SumQuotient:
        return essential_order(spec, x, y).holds;
    default:
        return hull_membership(spec, x, y).holds;
    }
}

} // namespace

TEST_CASE("fundamental root systems per family")
{
    CHECK(roots_of(Family::HyperoctahedralB, 3) ==
          Mat{make_vec({1, -1, 0}), make_vec({0, 1, -1}), make_vec({0, 0, 1})});
    CHECK(roots_of(Family::DemihyperoctahedralD, 3) ==
          Mat{make_vec({1, -1, 0}), make_vec({0, 1, -1}), make_vec({0, 1, 1})});
    CHECK(roots_of(Family::SignChangeZ2n, 3) ==
          Mat{make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1})});
    CHECK(roots_of(Family::SymmetricA, 3) ==
          Mat{make_vec({1, -1, 0}), make_vec({0, 1, -1})});
    CHECK(roots_of(Family::Z2CoordQuotient, 3) == Mat{make_vec({0, 0, 1})});
    CHECK(roots_of(Family::Z2SumQuotient, 3) == Mat{make_vec({1, 1, 1})});
}

TEST_CASE("square systems: generators are the columns of the inverse A-matrix")
{
    for (Family fam : {Family::HyperoctahedralB, Family::DemihyperoctahedralD,
                       Family::SignChangeZ2n}) {
        ConeSystem cs = fundamental_roots({fam, 3});
        auto inv = inverse(cs.roots);
        REQUIRE(inv);
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < 3; ++i)
                CHECK(cs.generators[j][i] == (*inv)[i][j]);
        CHECK(cs.inessential_basis.empty());
    }
}

TEST_CASE("dual correctness: roots accepted, generators satisfy all inequalities")
{
    for (const GroupSpec spec :
         {GroupSpec{Family::SymmetricA, 4}, GroupSpec{Family::HyperoctahedralB, 4},
          GroupSpec{Family::DemihyperoctahedralD, 4},
          GroupSpec{Family::SignChangeZ2n, 4}, GroupSpec{Family::Z2CoordQuotient, 4},
          GroupSpec{Family::Z2SumQuotient, 4}}) {
        ConeSystem cs = fundamental_roots(spec);
        for (const Vec& a : cs.roots)
            CHECK(dual_cone_membership(cs, a).holds);
        for (const Vec& g : cs.generators)
            for (const Vec& a : cs.roots)
                CHECK(dot(a, g) >= 0);
        for (const Vec& v : cs.inessential_basis)
            for (const Vec& a : cs.roots)
                CHECK(dot(a, v) == 0);
    }
}

TEST_CASE("representative: worked examples and witness exactness")
{
    auto rb = representative({Family::HyperoctahedralB, 3}, make_vec({-2, 0, 1}));
    CHECK(rb.tilde_x == make_vec({2, 1, 0}));
    CHECK(gmajor::apply(rb.witness, make_vec({-2, 0, 1})) == rb.tilde_x);

    auto rd = representative({Family::DemihyperoctahedralD, 3}, make_vec({1, -2, 3}));
    CHECK(rd.tilde_x == make_vec({3, 2, -1}));
    int flips = 0;
    for (int s : rd.witness.signs)
        if (s < 0)
            ++flips;
    CHECK(flips % 2 == 0);

    auto rs = representative({Family::SymmetricA, 3}, make_vec({1, 3, 2}));
    CHECK(rs.tilde_x == make_vec({3, 2, 1}));

    auto rfix = representative({Family::SymmetricA, 3}, make_vec({2, 2, 2}));
    CHECK(rfix.tilde_x == make_vec({2, 2, 2}));
    CHECK(rfix.witness.is_identity());

    auto rq = representative({Family::Z2SumQuotient, 3}, make_vec({-1, -1, 1}));
    CHECK(vec_sum(rq.tilde_x) >= 0);
    CHECK(gmajor::apply(rq.witness, make_vec({-1, -1, 1})) == rq.tilde_x);
}

TEST_CASE("representative lies in the closed cone; unique for trivial stabilizers")
{
    RationalSampler s(41);
    for (Family fam : {Family::SymmetricA, Family::HyperoctahedralB,
                       Family::DemihyperoctahedralD, Family::SignChangeZ2n}) {
        for (int n = 2; n <= 4; ++n) {
            GroupSpec spec{fam, n};
            ConeSystem cs = fundamental_roots(spec);
            for (int t = 0; t < 25; ++t) {
                Vec x = s.vector(n);
                auto rep = representative(spec, x);
                CHECK(cone_contains(cs, rep.tilde_x));
                CHECK(gmajor::apply(rep.witness, x) == rep.tilde_x);
                // Trivial stabilizer: distinct nonzero absolute values and,
                // for D, nonzero product. Then the representative is the
                // unique orbit point in the closed cone.
                bool trivial_stab = true;
                for (int i = 0; i < n && trivial_stab; ++i) {
                    if (x[i] == 0)
                        trivial_stab = false;
                    for (int j = i + 1; j < n; ++j)
                        if (rat_abs(x[i]) == rat_abs(x[j]))
                            trivial_stab = false;
                }
                if (!trivial_stab)
                    continue;
                int in_cone = 0;
                for (const Vec& p : orbit(spec, x))
                    if (cone_contains(cs, p))
                        ++in_cone;
                CHECK(in_cone == 1);
            }
        }
    }
}

TEST_CASE("cone_contains: interior, boundary, violations")
{
    ConeSystem b3 = fundamental_roots({Family::HyperoctahedralB, 3});
    CHECK(cone_contains(b3, make_vec({3, 2, 1})));
    CHECK(cone_contains(b3, make_vec({3, 2, 1}), true));
    CHECK_FALSE(cone_contains(b3, make_vec({1, 0, 2})));
    CHECK(cone_contains(b3, make_vec({0, 0, 0})));
    CHECK_FALSE(cone_contains(b3, make_vec({0, 0, 0}), true));
}

TEST_CASE("dual_cone_membership: worked triple and refutation")
{
    ConeSystem b3 = fundamental_roots({Family::HyperoctahedralB, 3});
    auto in_b = dual_cone_membership(b3, make_vec({1, 0, 2}));
    REQUIRE(in_b.holds);
    CHECK(in_b.coefficients == std::vector<Rat>{Rat(1), Rat(1), Rat(3)});

    ConeSystem d3 = fundamental_roots({Family::DemihyperoctahedralD, 3});
    auto in_d = dual_cone_membership(d3, make_vec({1, 0, 2}));
    REQUIRE_FALSE(in_d.holds);
    REQUIRE(in_d.separating.has_value());
    CHECK(dot(*in_d.separating, make_vec({1, 0, 2})) > 0);
    for (const Vec& a : d3.roots)
        CHECK(dot(*in_d.separating, a) <= 0);

    auto zero = dual_cone_membership(b3, make_vec({0, 0, 0}));
    REQUIRE(zero.holds);
    for (const Rat& c : zero.coefficients)
        CHECK(c == 0);
}

TEST_CASE("cone_order_check: worked examples")
{
    GroupSpec b3{Family::HyperoctahedralB, 3};
    CHECK(cone_order_check(b3, make_vec({2, 0, 0}), make_vec({1, -1, 0})).holds);

    auto fail = cone_order_check(b3, make_vec({3, 0, 0}), make_vec({2, 2, 0}));
    REQUIRE_FALSE(fail.holds);
    REQUIRE(fail.violated.has_value());
    CHECK(fail.violated->index == 1); // second inequality, j = 2
    CHECK(fail.violated->lhs == Rat(4));
    CHECK(fail.violated->rhs == Rat(3));

    RationalSampler s(43);
    Vec x = s.vector(4);
    CHECK(cone_order_check({Family::DemihyperoctahedralD, 4}, x, x).holds);

    CHECK(cone_order_check({Family::Z2SumQuotient, 3}, make_vec({1, 1, 1}),
                           make_vec({1, 1, -1}))
              .holds);
    CHECK_FALSE(cone_order_check({Family::Z2CoordQuotient, 3}, make_vec({0, 0, 1}),
                                 make_vec({0, 0, -2}))
                    .holds);
}

TEST_CASE("oracle equivalence on random pairs")
{
    RationalSampler s(47);
    for (Family fam : {Family::HyperoctahedralB, Family::DemihyperoctahedralD,
                       Family::SignChangeZ2n, Family::SymmetricA}) {
        for (int n = 2; n <= 3; ++n) {
            GroupSpec spec{fam, n};
            for (int t = 0; t < 60; ++t) {
                Vec x = s.vector(n, 5, 16);
                Vec y;
                if (t % 2 == 0) {
                    auto orb = orbit(spec, x);
                    std::vector<Vec> pts(orb.begin(), orb.end());
                    auto w = convex_weights(s, pts.size());
                    y = Vec(n, Rat(0));
                    for (std::size_t i = 0; i < pts.size(); ++i)
                        y = add(y, scale(w[i], pts[i]));
                } else {
                    y = s.vector(n, 5, 16);
                }
                CHECK(cone_order_check(spec, x, y).holds == oracle_order(spec, x, y));
            }
        }
    }
}

TEST_CASE("cone order is a partial order on representatives")
{
    RationalSampler s(53);
    for (Family fam : {Family::SymmetricA, Family::HyperoctahedralB,
                       Family::DemihyperoctahedralD, Family::SignChangeZ2n}) {
        GroupSpec spec{fam, 3};
        for (int t = 0; t < 40; ++t) {
            Vec x = s.vector(3), y = s.vector(3), z = s.vector(3);
            CHECK(cone_order_check(spec, x, x).holds);
            Vec xt = representative(spec, x).tilde_x;
            Vec yt = representative(spec, y).tilde_x;
            if (cone_order_check(spec, x, y).holds &&
                cone_order_check(spec, y, x).holds)
                CHECK(xt == yt);
            if (cone_order_check(spec, x, y).holds &&
                cone_order_check(spec, z, x).holds)
                CHECK(cone_order_check(spec, z, y).holds);
        }
    }
}

TEST_CASE("duality sampled form: holds-verdicts bound m over cone directions")
{
    RationalSampler s(59);
    for (Family fam : {Family::HyperoctahedralB, Family::DemihyperoctahedralD,
                       Family::SignChangeZ2n}) {
        GroupSpec spec{fam, 3};
        ConeSystem cs = fundamental_roots(spec);
        int held = 0;
        for (int t = 0; held < 10 && t < 200; ++t) {
            Vec x = s.vector(3, 5, 16);
            auto orb = orbit(spec, x);
            std::vector<Vec> pts(orb.begin(), orb.end());
            auto w = convex_weights(s, pts.size());
            Vec y(3, Rat(0));
            for (std::size_t i = 0; i < pts.size(); ++i)
                y = add(y, scale(w[i], pts[i]));
            REQUIRE(cone_order_check(spec, x, y).holds);
            ++held;
            for (int zt = 0; zt < 50; ++zt) {
                Vec z(3, Rat(0));
                for (const Vec& g : cs.generators)
                    z = add(z, scale(s.nonneg_rational(5, 8), g));
                CHECK(m_value(spec, z, y) <= m_value(spec, z, x));
            }
        }
    }
}

TEST_CASE("essential decomposition: bases, projector laws")
{
    ConeSystem s4 = fundamental_roots({Family::SymmetricA, 4});
    auto d = essential_decomposition(s4);
    REQUIRE(d.inessential_basis.size() == 1);
    // Basis vector proportional to the all-ones direction.
    const Vec& v = d.inessential_basis[0];
    for (int i = 1; i < 4; ++i)
        CHECK(v[i] == v[0]);
    CHECK(v[0] != 0);

    ConeSystem z4 = fundamental_roots({Family::SignChangeZ2n, 4});
    auto dz = essential_decomposition(z4);
    CHECK(dz.inessential_basis.empty());
    CHECK(dz.projector == identity(4));

    ConeSystem q2 = fundamental_roots({Family::Z2CoordQuotient, 2});
    auto dq = essential_decomposition(q2);
    REQUIRE(dq.inessential_basis.size() == 1);
    CHECK(matvec(dq.projector, make_vec({3, 5})) == make_vec({0, 5}));

    for (const GroupSpec spec :
         {GroupSpec{Family::SymmetricA, 4}, GroupSpec{Family::Z2SumQuotient, 3},
          GroupSpec{Family::Z2CoordQuotient, 3}}) {
        ConeSystem cs = fundamental_roots(spec);
        auto dd = essential_decomposition(cs);
        CHECK(matmul(dd.projector, dd.projector) == dd.projector);
        CHECK(transpose(dd.projector) == dd.projector);
        RationalSampler smp(61);
        Vec x = smp.vector(spec.dim);
        Vec px = matvec(dd.projector, x);
        for (const Vec& a : cs.roots)
            CHECK(dot(a, px) == dot(a, x));
    }
}

TEST_CASE("essential order: coordinate-flip group and mean-zero symmetric pair")
{
    GroupSpec q2{Family::Z2CoordQuotient, 2};
    CHECK(essential_order(q2, make_vec({7, 2}), make_vec({-3, 1})).holds);
    CHECK_FALSE(essential_order(q2, make_vec({7, 1}), make_vec({-3, 2})).holds);

    GroupSpec s3{Family::SymmetricA, 3};
    CHECK(essential_order(s3, make_vec({2, 0, -2}), make_vec({1, 1, -2})).holds);
    RationalSampler s(67);
    Vec x = s.vector(3);
    CHECK(essential_order(s3, x, x).holds);
}

TEST_CASE("completed symmetric A-matrix")
{
    auto c3 = complete_a_matrix({Family::SymmetricA, 3});
    CHECK(c3.a1_t_inverse[2] == Vec{Rat(1, 3), Rat(1, 3), Rat(1, 3)});

    auto c2 = complete_a_matrix({Family::SymmetricA, 2});
    CHECK(c2.a1 == Mat{make_vec({1, -1}), make_vec({1, 1})});
    CHECK(c2.a1_t_inverse ==
          Mat{Vec{Rat(1, 2), Rat(-1, 2)}, Vec{Rat(1, 2), Rat(1, 2)}});

    // A1 * A1^{-1} = I, with A1^{-1} = transpose of the stored (A1^T)^{-1}.
    for (int n = 2; n <= 4; ++n) {
        auto c = complete_a_matrix({Family::SymmetricA, n});
        CHECK(matmul(c.a1, transpose(c.a1_t_inverse)) == identity(n));
    }
}

TEST_CASE("family inequality rows match the completed inverse for S_n")
{
    for (int n = 2; n <= 4; ++n) {
        auto c = complete_a_matrix({Family::SymmetricA, n});
        auto rows = family_inequalities({Family::SymmetricA, n});
        REQUIRE(rows.size() == static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            CHECK(rows[j].coeff == c.a1_t_inverse[j]);
    }
}
