#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmajor/structure.hpp"

using namespace gmajor;

TEST_CASE("triple validation: orders and supported shapes")
{
    CHECK_NOTHROW(validate_triple(make_bdz2_triple(3, PhiVariant::Coordinate)));
    CHECK_NOTHROW(validate_triple(make_bdz2_triple(4, PhiVariant::SumHyperplane)));
    CHECK_NOTHROW(validate_triple(make_bz2s_triple(3)));
    CHECK_NOTHROW(
        validate_triple(make_degenerate_triple({Family::HyperoctahedralB, 3})));

    ExtensionTriple bad{{Family::DemihyperoctahedralD, 3},
                        {Family::SymmetricA, 3},
                        {Family::SignChangeZ2n, 3},
                        PhiVariant::None};
    CHECK_THROWS_AS(validate_triple(bad), std::invalid_argument);

    ExtensionTriple mismatched = make_bdz2_triple(3, PhiVariant::Coordinate);
    mismatched.n.dim = 4;
    CHECK_THROWS_AS(validate_triple(mismatched), std::invalid_argument);
}

TEST_CASE("region intersection holds for both supported triples")
{
    auto r1 = verify_region_intersection(make_bdz2_triple(3, PhiVariant::Coordinate),
                                         500, 7);
    CHECK(r1.ok);
    CHECK(r1.symbolic_inclusion);
    CHECK(r1.violations.empty());

    auto r2 = verify_region_intersection(make_bz2s_triple(3), 500, 7);
    CHECK(r2.ok);
    CHECK(r2.violations.empty());
}

TEST_CASE("wall points are excluded from all three strict interiors at once")
{
    ConeSystem cb = fundamental_roots({Family::HyperoctahedralB, 3});
    ConeSystem cd = fundamental_roots({Family::DemihyperoctahedralD, 3});
    ConeSystem cq = fundamental_roots({Family::Z2CoordQuotient, 3});
    Vec wall = make_vec({2, 1, 1});
    CHECK_FALSE(cone_contains(cb, wall, true));
    bool in_both_factors = cone_contains(cd, wall, true) && cone_contains(cq, wall, true);
    CHECK_FALSE(in_both_factors);
}

TEST_CASE("sum-hyperplane variant is rejected by structural operations")
{
    ExtensionTriple t = make_bdz2_triple(3, PhiVariant::SumHyperplane);
    CHECK_THROWS_AS(verify_region_intersection(t, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(verify_refinement(t, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(dual_sum_check(t, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(union_convexity_gap(t, 10, 7), std::invalid_argument);
}

TEST_CASE("refinement: subgroup combinations ordered under the full group")
{
    CHECK(verify_refinement(make_bdz2_triple(3, PhiVariant::Coordinate), 100, 7).ok);
    CHECK(verify_refinement(make_bz2s_triple(3), 100, 7).ok);
    CHECK(verify_refinement(make_degenerate_triple({Family::DemihyperoctahedralD, 3}),
                            50, 7)
              .ok);
}

TEST_CASE("dual-cone Minkowski sum")
{
    auto r1 = dual_sum_check(make_bdz2_triple(3, PhiVariant::Coordinate), 300, 7);
    CHECK(r1.ok);
    CHECK(r1.symbolic_inclusion);

    auto r2 = dual_sum_check(make_bz2s_triple(3), 300, 7);
    CHECK(r2.ok);
    CHECK(r2.symbolic_inclusion);

    // B_3 roots from the combined D_3 + coordinate-quotient generators.
    std::vector<Vec> combined = fundamental_roots({Family::DemihyperoctahedralD, 3})
                                    .dual_generators;
    combined.push_back(make_vec({0, 0, 1}));
    for (const Vec& a : fundamental_roots({Family::HyperoctahedralB, 3}).roots)
        CHECK(solve_nonneg_combination(combined, a).feasible);
}

TEST_CASE("union convexity gap: certified witnesses and the degenerate case")
{
    auto w1 = union_convexity_gap(make_bdz2_triple(3, PhiVariant::Coordinate));
    REQUIRE(w1.has_value());
    CHECK(w1->v == make_vec({1, 0, 2}));
    CHECK(dot(w1->separator_n, w1->v) > 0);
    CHECK(dot(w1->separator_h, w1->v) > 0);

    auto w2 = union_convexity_gap(make_bz2s_triple(3));
    REQUIRE(w2.has_value());
    // Re-certify the sampled witness from scratch.
    ConeSystem cg = fundamental_roots({Family::HyperoctahedralB, 3});
    ConeSystem cn = fundamental_roots({Family::SignChangeZ2n, 3});
    ConeSystem ch = fundamental_roots({Family::SymmetricA, 3});
    CHECK(dual_cone_membership(cg, w2->v).holds);
    CHECK_FALSE(dual_cone_membership(cn, w2->v).holds);
    CHECK_FALSE(dual_cone_membership(ch, w2->v).holds);

    auto none = union_convexity_gap(
        make_degenerate_triple({Family::HyperoctahedralB, 3}));
    CHECK_FALSE(none.has_value());
}

TEST_CASE("quotient order dispatch")
{
    ExtensionTriple sum = make_bdz2_triple(3, PhiVariant::SumHyperplane);
    CHECK(quotient_order(sum, make_vec({1, 1, 1}), make_vec({1, 1, -1})).holds);

    ExtensionTriple coord = make_bdz2_triple(3, PhiVariant::Coordinate);
    CHECK_FALSE(quotient_order(coord, make_vec({0, 0, 1}), make_vec({0, 0, -2})).holds);

    Vec x = make_vec({2, -1, 5});
    CHECK(quotient_order(coord, x, x).holds);
    CHECK(quotient_order(sum, x, x).holds);

    CHECK_THROWS_AS(quotient_order(make_bz2s_triple(3), x, x), std::invalid_argument);
}

TEST_CASE("triple names")
{
    CHECK(make_bdz2_triple(3, PhiVariant::Coordinate).name() == "B3:D3:Z2coord3");
    CHECK(make_bz2s_triple(4).name() == "B4:Z2^4:S4");
}
