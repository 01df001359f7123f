#include <doctest.h>

#include "splinepower/spaces.hpp"

using namespace splinepower;

TEST_CASE("dimension formula") {
    CHECK(SplineSpaceSpec(3, 0, 7).dimension() == 22);
    CHECK(SplineSpaceSpec(5, 4, 1).dimension() == 6);
    CHECK(SplineSpaceSpec(1, -1, 3).dimension() == 6);
    for (int p = 0; p <= 10; ++p)
        for (int k = -1; k <= p - 1; ++k)
            for (int n = 1; n <= 12; ++n) CHECK(SplineSpaceSpec(p, k, n).dimension() >= p + 1);
}

TEST_CASE("spec validation") {
    CHECK_THROWS(SplineSpaceSpec(2, 2, 3));   // k = p rejected
    CHECK_THROWS(SplineSpaceSpec(2, -2, 3));  // k < -1
    CHECK_THROWS(SplineSpaceSpec(2, 0, 0));   // n < 1
    CHECK_THROWS(SplineSpaceSpec(-1, -1, 1));
}

TEST_CASE("matched segments") {
    CHECK(matched_segments(3, 0, 7) == 19);
    CHECK(matched_segments(2, -1, 3) == 7);
    CHECK(matched_segments(5, 4, 9) == 9);
    // dimension match across a sweep, and the self-comparison fixed point
    for (int p = 0; p <= 10; ++p) {
        for (int k = -1; k <= p - 1; ++k) {
            for (int n = 1; n <= 12; ++n) {
                const int m = matched_segments(p, k, n);
                CHECK(SplineSpaceSpec(p, p - 1, m).dimension() == SplineSpaceSpec(p, k, n).dimension());
            }
        }
        if (p >= 1)
            for (int n = 1; n <= 12; ++n) CHECK(matched_segments(p, p - 1, n) == n);
    }
}

TEST_CASE("matched segments for lower-order comparison") {
    // q = p reduces to the plain formula
    CHECK(matched_segments_lower_order(3, 3, 0, 7) == matched_segments(3, 0, 7));
    CHECK(matched_segments_lower_order(3, 1, -1, 6) == 9);
    CHECK_THROWS_AS(static_cast<void>(matched_segments_lower_order(13, 1, -1, 6)), MInvalidError);
    // dimension identity dim S^p_{p-1,m} = dim S^q_{k,n}
    for (int q = 0; q <= 4; ++q)
        for (int k = -1; k <= q - 1; ++k)
            for (int n = 1; n <= 8; ++n)
                for (int p = q; p <= q + 6; ++p) {
                    int m;
                    try {
                        m = matched_segments_lower_order(p, q, k, n);
                    } catch (const MInvalidError&) {
                        continue;
                    }
                    CHECK(SplineSpaceSpec(p, p - 1, m).dimension() ==
                          SplineSpaceSpec(q, k, n).dimension());
                }
}

TEST_CASE("broken spec bookkeeping") {
    // off-grid breakpoint: sigma = p - min(k, s)
    BrokenSpec a(SplineSpaceSpec(2, -1, 4), {Rational(1, 3)}, {-1});
    CHECK_FALSE(a.on_uniform_grid(0));
    CHECK(a.sigma(0) == 3);
    CHECK(matched_segments_broken(a).m == 10);

    // on-grid breakpoint: sigma = max(k - s, 0)
    BrokenSpec b(SplineSpaceSpec(2, 0, 3), {Rational(1, 3)}, {0});
    CHECK(b.on_uniform_grid(0));
    CHECK(b.sigma(0) == 0);
    CHECK(matched_segments_broken(b).m == 3);

    // T = 0 reduces to the plain matched count
    BrokenSpec c(SplineSpaceSpec(3, 0, 5), {}, {});
    CHECK(matched_segments_broken(c).m == matched_segments(3, 0, 5));
    CHECK(c.dimension() == SplineSpaceSpec(3, 0, 5).dimension());
}

TEST_CASE("broken matched dimension identity") {
    // grid hit: the matched smooth enriched space loses exactly one dimension
    BrokenSpec spec(SplineSpaceSpec(2, -1, 2), {Rational(1, 2)}, {0});
    const BrokenMatch match = matched_segments_broken(spec);
    CHECK(match.m == 2);
    CHECK(match.grid_hits == 1);
    const BrokenSpec smooth = matched_smooth_broken(spec);
    CHECK(smooth.dimension() == spec.dimension() - match.grid_hits);

    // breakpoints away from both grids: exact dimension match
    BrokenSpec clean(SplineSpaceSpec(2, 0, 3), {Rational(1, 7), Rational(3, 7)}, {0, -1});
    const BrokenMatch cm = matched_segments_broken(clean);
    CHECK(cm.grid_hits == 0);
    CHECK(matched_smooth_broken(clean).dimension() == clean.dimension());
}

TEST_CASE("broken spec validation") {
    CHECK_THROWS(BrokenSpec(SplineSpaceSpec(2, 0, 3), {Rational(1, 2), Rational(1, 3)}, {0, 0}));
    CHECK_THROWS(BrokenSpec(SplineSpaceSpec(2, 0, 3), {Rational(3, 2)}, {0}));
    CHECK_THROWS(BrokenSpec(SplineSpaceSpec(2, 0, 3), {Rational(1, 2)}, {2}));
    CHECK_THROWS(BrokenSpec(SplineSpaceSpec(2, 0, 3), {Rational(1, 2)}, {0, 0}));
}

TEST_CASE("knot vectors") {
    auto kv = knot_vector(SplineSpaceSpec(1, 0, 2));
    REQUIRE(kv.size() == 3);
    CHECK(kv[0].position == Rational(0));
    CHECK(kv[0].multiplicity == 2);
    CHECK(kv[1].position == Rational(1, 2));
    CHECK(kv[1].multiplicity == 1);
    CHECK(kv[2].multiplicity == 2);
    CHECK(basis_count(kv) == 3);

    auto kv2 = knot_vector(SplineSpaceSpec(2, 1, 3));
    REQUIRE(kv2.size() == 4);
    CHECK(kv2[1].position == Rational(1, 3));
    CHECK(kv2[1].multiplicity == 1);
    CHECK(basis_count(kv2) == 5);
    CHECK(basis_count(kv2) == SplineSpaceSpec(2, 1, 3).dimension());

    // coincident broken knot carries multiplicity p - min(k, s)
    BrokenSpec broken(SplineSpaceSpec(2, -1, 2), {Rational(1, 2)}, {0});
    auto kvb = knot_vector(broken);
    REQUIRE(kvb.size() == 3);
    CHECK(kvb[1].position == Rational(1, 2));
    CHECK(kvb[1].multiplicity == 3);
    CHECK(basis_count(kvb) == broken.dimension());

    // off-grid broken knot inserted with its own multiplicity
    BrokenSpec off(SplineSpaceSpec(2, 1, 2), {Rational(1, 3)}, {-1});
    auto kvo = knot_vector(off);
    REQUIRE(kvo.size() == 4);
    CHECK(kvo[1].position == Rational(1, 3));
    CHECK(kvo[1].multiplicity == 3);
    CHECK(basis_count(kvo) == off.dimension());
}

TEST_CASE("knot bookkeeping across a sweep") {
    for (int p = 0; p <= 10; ++p)
        for (int k = -1; k <= p - 1; ++k)
            for (int n = 1; n <= 12; ++n) {
                SplineSpaceSpec s(p, k, n);
                CHECK(basis_count(knot_vector(s)) == s.dimension());
            }
}

TEST_CASE("json round trips") {
    SplineSpaceSpec s(3, 0, 7);
    SplineSpaceSpec s2 = spline_spec_from_json(to_json(s));
    CHECK(s2.degree == 3);
    CHECK(s2.smoothness == 0);
    CHECK(s2.segments == 7);

    BrokenSpec b(SplineSpaceSpec(2, -1, 4), {Rational(1, 3), Rational(5, 8)}, {-1, 0});
    BrokenSpec b2 = broken_spec_from_json(to_json(b));
    CHECK(b2.base.degree == 2);
    CHECK(b2.breakpoints == b.breakpoints);
    CHECK(b2.smoothness_list == b.smoothness_list);
    CHECK(to_json(b2) == to_json(b));
}
