#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "splinepower/projection.hpp"
#include "splinepower/tensor.hpp"

using namespace splinepower;

TEST_CASE("tensor bound plumbing") {
    TensorSpec one({{SplineSpaceSpec(2, 1, 4), SobolevTarget(2)}});
    const double c[] = {0.25};
    const double d[] = {3.0};
    CHECK(tensor_bound(one, c, d) == doctest::Approx(0.75));

    TensorSpec two({{SplineSpaceSpec(2, 1, 4), SobolevTarget(1)},
                    {SplineSpaceSpec(3, 2, 5), SobolevTarget(2)}});
    const double c2[] = {0.1, 0.2};
    const double d2[] = {1.0, 2.0};
    CHECK(tensor_bound(two, c2, d2) == doctest::Approx(0.5));
    CHECK_THROWS(static_cast<void>(tensor_bound(two, c, d)));

    CHECK_THROWS(TensorSpec({}));
    CHECK_THROWS(TensorSpec({{SplineSpaceSpec(2, 1, 4), SobolevTarget(3)}}));  // q > p
}

TEST_CASE("2d projection reproduces tensor polynomials") {
    TensorProjector2D proj(SplineSpaceSpec(2, 1, 3), SplineSpaceSpec(3, 0, 2));
    auto f = [](double x, double y) {
        return (x * x - 0.5 * x + 1.0) * (y * y * y - y + 2.0);
    };
    CHECK(proj.error(f) < 1e-10);
}

TEST_CASE("separable functions reduce to the univariate error") {
    SplineSpaceSpec sx(2, 1, 4), sy(3, 2, 3);
    TensorProjector2D proj(sx, sy);
    auto g = [](double x) { return std::sin(std::numbers::pi * x); };
    const double err2d = proj.error([&](double x, double) { return g(x); });
    Integrand gi{g, {}, {}};
    const double err1d = l2_project(sx, gi).error_norm;
    CHECK(err2d == doctest::Approx(err1d).epsilon(1e-10));
}

TEST_CASE("projection factors commute") {
    TensorProjector2D proj(SplineSpaceSpec(2, 0, 3), SplineSpaceSpec(2, 1, 4));
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        double a = unif(rng), b = unif(rng), c = unif(rng);
        auto f = [=](double x, double y) {
            return a * std::pow(x, 5.0) * y + b * x * y * y * y + c * std::cos(2.0 * x + y);
        };
        const auto xy = proj.coefficients_xy(f);
        const auto yx = proj.coefficients_yx(f);
        REQUIRE(xy.size() == yx.size());
        for (std::size_t i = 0; i < xy.size(); ++i)
            CHECK(xy[i] == doctest::Approx(yx[i]).epsilon(1e-12));
    }
}

TEST_CASE("partial projections are non-expansive") {
    TensorProjector2D proj(SplineSpaceSpec(1, 0, 3), SplineSpaceSpec(2, 1, 3));
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        double a = unif(rng), b = unif(rng);
        auto f = [=](double x, double y) {
            return a * std::sin(3.0 * x) * std::cos(2.0 * y) + b * x * x * y;
        };
        CHECK(proj.partial_y_norm(f) <= proj.norm(f) * (1 + 1e-10));
    }
}

TEST_CASE("sum bound holds for sin x sin y with closed-form constants") {
    SplineSpaceSpec sx(2, 1, 4), sy(2, 1, 4);
    TensorProjector2D proj(sx, sy);
    auto f = [](double x, double y) {
        return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
    };
    const double err = proj.error(f);
    TensorSpec spec({{sx, SobolevTarget(2)}, {sy, SobolevTarget(2)}});
    const double c = std::pow(4.0 * std::numbers::pi, -3.0);
    const double dn = std::pow(std::numbers::pi, 3.0) * 0.5;  // |d^3 sin(pi x)| * |sin(pi y)|
    const double cs[] = {c, c};
    const double dns[] = {dn, dn};
    CHECK(err <= tensor_bound(spec, cs, dns));
}
