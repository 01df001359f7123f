#include <doctest.h>

#include <cmath>
#include <random>

#include "splinepower/bspline.hpp"
#include "splinepower/piecewise.hpp"
#include "splinepower/projection.hpp"
#include "splinepower/quadrature.hpp"

using namespace splinepower;

namespace {

Rational big_factorial(int n) {
    BigInt r(1);
    for (int i = 2; i <= n; ++i) r *= BigInt(i);
    return Rational(r, BigInt(1));
}

/// Closed-form squared error of projecting x^{p+1} onto S^p_{-1,n}:
/// ((p+1)!^2/(2p+2)!)^2 / ((2p+3) n^{2p+2}).
Rational worst_case_error_sq(int p, int n) {
    Rational c = big_factorial(p + 1) * big_factorial(p + 1) / big_factorial(2 * p + 2);
    Rational npow(1);
    for (int i = 0; i < 2 * p + 2; ++i) npow *= Rational(n);
    return c * c / (Rational(2 * p + 3) * npow);
}

Polynomial monomial(int degree) {
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
    c.back() = Rational(1);
    return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("gauss rules integrate monomials exactly") {
    for (int m = 1; m <= 24; m += 3) {
        const GaussRule& rule = gauss_rule(m);
        for (int d = 0; d <= 2 * m - 1; d += std::max(1, m / 2)) {
            long double s = 0;
            for (int g = 0; g < rule.size(); ++g)
                s += rule.w[static_cast<std::size_t>(g)] * std::pow(rule.x[static_cast<std::size_t>(g)], static_cast<long double>(d));
            CHECK(static_cast<double>(s) == doctest::Approx(1.0 / (d + 1)).epsilon(1e-14));
        }
    }
}

TEST_CASE("bspline point evaluation") {
    // hats on two cells: middle hat peaks at 1/2
    CHECK(bspline_eval(SplineSpaceSpec(1, 0, 2), 1, 0.5) == doctest::Approx(1.0));
    CHECK(bspline_eval(SplineSpaceSpec(1, 0, 2), 0, 0.0) == doctest::Approx(1.0));
    CHECK(bspline_eval(SplineSpaceSpec(1, 0, 2), 2, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS(static_cast<void>(bspline_eval(SplineSpaceSpec(1, 0, 2), 3, 0.5)));

    // partition of unity at random points, uniform and broken
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    SplineSpaceSpec s(3, 1, 5);
    BrokenSpec b(SplineSpaceSpec(2, 0, 4), {Rational(1, 3), Rational(1, 2)}, {-1, 0});
    for (int t = 0; t < 100; ++t) {
        const double x = unif(rng);
        double sum_s = 0, sum_b = 0;
        for (int i = 0; i < s.dimension(); ++i) sum_s += bspline_eval(s, i, x);
        for (int i = 0; i < b.dimension(); ++i) sum_b += bspline_eval(b, i, x);
        CHECK(sum_s == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(sum_b == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("bspline smoothness at the shared knot") {
    // first-derivative jump probe across x = 1/2
    auto jump = [](const SplineSpaceSpec& space, int i) {
        const double eps = 1e-6;
        const double right =
            (bspline_eval(space, i, 0.5 + eps) - bspline_eval(space, i, 0.5)) / eps;
        const double left =
            (bspline_eval(space, i, 0.5) - bspline_eval(space, i, 0.5 - eps)) / eps;
        return right - left;
    };
    SplineSpaceSpec rough(2, 0, 2);  // C^0: kinks allowed
    double max_jump = 0;
    for (int i = 0; i < rough.dimension(); ++i) max_jump = std::max(max_jump, std::abs(jump(rough, i)));
    CHECK(max_jump > 0.5);

    SplineSpaceSpec smooth(2, 1, 2);  // C^1: derivative continuous
    for (int i = 0; i < smooth.dimension(); ++i) CHECK(std::abs(jump(smooth, i)) < 1e-4);
}

TEST_CASE("exact piecewise representation matches Cox-de Boor") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& knots :
         {knot_vector(SplineSpaceSpec(3, 1, 4)),
          knot_vector(BrokenSpec(SplineSpaceSpec(2, -1, 3), {Rational(2, 5)}, {0}))}) {
        const auto pieces = bspline_exact_pieces(knots);
        BSplineBasis basis{std::span<const Knot>(knots)};
        REQUIRE(static_cast<int>(pieces.size()) == basis.dimension());
        for (int t = 0; t < 25; ++t) {
            // dyadic sample point, exactly representable in both worlds
            const long long ticks = static_cast<long long>(unif(rng) * (1 << 20));
            const Rational xr(ticks, 1 << 20);
            const double x = xr.to_double();
            const int span = basis.find_span(x);
            for (int i = 0; i < basis.dimension(); ++i) {
                const auto& piece = pieces[static_cast<std::size_t>(i)][static_cast<std::size_t>(span)];
                const double exact = piece.is_zero() ? 0.0 : piece.eval(xr).to_double();
                CHECK(exact == doctest::Approx(basis.eval_one(i, x)).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("gram matrices") {
    // piecewise constants on four cells
    auto g0 = gram_matrix(SplineSpaceSpec(0, -1, 4));
    REQUIRE(g0.size() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(g0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                  doctest::Approx(i == j ? 0.25 : 0.0).epsilon(1e-15));

    // hats on one cell: [[1/3, 1/6], [1/6, 1/3]]
    auto g1 = gram_matrix(SplineSpaceSpec(1, 0, 1));
    REQUIRE(g1.size() == 2);
    CHECK(g1[0][0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(g1[0][1] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(g1[1][1] == doctest::Approx(1.0 / 3).epsilon(1e-15));

    // row sums equal integrals of the basis functions (load of f == 1)
    SplineSpaceSpec s(3, 0, 5);
    auto g = gram_matrix(s);
    Integrand one{[](double) { return 1.0; }, 0, {}};
    auto proj = l2_project(s, one);
    // reproduction of constants: error tiny and coefficients near 1
    CHECK(proj.error_norm < 1e-13);
    // compare row sums against quadrature loads of 1
    const auto kv = knot_vector(SplineSpaceSpec(3, 0, 5));
    ProjectionEngine<double> engine{std::span<const Knot>(kv)};
    auto mesh = std::make_shared<const Mesh>(Mesh::refined(5, 1));
    auto coupling = engine.couple(mesh);
    PiecewisePolynomial onepoly(mesh, 0);
    for (int ci = 0; ci < onepoly.cells(); ++ci)
        onepoly.cell(ci)[0] = std::sqrt(mesh->width<double>(ci));
    auto loads = engine.loads(coupling, onepoly);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double row = 0;
        for (double v : g[i]) row += v;
        CHECK(row == doctest::Approx(loads[i]).epsilon(1e-13));
    }
}

TEST_CASE("exact gram agrees with quadrature gram") {
    for (const auto& spec : {SplineSpaceSpec(2, 0, 3), SplineSpaceSpec(3, 2, 4)}) {
        const auto knots = knot_vector(spec);
        const auto pieces = bspline_exact_pieces(knots);
        auto gd = gram_matrix(spec);
        const int dim = static_cast<int>(pieces.size());
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Rational acc(0);
                for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
                    const auto& a = pieces[static_cast<std::size_t>(i)][s];
                    const auto& b = pieces[static_cast<std::size_t>(j)][s];
                    if (a.is_zero() || b.is_zero()) continue;
                    acc += (a * b).definite_integral(knots[s].position, knots[s + 1].position);
                }
                CHECK(gd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                      doctest::Approx(acc.to_double()).epsilon(1e-12));
            }
    }
}

TEST_CASE("l2 projection basics") {
    // reproduction: a function already in the space projects to itself
    SplineSpaceSpec s(2, 0, 3);
    Integrand f{[](double x) { return 3.0 * x * x - 2.0 * x + 0.25; }, 2, {}};
    CHECK(l2_project(s, f).error_norm < 1e-13);

    // x^2 onto P_1 on a single cell: error = 1/(6 sqrt 5)
    Integrand x2{[](double x) { return x * x; }, 2, {}};
    const double err = l2_project(SplineSpaceSpec(1, -1, 1), x2).error_norm;
    CHECK(err == doctest::Approx(1.0 / (6.0 * std::sqrt(5.0))).epsilon(1e-12));

    // the same through the exact path: error^2 == 1/180 exactly
    ExactProjection ex = l2_project_exact(knot_vector(SplineSpaceSpec(1, -1, 1)), monomial(2));
    CHECK(ex.error_sq == Rational(1, 180));

    // quadrature insufficiency flag
    Integrand high{[](double x) { return std::pow(x, 9.0); }, 9, {}};
    auto res = l2_project(SplineSpaceSpec(1, -1, 1), high, 1);
    CHECK(res.quadrature_insufficient);

    // projection idempotence: P(Pf) = Pf across the space sweep
    Integrand smooth{[](double x) { return std::sin(3.0 * x) + x; }, {}, {}};
    for (int p = 0; p <= 6; ++p)
        for (int k : {-1, 0, p - 1}) {
            if (k < -1 || k > p - 1) continue;
            for (int n : {1, 4, 8}) {
                SplineSpaceSpec si(p, k, n);
                auto p1 = l2_project(si, smooth);
                const auto knots = knot_vector(si);
                BSplineBasis basis{std::span<const Knot>(knots)};
                Integrand pf{[&](double x) {
                                 double acc = 0;
                                 for (int i = 0; i < basis.dimension(); ++i)
                                     acc += p1.coefficients[static_cast<std::size_t>(i)] *
                                            basis.eval_one(i, x);
                                 return acc;
                             },
                             {},
                             {}};
                auto p2 = l2_project(si, pf);
                CHECK(p2.error_norm < 1e-12);
            }
        }
}

TEST_CASE("worst-case projection of x^{p+1} reproduces the closed form exactly") {
    for (int p = 0; p <= 4; ++p)
        for (int n = 1; n <= 4; ++n) {
            ExactProjection ex =
                l2_project_exact(knot_vector(SplineSpaceSpec(p, -1, n)), monomial(p + 1));
            CHECK(ex.error_sq == worst_case_error_sq(p, n));
        }
    // equivalently: error = coeff * n^{-p-1} * |d^{p+1} x^{p+1}|
    const double err3 = std::sqrt(
        l2_project_exact(knot_vector(SplineSpaceSpec(3, -1, 2)), monomial(4)).error_sq.to_double());
    const double coeff = std::exp(log_lower_coeff(3));
    const double deriv_norm = 24.0;  // (p+1)! for p = 3
    CHECK(err3 == doctest::Approx(coeff * std::pow(2.0, -4.0) * deriv_norm).epsilon(1e-12));
}

TEST_CASE("piecewise poly calculus") {
    auto mesh = std::make_shared<const Mesh>(Mesh::refined(3, 2));
    // f(x) = x on [0,1] as a degree-1 piecewise polynomial
    auto f = PiecewisePolynomial::from_function(mesh, 1, [](double x) { return x; }, 3);
    CHECK(f.eval(0.37) == doctest::Approx(0.37).epsilon(1e-13));
    CHECK(f.norm() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));

    // K f = x^2/2, K* f = (1 - x^2)/2
    auto kf = f.antiderivative();
    CHECK(kf.eval(0.8) == doctest::Approx(0.32).epsilon(1e-13));
    auto ksf = f.adjoint_antiderivative();
    CHECK(ksf.eval(0.8) == doctest::Approx((1.0 - 0.64) / 2).epsilon(1e-13));

    // adjoint identity <Kf, g> = <f, K* g> for random piecewise data
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    PiecewisePolynomial a(mesh, 3), b(mesh, 3);
    for (auto& v : a.c) v = unif(rng);
    for (auto& v : b.c) v = unif(rng);
    auto ka = a.antiderivative();
    auto ksb = b.adjoint_antiderivative();
    // inner products through the orthonormal coefficients at the common degree
    auto dot = [](const PiecewisePolynomial& u, const PiecewisePolynomial& v) {
        PiecewisePolynomial ut = u, vt = v;
        const int d = std::max(u.deg, v.deg);
        long double s = 0;
        for (int ci = 0; ci < ut.cells(); ++ci)
            for (int j = 0; j <= std::min(ut.deg, vt.deg); ++j)
                s += static_cast<long double>(ut.cell(ci)[j]) * vt.cell(ci)[j];
        (void)d;
        return static_cast<double>(s);
    };
    CHECK(dot(ka, b) == doctest::Approx(dot(a, ksb)).epsilon(1e-12));

    // truncation is an orthogonal projection: norm decreases
    PiecewisePolynomial t = ka;
    t.truncate(1);
    CHECK(t.norm() <= ka.norm() + 1e-15);
}

TEST_CASE("matrix text export") {
    auto g = gram_matrix(SplineSpaceSpec(0, -1, 2));
    const std::string text = matrix_to_text(g);
    CHECK(text == "0.5 0\n0 0.5\n");
}
