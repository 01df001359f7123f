#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "splinepower/quadrature.hpp"
#include "splinepower/rational.hpp"

namespace splinepower {

/// Partition of [0,1] with exact rational breakpoints (double and 80-bit
/// caches for numeric work).
struct Mesh {
    std::vector<Rational> pts;
    std::vector<double> xd;
    std::vector<long double> xl;

    explicit Mesh(std::vector<Rational> points) : pts(std::move(points)) {
        if (pts.size() < 2) throw std::invalid_argument("Mesh: need at least two points");
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (!(pts[i - 1] < pts[i])) throw std::invalid_argument("Mesh: points must increase");
        xd.reserve(pts.size());
        xl.reserve(pts.size());
        for (const Rational& r : pts) {
            xl.push_back(r.to_long_double());
            xd.push_back(static_cast<double>(xl.back()));
        }
    }

    [[nodiscard]] int cells() const noexcept { return static_cast<int>(pts.size()) - 1; }

    template <class Real>
    [[nodiscard]] Real pos(int i) const {
        if constexpr (sizeof(Real) > sizeof(double))
            return static_cast<Real>(xl[static_cast<std::size_t>(i)]);
        else
            return static_cast<Real>(xd[static_cast<std::size_t>(i)]);
    }

    template <class Real>
    [[nodiscard]] Real width(int c) const {
        return pos<Real>(c + 1) - pos<Real>(c);
    }

    /// Uniform mesh with `cells` cells.
    static Mesh uniform(int cells);

    /// Uniform n-cell mesh refined `factor` times per cell, with optional
    /// extra exact points merged in.
    static Mesh refined(int n, int factor, std::span<const Rational> extra = {});

    /// True when every point of `coarse` appears in this mesh (exact test).
    [[nodiscard]] bool contains(const std::vector<Rational>& coarse) const;
};

/// Piecewise polynomial stored per cell in the orthonormal scaled-Legendre
/// basis phi_{c,j}(x) = sqrt((2j+1)/h_c) P_j(2u - 1), u the local coordinate.
/// The L2 mass matrix of this basis is the identity, so norms are plain
/// coefficient norms and degree truncation is the exact L2 projection.
template <class Real>
struct PiecewisePoly {
    std::shared_ptr<const Mesh> mesh;
    int deg = 0;
    std::vector<Real> c;  // cell-major, (deg+1) per cell

    PiecewisePoly() = default;
    PiecewisePoly(std::shared_ptr<const Mesh> m, int degree)
        : mesh(std::move(m)),
          deg(degree),
          c(static_cast<std::size_t>(mesh->cells()) * (degree + 1), Real(0)) {}

    [[nodiscard]] int cells() const { return mesh->cells(); }
    [[nodiscard]] Real* cell(int i) { return c.data() + static_cast<std::size_t>(i) * (deg + 1); }
    [[nodiscard]] const Real* cell(int i) const {
        return c.data() + static_cast<std::size_t>(i) * (deg + 1);
    }

    [[nodiscard]] Real norm() const {
        long double s = 0;
        for (Real v : c) s += static_cast<long double>(v) * v;
        return static_cast<Real>(std::sqrt(s));
    }

    [[nodiscard]] Real eval(Real x) const {
        int cidx = locate(x);
        const Real a = mesh->pos<Real>(cidx), h = mesh->width<Real>(cidx);
        const Real t = 2 * (x - a) / h - 1;
        const Real* cc = cell(cidx);
        // Legendre recurrence with the orthonormal scaling.
        Real p0 = 1, p1 = t, acc = cc[0] * std::sqrt(Real(1) / h);
        if (deg >= 1) acc += cc[1] * std::sqrt(Real(3) / h) * t;
        for (int j = 2; j <= deg; ++j) {
            Real p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
            acc += cc[j] * std::sqrt(Real(2 * j + 1) / h) * p2;
            p0 = p1;
            p1 = p2;
        }
        return acc;
    }

    /// K: antiderivative from 0. Degree rises by one.
    [[nodiscard]] PiecewisePoly antiderivative() const {
        PiecewisePoly out(mesh, deg + 1);
        std::vector<Real> raw(static_cast<std::size_t>(deg + 2));
        Real running(0);  // integral over [0, cell start)
        for (int ci = 0; ci < cells(); ++ci) {
            const Real h = mesh->width<Real>(ci);
            const Real* in = cell(ci);
            std::fill(raw.begin(), raw.end(), Real(0));
            // Unnormalized Legendre coefficients a_j = c_j sqrt((2j+1)/h);
            // within-cell antiderivative (local l-basis), plus the running
            // constant: int_0^u l_0 = (l_0+l_1)/2, int_0^u l_j =
            // (l_{j+1}-l_{j-1})/(2(2j+1)).
            const Real a0 = in[0] * std::sqrt(Real(1) / h);
            raw[0] += h * a0 / 2;
            raw[1] += h * a0 / 2;
            for (int j = 1; j <= deg; ++j) {
                const Real aj = in[j] * std::sqrt(Real(2 * j + 1) / h);
                const Real f = h * aj / Real(2 * (2 * j + 1));
                raw[static_cast<std::size_t>(j) + 1] += f;
                raw[static_cast<std::size_t>(j) - 1] -= f;
            }
            raw[0] += running;
            Real* o = out.cell(ci);
            for (int j = 0; j <= deg + 1; ++j) o[j] = raw[static_cast<std::size_t>(j)] * std::sqrt(h / Real(2 * j + 1));
            running += std::sqrt(h) * in[0];  // cell integral
        }
        return out;
    }

    /// K*: x -> int_x^1, the L2 adjoint of the antiderivative.
    [[nodiscard]] PiecewisePoly adjoint_antiderivative() const {
        Real total(0);
        for (int ci = 0; ci < cells(); ++ci)
            total += std::sqrt(mesh->width<Real>(ci)) * cell(ci)[0];
        PiecewisePoly out = antiderivative();
        for (auto& v : out.c) v = -v;
        for (int ci = 0; ci < cells(); ++ci)
            out.cell(ci)[0] += total * std::sqrt(mesh->width<Real>(ci));
        return out;
    }

    /// Exact L2 projection onto per-cell degree <= new_deg.
    void truncate(int new_deg) {
        if (new_deg >= deg) return;
        std::vector<Real> nc(static_cast<std::size_t>(cells()) * (new_deg + 1));
        for (int ci = 0; ci < cells(); ++ci) {
            const Real* in = cell(ci);
            for (int j = 0; j <= new_deg; ++j)
                nc[static_cast<std::size_t>(ci) * (new_deg + 1) + j] = in[j];
        }
        deg = new_deg;
        c = std::move(nc);
    }

    /// L2-best representation of a function sampled at `points` Gauss nodes
    /// per cell (exact when f is piecewise polynomial of degree
    /// <= 2*points-1-deg on this mesh).
    static PiecewisePoly from_function(std::shared_ptr<const Mesh> mesh, int degree,
                                       const std::function<Real(Real)>& f, int points) {
        PiecewisePoly out(std::move(mesh), degree);
        const GaussRule& rule = gauss_rule(points);
        std::vector<Real> leg(static_cast<std::size_t>(degree) + 1);
        for (int ci = 0; ci < out.cells(); ++ci) {
            const Real a = out.mesh->template pos<Real>(ci);
            const Real h = out.mesh->template width<Real>(ci);
            Real* o = out.cell(ci);
            for (int g = 0; g < rule.size(); ++g) {
                const Real u = rule.node<Real>(g);
                const Real fv = f(a + h * u) * rule.weight<Real>(g) * h;
                legendre_row(u, degree, h, leg);
                for (int j = 0; j <= degree; ++j) o[j] += fv * leg[static_cast<std::size_t>(j)];
            }
        }
        return out;
    }

    /// Values of the orthonormal basis at local coordinate u in [0,1].
    static void legendre_row(Real u, int degree, Real h, std::vector<Real>& out) {
        const Real t = 2 * u - 1;
        Real p0 = 1, p1 = t;
        out[0] = std::sqrt(Real(1) / h);
        if (degree >= 1) out[1] = std::sqrt(Real(3) / h) * t;
        for (int j = 2; j <= degree; ++j) {
            Real p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
            out[static_cast<std::size_t>(j)] = std::sqrt(Real(2 * j + 1) / h) * p2;
            p0 = p1;
            p1 = p2;
        }
    }

private:
    [[nodiscard]] int locate(Real x) const {
        const auto& xs = mesh->xd;
        int lo = 0, hi = cells() - 1;
        const double xv = static_cast<double>(x);
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (xs[static_cast<std::size_t>(mid)] <= xv)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }
};

using PiecewisePolynomial = PiecewisePoly<double>;

}  // namespace splinepower
