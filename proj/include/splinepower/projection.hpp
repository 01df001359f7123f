#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "splinepower/bspline.hpp"
#include "splinepower/linalg.hpp"
#include "splinepower/piecewise.hpp"
#include "splinepower/quadrature.hpp"

namespace splinepower {

/// L2 projection machinery for one spline space: banded Gram matrix (assembled
/// with the degree-exact Gauss rule), Cholesky factorization with iterative
/// refinement, and couplings to finer piecewise-Legendre meshes.
template <class Real>
class ProjectionEngine {
public:
    explicit ProjectionEngine(std::span<const Knot> knots);

    [[nodiscard]] const BSplineBasisT<Real>& basis() const noexcept { return basis_; }
    [[nodiscard]] const SymBanded<Real>& gram() const noexcept { return gram_; }
    [[nodiscard]] double condition() const noexcept { return condition_; }
    [[nodiscard]] double worst_residual() const noexcept { return worst_residual_; }

    /// Per-fine-cell expansion of every live B-spline in the orthonormal
    /// cell-Legendre basis. The mesh must contain all breakpoints.
    struct Coupling {
        std::shared_ptr<const Mesh> mesh;
        int p;                      // spline degree
        std::vector<int> first;     // first live basis index per cell
        std::vector<Real> beta;     // cell-major [(p+1) basis] x [(p+1) modes]
    };

    [[nodiscard]] Coupling couple(std::shared_ptr<const Mesh> mesh) const;

    /// y := y - P y where P is the L2 projection onto the spline space.
    void remove_projection(const Coupling& c, PiecewisePoly<Real>& y) const;

    /// Load vector <y, B_i>.
    [[nodiscard]] std::vector<Real> loads(const Coupling& c, const PiecewisePoly<Real>& y) const;

    /// Gram solve with refinement; tracks the worst relative residual.
    [[nodiscard]] std::vector<Real> solve(std::vector<Real> b) const;

private:
    BSplineBasisT<Real> basis_;
    SymBanded<Real> gram_;
    BandedCholesky<Real> chol_;
    double condition_ = 0;
    mutable double worst_residual_ = 0;
};

/// Function to project. `declared_degree` flags piecewise-polynomial inputs so
/// quadrature exactness can be checked; `exact` switches to the fully rational
/// pipeline (error norm free of cancellation).
struct Integrand {
    std::function<double(double)> f;
    std::optional<int> declared_degree;
    std::optional<Polynomial> exact;
};

struct ProjectionResult {
    std::vector<double> coefficients;
    double error_norm = 0;
    bool quadrature_insufficient = false;
    double condition = 0;
    double solve_residual = 0;
};

ProjectionResult l2_project(const SplineSpaceSpec& space, const Integrand& f, int oversample = 4);
ProjectionResult l2_project(const BrokenSpec& space, const Integrand& f, int oversample = 4);

struct ExactProjection {
    std::vector<Rational> coefficients;
    Rational error_sq;
};

/// Fully rational projection of a polynomial: exact piecewise B-spline
/// representation, rational Gram, banded LDL^T, error^2 = |f|^2 - b.c.
ExactProjection l2_project_exact(std::span<const Knot> knots, const Polynomial& f);

/// Dense Gram matrix for inspection.
std::vector<std::vector<double>> gram_matrix(const SplineSpaceSpec& space);
std::vector<std::vector<double>> gram_matrix(const BrokenSpec& space);
std::string matrix_to_text(const std::vector<std::vector<double>>& m);

}  // namespace splinepower
