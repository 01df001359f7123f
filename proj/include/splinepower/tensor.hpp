#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "splinepower/spaces.hpp"

namespace splinepower {

/// Tensor-product space: one univariate spline space and Sobolev target per
/// direction, d <= 4.
struct TensorSpec {
    std::vector<std::pair<SplineSpaceSpec, SobolevTarget>> directions;

    explicit TensorSpec(std::vector<std::pair<SplineSpaceSpec, SobolevTarget>> dirs);
    [[nodiscard]] int d() const noexcept { return static_cast<int>(directions.size()); }
};

/// Sum bound: Sigma_i C_i |d_i^{q_i+1} f|. Constants may be sharp estimates
/// or closed-form upper bounds.
[[nodiscard]] double tensor_bound(const TensorSpec& spec, std::span<const double> constants,
                                  std::span<const double> derivative_norms);

using Function2D = std::function<double(double, double)>;

/// Factored 2D projection Pi_x (x) Pi_y on a tensor Gauss grid.
class TensorProjector2D {
public:
    TensorProjector2D(const SplineSpaceSpec& sx, const SplineSpaceSpec& sy, int oversample = 4);
    ~TensorProjector2D();
    TensorProjector2D(TensorProjector2D&&) noexcept;
    TensorProjector2D& operator=(TensorProjector2D&&) noexcept;

    /// Coefficient matrix (row-major Nx x Ny), projecting x first.
    [[nodiscard]] std::vector<double> coefficients_xy(const Function2D& f) const;
    /// Same projection applied y first; equal to coefficients_xy up to roundoff.
    [[nodiscard]] std::vector<double> coefficients_yx(const Function2D& f) const;

    /// |f - Pi_V f| by tensor quadrature.
    [[nodiscard]] double error(const Function2D& f) const;

    /// |(I (x) Pi_y) f|, for the unit-operator-norm check.
    [[nodiscard]] double partial_y_norm(const Function2D& f) const;
    [[nodiscard]] double norm(const Function2D& f) const;

    [[nodiscard]] int nx() const;
    [[nodiscard]] int ny() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper returning only the projection error.
[[nodiscard]] double tensor_project_2d(const SplineSpaceSpec& sx, const SplineSpaceSpec& sy,
                                       const Function2D& f, int oversample = 4);

}  // namespace splinepower
