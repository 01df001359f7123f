#pragma once

#include <span>
#include <vector>

#include "splinepower/polynomial.hpp"
#include "splinepower/spaces.hpp"

namespace splinepower {

/// B-spline basis over an open knot vector with multiplicities, evaluated by
/// the Cox-de Boor triangular scheme. Values at interior knots are right
/// limits; x = 1 evaluates the left limit.
template <class Real>
class BSplineBasisT {
public:
    explicit BSplineBasisT(std::span<const Knot> knots);

    [[nodiscard]] int degree() const noexcept { return p_; }
    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(flat_.size()) - p_ - 1; }
    [[nodiscard]] int span_count() const noexcept { return static_cast<int>(distinct_.size()) - 1; }
    [[nodiscard]] const std::vector<Rational>& breakpoints() const noexcept { return distinct_; }

    [[nodiscard]] int find_span(Real x) const;
    /// Global index of the first (possibly) nonzero basis function on a span.
    [[nodiscard]] int first_basis_on_span(int span) const noexcept { return offset_[static_cast<std::size_t>(span)] - p_; }
    /// Values of the degree+1 basis functions alive on `span` at x.
    void eval_on_span(int span, Real x, std::span<Real> out) const;
    [[nodiscard]] Real eval_one(int index, Real x) const;

    [[nodiscard]] Real span_start(int span) const { return flat_[static_cast<std::size_t>(offset_[static_cast<std::size_t>(span)])]; }
    [[nodiscard]] Real span_width(int span) const {
        return flat_[static_cast<std::size_t>(offset_[static_cast<std::size_t>(span)]) + 1] - span_start(span);
    }

private:
    int p_ = 0;
    std::vector<Real> flat_;         // knots repeated to multiplicity
    std::vector<Rational> distinct_; // distinct knot positions
    std::vector<int> offset_;        // flat index of the last knot <= span start
};

using BSplineBasis = BSplineBasisT<double>;

/// Value of the index-th B-spline of the space at x (right-limit convention
/// at interior knots, left limit at x = 1). Partition of unity holds.
[[nodiscard]] double bspline_eval(const SplineSpaceSpec& space, int index, double x);
[[nodiscard]] double bspline_eval(const BrokenSpec& space, int index, double x);

/// Exact piecewise representation: pieces[i][s] is B_i restricted to span s
/// as a polynomial in the global coordinate, with rational coefficients.
[[nodiscard]] std::vector<std::vector<Polynomial>> bspline_exact_pieces(std::span<const Knot> knots);

}  // namespace splinepower
