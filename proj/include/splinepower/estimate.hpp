#pragma once

#include <string>
#include <utility>
#include <vector>

#include "splinepower/spaces.hpp"

namespace splinepower {

/// Numerically estimated sharp constant C_{p,k,n,q}. Estimates are suprema of
/// the Rayleigh quotient over nested trial spaces, so the refinement trace is
/// nondecreasing and converges to the constant from below.
struct ConstantEstimate {
    double value = 0;
    int p = 0, k = 0, n = 0, q = 0;
    std::vector<std::pair<int, double>> refinement_trace;  // (mesh factor, estimate)
    bool converged = false;
    double residual = 0;  // last relative increment between refinement levels
    double condition = 0;
    bool ill_conditioned = false;

    [[nodiscard]] std::string to_json() const;
};

struct EstimateOptions {
    double tolerance = 1e-6;
    int max_refine = 6;            // mesh factors 1, 2, ..., 2^(max_refine-1)
    bool extended_precision = false;
    int max_power_iterations = 10000;
    double rayleigh_tolerance = 1e-10;
};

/// Largest singular value of (I - P) K^{q+1} over trial functions in
/// discontinuous piecewise polynomials of degree p+2 on refinements of the
/// knot mesh (K antidifferentiates from 0). Degrees above 10 require
/// extended_precision.
ConstantEstimate estimate_constant(int p, int k, int n, int q, const EstimateOptions& opts = {});
ConstantEstimate estimate_constant(const SplineSpaceSpec& space, int q,
                                   const EstimateOptions& opts = {});

/// Broken variant (q must equal p; the trial mesh includes the breakpoints,
/// so trial derivatives range over the piecewise unit ball of the Xi-norm).
ConstantEstimate estimate_constant_broken(const BrokenSpec& space, int q,
                                          const EstimateOptions& opts = {});

}  // namespace splinepower
