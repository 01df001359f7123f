#include "splinepower/estimate.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "splinepower/errors.hpp"
#include "splinepower/projection.hpp"

namespace splinepower {

namespace {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// One refinement level: power iteration on the whitened normal operator
/// B = P_T (K*)^(q+1) (I-P) K^(q+1) restricted to the trial space T
/// (degree trial_deg on the coupled mesh). Returns the top singular value
/// of (I-P) K^(q+1) over T.
template <class Real>
double level_sigma(const ProjectionEngine<Real>& engine,
                   const typename ProjectionEngine<Real>::Coupling& coupling,
                   std::shared_ptr<const Mesh> mesh, int trial_deg, int q,
                   const EstimateOptions& opts) {
    PiecewisePoly<Real> v(mesh, trial_deg);
    std::fill(v.c.begin(), v.c.end(), Real(1));  // deterministic seed
    {
        const Real nv = v.norm();
        for (Real& x : v.c) x /= nv;
    }
    long double lam = 0, lam_prev = -1;
    for (int it = 0; it < opts.max_power_iterations; ++it) {
        PiecewisePoly<Real> w = v;
        for (int t = 0; t <= q; ++t) w = w.antiderivative();
        engine.remove_projection(coupling, w);
        lam = static_cast<long double>(w.norm());
        lam *= lam;  // |A v|^2 with |v| = 1
        for (int t = 0; t <= q; ++t) w = w.adjoint_antiderivative();
        w.truncate(trial_deg);
        const Real nw = w.norm();
        if (!(nw > Real(0))) break;
        v = std::move(w);
        for (Real& x : v.c) x /= nw;
        if (lam_prev >= 0 && std::abs(lam - lam_prev) <= opts.rayleigh_tolerance * lam) break;
        lam_prev = lam;
    }
    return static_cast<double>(std::sqrt(lam));
}

template <class Real>
ConstantEstimate estimate_core(const std::vector<Knot>& knots, int p, int k, int n, int q,
                               std::span<const Rational> extra_points,
                               const EstimateOptions& opts) {
    ConstantEstimate out;
    out.p = p;
    out.k = k;
    out.n = n;
    out.q = q;
    ProjectionEngine<Real> engine{std::span<const Knot>(knots)};
    out.condition = engine.condition();
    const int trial_deg = p + 2;
    double prev = 0;
    for (int level = 0; level < std::max(1, opts.max_refine); ++level) {
        const int factor = 1 << level;
        auto mesh = std::make_shared<const Mesh>(Mesh::refined(n, factor, extra_points));
        auto coupling = engine.couple(mesh);
        const double sigma = level_sigma<Real>(engine, coupling, mesh, trial_deg, q, opts);
        out.refinement_trace.emplace_back(factor, sigma);
        out.value = sigma;
        if (level > 0) {
            out.residual = std::abs(sigma - prev) / (sigma > 0 ? sigma : 1.0);
            if (out.residual < opts.tolerance) {
                out.converged = true;
                break;
            }
        }
        prev = sigma;
    }
    out.ill_conditioned = engine.worst_residual() > 1e-8;
    return out;
}

ConstantEstimate dispatch(const std::vector<Knot>& knots, int p, int k, int n, int q,
                          std::span<const Rational> extra, const EstimateOptions& opts) {
    if (q < 0 || q > p)
        throw std::invalid_argument("estimate_constant: need 0 <= q <= p");
    if (p > 10 && !opts.extended_precision)
        throw ExtendedPrecisionRequiredError(
            "estimate_constant: p > 10 requires the extended-precision flag");
    if (opts.extended_precision)
        return estimate_core<long double>(knots, p, k, n, q, extra, opts);
    return estimate_core<double>(knots, p, k, n, q, extra, opts);
}

}  // namespace

ConstantEstimate estimate_constant(const SplineSpaceSpec& space, int q,
                                   const EstimateOptions& opts) {
    const auto knots = knot_vector(space);
    return dispatch(knots, space.degree, space.smoothness, space.segments, q, {}, opts);
}

ConstantEstimate estimate_constant(int p, int k, int n, int q, const EstimateOptions& opts) {
    return estimate_constant(SplineSpaceSpec(p, k, n), q, opts);
}

ConstantEstimate estimate_constant_broken(const BrokenSpec& space, int q,
                                          const EstimateOptions& opts) {
    if (q != space.base.degree)
        throw std::invalid_argument(
            "estimate_constant_broken: the broken norm is defined for q = p");
    const auto knots = knot_vector(space);
    return dispatch(knots, space.base.degree, space.base.smoothness, space.base.segments, q,
                    std::span<const Rational>(space.breakpoints), opts);
}

std::string ConstantEstimate::to_json() const {
    std::string out = "{\"p\":" + std::to_string(p) + ",\"k\":" + std::to_string(k) +
                      ",\"n\":" + std::to_string(n) + ",\"q\":" + std::to_string(q) +
                      ",\"value\":\"" + fmt_full(value) + "\",\"converged\":" +
                      (converged ? "true" : "false") + ",\"residual\":\"" + fmt_full(residual) +
                      "\",\"condition\":\"" + fmt_full(condition) + "\",\"ill_conditioned\":" +
                      (ill_conditioned ? "true" : "false") + ",\"trace\":[";
    for (std::size_t i = 0; i < refinement_trace.size(); ++i) {
        if (i) out += ",";
        out += "{\"factor\":" + std::to_string(refinement_trace[i].first) + ",\"estimate\":\"" +
               fmt_full(refinement_trace[i].second) + "\"}";
    }
    out += "]}";
    return out;
}

}  // namespace splinepower
