#pragma once

#include <span>
#include <string>
#include <vector>

#include "splinepower/errors.hpp"
#include "splinepower/rational.hpp"

namespace splinepower {

/// Descriptor of the uniform spline space of degree p, smoothness k, on n
/// equal segments of [0,1]. k = -1 allows jumps at the internal breakpoints;
/// k = p is rejected (the space would degenerate to global polynomials).
struct SplineSpaceSpec {
    int degree;      // p >= 0
    int smoothness;  // -1 <= k <= p-1
    int segments;    // n >= 1

    SplineSpaceSpec(int p, int k, int n);

    [[nodiscard]] int dimension() const noexcept {
        return (segments - 1) * (degree - smoothness) + degree + 1;
    }
};

[[nodiscard]] int dimension(const SplineSpaceSpec& s) noexcept;

/// Segment count m with dim S^p_{p-1,m} = dim S^p_{k,n}.
[[nodiscard]] int matched_segments(int p, int k, int n);

/// The maximally smooth space of equal dimension.
[[nodiscard]] SplineSpaceSpec matched_smooth(const SplineSpaceSpec& s);

/// Segment count m with dim S^p_{p-1,m} = dim S^q_{k,n} for the degree-q
/// rough space, q <= p. Throws MInvalidError when m < 1 (p exceeded
/// (q-k)(n-1)+q, at which point the smooth space degenerates to P_p).
[[nodiscard]] int matched_segments_lower_order(int p, int q, int k, int n);

/// Spline space enriched at extra breakpoints Xi with per-point smoothness S.
struct BrokenSpec {
    SplineSpaceSpec base;
    std::vector<Rational> breakpoints;  // strictly increasing, inside (0,1)
    std::vector<int> smoothness_list;   // each in {-1, ..., p-1}

    BrokenSpec(SplineSpaceSpec base_spec, std::vector<Rational> xi, std::vector<int> s);

    /// True when breakpoint i coincides with a uniform knot j/n (exact
    /// rational comparison).
    [[nodiscard]] bool on_uniform_grid(std::size_t i) const;

    /// Dimension increment contributed by breakpoint i.
    [[nodiscard]] int sigma(std::size_t i) const;

    [[nodiscard]] int dimension() const;
};

struct BrokenMatch {
    int m;          // the dimension-matched segment count
    int grid_hits;  // #(M cap Xi): uniform m-grid points falling on Xi
};

/// Matched segment count for the enriched spaces. When grid_hits > 0 the
/// matched smooth space has dimension smaller by exactly grid_hits; the
/// returned m is kept as-is and the overlap is reported.
[[nodiscard]] BrokenMatch matched_segments_broken(const BrokenSpec& spec);

/// The enriched maximally smooth partner (base (p, p-1, m), same Xi and S).
[[nodiscard]] BrokenSpec matched_smooth_broken(const BrokenSpec& spec);

/// Approximand regularity H^{q+1}.
struct SobolevTarget {
    int order;  // q >= 0
    explicit SobolevTarget(int q);
};

struct Knot {
    Rational position;
    int multiplicity;
};

/// Open knot vector on [0,1]: boundary multiplicity p+1, internal uniform
/// knots with multiplicity p-k.
[[nodiscard]] std::vector<Knot> knot_vector(const SplineSpaceSpec& s);

/// As above with each breakpoint xi_i at multiplicity p - min(k, s_i); a
/// coincident uniform knot is merged by taking that (larger) multiplicity.
[[nodiscard]] std::vector<Knot> knot_vector(const BrokenSpec& s);

/// Number of B-splines carried by an open knot vector.
[[nodiscard]] int basis_count(std::span<const Knot> knots);

// JSON-compatible record: {"p":int,"k":int,"n":int,
//   "breakpoints":[["num","den"],...],"smoothness":[int,...]}.
[[nodiscard]] std::string to_json(const SplineSpaceSpec& s);
[[nodiscard]] std::string to_json(const BrokenSpec& s);
[[nodiscard]] SplineSpaceSpec spline_spec_from_json(const std::string& text);
[[nodiscard]] BrokenSpec broken_spec_from_json(const std::string& text);

}  // namespace splinepower
