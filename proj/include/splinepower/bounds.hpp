#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splinepower/errors.hpp"
#include "splinepower/spaces.hpp"

namespace splinepower {

/// Two-sided closed-form bracket on the sharp constant C_{p,k,n}:
/// lower = (p+1)!/((2p+2)! sqrt(2p+3)) n^{-p-1} (k-independent),
/// upper = (n pi)^{-p-1}. Stored in log domain; the plain accessors can
/// underflow to 0 for extreme p*log(n).
struct BoundBracket {
    int p, k, n;
    double log_lower, log_upper;

    [[nodiscard]] double lower() const;
    [[nodiscard]] double upper() const;
};

[[nodiscard]] BoundBracket bracket(int p, int k, int n);

/// The base ratio B_{p,k,n} = (4/(e pi)) n (p+1) / ((p-k)(n-1)+1).
[[nodiscard]] double ratio_base(int p, int k, int n);

/// Theta_{p,k,n} = B^{p+1} sqrt(4p+6), evaluated as
/// exp((p+1) log B + log(4p+6)/2) in extended (80-bit) precision.
[[nodiscard]] double ratio_theta(int p, int k, int n);
[[nodiscard]] double log_ratio_theta(int p, int k, int n);

/// Lower-order variant: B^q = (4/(e pi)) n (q+1) / ((q-k)(n-1)+1+q-p),
/// Theta^q = (B^q)^{q+1} sqrt(4q+6). Throws DenominatorNonpositiveError in
/// the m < 1 regime.
[[nodiscard]] double ratio_theta_lower_order(int p, int q, int k, int n);

/// Broken-space variant with numerator (n+T)(p+1) and denominator equal to
/// the matched m of the enriched spaces; the square-root factor reads with
/// q = p. Throws DenominatorNonpositiveError when the denominator is <= 0.
[[nodiscard]] double ratio_theta_broken(const BrokenSpec& spec);

/// Asymptotes (p*, n*) of the level set B_{p,k,n} = (4/(e pi)) gamma:
/// p* = (gamma k + 1)/(gamma - 1), n* = gamma/(gamma - 1). Self-checks the
/// hyperbola identity on sampled level-set points to 1e-9.
[[nodiscard]] std::pair<double, double> hyperbola_level_set(double gamma, int k);

/// p-threshold above which Theta_{p,-1,n} is strictly decreasing in p.
/// Only n = 2 (about 21.14) and n = 3 (about 1.33) are covered.
[[nodiscard]] double theta_decreasing_threshold_dg(int n);

enum class Verdict { SmoothBetter, Inconclusive, SameSpace };

[[nodiscard]] std::string to_string(Verdict v);

/// Comparison of the maximally smooth space against the same-dimension space
/// of smoothness k at one (p,k,n) point, decided by Theta and the coincidence
/// rule (k = p-1, n = 1, or p = 0 mean the two spaces coincide).
struct RatioReport {
    int p, k, n, matched_m;
    double B, theta;
    Verdict verdict;
};

[[nodiscard]] RatioReport ratio_report(int p, int k, int n);

/// IGA-FEM comparison (k = 0): SmoothBetter exactly on
/// {p=3, n>=7} U {p in {4,5}, n>=4} U {6<=p<=37, n>=3} U {p>=38, n>=2};
/// SameSpace for n = 1 or p in {0,1}; Inconclusive otherwise (all of p=2).
[[nodiscard]] Verdict verdict_fem(int p, int n);

/// IGA-DG comparison (k = -1): SmoothBetter on {n>=3, 1<=p<=17} U {n>=2, p>=18};
/// SameSpace for n = 1 or p = 0; Inconclusive on {n=2, 1<=p<=17}.
[[nodiscard]] Verdict verdict_dg(int p, int n);

enum class RegionKind { Fem, Dg };

struct RegionCell {
    int p, n;
    Verdict verdict;
    std::optional<double> theta;                 // absent where k is out of range
    std::optional<std::pair<int, int>> base;     // certified base point (p_bar, n_bar)
};

/// Full verdict matrix for p in [0, p_max], n in [1, n_max], row-major with p
/// outer and n inner. Every SmoothBetter cell carries the first base point of
/// the check list whose monotonicity closure reaches it.
struct RegionGrid {
    RegionKind kind;
    int p_max, n_max;
    std::vector<RegionCell> cells;

    [[nodiscard]] const RegionCell& at(int p, int n) const;
};

[[nodiscard]] RegionGrid region_grid(RegionKind kind, int p_max, int n_max);

/// CSV with columns p,n,verdict,theta,base_point; byte-stable.
[[nodiscard]] std::string region_to_csv(const RegionGrid& grid);
/// JSON matrix; numbers emitted as strings at full precision.
[[nodiscard]] std::string region_to_json(const RegionGrid& grid);

/// Smallest real n for which monotone propagation from the base pair
/// (q, k, n_bar) certifies Theta^q_{p,k,n,q} < 1: n >= ((p-k-1)/(q-k-1)) n_bar.
[[nodiscard]] double certified_min_n_lower_order(int p, int q, int k, int nbar);

/// Broken analogue: n >= (1 + (T(p-k) - sum(sigma_i+s_i-p))/(p-k-1)) n_bar - T.
/// The sigma_i are evaluated for the spec's own n.
[[nodiscard]] double certified_min_n_broken(const BrokenSpec& spec, int nbar);

}  // namespace splinepower
