#include "splinepower/bounds.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "splinepower/polynomial.hpp"

namespace splinepower {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double log_4_over_epi() { return std::log(4.0L) - 1.0L - std::log(kPi); }

long double log_ratio_base(int p, long long n, long long denom) {
    return log_4_over_epi() + std::log(static_cast<long double>(n)) +
           std::log(static_cast<long double>(p + 1)) - std::log(static_cast<long double>(denom));
}

double exp_clamped(long double x) {
    if (x > 11000.0L) return HUGE_VAL;
    if (x < -11500.0L) return 0.0;
    return static_cast<double>(std::exp(x));
}

}  // namespace

double BoundBracket::lower() const { return exp_clamped(log_lower); }
double BoundBracket::upper() const { return exp_clamped(log_upper); }

BoundBracket bracket(int p, int k, int n) {
    SplineSpaceSpec check(p, k, n);
    const long double logn = std::log(static_cast<long double>(n));
    const long double lower =
        static_cast<long double>(log_lower_coeff(p)) - (p + 1) * logn;
    const long double upper = -(p + 1) * (logn + std::log(kPi));
    return BoundBracket{p, k, n, static_cast<double>(lower), static_cast<double>(upper)};
}

double ratio_base(int p, int k, int n) {
    SplineSpaceSpec check(p, k, n);
    const long long denom = static_cast<long long>(p - k) * (n - 1) + 1;
    return static_cast<double>(std::exp(log_ratio_base(p, n, denom)));
}

double log_ratio_theta(int p, int k, int n) {
    SplineSpaceSpec check(p, k, n);
    const long long denom = static_cast<long long>(p - k) * (n - 1) + 1;
    const long double lt = (p + 1) * log_ratio_base(p, n, denom) +
                           0.5L * std::log(static_cast<long double>(4 * p + 6));
    return static_cast<double>(lt);
}

double ratio_theta(int p, int k, int n) { return exp_clamped(log_ratio_theta(p, k, n)); }

double ratio_theta_lower_order(int p, int q, int k, int n) {
    if (q < 0 || q > p) throw std::invalid_argument("ratio_theta_lower_order: need 0 <= q <= p");
    SplineSpaceSpec check(q, k, n);
    const long long denom = static_cast<long long>(q - k) * (n - 1) + 1 + q - p;
    if (denom <= 0)
        throw DenominatorNonpositiveError("ratio denominator " + std::to_string(denom) +
                                          " <= 0 (matched m < 1 regime)");
    const long double lt = (q + 1) * log_ratio_base(q, n, denom) +
                           0.5L * std::log(static_cast<long double>(4 * q + 6));
    return exp_clamped(lt);
}

double ratio_theta_broken(const BrokenSpec& spec) {
    const int p = spec.base.degree, k = spec.base.smoothness, n = spec.base.segments;
    const int T = static_cast<int>(spec.breakpoints.size());
    long long denom = static_cast<long long>(p - k) * (n - 1) + 1;
    for (std::size_t i = 0; i < spec.breakpoints.size(); ++i)
        denom += spec.sigma(i) + spec.smoothness_list[i] - p;
    if (denom <= 0)
        throw DenominatorNonpositiveError("broken ratio denominator " + std::to_string(denom) +
                                          " <= 0");
    const long double lb = log_4_over_epi() + std::log(static_cast<long double>(n + T)) +
                           std::log(static_cast<long double>(p + 1)) -
                           std::log(static_cast<long double>(denom));
    const long double lt = (p + 1) * lb + 0.5L * std::log(static_cast<long double>(4 * p + 6));
    return exp_clamped(lt);
}

std::pair<double, double> hyperbola_level_set(double gamma, int k) {
    if (!(gamma > 1.0)) throw GammaOutOfRangeError("hyperbola_level_set: gamma must exceed 1");
    const double p_star = (gamma * k + 1.0) / (gamma - 1.0);
    const double n_star = gamma / (gamma - 1.0);
    // Residual self-check of the level-set identity on sampled real points.
    const double tail = gamma * (gamma - k - 2.0) / ((gamma - 1.0) * (gamma - 1.0));
    for (int step = 1; step <= 8; ++step) {
        const double p = p_star + 0.5 * step;
        const double denom = (p + 1.0) - gamma * (p - k);
        if (std::abs(denom) < 1e-9) continue;
        const double n = gamma * (1.0 - (p - k)) / denom;
        const double residual = (n - n_star) * (p - p_star) + tail;
        if (std::abs(residual) > 1e-9)
            throw std::logic_error("hyperbola identity residual exceeded 1e-9");
    }
    return {p_star, n_star};
}

double theta_decreasing_threshold_dg(int n) {
    if (n == 2) {
        const long double L = std::log(8.0L / kPi);
        return static_cast<double>((3.0L * L + std::sqrt(L * L + 8.0L)) / (4.0L * (1.0L - L)) -
                                   1.0L);
    }
    if (n == 3) {
        const long double L = std::log(6.0L / kPi);
        return static_cast<double>(0.5L * (1.0L + L) / (1.0L - L) - 1.0L);
    }
    throw std::invalid_argument("theta_decreasing_threshold_dg: only n in {2,3} supported");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SmoothBetter: return "smooth_better";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::SameSpace: return "same_space";
    }
    return "?";
}

RatioReport ratio_report(int p, int k, int n) {
    SplineSpaceSpec spec(p, k, n);
    RatioReport r{};
    r.p = p;
    r.k = k;
    r.n = n;
    r.matched_m = matched_segments(p, k, n);
    r.B = ratio_base(p, k, n);
    r.theta = ratio_theta(p, k, n);
    if (k == p - 1 || n == 1 || p == 0) {
        r.verdict = Verdict::SameSpace;
    } else if (r.theta < 1.0 || (k == 0 && verdict_fem(p, n) == Verdict::SmoothBetter) ||
               (k == -1 && verdict_dg(p, n) == Verdict::SmoothBetter)) {
        r.verdict = Verdict::SmoothBetter;
    } else {
        r.verdict = Verdict::Inconclusive;
    }
    return r;
}

Verdict verdict_fem(int p, int n) {
    if (p < 0 || n < 1) throw std::invalid_argument("verdict_fem: need p >= 0, n >= 1");
    if (n == 1 || p <= 1) return Verdict::SameSpace;
    if ((p == 3 && n >= 7) || ((p == 4 || p == 5) && n >= 4) || (p >= 6 && p <= 37 && n >= 3) ||
        (p >= 38 && n >= 2))
        return Verdict::SmoothBetter;
    return Verdict::Inconclusive;
}

Verdict verdict_dg(int p, int n) {
    if (p < 0 || n < 1) throw std::invalid_argument("verdict_dg: need p >= 0, n >= 1");
    if (n == 1 || p == 0) return Verdict::SameSpace;
    if ((n >= 3 && p >= 1 && p <= 17) || (n >= 2 && p >= 18)) return Verdict::SmoothBetter;
    return Verdict::Inconclusive;
}

namespace {

struct BasePoint {
    int p, n;
    // Coverage shapes differ: for FEM (k = 0) every base extends in both p
    // and n; for DG only the bases backed by p-monotonicity do.
    bool extends_in_p;
    int p_exact;  // when not extending in p, the single covered degree
};

const std::array<BasePoint, 4> kFemBases{{
    {38, 2, true, 0},
    {6, 3, true, 0},
    {4, 4, true, 0},
    {3, 7, true, 0},
}};

const std::array<BasePoint, 7> kDgBases{{
    {1, 3, false, 1},
    {2, 3, true, 0},
    {22, 2, true, 0},
    {18, 2, false, 18},
    {19, 2, false, 19},
    {20, 2, false, 20},
    {21, 2, false, 21},
}};

std::optional<std::pair<int, int>> closure_base(RegionKind kind, int p, int n) {
    if (kind == RegionKind::Fem) {
        for (const BasePoint& b : kFemBases)
            if (p >= b.p && n >= b.n) return std::make_pair(b.p, b.n);
        return std::nullopt;
    }
    for (const BasePoint& b : kDgBases) {
        const bool p_ok = b.extends_in_p ? p >= b.p : p == b.p_exact;
        if (p_ok && n >= b.n) return std::make_pair(b.p, b.n);
    }
    return std::nullopt;
}

}  // namespace

const RegionCell& RegionGrid::at(int p, int n) const {
    if (p < 0 || p > p_max || n < 1 || n > n_max) throw std::out_of_range("RegionGrid::at");
    return cells[static_cast<std::size_t>(p) * n_max + (n - 1)];
}

RegionGrid region_grid(RegionKind kind, int p_max, int n_max) {
    if (p_max < 0 || n_max < 1) throw std::invalid_argument("region_grid: bounds must be >= 1");
    RegionGrid grid{kind, p_max, n_max, {}};
    grid.cells.reserve(static_cast<std::size_t>(p_max + 1) * n_max);
    const int k = kind == RegionKind::Fem ? 0 : -1;
    for (int p = 0; p <= p_max; ++p) {
        for (int n = 1; n <= n_max; ++n) {
            RegionCell cell{};
            cell.p = p;
            cell.n = n;
            cell.verdict = kind == RegionKind::Fem ? verdict_fem(p, n) : verdict_dg(p, n);
            if (k <= p - 1) cell.theta = ratio_theta(p, k, n);
            if (cell.verdict == Verdict::SmoothBetter) cell.base = closure_base(kind, p, n);
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

namespace {

std::string fmt_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string region_to_csv(const RegionGrid& grid) {
    std::string out = "p,n,verdict,theta,base_point\n";
    for (const RegionCell& c : grid.cells) {
        out += std::to_string(c.p) + "," + std::to_string(c.n) + "," + to_string(c.verdict) + ",";
        if (c.theta) out += fmt_sig12(*c.theta);
        out += ",";
        if (c.base) out += std::to_string(c.base->first) + ":" + std::to_string(c.base->second);
        out += "\n";
    }
    return out;
}

std::string region_to_json(const RegionGrid& grid) {
    std::string out = "{\"kind\":\"";
    out += grid.kind == RegionKind::Fem ? "fem" : "dg";
    out += "\",\"p_max\":" + std::to_string(grid.p_max) +
           ",\"n_max\":" + std::to_string(grid.n_max) + ",\"cells\":[";
    bool first = true;
    for (const RegionCell& c : grid.cells) {
        if (!first) out += ",";
        first = false;
        out += "{\"p\":" + std::to_string(c.p) + ",\"n\":" + std::to_string(c.n) +
               ",\"verdict\":\"" + to_string(c.verdict) + "\"";
        if (c.theta) out += ",\"theta\":\"" + fmt_full(*c.theta) + "\"";
        if (c.base)
            out += ",\"base\":\"" + std::to_string(c.base->first) + ":" +
                   std::to_string(c.base->second) + "\"";
        out += "}";
    }
    out += "]}";
    return out;
}

double certified_min_n_lower_order(int p, int q, int k, int nbar) {
    if (q < 0 || q > p) throw std::invalid_argument("certified_min_n_lower_order: need 0 <= q <= p");
    if (k >= q - 1) throw std::invalid_argument("certified_min_n_lower_order: need k < q-1");
    return static_cast<double>(p - k - 1) / static_cast<double>(q - k - 1) * nbar;
}

double certified_min_n_broken(const BrokenSpec& spec, int nbar) {
    const int p = spec.base.degree, k = spec.base.smoothness;
    const int T = static_cast<int>(spec.breakpoints.size());
    if (k >= p - 1) throw std::invalid_argument("certified_min_n_broken: need k < p-1");
    long long sum = 0;
    for (std::size_t i = 0; i < spec.breakpoints.size(); ++i)
        sum += spec.sigma(i) + spec.smoothness_list[i] - p;
    const double factor =
        1.0 + (static_cast<double>(T) * (p - k) - static_cast<double>(sum)) / (p - k - 1);
    return factor * nbar - T;
}

}  // namespace splinepower
