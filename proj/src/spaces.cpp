#include "splinepower/spaces.hpp"

#include <algorithm>

#include <json.hpp>

namespace splinepower {

SplineSpaceSpec::SplineSpaceSpec(int p, int k, int n) : degree(p), smoothness(k), segments(n) {
    if (p < 0) throw std::invalid_argument("SplineSpaceSpec: degree must be >= 0");
    if (k < -1 || k > p - 1)
        throw std::invalid_argument("SplineSpaceSpec: smoothness must satisfy -1 <= k <= p-1");
    if (n < 1) throw std::invalid_argument("SplineSpaceSpec: segments must be >= 1");
}

int dimension(const SplineSpaceSpec& s) noexcept { return s.dimension(); }

int matched_segments(int p, int k, int n) {
    SplineSpaceSpec check(p, k, n);  // validates the triple
    return (n - 1) * (p - k) + 1;
}

SplineSpaceSpec matched_smooth(const SplineSpaceSpec& s) {
    return SplineSpaceSpec(s.degree, s.degree - 1,
                           matched_segments(s.degree, s.smoothness, s.segments));
}

int matched_segments_lower_order(int p, int q, int k, int n) {
    if (q < 0 || q > p) throw std::invalid_argument("matched_segments_lower_order: need 0 <= q <= p");
    SplineSpaceSpec check(q, k, n);  // rough space must be valid
    const int m = (q - k) * (n - 1) + 1 + q - p;
    if (m < 1)
        throw MInvalidError("matched m = " + std::to_string(m) +
                            " < 1: degree p exceeds (q-k)(n-1)+q");
    return m;
}

BrokenSpec::BrokenSpec(SplineSpaceSpec base_spec, std::vector<Rational> xi, std::vector<int> s)
    : base(base_spec), breakpoints(std::move(xi)), smoothness_list(std::move(s)) {
    if (breakpoints.size() != smoothness_list.size())
        throw std::invalid_argument("BrokenSpec: breakpoints and smoothness list differ in length");
    const Rational zero(0), one(1);
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!(zero < breakpoints[i] && breakpoints[i] < one))
            throw std::invalid_argument("BrokenSpec: breakpoints must lie in (0,1)");
        if (i > 0 && !(breakpoints[i - 1] < breakpoints[i]))
            throw std::invalid_argument("BrokenSpec: breakpoints must be strictly increasing");
        if (smoothness_list[i] < -1 || smoothness_list[i] > base.degree - 1)
            throw std::invalid_argument("BrokenSpec: each s_i must satisfy -1 <= s_i <= p-1");
    }
}

bool BrokenSpec::on_uniform_grid(std::size_t i) const {
    // xi = a/b falls on {j/n} iff n*a is divisible by b (0 < xi < 1 already holds).
    const Rational& xi = breakpoints.at(i);
    return (xi.num() * BigInt(base.segments) % xi.den()).is_zero();
}

int BrokenSpec::sigma(std::size_t i) const {
    const int p = base.degree, k = base.smoothness, si = smoothness_list.at(i);
    if (on_uniform_grid(i)) return std::max(k - si, 0);
    return p - std::min(k, si);
}

int BrokenSpec::dimension() const {
    int dim = base.dimension();
    for (std::size_t i = 0; i < breakpoints.size(); ++i) dim += sigma(i);
    return dim;
}

BrokenMatch matched_segments_broken(const BrokenSpec& spec) {
    const int p = spec.base.degree, k = spec.base.smoothness, n = spec.base.segments;
    int m = (n - 1) * (p - k) + 1;
    for (std::size_t i = 0; i < spec.breakpoints.size(); ++i)
        m += spec.sigma(i) + spec.smoothness_list[i] - p;
    if (m < 1) throw MInvalidError("broken matched m = " + std::to_string(m) + " < 1");
    int hits = 0;
    for (const Rational& xi : spec.breakpoints)
        if ((xi.num() * BigInt(m) % xi.den()).is_zero()) ++hits;
    return BrokenMatch{m, hits};
}

BrokenSpec matched_smooth_broken(const BrokenSpec& spec) {
    const BrokenMatch match = matched_segments_broken(spec);
    return BrokenSpec(SplineSpaceSpec(spec.base.degree, spec.base.degree - 1, match.m),
                      spec.breakpoints, spec.smoothness_list);
}

SobolevTarget::SobolevTarget(int q) : order(q) {
    if (q < 0) throw std::invalid_argument("SobolevTarget: order must be >= 0");
}

std::vector<Knot> knot_vector(const SplineSpaceSpec& s) {
    std::vector<Knot> knots;
    knots.reserve(static_cast<std::size_t>(s.segments) + 1);
    knots.push_back({Rational(0), s.degree + 1});
    for (int j = 1; j < s.segments; ++j)
        knots.push_back({Rational(j, s.segments), s.degree - s.smoothness});
    knots.push_back({Rational(1), s.degree + 1});
    return knots;
}

std::vector<Knot> knot_vector(const BrokenSpec& s) {
    const int p = s.base.degree, k = s.base.smoothness, n = s.base.segments;
    std::vector<Knot> knots = knot_vector(s.base);
    for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
        const Rational& xi = s.breakpoints[i];
        const int mult = p - std::min(k, s.smoothness_list[i]);
        auto it = std::lower_bound(knots.begin(), knots.end(), xi,
                                   [](const Knot& a, const Rational& b) { return a.position < b; });
        if (it != knots.end() && it->position == xi) {
            it->multiplicity = std::max(it->multiplicity, mult);
        } else {
            knots.insert(it, Knot{xi, mult});
        }
    }
    (void)n;
    return knots;
}

int basis_count(std::span<const Knot> knots) {
    if (knots.size() < 2) throw std::invalid_argument("basis_count: need at least two knots");
    const int p = knots.front().multiplicity - 1;
    int total = 0;
    for (const Knot& kn : knots) total += kn.multiplicity;
    return total - (p + 1);
}

namespace {

nlohmann::json spec_json(const SplineSpaceSpec& s) {
    return nlohmann::json{{"p", s.degree}, {"k", s.smoothness}, {"n", s.segments}};
}

}  // namespace

std::string to_json(const SplineSpaceSpec& s) { return spec_json(s).dump(); }

std::string to_json(const BrokenSpec& s) {
    nlohmann::json j = spec_json(s.base);
    nlohmann::json bps = nlohmann::json::array();
    for (const Rational& xi : s.breakpoints)
        bps.push_back({xi.num().to_string(), xi.den().to_string()});
    j["breakpoints"] = std::move(bps);
    j["smoothness"] = s.smoothness_list;
    return j.dump();
}

SplineSpaceSpec spline_spec_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return SplineSpaceSpec(j.at("p").get<int>(), j.at("k").get<int>(), j.at("n").get<int>());
}

BrokenSpec broken_spec_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SplineSpaceSpec base(j.at("p").get<int>(), j.at("k").get<int>(), j.at("n").get<int>());
    std::vector<Rational> xi;
    std::vector<int> s;
    if (j.contains("breakpoints")) {
        for (const auto& bp : j.at("breakpoints")) {
            xi.emplace_back(BigInt::from_string(bp.at(0).get<std::string>()),
                            BigInt::from_string(bp.at(1).get<std::string>()));
        }
    }
    if (j.contains("smoothness")) s = j.at("smoothness").get<std::vector<int>>();
    return BrokenSpec(base, std::move(xi), std::move(s));
}

}  // namespace splinepower
