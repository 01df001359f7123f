#include "splinepower/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace splinepower {

namespace {

// Newton iteration on P_n over [-1,1], mapped to [0,1].
GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.x.resize(static_cast<std::size_t>(n));
    rule.w.resize(static_cast<std::size_t>(n));
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double t = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = t;
            if (n == 1) p1 = t;
            for (int m = 2; m <= n; ++m) {
                long double p2 = ((2 * m - 1) * t * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            long double pn = n == 0 ? 1.0L : p1;
            dp = n * (t * p1 - p0) / (t * t - 1.0L);
            long double dt = pn / dp;
            t -= dt;
            if (std::abs(dt) < 1e-20L) break;
        }
        const long double w = 2.0L / ((1.0L - t * t) * dp * dp);
        // map node -t (ascending) and its mirror to [0,1]
        rule.x[static_cast<std::size_t>(i)] = (1.0L - t) / 2.0L;
        rule.x[static_cast<std::size_t>(n - 1 - i)] = (1.0L + t) / 2.0L;
        rule.w[static_cast<std::size_t>(i)] = w / 2.0L;
        rule.w[static_cast<std::size_t>(n - 1 - i)] = w / 2.0L;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int points) {
    if (points < 1) throw std::invalid_argument("gauss_rule: need at least one point");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, compute_rule(points)).first;
    return it->second;
}

}  // namespace splinepower
