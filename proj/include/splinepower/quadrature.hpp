#pragma once

#include <vector>

namespace splinepower {

/// Gauss-Legendre rule on the reference interval [0,1].
struct GaussRule {
    std::vector<long double> x, w;

    template <class Real>
    [[nodiscard]] Real node(int i) const {
        return static_cast<Real>(x[static_cast<std::size_t>(i)]);
    }
    template <class Real>
    [[nodiscard]] Real weight(int i) const {
        return static_cast<Real>(w[static_cast<std::size_t>(i)]);
    }
    [[nodiscard]] int size() const { return static_cast<int>(x.size()); }
};

/// Cached rule with `points` nodes, exact for polynomials of degree
/// 2*points - 1. Thread-safe.
const GaussRule& gauss_rule(int points);

}  // namespace splinepower
