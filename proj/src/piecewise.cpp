#include "splinepower/piecewise.hpp"

#include <algorithm>

namespace splinepower {

Mesh Mesh::uniform(int cells) { return refined(cells, 1); }

Mesh Mesh::refined(int n, int factor, std::span<const Rational> extra) {
    if (n < 1 || factor < 1) throw std::invalid_argument("Mesh::refined: bad sizes");
    std::vector<Rational> pts;
    const int total = n * factor;
    pts.reserve(static_cast<std::size_t>(total) + 1 + extra.size());
    for (int j = 0; j <= total; ++j) pts.emplace_back(j, total);
    for (const Rational& r : extra) {
        auto it = std::lower_bound(pts.begin(), pts.end(), r);
        if (it == pts.end() || !(*it == r)) pts.insert(it, r);
    }
    return Mesh(std::move(pts));
}

bool Mesh::contains(const std::vector<Rational>& coarse) const {
    std::size_t j = 0;
    for (const Rational& r : coarse) {
        while (j < pts.size() && pts[j] < r) ++j;
        if (j == pts.size() || !(pts[j] == r)) return false;
    }
    return true;
}

}  // namespace splinepower
