#include "splinepower/bspline.hpp"

#include <algorithm>
#include <stdexcept>

namespace splinepower {

template <class Real>
BSplineBasisT<Real>::BSplineBasisT(std::span<const Knot> knots) {
    if (knots.size() < 2) throw std::invalid_argument("BSplineBasisT: need at least two knots");
    p_ = knots.front().multiplicity - 1;
    if (p_ < 0 || knots.back().multiplicity != p_ + 1)
        throw std::invalid_argument("BSplineBasisT: boundary multiplicities must equal degree+1");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i].position < knots[i + 1].position))
            throw std::invalid_argument("BSplineBasisT: knot positions must increase");
    for (const Knot& k : knots) {
        if (k.multiplicity < 1 || k.multiplicity > p_ + 1)
            throw std::invalid_argument("BSplineBasisT: multiplicity out of range");
        distinct_.push_back(k.position);
        const Real x = static_cast<Real>(k.position.to_long_double());
        for (int m = 0; m < k.multiplicity; ++m) flat_.push_back(x);
    }
    // offset of span s: flat index of the *last* copy of distinct_[s]
    offset_.resize(distinct_.size() - 1);
    int flat_ix = 0;
    for (std::size_t s = 0; s + 1 < distinct_.size(); ++s) {
        flat_ix += knots[s].multiplicity;
        offset_[s] = flat_ix - 1;
    }
}

template <class Real>
int BSplineBasisT<Real>::find_span(Real x) const {
    const int count = span_count();
    int lo = 0, hi = count - 1;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (span_start(mid) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

template <class Real>
void BSplineBasisT<Real>::eval_on_span(int span, Real x, std::span<Real> out) const {
    const int i = offset_[static_cast<std::size_t>(span)];
    std::vector<Real> left(static_cast<std::size_t>(p_) + 1), right(static_cast<std::size_t>(p_) + 1);
    out[0] = Real(1);
    for (int j = 1; j <= p_; ++j) {
        left[static_cast<std::size_t>(j)] = x - flat_[static_cast<std::size_t>(i + 1 - j)];
        right[static_cast<std::size_t>(j)] = flat_[static_cast<std::size_t>(i + j)] - x;
        Real saved(0);
        for (int r = 0; r < j; ++r) {
            const Real temp = out[static_cast<std::size_t>(r)] /
                              (right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(j - r)]);
            out[static_cast<std::size_t>(r)] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
            saved = left[static_cast<std::size_t>(j - r)] * temp;
        }
        out[static_cast<std::size_t>(j)] = saved;
    }
}

template <class Real>
Real BSplineBasisT<Real>::eval_one(int index, Real x) const {
    if (index < 0 || index >= dimension()) throw std::out_of_range("bspline index out of range");
    const int span = find_span(x);
    const int first = first_basis_on_span(span);
    if (index < first || index > first + p_) return Real(0);
    std::vector<Real> vals(static_cast<std::size_t>(p_) + 1);
    eval_on_span(span, x, vals);
    return vals[static_cast<std::size_t>(index - first)];
}

template class BSplineBasisT<double>;
template class BSplineBasisT<long double>;

double bspline_eval(const SplineSpaceSpec& space, int index, double x) {
    if (x < 0.0 || x > 1.0) throw std::out_of_range("bspline_eval: x outside [0,1]");
    const auto knots = knot_vector(space);
    BSplineBasis basis{std::span<const Knot>(knots)};
    return basis.eval_one(index, x);
}

double bspline_eval(const BrokenSpec& space, int index, double x) {
    if (x < 0.0 || x > 1.0) throw std::out_of_range("bspline_eval: x outside [0,1]");
    const auto knots = knot_vector(space);
    BSplineBasis basis{std::span<const Knot>(knots)};
    return basis.eval_one(index, x);
}

std::vector<std::vector<Polynomial>> bspline_exact_pieces(std::span<const Knot> knots) {
    const int p = knots.front().multiplicity - 1;
    // Flat rational knots and the map from flat span index to distinct span.
    std::vector<Rational> flat;
    std::vector<int> span_of_flat;  // distinct span containing [flat_i, flat_{i+1}), -1 if empty
    for (const Knot& k : knots)
        for (int m = 0; m < k.multiplicity; ++m) flat.push_back(k.position);
    const int nspans = static_cast<int>(knots.size()) - 1;
    span_of_flat.assign(flat.size() - 1, -1);
    {
        int distinct = 0;
        for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
            if (flat[i] < flat[i + 1]) {
                span_of_flat[i] = distinct;
                ++distinct;
            }
        }
    }

    const Polynomial x_poly(std::vector<Rational>{Rational(0), Rational(1)});
    // table[i] = pieces of B_{i,r} over distinct spans
    auto make_table = [&](std::size_t count) {
        return std::vector<std::vector<Polynomial>>(
            count, std::vector<Polynomial>(static_cast<std::size_t>(nspans)));
    };

    std::vector<std::vector<Polynomial>> cur = make_table(flat.size() - 1);
    for (std::size_t i = 0; i + 1 < flat.size(); ++i)
        if (span_of_flat[i] >= 0)
            cur[i][static_cast<std::size_t>(span_of_flat[i])] = Polynomial::constant(Rational(1));

    for (int r = 1; r <= p; ++r) {
        std::vector<std::vector<Polynomial>> next = make_table(flat.size() - r - 1);
        for (std::size_t i = 0; i + r + 1 < flat.size(); ++i) {
            const Rational d1 = flat[i + r] - flat[i];
            const Rational d2 = flat[i + r + 1] - flat[i + 1];
            for (int s = 0; s < nspans; ++s) {
                Polynomial piece;
                if (!d1.is_zero() && !cur[i][static_cast<std::size_t>(s)].is_zero()) {
                    Polynomial w(std::vector<Rational>{-flat[i], Rational(1)});
                    piece = piece + (w * cur[i][static_cast<std::size_t>(s)]).scaled(Rational(1) / d1);
                }
                if (!d2.is_zero() && !cur[i + 1][static_cast<std::size_t>(s)].is_zero()) {
                    Polynomial w(std::vector<Rational>{flat[i + r + 1], Rational(-1)});
                    piece = piece + (w * cur[i + 1][static_cast<std::size_t>(s)]).scaled(Rational(1) / d2);
                }
                next[i][static_cast<std::size_t>(s)] = std::move(piece);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace splinepower
