#pragma once

#include <span>
#include <string>
#include <vector>

#include "splinepower/errors.hpp"
#include "splinepower/rational.hpp"

namespace splinepower {

/// Default cap on polynomial degrees handled by this module.
inline constexpr int kDegreeCap = 64;

/// Dense polynomial in the monomial basis, coefficients of type S
/// (exact Rational by default, double in float mode). coeffs[i] multiplies x^i;
/// no trailing zero coefficients are stored, the zero polynomial is empty.
template <class S>
struct PolyT {
    std::vector<S> coeffs;

    PolyT() = default;
    explicit PolyT(std::vector<S> c) : coeffs(std::move(c)) { trim(); }
    static PolyT constant(S v) { return PolyT(std::vector<S>{std::move(v)}); }

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs.empty(); }

    [[nodiscard]] S coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs.size())) return S(0);
        return coeffs[static_cast<std::size_t>(i)];
    }

    void add_term(int power, const S& c) {
        if (power > kDegreeCap) throw DegreeCapError("polynomial degree cap exceeded");
        if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(power + 1, S(0));
        coeffs[static_cast<std::size_t>(power)] += c;
        trim();
    }

    [[nodiscard]] S eval(const S& x) const {
        S acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    [[nodiscard]] PolyT derivative() const {
        if (coeffs.size() <= 1) return PolyT();
        std::vector<S> d(coeffs.size() - 1);
        for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * S(static_cast<long long>(i));
        return PolyT(std::move(d));
    }

    /// Antiderivative with integration constant 0.
    [[nodiscard]] PolyT antiderivative() const {
        if (is_zero()) return PolyT();
        if (degree() + 1 > kDegreeCap) throw DegreeCapError("polynomial degree cap exceeded");
        std::vector<S> a(coeffs.size() + 1, S(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            a[i + 1] = coeffs[i] / S(static_cast<long long>(i + 1));
        return PolyT(std::move(a));
    }

    [[nodiscard]] S definite_integral(const S& a, const S& b) const {
        PolyT F = antiderivative();
        return F.eval(b) - F.eval(a);
    }

    [[nodiscard]] S derivative_value(int order, const S& x) const {
        PolyT d = *this;
        for (int s = 0; s < order; ++s) d = d.derivative();
        return d.eval(x);
    }

    friend PolyT operator+(const PolyT& a, const PolyT& b) {
        std::vector<S> r(std::max(a.coeffs.size(), b.coeffs.size()), S(0));
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) r[i] += a.coeffs[i];
        for (std::size_t i = 0; i < b.coeffs.size(); ++i) r[i] += b.coeffs[i];
        return PolyT(std::move(r));
    }

    friend PolyT operator-(const PolyT& a, const PolyT& b) {
        std::vector<S> r(std::max(a.coeffs.size(), b.coeffs.size()), S(0));
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) r[i] += a.coeffs[i];
        for (std::size_t i = 0; i < b.coeffs.size(); ++i) r[i] -= b.coeffs[i];
        return PolyT(std::move(r));
    }

    friend PolyT operator*(const PolyT& a, const PolyT& b) {
        if (a.is_zero() || b.is_zero()) return PolyT();
        if (a.degree() + b.degree() > kDegreeCap)
            throw DegreeCapError("polynomial degree cap exceeded");
        std::vector<S> r(a.coeffs.size() + b.coeffs.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs.size(); ++j) r[i + j] += a.coeffs[i] * b.coeffs[j];
        return PolyT(std::move(r));
    }

    [[nodiscard]] PolyT scaled(const S& c) const {
        PolyT r = *this;
        for (auto& v : r.coeffs) v *= c;
        r.trim();
        return r;
    }

private:
    void trim() noexcept {
        while (!coeffs.empty() && coeffs.back() == S(0)) coeffs.pop_back();
    }
};

using Polynomial = PolyT<Rational>;
using PolynomialD = PolyT<double>;

/// Monomial-list rendering, exact for rational coefficients.
std::string to_string(const Polynomial& p);
/// Decimal rendering with configurable precision.
std::string to_decimal_string(const Polynomial& p, int significant_digits);

/// Shifted Legendre polynomial of degree i on [0,1], classical normalization
/// (value 1 at x = 1; leading coefficient (2i)!/(i!)^2).
Polynomial legendre(int i, int cap = kDegreeCap);

/// log of (p+1)! / ((2p+2)! sqrt(2p+3)), the n-independent coefficient of the
/// discontinuous-spline lower bound, evaluated through log-gamma.
double log_lower_coeff(int p);

/// Two-sided Stirling bound check for r!.
bool stirling_check(int r);

/// Checks (2p+2)!/(p+1)! <= (4/e)^(p+1) sqrt(2) (p+1)^(p+1) in log domain.
bool factorial_ratio_bound_check(int p);

/// Which derivative orders an endpoint data set constrains.
enum class DerivativeParity { EvenOrders, OddOrders };

/// Endpoint derivative data for the parity-constrained Hermite problem.
/// For EvenOrders the entries are values for s = 0, 2, ..., and for OddOrders
/// s = 1, 3, ...; `left` holds values at 0 and `right` at 1, in order of s.
template <class S>
struct ParityDataT {
    DerivativeParity parity;
    std::vector<S> left, right;
};

using ParityData = ParityDataT<Rational>;
using ParityDataD = ParityDataT<double>;

namespace detail {

template <class S>
PolyT<S> hermite_build(int p, std::span<const S> a, std::span<const S> b, const S& free_c) {
    if (p % 2 == 1) {
        if (p == 1) return PolyT<S>(std::vector<S>{a[0], b[0] - a[0]});
        PolyT<S> f = hermite_build<S>(p - 2, a.subspan(1), b.subspan(1), S(0));
        PolyT<S> g = f.antiderivative().antiderivative();
        S slope = b[0] - a[0] - g.eval(S(1));
        g.add_term(1, slope);
        g.add_term(0, a[0]);
        return g;
    }
    if (p == 0) return PolyT<S>::constant(free_c);
    // g' must carry the order-(s-1) data, an odd-degree problem on the same arrays.
    PolyT<S> f = hermite_build<S>(p - 1, a, b, S(0));
    PolyT<S> g = f.antiderivative();
    g.add_term(0, free_c);
    return g;
}

}  // namespace detail

/// Polynomial g of degree <= p matching the endpoint derivative data of
/// the parity set for p (odd p: even orders 0,2,...,p-1; even p: odd orders
/// 1,3,...,p-1 plus a free constant). Built by the recursive integration
/// construction; exact when S is Rational.
template <class S>
PolyT<S> hermite_endpoint_interpolant(int p, const ParityDataT<S>& data, const S& free_constant = S(0)) {
    if (p < 0) throw std::invalid_argument("hermite_endpoint_interpolant: p must be >= 0");
    const bool odd = (p % 2) == 1;
    const std::size_t need = odd ? static_cast<std::size_t>((p + 1) / 2)
                                 : static_cast<std::size_t>(p / 2);
    const DerivativeParity want = odd ? DerivativeParity::EvenOrders : DerivativeParity::OddOrders;
    if (data.parity != want)
        throw ParityMismatchError("endpoint data parity does not match degree parity rule");
    if (data.left.size() != need || data.right.size() != need)
        throw ParityMismatchError("endpoint data has wrong number of derivative orders");
    return detail::hermite_build<S>(p, std::span<const S>(data.left), std::span<const S>(data.right),
                                    free_constant);
}

/// Given endpoint derivatives of f for the orders s with s + p odd (ascending
/// s, both endpoints), returns g in P_p matching them, so f - g has vanishing
/// constrained endpoint derivatives.
template <class S>
PolyT<S> ep_reducer(int p, std::span<const S> left, std::span<const S> right,
                    const S& free_constant = S(0)) {
    // s + p odd: even s for odd p, odd s for even p -- the Hermite parity rule.
    ParityDataT<S> data{(p % 2) == 1 ? DerivativeParity::EvenOrders : DerivativeParity::OddOrders,
                        std::vector<S>(left.begin(), left.end()),
                        std::vector<S>(right.begin(), right.end())};
    return hermite_endpoint_interpolant<S>(p, data, free_constant);
}

}  // namespace splinepower
