#include "splinepower/polynomial.hpp"

#include <cmath>
#include <numbers>

namespace splinepower {

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += c.sgn() < 0 ? " - " : " + ";
        else if (c.sgn() < 0) out += "-";
        Rational a = c.sgn() < 0 ? -c : c;
        if (i == 0) {
            out += a.to_string();
        } else {
            if (!(a == Rational(1))) out += a.to_string() + "*";
            out += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return out;
}

std::string to_decimal_string(const Polynomial& p, int significant_digits) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += c.sgn() < 0 ? " - " : " + ";
        else if (c.sgn() < 0) out += "-";
        Rational a = c.sgn() < 0 ? -c : c;
        out += a.to_decimal_string(significant_digits);
        if (i >= 1) out += i == 1 ? "*x" : "*x^" + std::to_string(i);
    }
    return out;
}

Polynomial legendre(int i, int cap) {
    if (i < 0) throw std::invalid_argument("legendre: negative degree");
    if (i > cap || i > kDegreeCap) throw DegreeCapError("legendre: degree cap exceeded");
    Polynomial prev = Polynomial::constant(Rational(1));
    if (i == 0) return prev;
    Polynomial cur(std::vector<Rational>{Rational(-1), Rational(2)});  // 2x - 1
    const Polynomial t = cur;
    for (int m = 1; m < i; ++m) {
        // (m+1) L_{m+1} = (2m+1)(2x-1) L_m - m L_{m-1}
        Polynomial next =
            (t * cur).scaled(Rational(2 * m + 1, m + 1)) - prev.scaled(Rational(m, m + 1));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double log_lower_coeff(int p) {
    if (p < 0) throw std::invalid_argument("log_lower_coeff: p must be >= 0");
    const long double v = std::lgamma(static_cast<long double>(p + 2)) -
                          std::lgamma(static_cast<long double>(2 * p + 3)) -
                          0.5L * std::log(static_cast<long double>(2 * p + 3));
    return static_cast<double>(v);
}

bool stirling_check(int r) {
    if (r < 1) throw std::invalid_argument("stirling_check: r must be >= 1");
    const long double rl = static_cast<long double>(r);
    const long double log_fact = std::lgamma(rl + 1.0L);
    const long double base =
        0.5L * std::log(2.0L * std::numbers::pi_v<long double>) + (rl + 0.5L) * std::log(rl) - rl;
    const long double lo = base + 1.0L / (12.0L * rl + 1.0L);
    const long double hi = base + 1.0L / (12.0L * rl);
    return lo <= log_fact && log_fact <= hi;
}

bool factorial_ratio_bound_check(int p) {
    if (p < 0) throw std::invalid_argument("factorial_ratio_bound_check: p must be >= 0");
    const long double pl = static_cast<long double>(p + 1);
    const long double lhs = std::lgamma(static_cast<long double>(2 * p + 3)) -
                            std::lgamma(static_cast<long double>(p + 2));
    const long double rhs = pl * (std::log(4.0L) - 1.0L) + 0.5L * std::log(2.0L) + pl * std::log(pl);
    return lhs <= rhs;
}

}  // namespace splinepower
