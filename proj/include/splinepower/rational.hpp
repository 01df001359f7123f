#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace splinepower {

/// Arbitrary-precision signed integer. Magnitude stored little-endian in
/// base 2^32. Sized for exact polynomial algebra up to degree ~64, not for
/// cryptographic workloads; all algorithms are schoolbook.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(std::string_view s);

    [[nodiscard]] bool is_zero() const noexcept { return sign_ == 0; }
    [[nodiscard]] int sgn() const noexcept { return sign_; }
    [[nodiscard]] bool is_odd() const noexcept { return sign_ != 0 && (mag_[0] & 1u); }

    BigInt operator-() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }
    BigInt& operator/=(const BigInt& b) { return *this = *this / b; }

    /// Truncated division: q rounds toward zero, r carries the dividend sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    static BigInt gcd(const BigInt& a, const BigInt& b);
    static BigInt abs(BigInt a);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] long double to_long_double() const;

    /// Number of bits in the magnitude; 0 for zero.
    [[nodiscard]] std::size_t bit_length() const noexcept;
    /// Top min(bit_length, 64) magnitude bits as a scaled mantissa: value ≈ m · 2^e2.
    [[nodiscard]] long double mantissa_exp(long& e2) const noexcept;

private:
    int sign_ = 0;                  // -1, 0, +1
    std::vector<std::uint32_t> mag_;  // little-endian, no leading zero limbs

    void trim() noexcept;
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) noexcept;
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    friend class Rational;
};

/// Exact rational number with positive denominator, always normalized.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long num, long long den);
    Rational(BigInt num, BigInt den);

    /// Parses "a" or "a/b".
    static Rational from_string(std::string_view s);

    [[nodiscard]] const BigInt& num() const noexcept { return num_; }
    [[nodiscard]] const BigInt& den() const noexcept { return den_; }
    [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] int sgn() const noexcept { return num_.sgn(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    [[nodiscard]] std::string to_string() const;
    /// Decimal rendering with the given number of significant digits.
    [[nodiscard]] std::string to_decimal_string(int significant_digits = 17) const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] long double to_long_double() const;

private:
    BigInt num_, den_;
    void normalize();
};

}  // namespace splinepower
