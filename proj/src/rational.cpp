#include "splinepower/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace splinepower {

namespace {

int count_leading_zeros(std::uint32_t v) noexcept {
    if (v == 0) return 32;
    return __builtin_clz(v);
}

// Magnitude helpers operating on little-endian limb vectors.
void shl1_inplace(std::vector<std::uint32_t>& a) {
    std::uint32_t carry = 0;
    for (auto& limb : a) {
        std::uint32_t next = limb >> 31;
        limb = (limb << 1) | carry;
        carry = next;
    }
    if (carry) a.push_back(carry);
}

std::size_t trailing_zero_bits(const std::vector<std::uint32_t>& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) return i * 32 + static_cast<std::size_t>(__builtin_ctz(a[i]));
    }
    return 0;
}

void shr_bits(std::vector<std::uint32_t>& a, std::size_t bits) {
    const std::size_t limb_shift = bits / 32, bit_shift = bits % 32;
    if (limb_shift >= a.size()) {
        a.clear();
        return;
    }
    if (limb_shift) a.erase(a.begin(), a.begin() + static_cast<long>(limb_shift));
    if (bit_shift) {
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            a[i] = (a[i] >> bit_shift) | (a[i + 1] << (32 - bit_shift));
        a.back() >>= bit_shift;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void shl_bits(std::vector<std::uint32_t>& a, std::size_t bits) {
    if (a.empty() || bits == 0) return;
    const std::size_t limb_shift = bits / 32, bit_shift = bits % 32;
    if (bit_shift) {
        std::uint32_t carry = 0;
        for (auto& limb : a) {
            std::uint32_t next = limb >> (32 - bit_shift);
            limb = (limb << bit_shift) | carry;
            carry = next;
        }
        if (carry) a.push_back(carry);
    }
    a.insert(a.begin(), limb_shift, 0u);
}

// a -= b, requires a >= b.
void sub_mag_inplace(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += (1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        a[i] = static_cast<std::uint32_t>(d);
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t mag_bits(const std::vector<std::uint32_t>& a) {
    if (a.empty()) return 0;
    return a.size() * 32 - static_cast<std::size_t>(count_leading_zeros(a.back()));
}

}  // namespace

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    unsigned long long m =
        v > 0 ? static_cast<unsigned long long>(v) : ~static_cast<unsigned long long>(v) + 1ull;
    while (m) {
        mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffull));
        m >>= 32;
    }
}

void BigInt::trim() noexcept {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size());
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
        r[i] = static_cast<std::uint32_t>(s & 0xffffffffull);
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    sub_mag_inplace(r, b);
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    } else {
        int c = BigInt::cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = a.sign_;
            r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        } else {
            r.sign_ = b.sign_;
            r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        }
    }
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
        std::uint64_t carry = 0;
        const std::uint64_t ai = a.mag_[i];
        for (std::size_t j = 0; j < b.mag_.size(); ++j) {
            std::uint64_t cur = r.mag_[i + j] + ai * b.mag_[j] + carry;
            r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        std::size_t k = i + b.mag_.size();
        while (carry) {
            std::uint64_t cur = r.mag_[k] + carry;
            r.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (a.sign_ == 0) {
        q = BigInt();
        r = BigInt();
        return;
    }
    int c = cmp_mag(a.mag_, b.mag_);
    if (c < 0) {
        q = BigInt();
        r = a;
        return;
    }
    const std::size_t nbits = mag_bits(a.mag_);
    std::vector<std::uint32_t> quot((nbits + 31) / 32, 0);
    std::vector<std::uint32_t> rem;
    rem.reserve(b.mag_.size() + 1);
    for (std::size_t bi = nbits; bi-- > 0;) {
        shl1_inplace(rem);
        if ((a.mag_[bi / 32] >> (bi % 32)) & 1u) {
            if (rem.empty())
                rem.push_back(1u);
            else
                rem[0] |= 1u;
        }
        if (cmp_mag(rem, b.mag_) >= 0) {
            sub_mag_inplace(rem, b.mag_);
            quot[bi / 32] |= (1u << (bi % 32));
        }
    }
    q.mag_ = std::move(quot);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    r.mag_ = std::move(rem);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::abs(BigInt a) {
    if (a.sign_ < 0) a.sign_ = 1;
    return a;
}

// Binary (Stein) gcd on magnitudes.
BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return abs(b);
    if (b.is_zero()) return abs(a);
    std::vector<std::uint32_t> x = a.mag_, y = b.mag_;
    const std::size_t shift = std::min(trailing_zero_bits(x), trailing_zero_bits(y));
    shr_bits(x, trailing_zero_bits(x));
    while (!y.empty()) {
        shr_bits(y, trailing_zero_bits(y));
        if (cmp_mag(x, y) > 0) std::swap(x, y);
        sub_mag_inplace(y, x);
    }
    shl_bits(x, shift);
    BigInt g;
    g.mag_ = std::move(x);
    g.sign_ = 1;
    return g;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    int c = BigInt::cmp_mag(a.mag_, b.mag_) * (a.sign_ < 0 ? -1 : 1);
    return c <=> 0;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        // r = r*10 + digit
        std::uint64_t carry = static_cast<std::uint64_t>(s[i] - '0');
        for (auto& limb : r.mag_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * 10ull + carry;
            limb = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        if (carry) r.mag_.push_back(static_cast<std::uint32_t>(carry));
    }
    r.sign_ = r.mag_.empty() ? 0 : (neg ? -1 : 1);
    r.trim();
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        // divide by 1e9, collecting remainder
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        char buf[16];
        if (m.empty())
            std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(rem));
        else
            std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(rem));
        digits.insert(0, buf);
    }
    if (sign_ < 0) digits.insert(0, "-");
    return digits;
}

std::size_t BigInt::bit_length() const noexcept { return mag_bits(mag_); }

long double BigInt::mantissa_exp(long& e2) const noexcept {
    e2 = 0;
    if (sign_ == 0) return 0.0L;
    const std::size_t bl = bit_length();
    const int take = static_cast<int>(std::min<std::size_t>(bl, 64));
    std::uint64_t m = 0;
    for (std::size_t bi = bl; bi-- > bl - static_cast<std::size_t>(take);) {
        m = (m << 1) | ((mag_[bi / 32] >> (bi % 32)) & 1u);
    }
    e2 = static_cast<long>(bl) - take;
    long double v = static_cast<long double>(m);
    return sign_ < 0 ? -v : v;
}

long double BigInt::to_long_double() const {
    long e2;
    long double m = mantissa_exp(e2);
    return std::ldexp(m, static_cast<int>(e2));
}

double BigInt::to_double() const { return static_cast<double>(to_long_double()); }

// ---------------------------------------------------------------------------

Rational::Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.sgn() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!(g == BigInt(1))) {
        num_ /= g;
        den_ /= g;
    }
}

bool Rational::is_integer() const { return den_ == BigInt(1); }

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::from_string(s), BigInt(1));
    return Rational(BigInt::from_string(s.substr(0, slash)),
                    BigInt::from_string(s.substr(slash + 1)));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::to_decimal_string(int significant_digits) const {
    if (significant_digits < 1) significant_digits = 1;
    if (significant_digits > 30) significant_digits = 30;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", significant_digits, to_long_double());
    return buf;
}

long double Rational::to_long_double() const {
    long en, ed;
    long double mn = num_.mantissa_exp(en);
    long double md = den_.mantissa_exp(ed);
    long diff = en - ed;
    if (diff > 20000) return num_.sgn() > 0 ? HUGE_VALL : -HUGE_VALL;
    if (diff < -20000) return 0.0L;
    return std::ldexp(mn / md, static_cast<int>(diff));
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

}  // namespace splinepower
