#include "sigtest/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace sigtest {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

}  // namespace

Rational::Rational(std::int64_t value) : num_(value), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) throw std::overflow_error("Rational: result exceeds 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_fixed(int decimals, std::int64_t scale) const {
    if (decimals < 0 || decimals > 18) throw std::invalid_argument("Rational::to_fixed: decimals out of range");
    i128 pow10 = 1;
    for (int i = 0; i < decimals; ++i) pow10 *= 10;
    i128 n = static_cast<i128>(num_) * scale * pow10;
    i128 d = den_;
    bool negative = n < 0;
    if (negative) n = -n;
    // round half away from zero: floor((2n + d) / 2d)
    auto q = static_cast<unsigned __int128>((2 * n + d) / (2 * d));
    auto ip = q / static_cast<unsigned __int128>(pow10);
    auto fp = q % static_cast<unsigned __int128>(pow10);
    std::string out = (negative && q != 0) ? "-" : "";
    out += u128_to_string(ip);
    if (decimals > 0) {
        std::string frac = u128_to_string(fp);
        out += "." + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
    }
    return out;
}

Rational Rational::operator-() const {
    return from_wide(-static_cast<i128>(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace sigtest
