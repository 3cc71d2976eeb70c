#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace sigtest {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Arithmetic is
/// carried out in 128-bit intermediates and throws std::overflow_error if
/// the reduced result does not fit back into 64 bits. Comparison never
/// overflows for 64-bit operands.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const;

    /// "n/d", or just "n" when the denominator is 1.
    std::string to_string() const;

    /// Decimal rendering of value*scale rounded half away from zero.
    /// to_fixed(47/103, 1, 100) == "45.6".
    std::string to_fixed(int decimals, std::int64_t scale = 1) const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace sigtest
