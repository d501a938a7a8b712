#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace compcon {

/// Exact rational scalar in canonical form (reduced, positive denominator,
/// zero is 0/1). Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    /// Parses "p/q" or "p" (optional leading '-'); throws ParseError.
    static Rational parse(std::string_view text);

    /// "p/q", or "p" when the denominator is 1.
    std::string to_string() const;

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }
    std::string numerator() const { return value_.get_num().get_str(); }
    std::string denominator() const { return value_.get_den().get_str(); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return cmp(a.value_, b.value_) <=> 0;
    }

private:
    mpq_class value_{0};
};

}  // namespace compcon
