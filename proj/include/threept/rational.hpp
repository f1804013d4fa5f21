#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace threept {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                              boost::multiprecision::et_off>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Exact text form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);
bool is_integer(const Rational& value);
double to_double(const Rational& value);

/// base^exponent by repeated squaring.
Rational power(const Rational& base, std::uint64_t exponent);

struct Infinity {};
inline constexpr Infinity infinity{};

/// A finite value of T or +infinity.
template <class T>
class Extended {
 public:
  Extended() : value_(T(0)) {}
  Extended(const T& value) : value_(value) {}
  Extended(Infinity) {}

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }

  const T& value() const {
    if (!value_) throw std::domain_error("value() on an infinite quantity");
    return *value_;
  }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) return Extended(infinity);
    return Extended(*a.value_ + *b.value_);
  }
  Extended& operator+=(const Extended& other) { return *this = *this + other; }

  /// inf - finite = inf; anything - inf is rejected, the caller has to branch.
  friend Extended operator-(const Extended& a, const Extended& b) {
    if (b.is_infinite()) throw std::domain_error("subtraction of an infinite quantity");
    if (a.is_infinite()) return a;
    return Extended(*a.value_ - *b.value_);
  }

  friend bool operator==(const Extended& a, const Extended& b) { return a.value_ == b.value_; }
  friend bool operator==(const Extended& a, const T& b) { return a.value_ && *a.value_ == b; }

  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.is_infinite()) return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    if (*a.value_ < *b.value_) return std::strong_ordering::less;
    if (*b.value_ < *a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const Extended& a, const T& b) { return a <=> Extended(b); }

 private:
  std::optional<T> value_;
};

using ExtendedRational = Extended<Rational>;
using ExtendedNatural = Extended<std::uint64_t>;

std::string to_string(const ExtendedRational& value);
std::string to_string(const ExtendedNatural& value);

/// Scalar multiple of an extended value. A positive multiple of infinity stays infinite,
/// a zero multiple of infinity is rejected.
ExtendedRational scale(const Rational& factor, const ExtendedRational& value);
ExtendedRational as_rational(const ExtendedNatural& count);

}  // namespace threept
