#include "threept/rational.hpp"

#include <cctype>

namespace threept {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
  Integer out = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
    out = out * 10 + (text[pos] - '0');
  }
  return negative ? Integer(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
  Integer den = parse_integer(den_text, text);
  if (den == 0) throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
  return Rational(num, den);
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Integer& den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

Integer floor_of(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

Integer ceil_of(const Rational& value) { return -floor_of(-value); }

bool is_integer(const Rational& value) { return boost::multiprecision::denominator(value) == 1; }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational power(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

std::string to_string(const ExtendedRational& value) {
  return value.is_infinite() ? "inf" : to_string(value.value());
}

std::string to_string(const ExtendedNatural& value) {
  return value.is_infinite() ? "inf" : std::to_string(value.value());
}

ExtendedRational scale(const Rational& factor, const ExtendedRational& value) {
  if (value.is_finite()) return ExtendedRational(factor * value.value());
  if (factor > 0) return infinity;
  throw std::domain_error("non-positive multiple of an infinite quantity");
}

ExtendedRational as_rational(const ExtendedNatural& count) {
  if (count.is_infinite()) return infinity;
  return ExtendedRational(Rational(count.value()));
}

}  // namespace threept
