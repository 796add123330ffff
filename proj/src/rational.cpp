#include "fsplit/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "fsplit/errors.hpp"

namespace fsplit {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational arithmetic overflow");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational arithmetic overflow");
  return out;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  const std::uint64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

std::uint64_t Rational::ceil_times(std::uint64_t factor) const {
  // num*factor may overflow even when the quotient fits; reduce first.
  const std::uint64_t g = std::gcd(factor, den_);
  const std::uint64_t prod = checked_mul(num_, factor / g);
  const std::uint64_t d = den_ / g;
  return prod / d + (prod % d != 0 ? 1 : 0);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto parse_natural = [&](std::size_t begin, std::size_t end) {
    std::uint64_t v = 0;
    if (begin == end) throw ParseError("expected a natural number", begin);
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, v);
    if (ec != std::errc{} || ptr != text.data() + end) {
      throw ParseError("malformed natural number", static_cast<std::size_t>(ptr - text.data()));
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_natural(0, text.size()));
  const std::uint64_t den = parse_natural(slash + 1, text.size());
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return Rational(parse_natural(0, slash), den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::uint64_t g = std::gcd(a.den_, b.den_);
  const std::uint64_t den = checked_mul(a.den_ / g, b.den_);
  return Rational(checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g)), den);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (b > a) throw DomainError("negative rational");
  const std::uint64_t g = std::gcd(a.den_, b.den_);
  const std::uint64_t den = checked_mul(a.den_ / g, b.den_);
  return Rational(checked_mul(a.num_, b.den_ / g) - checked_mul(b.num_, a.den_ / g), den);
}

Rational operator*(const Rational& a, const Rational& b) {
  const std::uint64_t g1 = std::gcd(a.num_, b.den_);
  const std::uint64_t g2 = std::gcd(b.num_, a.den_);
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("division by zero rational");
  return a * Rational(b.den_, b.num_);
}

}  // namespace fsplit
