#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fsplit {

// Nonnegative exact rational, always stored reduced. Used for the exponent t
// of a pair (R, a^t) and for threshold/signature estimates.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den = 1);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  // ceil(value * factor), exact; throws std::overflow_error on overflow.
  std::uint64_t ceil_times(std::uint64_t factor) const;
  std::uint64_t floor() const noexcept { return num_ / den_; }

  // "a/b", or "a" when the denominator is one.
  std::string to_string() const;
  // Accepts "a", "a/b" with decimal naturals; throws ParseError.
  static Rational parse(const std::string& text);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  // Throws DomainError when b > a.
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

using Exponent = Rational;

}  // namespace fsplit
