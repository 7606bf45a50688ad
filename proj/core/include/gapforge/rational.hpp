#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "gapforge/bigint.hpp"

namespace gapforge {

// Reduced fraction with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // Accepts "7", "-3", "40/19", "2.5", "0.05".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  mpq_class to_mpq() const;
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// A numeric parameter: either an exact rational or a real known only as a double.
// Real parameters force GUARDED_REAL evaluation.
class Scalar {
 public:
  Scalar() : value_(Rational{}) {}
  Scalar(Rational r) : value_(r) {}
  static Scalar real(double v) {
    Scalar s;
    s.value_ = v;
    return s;
  }

  // "~1.414" marks a real; anything else must parse as a Rational.
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const;
  double to_double() const;
  mpq_class to_mpq() const;
  std::string to_string() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::variant<Rational, double> value_;
};

}  // namespace gapforge
