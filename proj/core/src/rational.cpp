#include "gapforge/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "gapforge/errors.hpp"

namespace gapforge {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw DomainError(fmt::format("malformed number '{}'", whole));
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 17) throw DomainError(fmt::format("too many decimals in '{}'", text));
    const bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, text);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, text);
    if (fp < 0) throw DomainError(fmt::format("malformed number '{}'", text));
    if (ip > (std::numeric_limits<std::int64_t>::max() - fp) / den) {
      throw DomainError(fmt::format("number '{}' out of range", text));
    }
    const std::int64_t num = ip * den + fp;
    return Rational(negative ? -num : num, den);
  }
  return Rational(parse_int(text, text));
}

mpq_class Rational::to_mpq() const {
  mpq_class q(big_signed(num_), big_signed(den_));
  q.canonicalize();
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return fmt::format("{}/{}", num_, den_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

Scalar Scalar::parse(std::string_view text) {
  if (!text.empty() && text.front() == '~') {
    const std::string body(text.substr(1));
    char* end = nullptr;
    const double v = std::strtod(body.c_str(), &end);
    if (body.empty() || end != body.c_str() + body.size() || !std::isfinite(v)) {
      throw DomainError(fmt::format("malformed real '{}'", text));
    }
    return Scalar::real(v);
  }
  return Scalar(Rational::parse(text));
}

const Rational& Scalar::exact() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw UnsupportedModeError("real-valued parameter has no exact rational form");
}

double Scalar::to_double() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->to_double();
  return std::get<double>(value_);
}

mpq_class Scalar::to_mpq() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->to_mpq();
  return mpq_class(std::get<double>(value_));
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->to_string();
  return fmt::format("~{}", std::get<double>(value_));
}

}  // namespace gapforge
