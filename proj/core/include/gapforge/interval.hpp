#pragma once

#include <cstdint>
#include <string>

#include <mpfr.h>

#include "gapforge/bigint.hpp"

namespace gapforge {

// Adaptive precision schedule: a double-precision pass (when enabled and the
// inputs fit), then MPFR at start_bits, 2*start_bits, ... up to cap_bits.
struct GuardConfig {
  bool fast_path = true;
  unsigned start_bits = 64;
  unsigned cap_bits = 512;
};

enum class Tri { False, True, Unknown };

// Closed real interval [lo, hi] with MPFR endpoints rounded outward.
class MpInterval {
 public:
  explicit MpInterval(unsigned precision);
  MpInterval(const MpInterval& other);
  MpInterval(MpInterval&& other) noexcept;
  MpInterval& operator=(const MpInterval& other);
  MpInterval& operator=(MpInterval&& other) noexcept;
  ~MpInterval();

  static MpInterval from_int(const BigInt& v, unsigned precision);
  static MpInterval from_u64(std::uint64_t v, unsigned precision);
  static MpInterval from_rational(const mpq_class& q, unsigned precision);
  static MpInterval from_double(double v, unsigned precision);

  unsigned precision() const { return prec_; }
  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  // Midpoint rendered with the given number of significant digits.
  std::string to_string(int digits = 20) const;

  friend MpInterval operator+(const MpInterval& a, const MpInterval& b);
  friend MpInterval operator-(const MpInterval& a, const MpInterval& b);
  friend MpInterval operator*(const MpInterval& a, const MpInterval& b);
  // Divisor must not contain zero.
  friend MpInterval operator/(const MpInterval& a, const MpInterval& b);

  friend MpInterval sqrt(const MpInterval& a);
  friend MpInterval log(const MpInterval& a);
  friend MpInterval exp(const MpInterval& a);
  // a^e for a > 0 through exp(e * log a).
  friend MpInterval pow(const MpInterval& a, const MpInterval& e);
  friend MpInterval min(const MpInterval& a, const MpInterval& b);

 private:
  unsigned prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

// Double-precision interval. Every operation widens its result by a fixed
// number of ulps past the libm error bounds, so containment holds as long as
// those bounds do (<= 1 ulp for sqrt/log/exp in glibc, exact rounding for + - * /).
class FastInterval {
 public:
  FastInterval() = default;
  FastInterval(double lo, double hi) : lo_(lo), hi_(hi) {}
  static FastInterval point(double v) { return {v, v}; }
  // Exact only for |v| < 2^53; callers check representable() first.
  static FastInterval from_u64(std::uint64_t v) { return point(static_cast<double>(v)); }
  static bool representable(std::uint64_t v) { return v < (std::uint64_t{1} << 53); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_point() const { return lo_ == hi_; }

  friend FastInterval operator+(FastInterval a, FastInterval b);
  friend FastInterval operator-(FastInterval a, FastInterval b);
  friend FastInterval operator*(FastInterval a, FastInterval b);
  friend FastInterval operator/(FastInterval a, FastInterval b);
  friend FastInterval sqrt(FastInterval a);
  friend FastInterval log(FastInterval a);
  friend FastInterval exp(FastInterval a);
  friend FastInterval pow(FastInterval a, FastInterval e);
  friend FastInterval min(FastInterval a, FastInterval b);

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

// Certified comparisons: True/False only when the intervals decide it.
Tri certainly_less(const MpInterval& a, const MpInterval& b);
Tri certainly_less_equal(const MpInterval& a, const MpInterval& b);
Tri certainly_less(const FastInterval& a, const FastInterval& b);
Tri certainly_less_equal(const FastInterval& a, const FastInterval& b);

}  // namespace gapforge
