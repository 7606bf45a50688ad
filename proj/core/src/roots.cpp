#include "gapforge/roots.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "gapforge/errors.hpp"

namespace gapforge {

BigInt checked_pow(const BigInt& base, unsigned long exp) {
  const std::size_t bits = bit_length(base);
  if (bits > 1 && exp > 0 && (bits - 1) > kMaxPowerBits / exp) {
    throw ResourceLimitError(
        fmt::format("power of a {}-bit integer to exponent {} exceeds the {}-bit budget", bits, exp,
                    kMaxPowerBits));
  }
  return pow(base, exp);
}

BigInt floor_root(const BigInt& m, unsigned long b) {
  if (b == 0) throw DomainError("floor_root: exponent must be positive");
  if (sgn(m) < 0) throw DomainError("floor_root: negative radicand");
  if (b == 1 || m < 2) return m;

  BigInt r;
  mpz_root(r.get_mpz_t(), m.get_mpz_t(), b);  // truncates, which is floor for m >= 0
  return r;
}

BigInt floor_pow_rational(const BigInt& m, unsigned long a, unsigned long b) {
  if (a == 0 || b == 0) throw DomainError("floor_pow_rational: exponents must be positive");
  if (sgn(m) <= 0) throw DomainError("floor_pow_rational: base must be positive");
  const unsigned long g = std::gcd(a, b);
  a /= g;
  b /= g;
  return floor_root(checked_pow(m, a), b);
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace gapforge
