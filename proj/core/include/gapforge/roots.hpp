#pragma once

#include <cstdint>

#include "gapforge/bigint.hpp"

namespace gapforge {

// Powers larger than this many bits are refused with ResourceLimitError.
inline constexpr std::size_t kMaxPowerBits = std::size_t{1} << 24;

// Largest t with t^b <= m. m >= 0, b >= 1.
BigInt floor_root(const BigInt& m, unsigned long b);

// floor(m^(a/b)) for positive m; a/b is reduced before evaluation.
BigInt floor_pow_rational(const BigInt& m, unsigned long a, unsigned long b);

// base^exp with the kMaxPowerBits budget enforced up front.
BigInt checked_pow(const BigInt& base, unsigned long exp);

// floor(sqrt(n)) for 64-bit n.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace gapforge
