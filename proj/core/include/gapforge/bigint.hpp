#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace gapforge {

using BigInt = mpz_class;

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

inline BigInt big(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 expected");
  return BigInt(static_cast<unsigned long>(v));
}

inline BigInt big_signed(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt pow(std::uint64_t base, unsigned long exp) { return pow(big(base), exp); }

inline bool fits_u64(const BigInt& v) { return sgn(v) >= 0 && mpz_fits_ulong_p(v.get_mpz_t()); }

inline std::uint64_t to_u64(const BigInt& v) { return static_cast<std::uint64_t>(v.get_ui()); }

inline std::optional<std::uint64_t> as_u64(const BigInt& v) {
  if (!fits_u64(v)) return std::nullopt;
  return to_u64(v);
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace gapforge
