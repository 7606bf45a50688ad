#include "gapforge/primality.hpp"

#include <array>

namespace gapforge {

namespace {

using u64 = std::uint64_t;

constexpr std::array<u64, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Strong probable-prime test of odd n > 2 to base a; n - 1 = d * 2^s.
bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;

  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (n < (u64{1} << 32)) {
    for (u64 a : {u64{2}, u64{7}, u64{61}}) {
      if (!strong_probable_prime(n, a, d, s)) return false;
    }
    return true;
  }
  for (u64 a : {u64{2}, u64{325}, u64{9375}, u64{28178}, u64{450775}, u64{9780504},
                u64{1795265022}}) {
    if (!strong_probable_prime(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime_big(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  // GMP >= 6.2 runs Baillie-PSW followed by reps-24 Miller-Rabin rounds.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

}  // namespace gapforge
