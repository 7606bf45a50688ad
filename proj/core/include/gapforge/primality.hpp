#pragma once

#include <cstdint>

#include "gapforge/bigint.hpp"

namespace gapforge {

// Deterministic Miller-Rabin for the whole 64-bit range.
// Below 2^32 the witness set {2, 7, 61} is used; above it the seven-base set
// {2, 325, 9375, 28178, 450775, 9780504, 1795265022}.
bool is_prime(std::uint64_t n);

// Primality for integers of any size. Values below 2^64 use is_prime; larger ones
// fall back to GMP's Baillie-PSW test (no known counterexample, but unproven).
bool is_prime_big(const BigInt& n);

// True when is_prime_big(n) answered through the unproven branch.
inline bool primality_is_proven(const BigInt& n) { return fits_u64(n); }

}  // namespace gapforge
