#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "gapforge/bigint.hpp"

namespace gapforge {

struct SieveConfig {
  // Largest limit primes_up_to / nth_prime will materialize.
  std::uint64_t table_limit_budget = 4'000'000'000ULL;
  // Odd-number flags per segment of the segmented sieve.
  std::size_t segment_odd_flags = std::size_t{1} << 20;
  // Largest sqrt(hi) a segmented sieve may be seeded with.
  std::uint64_t base_limit_budget = std::uint64_t{1} << 32;
  // Widest interval a full (non early-exit) count may sieve.
  std::uint64_t max_scan_width = std::uint64_t{1} << 40;
};

// Two consecutive primes. Construct through of() to get the gap filled in.
struct PrimePair {
  std::uint64_t prev = 0;
  std::uint64_t next = 0;
  std::uint64_t gap = 0;

  static PrimePair of(std::uint64_t prev, std::uint64_t next) { return {prev, next, next - prev}; }
  friend bool operator==(const PrimePair&, const PrimePair&) = default;
};

// Validates that prev and next are consecutive primes; throws DomainError otherwise.
PrimePair make_prime_pair(std::uint64_t prev, std::uint64_t next);

// The primes in [2, limit], strictly increasing. Immutable once built.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }

  // 1-based: nth(1) == 2. Throws ResourceLimitError past the end of the table.
  std::uint64_t nth(std::size_t i) const;
  bool contains(std::uint64_t n) const;
  // Number of primes <= x; x must not exceed limit().
  std::size_t count_up_to(std::uint64_t x) const;
  // 1-based index of p, if p is a prime in the table.
  std::optional<std::size_t> index_of(std::uint64_t p) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

PrimeTable primes_up_to(std::uint64_t limit, const SieveConfig& config = {});

// p_i with p_1 = 2.
std::uint64_t nth_prime(std::uint64_t i, const SieveConfig& config = {});

std::uint64_t next_prime_after(std::uint64_t n);
// Largest prime < n; n >= 3.
std::uint64_t prev_prime_before(std::uint64_t n);

// Segmented sieve of Eratosthenes over odd numbers, seeded once with the
// primes up to sqrt(max_hi). Safe to share between threads.
class SegmentedSieve {
 public:
  explicit SegmentedSieve(std::uint64_t max_hi, const SieveConfig& config = {});

  std::uint64_t max_hi() const { return max_hi_; }
  const SieveConfig& config() const { return config_; }

  // Calls f(p) for every prime in [lo, hi], in increasing order. If f returns
  // bool, returning false stops the enumeration early.
  template <typename F>
  void for_each_prime(std::uint64_t lo, std::uint64_t hi, F&& f) const;

  // Marks the odd numbers first_odd, first_odd + 2, ... (count of them).
  void mark_segment(std::uint64_t first_odd, std::size_t count, std::vector<std::uint8_t>& flags) const;

 private:
  std::uint64_t max_hi_;
  SieveConfig config_;
  std::vector<std::uint32_t> odd_base_primes_;
};

template <typename F>
void SegmentedSieve::for_each_prime(std::uint64_t lo, std::uint64_t hi, F&& f) const {
  auto emit = [&](std::uint64_t p) -> bool {
    if constexpr (std::is_same_v<std::invoke_result_t<F&, std::uint64_t>, bool>) {
      return f(p);
    } else {
      f(p);
      return true;
    }
  };
  if (lo > hi) return;
  if (lo <= 2 && hi >= 2 && !emit(2)) return;
  std::uint64_t first = lo < 3 ? 3 : (lo | 1);
  if (first > hi) return;
  std::vector<std::uint8_t> flags;
  while (first <= hi) {
    const std::uint64_t remaining = (hi - first) / 2 + 1;
    const std::size_t count =
        static_cast<std::size_t>(remaining < config_.segment_odd_flags ? remaining : config_.segment_odd_flags);
    mark_segment(first, count, flags);
    for (std::size_t j = 0; j < count; ++j) {
      if (flags[j] && !emit(first + 2 * j)) return;
    }
    if (remaining <= count) break;
    first += 2 * static_cast<std::uint64_t>(count);
  }
}

// Calls f(pair) for every consecutive pair with prev_lo <= prev < prev_end and
// next <= next_max. Shards keyed by prev partition the pair universe exactly.
template <typename F>
void for_each_prime_pair(const SegmentedSieve& sieve, std::uint64_t prev_lo, std::uint64_t prev_end,
                         std::uint64_t next_max, F&& f) {
  if (prev_end <= prev_lo) return;
  const std::uint64_t scan_hi = prev_end - 1 < next_max ? prev_end - 1 : next_max;
  std::uint64_t last = 0;
  sieve.for_each_prime(prev_lo, scan_hi, [&](std::uint64_t p) {
    if (last != 0) f(PrimePair::of(last, p));
    last = p;
  });
  if (last == 0) return;
  if (last >= next_max) return;
  const std::uint64_t after = next_prime_after(last);
  if (after <= next_max) f(PrimePair::of(last, after));
}

inline constexpr std::size_t kWitnessCap = 8;

// Result of counting primes strictly inside (lo, hi).
struct IntervalScan {
  BigInt lo;
  BigInt hi;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> witnesses;  // first min(count, kWitnessCap) primes
  bool early_exited = false;             // count is a lower bound when set
  // Past 2^64 witnesses land here instead, and primality is Baillie-PSW.
  std::vector<BigInt> wide_witnesses;
};

// Counts primes in open intervals. Strategy per call:
//  - table lookup when the interval lies inside the attached PrimeTable;
//  - deterministic Miller-Rabin candidate walk when stop_after is given;
//  - full segmented sieve otherwise.
// Intervals reaching past 2^64 are walked candidate by candidate; their width
// must stay within one segment unless stop_after is given.
class IntervalScanner {
 public:
  explicit IntervalScanner(const PrimeTable* table = nullptr, SieveConfig config = {},
                           std::shared_ptr<const SegmentedSieve> sieve = nullptr)
      : table_(table), config_(config), sieve_(std::move(sieve)) {}

  IntervalScan scan(const BigInt& lo, const BigInt& hi,
                    std::optional<std::uint64_t> stop_after = std::nullopt) const;
  IntervalScan scan(std::uint64_t lo, std::uint64_t hi,
                    std::optional<std::uint64_t> stop_after = std::nullopt) const;

 private:
  IntervalScan scan_wide(const BigInt& lo, const BigInt& hi, std::optional<std::uint64_t> stop_after) const;

  const PrimeTable* table_;
  SieveConfig config_;
  std::shared_ptr<const SegmentedSieve> sieve_;
};

IntervalScan primes_in_open_interval(const BigInt& lo, const BigInt& hi,
                                     std::optional<std::uint64_t> stop_after = std::nullopt,
                                     const SieveConfig& config = {});

}  // namespace gapforge
