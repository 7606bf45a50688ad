#include "gapforge/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gapforge/errors.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/roots.hpp"

namespace gapforge {

namespace {

using u64 = std::uint64_t;

// Ceiling on the sieved range so segment arithmetic never wraps.
constexpr u64 kMaxSieveHi = std::numeric_limits<u64>::max() - (u64{1} << 34);

const PrimeTable& small_table() {
  static const PrimeTable table = primes_up_to(u64{1} << 21);
  return table;
}

}  // namespace

PrimePair make_prime_pair(std::uint64_t prev, std::uint64_t next) {
  if (prev >= next || !is_prime(prev) || !is_prime(next) || next_prime_after(prev) != next) {
    throw DomainError(fmt::format("({}, {}) is not a pair of consecutive primes", prev, next));
  }
  return PrimePair::of(prev, next);
}

// ---- PrimeTable --------------------------------------------------------------

std::uint64_t PrimeTable::nth(std::size_t i) const {
  if (i == 0) throw DomainError("prime index is 1-based");
  if (i > primes_.size()) {
    throw ResourceLimitError(fmt::format("p_{} lies beyond the table limit {}", i, limit_));
  }
  return primes_[i - 1];
}

bool PrimeTable::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
  if (x > limit_) {
    throw ResourceLimitError(fmt::format("count up to {} exceeds the table limit {}", x, limit_));
  }
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::optional<std::size_t> PrimeTable::index_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

// ---- Tables and neighbours --------------------------------------------------------

PrimeTable primes_up_to(std::uint64_t limit, const SieveConfig& config) {
  if (limit > config.table_limit_budget) {
    throw ResourceLimitError(
        fmt::format("prime table to {} exceeds the budget {}", limit, config.table_limit_budget));
  }
  std::vector<u64> primes;
  if (limit >= 2) {
    const double estimate = limit < 100 ? 30.0 : 1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    primes.reserve(static_cast<std::size_t>(estimate));
    SegmentedSieve sieve(limit, config);
    sieve.for_each_prime(2, limit, [&](u64 p) { primes.push_back(p); });
  }
  return PrimeTable(limit, std::move(primes));
}

std::uint64_t nth_prime(std::uint64_t i, const SieveConfig& config) {
  if (i == 0) throw DomainError("nth_prime: index is 1-based");
  const PrimeTable& small = small_table();
  if (i <= small.size()) return small.nth(static_cast<std::size_t>(i));
  // p_i < i (ln i + ln ln i) for i >= 6 (Rosser).
  const double x = static_cast<double>(i);
  const double bound = x * (std::log(x) + std::log(std::log(x))) + 1.0;
  if (bound > static_cast<double>(config.table_limit_budget)) {
    throw ResourceLimitError(fmt::format("p_{} exceeds the sieve budget {}", i, config.table_limit_budget));
  }
  const auto limit = static_cast<u64>(bound);
  SegmentedSieve sieve(limit, config);
  u64 seen = 0;
  u64 found = 0;
  sieve.for_each_prime(2, limit, [&](u64 p) {
    if (++seen == i) {
      found = p;
      return false;
    }
    return true;
  });
  return found;
}

std::uint64_t next_prime_after(std::uint64_t n) {
  if (n < 2) return 2;
  if (n >= 18446744073709551557ULL) {
    throw ResourceLimitError(fmt::format("no prime above {} fits in 64 bits", n));
  }
  u64 c = n + 1;
  if (c > 2 && c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

std::uint64_t prev_prime_before(std::uint64_t n) {
  if (n < 3) throw DomainError(fmt::format("prev_prime_before({}): no prime below", n));
  if (n == 3) return 2;
  u64 c = n - 1;
  if (c % 2 == 0) --c;
  while (!is_prime(c)) c -= 2;
  return c;
}

// ---- SegmentedSieve ----------------------------------------------------------------

SegmentedSieve::SegmentedSieve(std::uint64_t max_hi, const SieveConfig& config)
    : max_hi_(max_hi), config_(config) {
  if (max_hi > kMaxSieveHi) {
    throw ResourceLimitError(fmt::format("sieve bound {} is too close to 2^64", max_hi));
  }
  if (config_.segment_odd_flags == 0) throw ConfigError("segment size must be positive");
  const u64 root = isqrt(max_hi);
  if (root > config.base_limit_budget) {
    throw ResourceLimitError(
        fmt::format("sqrt({}) = {} exceeds the sieve budget {}", max_hi, root, config.base_limit_budget));
  }
  // Plain odd-only sieve for the seed primes.
  if (root >= 3) {
    const std::size_t n = static_cast<std::size_t>((root - 1) / 2);  // index i <-> 2i + 1, i >= 1
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
      if (composite[i]) continue;
      const u64 p = 2 * i + 1;
      odd_base_primes_.push_back(static_cast<std::uint32_t>(p));
      for (u64 j = (p * p - 1) / 2; j <= n; j += p) composite[static_cast<std::size_t>(j)] = 1;
    }
  }
}

void SegmentedSieve::mark_segment(std::uint64_t first_odd, std::size_t count,
                                  std::vector<std::uint8_t>& flags) const {
  flags.assign(count, 1);
  if (count == 0) return;
  const u64 last = first_odd + 2 * (static_cast<u64>(count) - 1);
  if (last > max_hi_ && isqrt(last) > isqrt(max_hi_)) {
    throw ResourceLimitError(fmt::format("segment end {} exceeds the sieve seed bound {}", last, max_hi_));
  }
  for (std::uint32_t bp : odd_base_primes_) {
    const u64 p = bp;
    const u64 square = p * p;
    if (square > last) break;
    u64 start;
    if (square >= first_odd) {
      start = square;
    } else {
      const u64 r = first_odd % p;
      start = r == 0 ? first_odd : first_odd + (p - r);
      if ((start & 1) == 0) start += p;
    }
    for (u64 j = (start - first_odd) / 2; j < count; j += p) flags[static_cast<std::size_t>(j)] = 0;
  }
  if (first_odd == 1) flags[0] = 0;
}

// ---- IntervalScanner ---------------------------------------------------------------

namespace {

void record(IntervalScan& scan, u64 p) {
  if (scan.witnesses.size() < kWitnessCap) scan.witnesses.push_back(p);
  ++scan.count;
}

}  // namespace

IntervalScan IntervalScanner::scan_wide(const BigInt& lo, const BigInt& hi,
                                        std::optional<std::uint64_t> stop_after) const {
  const BigInt budget = big(2 * static_cast<u64>(config_.segment_odd_flags));
  if (!stop_after && hi - lo > budget) {
    throw ResourceLimitError(fmt::format("interval ({}, {}) is wider than {} past 2^64 without stop_after",
                                         to_string(lo), to_string(hi), to_string(budget)));
  }
  IntervalScan out;
  out.lo = lo;
  out.hi = hi;
  for (BigInt c = lo + 1; c < hi; ++c) {
    if (!is_prime_big(c)) continue;
    if (out.wide_witnesses.size() < kWitnessCap) out.wide_witnesses.push_back(c);
    ++out.count;
    if (stop_after && out.count >= *stop_after) {
      out.early_exited = c + 1 < hi;
      break;
    }
  }
  return out;
}

IntervalScan IntervalScanner::scan(const BigInt& lo, const BigInt& hi,
                                   std::optional<std::uint64_t> stop_after) const {
  if (lo >= hi) {
    throw DomainError(fmt::format("open interval ({}, {}) requires lo < hi", to_string(lo), to_string(hi)));
  }
  if (!fits_u64(hi)) return scan_wide(lo, hi, stop_after);
  const u64 hi64 = to_u64(hi);
  const u64 lo64 = sgn(lo) < 0 ? 0 : to_u64(lo);
  IntervalScan out = scan(lo64, hi64, stop_after);
  out.lo = lo;
  return out;
}

IntervalScan IntervalScanner::scan(std::uint64_t lo, std::uint64_t hi,
                                   std::optional<std::uint64_t> stop_after) const {
  if (lo >= hi) throw DomainError(fmt::format("open interval ({}, {}) requires lo < hi", lo, hi));
  IntervalScan out;
  out.lo = big(lo);
  out.hi = big(hi);
  if (hi - lo < 2) return out;
  const u64 first = lo + 1;
  const u64 last = hi - 1;

  if (table_ != nullptr && last <= table_->limit()) {
    auto primes = table_->primes();
    auto begin = std::upper_bound(primes.begin(), primes.end(), lo);
    auto end = std::lower_bound(begin, primes.end(), hi);
    out.count = static_cast<u64>(end - begin);
    for (auto it = begin; it != end && out.witnesses.size() < kWitnessCap; ++it) out.witnesses.push_back(*it);
    return out;
  }

  if (stop_after) {
    const u64 want = *stop_after;
    if (want == 0) {
      out.early_exited = true;
      return out;
    }
    u64 c = first;
    if (c <= 2) {
      if (last >= 2) record(out, 2);
      c = 3;
    } else if ((c & 1) == 0) {
      ++c;
    }
    for (; c <= last; c += 2) {
      if (out.count >= want) {
        out.early_exited = true;
        return out;
      }
      if (is_prime(c)) record(out, c);
      if (c > last - 2) break;
    }
    return out;
  }

  if (last - first + 1 > config_.max_scan_width) {
    throw ResourceLimitError(fmt::format("full count over ({}, {}) exceeds the scan width budget {}", lo, hi,
                                         config_.max_scan_width));
  }
  auto count_with = [&](const SegmentedSieve& sieve) {
    sieve.for_each_prime(first, last, [&](u64 p) { record(out, p); });
  };
  if (sieve_ && last <= sieve_->max_hi()) {
    count_with(*sieve_);
  } else {
    count_with(SegmentedSieve(last, config_));
  }
  return out;
}

IntervalScan primes_in_open_interval(const BigInt& lo, const BigInt& hi, std::optional<std::uint64_t> stop_after,
                                     const SieveConfig& config) {
  return IntervalScanner(nullptr, config).scan(lo, hi, stop_after);
}

}  // namespace gapforge
