#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "gapforge/records.hpp"

namespace gapforge {

// A prime l with a perfect square strictly between its predecessor and l.
// 2 is included with witness 1 even though it has no predecessor.
struct LegendrePrime {
  std::uint64_t value = 0;
  std::uint64_t index = 0;           // 1-based position in the ordered set
  std::uint64_t square_witness = 0;  // largest a with prev_prime_before(value) < a^2 < value

  friend bool operator==(const LegendrePrime&, const LegendrePrime&) = default;
};

struct LegendreTest {
  bool is_legendre = false;
  std::uint64_t witness = 0;  // the square a^2 itself, 1 for p = 2
};

// Throws DomainError when p is not prime.
LegendreTest is_legendre_prime(std::uint64_t p);

// All Legendre primes <= limit, by sieving and applying the definition to each prime.
std::vector<LegendrePrime> legendre_primes_up_to(std::uint64_t limit);

// The first `count` Legendre primes, found as the distinct values of
// next_prime_after(j^2) for j = 1, 2, ...
std::vector<LegendrePrime> first_legendre_primes(std::size_t count);

struct LegendreMapEntry {
  std::uint64_t n = 0;
  LegendrePrime l;
};

// n -> first Legendre prime greater than n^2, for 1 <= n <= n_max.
class LegendreIndex {
 public:
  explicit LegendreIndex(std::uint64_t n_max);

  std::uint64_t n_max() const { return static_cast<std::uint64_t>(images_.size()); }
  const LegendreMapEntry& map(std::uint64_t n) const;
  const std::vector<LegendrePrime>& primes() const { return primes_; }

 private:
  std::vector<LegendrePrime> primes_;
  std::vector<LegendreMapEntry> images_;
};

LegendreMapEntry legendre_map(std::uint64_t n);

// Collisions legendre_map(n - 1) == legendre_map(n) for 2 <= n <= n_max.
std::vector<ViolationRecord> check_map_injective(std::uint64_t n_max);

// n < l_n - l_{n-1} < 3n - 1 for 2 <= n <= n_max; params["side"] names the
// failing side.
std::vector<ViolationRecord> check_legendre_gap_corollary(std::uint64_t n_max);

struct LegendreGapConjectureReport {
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> skipped_no_predecessor;  // always {2} when limit >= 2
  std::vector<ViolationRecord> violations;
};

// gap < 2 sqrt(p_k) + 1 for each Legendre prime p_k <= limit and its predecessor.
LegendreGapConjectureReport check_legendre_gap_conjecture(std::uint64_t limit);

struct StrongLegendreReport {
  std::uint64_t limit = 0;
  std::uint64_t n_max = 0;  // intervals ((n-1)^2, n^2) for 2 <= n <= n_max were counted
  // Consecutive Legendre primes that are also consecutive primes, l_i < n_max^2.
  std::vector<PrimePair> adjacent_pairs;
  // n with fewer than two primes in ((n-1)^2, n^2).
  std::vector<std::uint64_t> sparse_intervals;
  // Each adjacent pair corresponds to exactly one sparse interval and vice versa.
  bool corroborated = true;
};

StrongLegendreReport check_strong_legendre_equivalence(std::uint64_t limit);

void to_json(nlohmann::json& j, const LegendrePrime& l);

}  // namespace gapforge
