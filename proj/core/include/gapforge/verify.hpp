#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapforge/inequality.hpp"
#include "gapforge/interval.hpp"
#include "gapforge/rational.hpp"
#include "gapforge/records.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

// ---- gap inequalities over pair streams ------------------------------------------------------

struct GapCheckResult {
  std::uint64_t pairs_checked = 0;
  std::vector<ViolationRecord> violations;  // verdict "violated"
  std::vector<ViolationRecord> undecided;   // verdict "undecided", near_boundary set

  void merge(GapCheckResult&& other);
};

ViolationRecord violation_for(const InequalitySpec& spec, const PrimePair& pair, const Verdict& v);

// Pairs with prev_lo <= prev < prev_end and next <= next_max, on a shared sieve.
GapCheckResult check_gap_inequality_shard(const InequalitySpec& spec, const SegmentedSieve& sieve,
                                          std::uint64_t prev_lo, std::uint64_t prev_end, std::uint64_t next_max,
                                          const GuardConfig& guard = {});

// Every consecutive pair with lo <= prev and next <= hi.
GapCheckResult check_gap_inequality(const InequalitySpec& spec, std::uint64_t lo, std::uint64_t hi,
                                    const GuardConfig& guard = {}, const SieveConfig& sieve = {});

// ---- prime-in-interval claims -----------------------------------------------------------------

struct IntervalReport {
  Location location;
  std::string label;  // which half or family, e.g. "lower" / "upper" for the two Oppermann halves
  BigInt lo;
  BigInt hi;
  std::uint64_t required = 1;
  std::uint64_t found = 0;
  std::vector<std::uint64_t> witnesses;
  bool early_exited = false;
  bool satisfied = false;

  friend bool operator==(const IntervalReport&, const IntervalReport&) = default;
};

using ReportSink = std::function<void(IntervalReport&&)>;

// Shared scanning context. When a table is attached, intervals that fit it are
// answered by lookup.
struct ScanContext {
  std::shared_ptr<const PrimeTable> table;
  SieveConfig sieve;
  bool early_exit = true;

  IntervalReport scan(Location where, BigInt lo, BigInt hi, std::uint64_t required, std::string label = {}) const;
};

ScanContext context_with_table(std::uint64_t table_limit, bool early_exit = true, const SieveConfig& sieve = {});

// (n-1)^a < p^b < n^a for n_lo <= n <= n_hi.
void verify_power_interval(std::uint64_t a_exp, std::uint64_t b_exp, std::uint64_t n_lo, std::uint64_t n_hi,
                           std::uint64_t required, const ScanContext& ctx, const ReportSink& sink);
std::vector<IntervalReport> verify_power_interval(std::uint64_t a_exp, std::uint64_t b_exp, std::uint64_t n_lo,
                                                  std::uint64_t n_hi, std::uint64_t required,
                                                  bool early_exit = true);

// The open integer interval equivalent to (n-1)^a < p^b < n^a.
OpenInterval power_interval_bounds(std::uint64_t a_exp, std::uint64_t b_exp, std::uint64_t n);

// (n/2, n - 2k) for n_lo <= n <= n_hi; n_lo > 2k + 2.
void verify_bertrand_direct(std::uint64_t k, std::uint64_t n_lo, std::uint64_t n_hi, const ScanContext& ctx,
                            const ReportSink& sink);
std::vector<IntervalReport> verify_bertrand_direct(std::uint64_t k, std::uint64_t n_lo, std::uint64_t n_hi);

// ((p + 2k - 1)/2, p) for every prime p in [p_lo, p_hi].
void verify_auxiliary_bertrand(std::uint64_t k, std::uint64_t p_lo, std::uint64_t p_hi, const ScanContext& ctx,
                               const ReportSink& sink);
std::vector<IntervalReport> verify_auxiliary_bertrand(std::uint64_t k, std::uint64_t p_lo, std::uint64_t p_hi);

// (n^2, n^2 + n) labelled "lower" and (n^2 + n, (n+1)^2) labelled "upper".
void verify_oppermann(std::uint64_t n_lo, std::uint64_t n_hi, const ScanContext& ctx, const ReportSink& sink);
std::vector<IntervalReport> verify_oppermann(std::uint64_t n_lo, std::uint64_t n_hi);

// ((k-1) n / k, k n / (k-1)) with two primes required, k rational >= 2.
void verify_fractional(const Rational& k, std::uint64_t n_lo, std::uint64_t n_hi, const ScanContext& ctx,
                       const ReportSink& sink);
std::vector<IntervalReport> verify_fractional(const Rational& k, std::uint64_t n_lo, std::uint64_t n_hi);

// (prev^3, next^3) for pairs with prev_lo <= prev < prev_end and next <= next_max.
// required defaults to 4, or 2k for the strong form.
void verify_brocard_cubes(std::uint64_t prev_lo, std::uint64_t prev_end, std::uint64_t next_max,
                          std::uint64_t required, const ScanContext& ctx, const ReportSink& sink);
std::vector<IntervalReport> verify_brocard_cubes(std::uint64_t p_hi, std::uint64_t required = 4,
                                                 std::optional<std::uint64_t> k_strong = std::nullopt);

struct WeakBrocardResult {
  std::uint64_t pairs_scanned = 0;
  std::uint64_t filter_passed = 0;
};

// (prev^2, next^2) with two primes required, for pairs passing gap^20 > 3^20 prev.
WeakBrocardResult verify_weak_brocard_squares(std::uint64_t prev_lo, std::uint64_t prev_end, std::uint64_t next_max,
                                              const ScanContext& ctx, const ReportSink& sink);
std::vector<IntervalReport> verify_weak_brocard_squares(std::uint64_t p_hi);

// Prime counts in ((n-1)^3, n^3) tested against count^40 >= n^17.
struct GrowthEntry {
  std::uint64_t n = 0;
  std::uint64_t count = 0;     // a lower bound when early_exited
  std::uint64_t required = 0;  // smallest c with c^40 >= n^17
  bool early_exited = false;
  bool holds = false;
};

struct GrowthProfile {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::vector<GrowthEntry> entries;
  std::optional<std::uint64_t> largest_failure;
  // Smallest n0 >= n_lo such that the bound holds for every n in [n0, n_hi].
  std::uint64_t c0 = 0;
};

std::uint64_t growth_required(std::uint64_t n);

// exact = true counts every prime; otherwise scans stop at growth_required(n).
GrowthProfile growth_profile_cubes(std::uint64_t n_lo, std::uint64_t n_hi, bool exact = false);

// ---- interval / gap equivalence ---------------------------------------------------------------

struct EquivalenceResult {
  std::uint64_t pairs_checked = 0;
  std::vector<ViolationRecord> mismatches;
};

// For each consecutive pair in the range, compares the gap verdict with the
// verdict "every interval form contains a prime". Entries without an interval
// form throw DomainError.
EquivalenceResult check_interval_equivalence(const InequalitySpec& spec, std::uint64_t prev_lo,
                                             std::uint64_t prev_end, std::uint64_t next_max, const ScanContext& ctx,
                                             const SegmentedSieve& sieve);
EquivalenceResult check_interval_equivalence(const InequalitySpec& spec, std::uint64_t lo, std::uint64_t hi);

ViolationRecord violation_for(const std::string& check_id, const Params& params, const IntervalReport& r);

void to_json(nlohmann::json& j, const IntervalReport& r);
void from_json(const nlohmann::json& j, IntervalReport& r);

}  // namespace gapforge
