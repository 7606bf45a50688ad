#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "gapforge/sieve.hpp"

namespace gapforge {

struct AndricaValue {
  long double value = 0;          // sqrt(next) - sqrt(prev), absolute error < 1e-15
  bool certified_below_one = false;  // decided by (gap - 1)^2 < 4 prev, never by value
};

// sqrt(next) - sqrt(prev), evaluated as gap / (sqrt(next) + sqrt(prev)) so no
// cancellation occurs.
AndricaValue andrica_value(const PrimePair& pair);

// Exact form of sqrt(next) - sqrt(prev) < 1.
bool andrica_below_one_exact(const PrimePair& pair);

enum class CramerDomain { AllowTwo, RejectTwo };

// gap / ln^2(prev). prev = 2 throws DomainError under RejectTwo.
long double cramer_ratio(const PrimePair& pair, CramerDomain domain = CramerDomain::AllowTwo);

struct GapRecord {
  PrimePair pair;
  long double andrica = 0;
  long double cramer = 0;

  static GapRecord of(const PrimePair& pair);
};

// Every pair with lo <= prev and next <= hi, in increasing order.
template <typename F>
void for_each_gap(std::uint64_t lo, std::uint64_t hi, F&& f, const SieveConfig& config = {}) {
  if (lo < 2) lo = 2;
  if (hi <= lo) return;
  SegmentedSieve sieve(hi, config);
  for_each_prime_pair(sieve, lo, hi, hi, [&](const PrimePair& pair) { f(GapRecord::of(pair)); });
}

std::vector<GapRecord> gap_stream(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// Running maxima. Ties go to the smaller prev, so merges are associative and
// commutative regardless of how a range was sharded.
struct GapExtremes {
  std::uint64_t range_lo = 0;
  std::uint64_t range_hi = 0;
  std::uint64_t pairs = 0;
  PrimePair max_gap_pair;
  PrimePair max_andrica_pair;
  long double max_andrica = -1;
  PrimePair max_cramer_pair;
  long double max_cramer = -1;

  void absorb(const GapRecord& r);
  void merge(const GapExtremes& other);
  bool empty() const { return pairs == 0; }
};

// Throws DomainError when the range holds no pair.
GapExtremes extremes(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// Andrica maxima per decade, keyed by the decade of next: pair belongs to
// decade d when 10^d <= next < 10^(d+1).
class DecadeMaxima {
 public:
  struct Entry {
    PrimePair pair;
    long double value = -1;
  };

  void absorb(const GapRecord& r);
  void merge(const DecadeMaxima& other);
  const std::map<int, Entry>& entries() const { return entries_; }
  // True when maxima never increase from decade `from` upward.
  bool non_increasing_from(int from) const;

  static int decade_of(std::uint64_t n);

 private:
  std::map<int, Entry> entries_;
};

DecadeMaxima andrica_decade_maxima(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// CSV columns prev,next,gap,andrica,cramer with 12 decimals.
void write_gap_csv_header(std::ostream& os);
void write_gap_csv_row(std::ostream& os, const GapRecord& r);

}  // namespace gapforge
