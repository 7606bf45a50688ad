#include "gapforge/gaps.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gapforge/errors.hpp"

namespace gapforge {

bool andrica_below_one_exact(const PrimePair& pair) {
  // sqrt(p) - sqrt(q) < 1  <=>  p < q + 2 sqrt(q) + 1  <=>  (gap - 1)^2 < 4q  (gap >= 1)
  const u128 d = pair.gap - 1;
  return d * d < static_cast<u128>(4) * pair.prev;
}

AndricaValue andrica_value(const PrimePair& pair) {
  const long double s = std::sqrt(static_cast<long double>(pair.next)) + std::sqrt(static_cast<long double>(pair.prev));
  return {static_cast<long double>(pair.gap) / s, andrica_below_one_exact(pair)};
}

long double cramer_ratio(const PrimePair& pair, CramerDomain domain) {
  if (pair.prev < 2) throw DomainError("cramer_ratio: prev must be prime");
  if (pair.prev == 2 && domain == CramerDomain::RejectTwo) {
    throw DomainError("cramer_ratio: prev = 2 rejected by configuration");
  }
  const long double l = std::log(static_cast<long double>(pair.prev));
  return static_cast<long double>(pair.gap) / (l * l);
}

GapRecord GapRecord::of(const PrimePair& pair) {
  return {pair, andrica_value(pair).value, cramer_ratio(pair)};
}

std::vector<GapRecord> gap_stream(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  std::vector<GapRecord> out;
  for_each_gap(lo, hi, [&](const GapRecord& r) { out.push_back(r); }, config);
  return out;
}

namespace {

// Strictly larger value, or equal value at a smaller prev.
bool better(long double value, std::uint64_t prev, long double best, std::uint64_t best_prev) {
  return value > best || (value == best && prev < best_prev);
}

}  // namespace

void GapExtremes::absorb(const GapRecord& r) {
  if (pairs == 0 || better(static_cast<long double>(r.pair.gap), r.pair.prev,
                           static_cast<long double>(max_gap_pair.gap), max_gap_pair.prev)) {
    max_gap_pair = r.pair;
  }
  if (pairs == 0 || better(r.andrica, r.pair.prev, max_andrica, max_andrica_pair.prev)) {
    max_andrica_pair = r.pair;
    max_andrica = r.andrica;
  }
  if (pairs == 0 || better(r.cramer, r.pair.prev, max_cramer, max_cramer_pair.prev)) {
    max_cramer_pair = r.pair;
    max_cramer = r.cramer;
  }
  ++pairs;
}

void GapExtremes::merge(const GapExtremes& other) {
  if (other.pairs == 0) return;
  if (pairs == 0) {
    const auto lo = range_lo, hi = range_hi;
    *this = other;
    if (lo != 0 || hi != 0) {
      range_lo = std::min(lo, other.range_lo);
      range_hi = std::max(hi, other.range_hi);
    }
    return;
  }
  if (better(static_cast<long double>(other.max_gap_pair.gap), other.max_gap_pair.prev,
             static_cast<long double>(max_gap_pair.gap), max_gap_pair.prev)) {
    max_gap_pair = other.max_gap_pair;
  }
  if (better(other.max_andrica, other.max_andrica_pair.prev, max_andrica, max_andrica_pair.prev)) {
    max_andrica_pair = other.max_andrica_pair;
    max_andrica = other.max_andrica;
  }
  if (better(other.max_cramer, other.max_cramer_pair.prev, max_cramer, max_cramer_pair.prev)) {
    max_cramer_pair = other.max_cramer_pair;
    max_cramer = other.max_cramer;
  }
  pairs += other.pairs;
  range_lo = std::min(range_lo, other.range_lo);
  range_hi = std::max(range_hi, other.range_hi);
}

GapExtremes extremes(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  GapExtremes ex;
  ex.range_lo = lo;
  ex.range_hi = hi;
  for_each_gap(lo, hi, [&](const GapRecord& r) { ex.absorb(r); }, config);
  if (ex.empty()) throw DomainError(fmt::format("no consecutive prime pair inside [{}, {}]", lo, hi));
  return ex;
}

int DecadeMaxima::decade_of(std::uint64_t n) {
  int d = 0;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

void DecadeMaxima::absorb(const GapRecord& r) {
  auto [it, inserted] = entries_.try_emplace(decade_of(r.pair.next), Entry{r.pair, r.andrica});
  if (!inserted && better(r.andrica, r.pair.prev, it->second.value, it->second.pair.prev)) {
    it->second = Entry{r.pair, r.andrica};
  }
}

void DecadeMaxima::merge(const DecadeMaxima& other) {
  for (const auto& [d, e] : other.entries_) {
    auto [it, inserted] = entries_.try_emplace(d, e);
    if (!inserted && better(e.value, e.pair.prev, it->second.value, it->second.pair.prev)) it->second = e;
  }
}

bool DecadeMaxima::non_increasing_from(int from) const {
  const Entry* prev = nullptr;
  for (auto it = entries_.lower_bound(from); it != entries_.end(); ++it) {
    if (prev != nullptr && it->second.value > prev->value) return false;
    prev = &it->second;
  }
  return true;
}

DecadeMaxima andrica_decade_maxima(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  DecadeMaxima dm;
  for_each_gap(lo, hi, [&](const GapRecord& r) { dm.absorb(r); }, config);
  return dm;
}

void write_gap_csv_header(std::ostream& os) { os << "prev,next,gap,andrica,cramer\n"; }

void write_gap_csv_row(std::ostream& os, const GapRecord& r) {
  os << fmt::format("{},{},{},{:.12f},{:.12f}\n", r.pair.prev, r.pair.next, r.pair.gap,
                    static_cast<double>(r.andrica), static_cast<double>(r.cramer));
}

}  // namespace gapforge
