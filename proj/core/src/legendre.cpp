#include "gapforge/legendre.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "gapforge/errors.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/roots.hpp"

namespace gapforge {

LegendreTest is_legendre_prime(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(fmt::format("is_legendre_prime: {} is not prime", p));
  if (p == 2) return {true, 1};
  const std::uint64_t q = prev_prime_before(p);
  const std::uint64_t a = isqrt(p - 1);  // largest a with a^2 < p
  if (a * a > q) return {true, a * a};
  return {false, 0};
}

std::vector<LegendrePrime> legendre_primes_up_to(std::uint64_t limit) {
  std::vector<LegendrePrime> out;
  if (limit < 2) return out;
  const PrimeTable table = primes_up_to(limit);
  const auto primes = table.primes();
  out.push_back({2, 1, 1});
  for (std::size_t i = 1; i < primes.size(); ++i) {
    const std::uint64_t a = isqrt(primes[i] - 1);
    if (a * a > primes[i - 1]) out.push_back({primes[i], out.size() + 1, a});
  }
  return out;
}

namespace {

std::uint64_t checked_square(std::uint64_t j) {
  if (j > 0xFFFFFFFFULL) throw ResourceLimitError(fmt::format("{}^2 exceeds 64 bits", j));
  return j * j;
}

}  // namespace

std::vector<LegendrePrime> first_legendre_primes(std::size_t count) {
  std::vector<LegendrePrime> out;
  out.reserve(count);
  for (std::uint64_t j = 1; out.size() < count; ++j) {
    const std::uint64_t l = next_prime_after(checked_square(j));
    if (!out.empty() && out.back().value == l) continue;
    out.push_back({l, out.size() + 1, isqrt(l - 1)});
  }
  return out;
}

LegendreIndex::LegendreIndex(std::uint64_t n_max) {
  images_.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::uint64_t l = next_prime_after(checked_square(n));
    if (primes_.empty() || primes_.back().value != l) {
      primes_.push_back({l, primes_.size() + 1, isqrt(l - 1)});
    }
    images_.push_back({n, primes_.back()});
  }
}

const LegendreMapEntry& LegendreIndex::map(std::uint64_t n) const {
  if (n < 1 || n > images_.size()) throw DomainError(fmt::format("legendre map index {} outside [1, {}]", n, images_.size()));
  return images_[n - 1];
}

LegendreMapEntry legendre_map(std::uint64_t n) {
  if (n < 1) throw DomainError("legendre_map: n must be positive");
  return LegendreIndex(n).map(n);
}

std::vector<ViolationRecord> check_map_injective(std::uint64_t n_max) {
  std::vector<ViolationRecord> out;
  if (n_max < 2) return out;
  const LegendreIndex index(n_max);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const auto& a = index.map(n - 1);
    const auto& b = index.map(n);
    if (a.l.value == b.l.value) {
      out.push_back({"LEGENDRE_INJECTIVE", {{"n_max", std::to_string(n_max)}}, Location(n),
                     fmt::format("f({})={}", n - 1, a.l.value), fmt::format("f({})={}", n, b.l.value)});
    }
  }
  return out;
}

std::vector<ViolationRecord> check_legendre_gap_corollary(std::uint64_t n_max) {
  std::vector<ViolationRecord> out;
  if (n_max < 2) return out;
  const auto l = first_legendre_primes(n_max);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t d = l[n - 1].value - l[n - 2].value;
    const char* side = nullptr;
    std::string rhs;
    if (!(n < d)) {
      side = "lower";
      rhs = std::to_string(n);
    } else if (!(d < 3 * n - 1)) {
      side = "upper";
      rhs = std::to_string(3 * n - 1);
    }
    if (side != nullptr) {
      out.push_back({"LEGENDRE_GAP_COROLLARY", {{"side", side}}, Location(n),
                     fmt::format("l_{}-l_{}={}", n, n - 1, d), rhs});
    }
  }
  return out;
}

LegendreGapConjectureReport check_legendre_gap_conjecture(std::uint64_t limit) {
  LegendreGapConjectureReport report;
  for (const auto& l : legendre_primes_up_to(limit)) {
    if (l.value == 2) {
      report.skipped_no_predecessor.push_back(2);
      continue;
    }
    const PrimePair pair = PrimePair::of(prev_prime_before(l.value), l.value);
    ++report.checked;
    const u128 d = pair.gap - 1;
    if (pair.gap > 1 && !(d * d < static_cast<u128>(4) * pair.next)) {
      report.violations.push_back({"LEGENDRE_GAP_CONJECTURE", {}, Location(pair),
                                   fmt::format("(gap-1)^2={}", static_cast<std::uint64_t>(d * d)),
                                   "4p=" + to_string(big(pair.next) * 4)});
    }
  }
  return report;
}

StrongLegendreReport check_strong_legendre_equivalence(std::uint64_t limit) {
  StrongLegendreReport report;
  report.limit = limit;
  report.n_max = isqrt(limit);
  if (report.n_max < 2) return report;
  const std::uint64_t top = report.n_max * report.n_max;

  std::set<std::uint64_t> from_pairs;
  for (const auto& l : legendre_primes_up_to(top - 1)) {
    const std::uint64_t next = next_prime_after(l.value);
    if (is_legendre_prime(next).is_legendre) {
      report.adjacent_pairs.push_back(PrimePair::of(l.value, next));
      from_pairs.insert(isqrt(l.value) + 1);
    }
  }

  const IntervalScanner scanner;
  std::set<std::uint64_t> from_counts;
  for (std::uint64_t n = 2; n <= report.n_max; ++n) {
    const auto scan = scanner.scan((n - 1) * (n - 1), n * n, 2);
    if (scan.count < 2) {
      report.sparse_intervals.push_back(n);
      from_counts.insert(n);
    }
  }
  report.corroborated = from_pairs == from_counts;
  return report;
}

void to_json(nlohmann::json& j, const LegendrePrime& l) {
  j = nlohmann::json{{"index", l.index}, {"value", l.value}, {"square_witness", l.square_witness}};
}

}  // namespace gapforge
