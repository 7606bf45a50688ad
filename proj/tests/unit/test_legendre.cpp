#include <doctest.h>

#include <set>

#include "gapforge/errors.hpp"
#include "gapforge/legendre.hpp"
#include "gapforge/roots.hpp"
#include "gapforge/sieve.hpp"
#include "oracle.hpp"

using namespace gapforge;

namespace {

std::vector<std::uint64_t> values(const std::vector<LegendrePrime>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& l : v) out.push_back(l.value);
  return out;
}

// Primes p with a square strictly between the previous prime and p, by brute force.
std::vector<std::uint64_t> brute_legendre(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  const auto primes = oracle::trial_division_primes(2, limit);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t prev = i == 0 ? 0 : primes[i - 1];
    for (std::uint64_t a = 1; a * a < primes[i]; ++a) {
      if (a * a > prev) {
        out.push_back(primes[i]);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("legendre") {
  TEST_CASE("is_legendre_prime examples") {
    const LegendreTest five = is_legendre_prime(5);
    CHECK(five.is_legendre);
    CHECK(five.witness == 4);
    CHECK_FALSE(is_legendre_prime(7).is_legendre);
    CHECK(is_legendre_prime(17).witness == 16);
    CHECK(is_legendre_prime(2).is_legendre);
    CHECK(is_legendre_prime(2).witness == 1);
    CHECK_THROWS_AS(is_legendre_prime(9), DomainError);
  }

  TEST_CASE("legendre_primes_up_to examples") {
    CHECK(values(legendre_primes_up_to(130)) == std::vector<std::uint64_t>{2, 5, 11, 17, 29, 37, 53, 67, 83, 101, 127});
    CHECK(values(legendre_primes_up_to(4)) == std::vector<std::uint64_t>{2});
    CHECK(legendre_primes_up_to(1).empty());
    CHECK(legendre_primes_up_to(1000).size() == 31);
  }

  TEST_CASE("legendre_primes_up_to matches brute force") {
    CHECK(values(legendre_primes_up_to(200'000)) == brute_legendre(200'000));
  }

  TEST_CASE("square witnesses validate") {
    for (const auto& l : legendre_primes_up_to(1'000'000)) {
      if (l.value == 2) continue;
      const std::uint64_t a = l.square_witness;
      const std::uint64_t a2 = a * a;
      REQUIRE(is_legendre_prime(l.value).witness == a2);
      REQUIRE(prev_prime_before(l.value) < a2);
      REQUIRE(a2 < l.value);
    }
  }

  TEST_CASE("indices are ordinals") {
    const auto v = legendre_primes_up_to(1000);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i].index == i + 1);
  }

  TEST_CASE("first_legendre_primes agrees with the limit form") {
    const auto a = first_legendre_primes(200);
    const auto b = legendre_primes_up_to(a.back().value);
    CHECK(values(a) == values(b));
  }

  TEST_CASE("legendre_map examples") {
    CHECK(legendre_map(2).l.value == 5);
    CHECK(legendre_map(3).l.value == 11);
    CHECK(legendre_map(5).l.value == 29);
    CHECK(legendre_map(1).l.value == 2);
    const LegendreIndex index(100);
    for (std::uint64_t n = 1; n <= 100; ++n) CHECK(index.map(n).l.value == legendre_map(n).l.value);
  }

  TEST_CASE("check_map_injective") {
    CHECK(check_map_injective(6).empty());
    CHECK(check_map_injective(100).empty());
    CHECK(check_map_injective(1).empty());
  }

  TEST_CASE("gap corollary") {
    CHECK(check_legendre_gap_corollary(5).empty());
    const auto a = check_legendre_gap_corollary(2000);
    const auto b = check_legendre_gap_corollary(2000);
    CHECK(a == b);
  }

  TEST_CASE("gap conjecture") {
    const LegendreGapConjectureReport r = check_legendre_gap_conjecture(130);
    CHECK(r.skipped_no_predecessor == std::vector<std::uint64_t>{2});
    CHECK(r.checked == 10);
    CHECK(r.violations.empty());
    CHECK(check_legendre_gap_conjecture(1'000'000).violations.empty());
  }

  TEST_CASE("strong Legendre corroboration") {
    const StrongLegendreReport r = check_strong_legendre_equivalence(130);
    CHECK(r.adjacent_pairs.empty());
    CHECK(r.sparse_intervals.empty());
    CHECK(r.corroborated);
    const StrongLegendreReport tiny = check_strong_legendre_equivalence(3);
    CHECK(tiny.adjacent_pairs.empty());
    CHECK(tiny.corroborated);
    const StrongLegendreReport big = check_strong_legendre_equivalence(10'000'000);
    CHECK(big.corroborated);
  }

  TEST_CASE("sparse intervals by brute force") {
    // n with fewer than two primes in ((n-1)^2, n^2), for n <= 300.
    std::set<std::uint64_t> expected;
    for (std::uint64_t n = 2; n <= 300; ++n) {
      if (oracle::trial_division_primes((n - 1) * (n - 1) + 1, n * n - 1).size() < 2) expected.insert(n);
    }
    const StrongLegendreReport r = check_strong_legendre_equivalence(300 * 300);
    CHECK(std::set<std::uint64_t>(r.sparse_intervals.begin(), r.sparse_intervals.end()) == expected);
    CHECK(r.corroborated);
  }
}
