#include <doctest.h>

#include <random>

#include "gapforge/errors.hpp"
#include "gapforge/verify.hpp"
#include "oracle.hpp"

using namespace gapforge;

namespace {

const IntervalReport& at(const std::vector<IntervalReport>& v, std::uint64_t n, const std::string& label = {}) {
  for (const auto& r : v) {
    if (r.location.key() == n && r.label == label) return r;
  }
  throw std::runtime_error("no report for " + std::to_string(n));
}

std::uint64_t brute_count(std::uint64_t lo, std::uint64_t hi) {
  return hi <= lo + 1 ? 0 : oracle::trial_division_primes(lo + 1, hi - 1).size();
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("power intervals: cubes") {
    const auto v = verify_power_interval(3, 1, 2, 10, 1, false);
    REQUIRE(v.size() == 9);
    const IntervalReport& n2 = at(v, 2);
    CHECK(n2.lo == 1);
    CHECK(n2.hi == 8);
    CHECK(n2.found == 4);
    CHECK(n2.satisfied);
    CHECK(at(v, 10).found == 39);
    CHECK(at(v, 3).found == 5);
    const auto strong = verify_power_interval(3, 1, 10, 10, 2);
    CHECK(strong[0].satisfied);
    CHECK(strong[0].early_exited);
  }

  TEST_CASE("power interval bounds are exact") {
    // (n-1)^40 < p^19 < n^40 for n = 3: p in {5, 7}.
    const OpenInterval b = power_interval_bounds(40, 19, 3);
    for (std::uint64_t p = 2; p < 20; ++p) {
      const BigInt p19 = oracle::pow(big(p), 19);
      const bool inside = oracle::pow(2, 40) < p19 && p19 < oracle::pow(3, 40);
      CHECK_MESSAGE(inside == (b.lo < big(p) && big(p) < b.hi), p);
    }
    const auto v = verify_power_interval(40, 19, 3, 3, 1, false);
    CHECK(v[0].found == 2);
    CHECK(v[0].witnesses == std::vector<std::uint64_t>{5, 7});
  }

  TEST_CASE("power interval bounds match brute force membership") {
    for (auto [a, b] : {std::pair{3UL, 1UL}, {40UL, 19UL}, {2UL, 1UL}, {5UL, 2UL}}) {
      for (std::uint64_t n = 2; n <= 40; ++n) {
        const OpenInterval iv = power_interval_bounds(a, b, n);
        const BigInt lo_pow = oracle::pow(big(n - 1), a), hi_pow = oracle::pow(big(n), a);
        // Check a window of integers around both ends.
        for (BigInt x = iv.lo - 3; x <= iv.lo + 3; ++x) {
          if (x < 0) continue;
          const BigInt xb = oracle::pow(x, b);
          CHECK((lo_pow < xb && xb < hi_pow) == (iv.lo < x && x < iv.hi));
        }
        for (BigInt x = iv.hi - 3; x <= iv.hi + 3; ++x) {
          if (x < 0) continue;
          const BigInt xb = oracle::pow(x, b);
          CHECK((lo_pow < xb && xb < hi_pow) == (iv.lo < x && x < iv.hi));
        }
      }
    }
  }

  TEST_CASE("bertrand direct") {
    const auto v = verify_bertrand_direct(2, 16, 17);
    CHECK(at(v, 16).satisfied);
    CHECK(at(v, 16).witnesses == std::vector<std::uint64_t>{11});
    CHECK(at(v, 17).satisfied);
    const auto k1 = verify_bertrand_direct(1, 7, 7);
    CHECK_FALSE(k1[0].satisfied);
    CHECK(k1[0].found == 0);
    CHECK_THROWS_AS(verify_bertrand_direct(2, 6, 10), DomainError);
  }

  TEST_CASE("auxiliary bertrand") {
    const auto k2 = verify_auxiliary_bertrand(2, 17, 17);
    REQUIRE(k2.size() == 1);
    CHECK(k2[0].satisfied);
    CHECK(k2[0].witnesses.front() == 11);
    CHECK(verify_auxiliary_bertrand(1, 11, 11)[0].witnesses == std::vector<std::uint64_t>{7});
    CHECK_FALSE(verify_auxiliary_bertrand(3, 11, 11)[0].satisfied);
    // One report per prime in range.
    CHECK(verify_auxiliary_bertrand(1, 2, 100).size() == 25);
  }

  TEST_CASE("oppermann halves") {
    const auto v = verify_oppermann(2, 4);
    CHECK(v.size() == 6);
    CHECK(at(v, 2, "lower").witnesses == std::vector<std::uint64_t>{5});
    CHECK(at(v, 2, "upper").witnesses == std::vector<std::uint64_t>{7});
    CHECK(at(v, 4, "lower").witnesses.front() == 17);
    CHECK(at(v, 4, "upper").witnesses == std::vector<std::uint64_t>{23});
    CHECK(at(v, 3, "lower").witnesses == std::vector<std::uint64_t>{11});
    CHECK(at(v, 3, "upper").witnesses == std::vector<std::uint64_t>{13});
    for (const auto& r : verify_oppermann(2, 3000)) CHECK(r.satisfied);
  }

  TEST_CASE("fractional intervals") {
    const auto k2 = verify_fractional(Rational(2), 10, 10);
    CHECK(k2[0].lo == 5);
    CHECK(k2[0].hi == 20);
    CHECK(k2[0].satisfied);
    const auto k3 = verify_fractional(Rational(3), 30, 30);
    CHECK(k3[0].lo == 20);
    CHECK(k3[0].hi == 45);
    CHECK(k3[0].satisfied);
    const auto small = verify_fractional(Rational(2), 4, 4);
    CHECK(small[0].found >= 2);
    CHECK(small[0].required == 2);
  }

  TEST_CASE("brocard cubes") {
    const auto v = verify_brocard_cubes(30, 4);
    CHECK(at(v, 2).found >= 4);
    CHECK(at(v, 2).satisfied);
    CHECK(at(v, 3).satisfied);
    const auto strong = verify_brocard_cubes(3, 4, 3);
    REQUIRE(strong.size() == 1);
    CHECK(strong[0].required == 6);
    CHECK(strong[0].found == 5);
    CHECK_FALSE(strong[0].satisfied);
  }

  TEST_CASE("weak brocard squares") {
    const auto v = verify_weak_brocard_squares(30);
    bool saw_7 = false, saw_23 = false, saw_2 = false;
    for (const auto& r : v) {
      saw_7 = saw_7 || r.location.key() == 7;
      saw_23 = saw_23 || r.location.key() == 23;
      saw_2 = saw_2 || r.location.key() == 2;
      CHECK(r.satisfied);
    }
    CHECK(saw_7);
    CHECK(saw_23);
    CHECK_FALSE(saw_2);
  }

  TEST_CASE("growth profile") {
    CHECK(growth_required(2) == 2);
    // c^40 >= n^17 boundary, checked with big integers.
    for (std::uint64_t n : {2ULL, 10ULL, 777ULL, 10'000ULL}) {
      const std::uint64_t c = growth_required(n);
      CHECK(oracle::pow(big(c), 40) >= oracle::pow(big(n), 17));
      CHECK(oracle::pow(big(c - 1), 40) < oracle::pow(big(n), 17));
    }
    const GrowthProfile exact = growth_profile_cubes(2, 10, true);
    CHECK(exact.entries.front().count == 4);
    CHECK(exact.entries[1].count == 5);
    CHECK(exact.entries.back().count == 39);
    CHECK_FALSE(exact.largest_failure.has_value());
    CHECK(exact.c0 == 2);
    const GrowthProfile fast = growth_profile_cubes(2, 2000);
    CHECK(fast.c0 == 2);
    for (const auto& e : fast.entries) CHECK(e.holds);
  }

  TEST_CASE("early exit soundness") {
    std::mt19937_64 rng(9);
    const auto v = verify_power_interval(3, 1, 2, 3000, 2, true);
    for (int i = 0; i < 1000; ++i) {
      const IntervalReport& r = v[rng() % v.size()];
      if (!r.early_exited) continue;
      REQUIRE(r.satisfied);
      const IntervalScan full = primes_in_open_interval(r.lo, r.hi);
      REQUIRE(full.count >= r.required);
    }
  }

  TEST_CASE("table lookups match sieved counts") {
    const ScanContext with_table = context_with_table(1'000'000, false);
    const ScanContext plain{nullptr, {}, false};
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t lo = rng() % 990'000, hi = lo + rng() % 10'000;
      const IntervalReport a = with_table.scan(Location(lo), lo, hi, 1);
      const IntervalReport b = plain.scan(Location(lo), lo, hi, 1);
      REQUIRE(a.found == b.found);
      REQUIRE(a.witnesses == b.witnesses);
      if (i < 40) REQUIRE(a.found == brute_count(lo, hi));
    }
  }

  TEST_CASE("report records") {
    const auto v = verify_bertrand_direct(1, 7, 7);
    const ViolationRecord rec = violation_for("BERTRAND_DIRECT", {{"k", "1"}}, v[0]);
    CHECK(rec.location == Location(std::uint64_t{7}));
    CHECK(rec.lhs.find("found=0") == 0);
    CHECK(rec.rhs == "required=1");
    nlohmann::json j = v[0];
    CHECK(j.get<IntervalReport>() == v[0]);
  }
}
