#include <doctest.h>

#include <mpfr.h>

#include <random>

#include "gapforge/errors.hpp"
#include "gapforge/inequality.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/verify.hpp"
#include "oracle.hpp"

using namespace gapforge;

namespace {

Scalar q(std::int64_t n, std::int64_t d = 1) { return Scalar(Rational(n, d)); }

// Direct evaluation of each inequality in its real form at 4096 bits. Returns
// nullopt when the two sides are too close to call at that precision.
class RealOracle {
 public:
  RealOracle() {
    for (mpfr_t* v : {&l_, &r_, &t_, &u_}) mpfr_init2(*v, 4096);
  }
  ~RealOracle() {
    for (mpfr_t* v : {&l_, &r_, &t_, &u_}) mpfr_clear(*v);
  }

  std::optional<bool> holds(const InequalitySpec& s, const PrimePair& p) {
    const mpq_class prev(std::to_string(p.prev)), next(std::to_string(p.next)), gap(std::to_string(p.gap));
    auto set_q = [](mpfr_t x, const mpq_class& v) { mpfr_set_q(x, v.get_mpq_t(), MPFR_RNDN); };
    auto param = [&](const char* name) { return s.params.at(name).to_mpq(); };
    bool flip = false;    // holds iff l > r instead of l < r
    bool non_strict = false;
    set_q(l_, gap);
    switch (s.id) {
      case InequalityId::GAP_BERTRAND: {
        const mpq_class rhs = (next - 2 * param("k") + 1) / 2;
        return gap < rhs;
      }
      case InequalityId::GAP_FRACTIONAL: {
        const mpq_class k = param("k");
        return gap < prev / (k - 1) && gap < next / k;
      }
      case InequalityId::GAP_EXP: {
        const mpq_class k = param("k");
        set_q(t_, next);
        set_q(u_, (k - 1) / k);
        mpfr_pow(r_, t_, u_, MPFR_RNDN);
        set_q(u_, k - mpq_class(1, 2));
        mpfr_mul(r_, r_, u_, MPFR_RNDN);
        break;
      }
      case InequalityId::GAP_LEGENDRE:
        set_q(t_, next);
        mpfr_sqrt(r_, t_, MPFR_RNDN);
        mpfr_mul_ui(r_, r_, 2, MPFR_RNDN);
        mpfr_add_ui(r_, r_, 1, MPFR_RNDN);
        break;
      case InequalityId::GAP_OPP_NEXT:
        set_q(t_, next);
        mpfr_sqrt(r_, t_, MPFR_RNDN);
        break;
      case InequalityId::GAP_OPP_PREV:
        set_q(t_, prev);
        mpfr_sqrt(r_, t_, MPFR_RNDN);
        break;
      case InequalityId::GAP_CRAMER_EPS: {
        const mpq_class e = param("epsilon");
        set_q(t_, next);
        set_q(u_, e / (1 + e));
        mpfr_pow(r_, t_, u_, MPFR_RNDN);
        set_q(u_, mpq_class(1, 2) + e);
        mpfr_mul(r_, r_, u_, MPFR_RNDN);
        break;
      }
      case InequalityId::GAP_DUSART:
        // next <= prev + prev / ln^2 prev
        set_q(l_, next);
        set_q(t_, prev);
        mpfr_log(u_, t_, MPFR_RNDN);
        mpfr_sqr(u_, u_, MPFR_RNDN);
        mpfr_div(r_, t_, u_, MPFR_RNDN);
        mpfr_add(r_, r_, t_, MPFR_RNDN);
        non_strict = true;
        break;
      case InequalityId::GAP_BHP:
        set_q(t_, next);
        set_q(u_, mpq_class(21, 40));
        mpfr_pow(r_, t_, u_, MPFR_RNDN);
        break;
      case InequalityId::FILTER_WEAK_BROCARD:
        set_q(t_, prev);
        set_q(u_, mpq_class(1, 20));
        mpfr_pow(r_, t_, u_, MPFR_RNDN);
        mpfr_mul_ui(r_, r_, 3, MPFR_RNDN);
        flip = true;
        break;
    }
    mpfr_sub(t_, l_, r_, MPFR_RNDN);
    if (mpfr_zero_p(t_) || mpfr_get_exp(t_) < -3500) {
      if (non_strict && mpfr_zero_p(t_)) return true;
      return std::nullopt;
    }
    const bool less = mpfr_sgn(t_) < 0;
    return flip ? !less : less;
  }

 private:
  mpfr_t l_, r_, t_, u_;
};

std::vector<InequalitySpec> sample_specs() {
  using I = InequalityId;
  return {
      InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(1)}}),
      InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(7, 2)}}),
      InequalitySpec::make(I::GAP_EXP, {{"k", q(3)}}),
      InequalitySpec::make(I::GAP_EXP, {{"k", q(40, 19)}}),
      InequalitySpec::make(I::GAP_EXP, {{"k", q(1, 3)}}),
      InequalitySpec::make(I::GAP_EXP, {{"k", q(3, 4)}}),
      InequalitySpec::make(I::GAP_LEGENDRE),
      InequalitySpec::make(I::GAP_OPP_NEXT),
      InequalitySpec::make(I::GAP_OPP_PREV),
      InequalitySpec::make(I::GAP_CRAMER_EPS, {{"epsilon", q(1)}}),
      InequalitySpec::make(I::GAP_CRAMER_EPS, {{"epsilon", q(1, 10)}}),
      InequalitySpec::make(I::GAP_FRACTIONAL, {{"k", q(2)}}),
      InequalitySpec::make(I::GAP_FRACTIONAL, {{"k", q(5, 2)}}),
      InequalitySpec::make(I::GAP_BHP),
      InequalitySpec::make(I::FILTER_WEAK_BROCARD),
  };
}

InequalitySpec as_guarded(InequalitySpec s) {
  s.mode = ComparisonMode::GUARDED_REAL;
  return s;
}

std::vector<PrimePair> sample_pairs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<PrimePair> out;
  for (int i = 0; i < count; ++i) {
    const unsigned bits = 2 + rng() % 62;
    std::uint64_t p = rng() >> (64 - bits);
    if (p < 3) p = 3;
    if (p > 18'446'744'073'709'551'000ULL) p = 18'446'744'073'709'551'000ULL;
    const std::uint64_t next = next_prime_after(p);
    out.push_back(PrimePair::of(prev_prime_before(next), next));
  }
  return out;
}

}  // namespace

TEST_SUITE("inequality") {
  TEST_CASE("identifiers round trip") {
    for (InequalityId id : kAllInequalities) CHECK(parse_inequality_id(inequality_name(id)) == id);
    CHECK_FALSE(parse_inequality_id("GAP_NOPE").has_value());
  }

  TEST_CASE("parameter validation") {
    using I = InequalityId;
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_EXP), DomainError);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_CRAMER_EPS), DomainError);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_LEGENDRE, {{"k", q(2)}}), DomainError);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_FRACTIONAL, {{"k", q(1)}}), DomainError);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(1, 2)}}), DomainError);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_CRAMER_EPS, {{"epsilon", q(0)}}), DomainError);
    CHECK(InequalitySpec::make(I::GAP_BERTRAND).param("k") == q(1));
  }

  TEST_CASE("mode selection") {
    using I = InequalityId;
    CHECK(InequalitySpec::make(I::GAP_LEGENDRE).mode == ComparisonMode::EXACT_INTEGER);
    CHECK(InequalitySpec::make(I::GAP_DUSART).mode == ComparisonMode::GUARDED_REAL);
    CHECK(InequalitySpec::make(I::GAP_EXP, {{"k", Scalar::parse("~3")}}).mode == ComparisonMode::GUARDED_REAL);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_DUSART, {}, ComparisonMode::EXACT_INTEGER), UnsupportedModeError);
    CHECK_THROWS_AS(InequalitySpec::make(I::GAP_EXP, {{"k", Scalar::parse("~3")}}, ComparisonMode::EXACT_INTEGER),
                    UnsupportedModeError);
    CHECK(InequalitySpec::make(I::GAP_LEGENDRE, {}, ComparisonMode::GUARDED_REAL).mode == ComparisonMode::GUARDED_REAL);
    CHECK_FALSE(admits_exact(I::GAP_DUSART));
    CHECK(admits_exact(I::GAP_BHP));
  }

  TEST_CASE("worked examples") {
    using I = InequalityId;
    const PrimePair p711 = PrimePair::of(7, 11);
    CHECK(evaluate(InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(1)}}), p711).holds == Tri::True);
    const Verdict opp = evaluate(InequalitySpec::make(I::GAP_OPP_NEXT), p711);
    CHECK(opp.holds == Tri::False);
    CHECK(opp.lhs == "16");
    CHECK(opp.rhs == "11");
    CHECK(evaluate(InequalitySpec::make(I::GAP_EXP, {{"k", q(3)}}), PrimePair::of(23, 29)).holds == Tri::True);
    // gap 1 never exceeds the filter bound.
    CHECK(evaluate(InequalitySpec::make(I::FILTER_WEAK_BROCARD), PrimePair::of(2, 3)).holds == Tri::False);
    CHECK(evaluate(InequalitySpec::make(I::FILTER_WEAK_BROCARD), p711).holds == Tri::True);
    // ln^2 3 = 1.2069..., 3 (1 + 1/1.2069) = 5.486 >= 5.
    CHECK(evaluate(InequalitySpec::make(I::GAP_DUSART), PrimePair::of(3, 5)).holds == Tri::True);
    CHECK(evaluate(InequalitySpec::make(I::GAP_DUSART), PrimePair::of(7, 11)).holds == Tri::False);
    CHECK(evaluate(InequalitySpec::make(I::GAP_DUSART), PrimePair::of(113, 127)).holds == Tri::False);
    CHECK(evaluate(InequalitySpec::make(I::GAP_DUSART), PrimePair::of(1327, 1361)).holds == Tri::False);
  }

  TEST_CASE("exact boundaries on synthetic pairs") {
    using I = InequalityId;
    // gap^2 = next exactly: strict inequality fails.
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_OPP_NEXT), PrimePair::of(91, 100)).holds == Tri::True);
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_OPP_NEXT), PrimePair::of(90, 100)).holds == Tri::False);
    // 2 gap = next - 2k + 1 exactly.
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(1)}}), PrimePair::of(5, 10)).holds == Tri::False);
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(1)}}), PrimePair::of(6, 10)).holds == Tri::True);
    // BHP at next = 2^40: next^(21/40) = 2^21.
    const std::uint64_t n = std::uint64_t{1} << 40;
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_BHP), PrimePair::of(n - (1 << 21), n)).holds == Tri::False);
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_BHP), PrimePair::of(n - (1 << 21) + 1, n)).holds == Tri::True);
    // Exponent k <= 1/2 makes the right side non-positive.
    CHECK(evaluate_exact(InequalitySpec::make(I::GAP_EXP, {{"k", q(1, 2)}}), PrimePair::of(2, 3)).holds == Tri::False);
  }

  TEST_CASE("exact verdicts match the real oracle on prime pairs") {
    RealOracle oracle;
    const auto specs = sample_specs();
    const auto pairs = sample_pairs(1, 400);
    std::vector<PrimePair> all = pairs;
    for (std::uint64_t p = 2; p < 3000; p = next_prime_after(p)) all.push_back(PrimePair::of(p, next_prime_after(p)));
    for (const auto& s : specs) {
      for (const auto& p : all) {
        const auto truth = oracle.holds(s, p);
        if (!truth) continue;
        const Verdict v = evaluate_exact(s, p);
        REQUIRE_MESSAGE((v.holds == Tri::True) == *truth, inequality_name(s.id), " ", p.prev, ",", p.next);
      }
    }
  }

  TEST_CASE("exact verdicts match the real oracle near boundaries") {
    // Synthetic pairs placed at the sqrt boundaries, one either side.
    RealOracle oracle;
    std::mt19937_64 rng(5);
    const auto specs = sample_specs();
    for (int i = 0; i < 3000; ++i) {
      const std::uint64_t r = 2 + rng() % 4'000'000'000ULL;
      const std::uint64_t next = r * r + (rng() % 3) - 1;
      const std::uint64_t gap = r - 1 + rng() % 3;
      if (gap >= next || gap == 0) continue;
      const PrimePair p = PrimePair::of(next - gap, next);
      for (const auto& s : specs) {
        const auto truth = oracle.holds(s, p);
        if (!truth) continue;
        REQUIRE((evaluate_exact(s, p).holds == Tri::True) == *truth);
      }
    }
  }

  TEST_CASE("guarded agrees with exact") {
    const auto specs = sample_specs();
    const auto pairs = sample_pairs(2, 1500);
    std::size_t unknown = 0;
    const GuardConfig guard{true, 64, 256};
    for (const auto& s : specs) {
      for (const auto& p : pairs) {
        const Verdict e = evaluate_exact(s, p);
        const Verdict g = evaluate_guarded(as_guarded(s), p, guard);
        if (g.holds == Tri::Unknown) {
          ++unknown;
          continue;
        }
        REQUIRE_MESSAGE(e.holds == g.holds, inequality_name(s.id), " ", p.prev, ",", p.next);
      }
    }
    CHECK(unknown < 10);
  }

  TEST_CASE("guarded without the fast tier agrees too") {
    const auto specs = sample_specs();
    const GuardConfig guard{false, 64, 512};
    for (const auto& s : specs) {
      for (const auto& p : sample_pairs(3, 200)) {
        const Verdict g = evaluate_guarded(as_guarded(s), p, guard);
        if (g.holds == Tri::Unknown) continue;
        REQUIRE(g.holds == evaluate_exact(s, p).holds);
        CHECK(g.bits >= 64);
      }
    }
  }

  TEST_CASE("undecidable at the cap is reported, not guessed") {
    // Synthetic pair with gap = 1.5 sqrt(next): the power goes through exp and
    // log, so the enclosure never collapses to the integer 15.
    const InequalitySpec s = as_guarded(InequalitySpec::make(InequalityId::GAP_EXP, {{"k", q(2)}}));
    const PrimePair pr = PrimePair::of(85, 100);
    const Verdict v = evaluate_guarded(s, pr, {true, 64, 128});
    CHECK(v.holds == Tri::Unknown);
    const ViolationRecord rec = violation_for(s, pr, v);
    CHECK(rec.near_boundary);
    CHECK(rec.verdict == "undecided");
  }

  TEST_CASE("check_gap_inequality over a range") {
    const InequalitySpec s = InequalitySpec::make(InequalityId::GAP_OPP_NEXT);
    const GapCheckResult r = check_gap_inequality(s, 2, 200);
    CHECK(r.pairs_checked == 45);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().location == Location(PrimePair::of(7, 11)));
    for (const auto& v : r.violations) CHECK(v.check_id == "GAP_OPP_NEXT");
    CHECK(check_gap_inequality(InequalitySpec::make(InequalityId::GAP_LEGENDRE), 2, 1'000'000).violations.empty());
  }

  TEST_CASE("Dusart holds beyond index 463 to 1e6") {
    const GapCheckResult r = check_gap_inequality(InequalitySpec::make(InequalityId::GAP_DUSART), 3300, 1'000'000);
    CHECK(r.violations.empty());
    CHECK(r.undecided.empty());
    const GapCheckResult below = check_gap_inequality(InequalitySpec::make(InequalityId::GAP_DUSART), 2, 3301);
    REQUIRE_FALSE(below.violations.empty());
    CHECK(below.violations.back().location.key() <= 3299);
  }

  TEST_CASE("shard invariance of violation lists") {
    const InequalitySpec s = InequalitySpec::make(InequalityId::GAP_OPP_PREV);
    const std::uint64_t hi = 300'000;
    const GapCheckResult whole = check_gap_inequality(s, 2, hi);
    const SegmentedSieve sieve(hi);
    for (std::uint64_t parts : {2ULL, 7ULL, 64ULL}) {
      GapCheckResult merged;
      const std::uint64_t width = hi / parts + 1;
      for (std::uint64_t lo = 2; lo <= hi; lo += width) {
        merged.merge(check_gap_inequality_shard(s, sieve, lo, std::min(lo + width, hi + 1), hi));
      }
      CHECK(merged.pairs_checked == whole.pairs_checked);
      CHECK(merged.violations == whole.violations);
    }
  }

  TEST_CASE("interval forms agree with gap verdicts on every pair to 1e6") {
    using I = InequalityId;
    const std::vector<InequalitySpec> specs = {
        InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(1)}}),
        InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(5)}}),
        InequalitySpec::make(I::GAP_BERTRAND, {{"k", q(5, 2)}}),
        InequalitySpec::make(I::GAP_EXP, {{"k", q(3)}}),
        InequalitySpec::make(I::GAP_EXP, {{"k", q(40, 19)}}),
        InequalitySpec::make(I::GAP_EXP, {{"k", q(1, 3)}}),
        InequalitySpec::make(I::GAP_LEGENDRE),
        InequalitySpec::make(I::GAP_OPP_NEXT),
        InequalitySpec::make(I::GAP_OPP_PREV),
        InequalitySpec::make(I::GAP_CRAMER_EPS, {{"epsilon", q(1)}}),
        InequalitySpec::make(I::GAP_CRAMER_EPS, {{"epsilon", q(1, 2)}}),
        InequalitySpec::make(I::GAP_FRACTIONAL, {{"k", q(2)}}),
        InequalitySpec::make(I::GAP_FRACTIONAL, {{"k", q(10)}}),
        InequalitySpec::make(I::GAP_BHP),
    };
    for (const auto& s : specs) {
      const EquivalenceResult r = check_interval_equivalence(s, 2, 1'000'000);
      CHECK_MESSAGE(r.mismatches.empty(), inequality_name(s.id));
      CHECK(r.pairs_checked == 78'497);
    }
    CHECK_FALSE(interval_forms(InequalitySpec::make(I::GAP_DUSART), PrimePair::of(3, 5)).has_value());
    CHECK_THROWS_AS(check_interval_equivalence(InequalitySpec::make(I::GAP_DUSART), 2, 100), DomainError);
  }

  TEST_CASE("interval form shapes") {
    const auto leg = interval_forms(InequalitySpec::make(InequalityId::GAP_LEGENDRE), PrimePair::of(113, 127));
    REQUIRE(leg);
    REQUIRE(leg->size() == 1);
    // (127 - 2 - isqrt(507), 127) = (103, 127)
    CHECK((*leg)[0].lo == 103);
    CHECK((*leg)[0].hi == 127);
    const auto frac = interval_forms(InequalitySpec::make(InequalityId::GAP_FRACTIONAL, {{"k", q(2)}}), PrimePair::of(7, 11));
    REQUIRE(frac);
    CHECK(frac->size() == 2);
  }
}
