#include <doctest.h>

#include <cmath>
#include <random>

#include "gapforge/errors.hpp"
#include "gapforge/interval.hpp"
#include "gapforge/rational.hpp"

using namespace gapforge;

namespace {

// Exact value inside an MPFR interval, checked at a higher working precision.
bool contains(const MpInterval& iv, const mpfr_t x) { return mpfr_lessequal_p(iv.lo(), x) && mpfr_lessequal_p(x, iv.hi()); }

}  // namespace

TEST_SUITE("interval") {
  TEST_CASE("Rational parsing and ordering") {
    CHECK(Rational::parse("40/19") == Rational(40, 19));
    CHECK(Rational::parse("2.5") == Rational(5, 2));
    CHECK(Rational::parse("0.05") == Rational(1, 20));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7, 1).is_integer());
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational(1, 0));
  }

  TEST_CASE("Scalar marks reals explicitly") {
    CHECK(Scalar::parse("3/2").is_exact());
    const Scalar r = Scalar::parse("~1.414");
    CHECK_FALSE(r.is_exact());
    CHECK(r.to_double() == doctest::Approx(1.414));
    CHECK_THROWS(r.exact());
  }

  TEST_CASE("MPFR intervals enclose sqrt, log and exp") {
    mpfr_t ref;
    mpfr_init2(ref, 2000);
    for (unsigned prec : {64u, 128u, 512u}) {
      for (std::uint64_t v : {2ULL, 3ULL, 10ULL, 1'000'003ULL, 9'007'199'254'740'993ULL}) {
        const MpInterval x = MpInterval::from_u64(v, prec);
        mpfr_set_ui(ref, 0, MPFR_RNDN);
        mpfr_set_d(ref, 0, MPFR_RNDN);
        mpz_class z(std::to_string(v));
        mpfr_set_z(ref, z.get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(ref, ref, MPFR_RNDN);
        CHECK(contains(sqrt(x), ref));
        mpfr_set_z(ref, z.get_mpz_t(), MPFR_RNDN);
        mpfr_log(ref, ref, MPFR_RNDN);
        CHECK(contains(log(x), ref));
      }
      const MpInterval third = MpInterval::from_rational(mpq_class(1, 3), prec);
      mpfr_set_ui(ref, 1, MPFR_RNDN);
      mpfr_div_ui(ref, ref, 3, MPFR_RNDN);
      CHECK(contains(third, ref));
      mpfr_exp(ref, ref, MPFR_RNDN);
      CHECK(contains(exp(third), ref));
    }
    mpfr_clear(ref);
  }

  TEST_CASE("interval width shrinks with precision") {
    const MpInterval a = sqrt(MpInterval::from_u64(2, 64));
    const MpInterval b = sqrt(MpInterval::from_u64(2, 256));
    CHECK(b.hi_double() - b.lo_double() <= a.hi_double() - a.lo_double());
    CHECK(a.lo_double() <= std::sqrt(2.0));
    CHECK(std::sqrt(2.0) <= a.hi_double());
  }

  TEST_CASE("certified comparisons") {
    const MpInterval one = MpInterval::from_u64(1, 64);
    const MpInterval two = MpInterval::from_u64(2, 64);
    CHECK(certainly_less(one, two) == Tri::True);
    CHECK(certainly_less(two, one) == Tri::False);
    CHECK(certainly_less(one, one) == Tri::False);
    CHECK(certainly_less_equal(one, one) == Tri::True);
    // sqrt(2)^2 vs 2 is undecidable by intervals.
    const MpInterval s = sqrt(two);
    CHECK(certainly_less(s * s, two) == Tri::Unknown);
  }

  TEST_CASE("FastInterval encloses libm results") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10'000; ++i) {
      const std::uint64_t v = 2 + rng() % (std::uint64_t{1} << 52);
      const FastInterval x = FastInterval::from_u64(v);
      const long double lx = static_cast<long double>(v);
      const FastInterval s = sqrt(x), l = log(x);
      REQUIRE(static_cast<long double>(s.lo()) <= sqrtl(lx));
      REQUIRE(sqrtl(lx) <= static_cast<long double>(s.hi()));
      REQUIRE(static_cast<long double>(l.lo()) <= logl(lx));
      REQUIRE(logl(lx) <= static_cast<long double>(l.hi()));
    }
    CHECK(FastInterval::representable((std::uint64_t{1} << 53) - 1));
    CHECK_FALSE(FastInterval::representable(std::uint64_t{1} << 53));
  }

  TEST_CASE("FastInterval comparisons") {
    CHECK(certainly_less(FastInterval::point(1), FastInterval::point(2)) == Tri::True);
    CHECK(certainly_less(FastInterval(1, 3), FastInterval(2, 4)) == Tri::Unknown);
    CHECK(certainly_less_equal(FastInterval(3, 4), FastInterval(1, 2)) == Tri::False);
  }
}
