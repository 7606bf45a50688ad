#include "gapforge/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapforge/errors.hpp"

namespace gapforge {

// ---- MpInterval --------------------------------------------------------------------------

MpInterval::MpInterval(unsigned precision) : prec_(precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

MpInterval::MpInterval(const MpInterval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

MpInterval::MpInterval(MpInterval&& other) noexcept : MpInterval(other.prec_) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

MpInterval& MpInterval::operator=(const MpInterval& other) {
  if (this != &other) {
    prec_ = other.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

MpInterval& MpInterval::operator=(MpInterval&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

MpInterval::~MpInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

MpInterval MpInterval::from_int(const BigInt& v, unsigned precision) {
  MpInterval r(precision);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

MpInterval MpInterval::from_u64(std::uint64_t v, unsigned precision) {
  MpInterval r(precision);
  mpfr_set_uj(r.lo_, v, MPFR_RNDD);
  mpfr_set_uj(r.hi_, v, MPFR_RNDU);
  return r;
}

MpInterval MpInterval::from_rational(const mpq_class& q, unsigned precision) {
  MpInterval r(precision);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

MpInterval MpInterval::from_double(double v, unsigned precision) {
  MpInterval r(precision);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

std::string MpInterval::to_string(int digits) const {
  mpfr_t mid;
  mpfr_init2(mid, prec_ + 2);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, mid);
  std::string out = buf != nullptr ? buf : "";
  mpfr_free_str(buf);
  mpfr_clear(mid);
  return out;
}

namespace {

unsigned joint(const MpInterval& a, const MpInterval& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

MpInterval operator+(const MpInterval& a, const MpInterval& b) {
  MpInterval r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

MpInterval operator-(const MpInterval& a, const MpInterval& b) {
  MpInterval r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

namespace {

template <typename Op>
void extremes_of(MpInterval& r, const __mpfr_struct* const xs[2], const __mpfr_struct* const ys[2],
                 __mpfr_struct* lo, __mpfr_struct* hi, Op op) {
  mpfr_t t;
  mpfr_init2(t, r.precision());
  bool first = true;
  for (const auto* x : {xs[0], xs[1]}) {
    for (const auto* y : {ys[0], ys[1]}) {
      op(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, lo)) mpfr_set(lo, t, MPFR_RNDD);
      op(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, hi)) mpfr_set(hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
}

}  // namespace

MpInterval operator*(const MpInterval& a, const MpInterval& b) {
  MpInterval r(joint(a, b));
  const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
  const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
  extremes_of(r, xs, ys, r.lo_, r.hi_,
              [](mpfr_ptr t, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_mul(t, x, y, rnd); });
  return r;
}

MpInterval operator/(const MpInterval& a, const MpInterval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw DomainError("interval division by a range containing 0");
  MpInterval r(joint(a, b));
  const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
  const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
  extremes_of(r, xs, ys, r.lo_, r.hi_,
              [](mpfr_ptr t, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_div(t, x, y, rnd); });
  return r;
}

MpInterval sqrt(const MpInterval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw DomainError("interval sqrt of a negative range");
  MpInterval r(a.prec_);
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

MpInterval log(const MpInterval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw DomainError("interval log of a non-positive range");
  MpInterval r(a.prec_);
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

MpInterval exp(const MpInterval& a) {
  MpInterval r(a.prec_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

MpInterval pow(const MpInterval& a, const MpInterval& e) { return exp(e * log(a)); }

MpInterval min(const MpInterval& a, const MpInterval& b) {
  MpInterval r(joint(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Tri certainly_less(const MpInterval& a, const MpInterval& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Tri::True;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Tri::False;
  return Tri::Unknown;
}

Tri certainly_less_equal(const MpInterval& a, const MpInterval& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Tri::True;
  if (mpfr_greater_p(a.lo(), b.hi())) return Tri::False;
  return Tri::Unknown;
}

// ---- FastInterval -------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
  return x;
}

constexpr int kArithUlps = 1;
constexpr int kLibmUlps = 4;

}  // namespace

FastInterval operator+(FastInterval a, FastInterval b) {
  return {down(a.lo_ + b.lo_, kArithUlps), up(a.hi_ + b.hi_, kArithUlps)};
}

FastInterval operator-(FastInterval a, FastInterval b) {
  return {down(a.lo_ - b.hi_, kArithUlps), up(a.hi_ - b.lo_, kArithUlps)};
}

FastInterval operator*(FastInterval a, FastInterval b) {
  const double c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return {down(*std::min_element(c, c + 4), kArithUlps), up(*std::max_element(c, c + 4), kArithUlps)};
}

FastInterval operator/(FastInterval a, FastInterval b) {
  if (b.lo_ <= 0.0 && b.hi_ >= 0.0) return {-kInf, kInf};
  const double c[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  return {down(*std::min_element(c, c + 4), kArithUlps), up(*std::max_element(c, c + 4), kArithUlps)};
}

FastInterval sqrt(FastInterval a) {
  if (a.lo_ < 0.0) return {-kInf, kInf};
  return {down(std::sqrt(a.lo_), kArithUlps), up(std::sqrt(a.hi_), kArithUlps)};
}

FastInterval log(FastInterval a) {
  if (a.lo_ <= 0.0) return {-kInf, kInf};
  return {down(std::log(a.lo_), kLibmUlps), up(std::log(a.hi_), kLibmUlps)};
}

FastInterval exp(FastInterval a) {
  return {std::max(0.0, down(std::exp(a.lo_), kLibmUlps)), up(std::exp(a.hi_), kLibmUlps)};
}

FastInterval pow(FastInterval a, FastInterval e) { return exp(e * log(a)); }

FastInterval min(FastInterval a, FastInterval b) { return {std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_)}; }

Tri certainly_less(const FastInterval& a, const FastInterval& b) {
  if (a.hi() < b.lo()) return Tri::True;
  if (a.lo() >= b.hi()) return Tri::False;
  return Tri::Unknown;
}

Tri certainly_less_equal(const FastInterval& a, const FastInterval& b) {
  if (a.hi() <= b.lo()) return Tri::True;
  if (a.lo() > b.hi()) return Tri::False;
  return Tri::Unknown;
}

}  // namespace gapforge
