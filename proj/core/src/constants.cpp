#include "gapforge/constants.hpp"

#include <array>

#include <fmt/format.h>

#include "gapforge/errors.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/roots.hpp"

namespace gapforge {

namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 7> kNames{{
    {TheoremId::BERTRAND_K, "BERTRAND_K"},
    {TheoremId::FRACTIONAL_K, "FRACTIONAL_K"},
    {TheoremId::STRONG3_G, "STRONG3_G"},
    {TheoremId::BROCARD2_M, "BROCARD2_M"},
    {TheoremId::STRONG_BROCARD_K, "STRONG_BROCARD_K"},
    {TheoremId::CRAMER_EPS, "CRAMER_EPS"},
    {TheoremId::EXPONENTIAL_K, "EXPONENTIAL_K"},
}};

const BigInt& u64_max() {
  static const BigInt v = big(~std::uint64_t{0});
  return v;
}

// Smallest prime > n. Beyond the 64-bit range the answer comes from GMP's
// BPSW search and a note is appended to the trace.
BigInt next_prime_over(const BigInt& n, std::vector<std::string>& trace) {
  if (n < u64_max() - 1000) {
    const std::uint64_t p = next_prime_after(to_u64(n));
    if (p > to_u64(n)) return big(p);
  }
  BigInt r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  trace.push_back(fmt::format("{} exceeds 64 bits: primality by Baillie-PSW (unproven)", to_string(r)));
  return r;
}

// Largest prime <= n, n >= 2.
BigInt prime_at_or_below(const BigInt& n, std::vector<std::string>& trace) {
  if (fits_u64(n)) {
    const std::uint64_t v = to_u64(n);
    return big(is_prime(v) ? v : prev_prime_before(v));
  }
  BigInt r = n;
  while (!is_prime_big(r)) --r;
  trace.push_back(fmt::format("{} exceeds 64 bits: primality by Baillie-PSW (unproven)", to_string(r)));
  return r;
}

MpInterval scalar_interval(const Scalar& s, unsigned bits) {
  return s.is_exact() ? MpInterval::from_rational(s.to_mpq(), bits) : MpInterval::from_double(s.to_double(), bits);
}

BigInt floor_of(const __mpfr_struct* x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x, MPFR_RNDD);
  return r;
}

BigInt ceil_of(const __mpfr_struct* x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x, MPFR_RNDU);
  return r;
}

BigInt p465_value() {
  static const BigInt v = big(nth_prime(kBertrandFloorIndex));
  return v;
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "UNKNOWN";
}

std::optional<TheoremId> parse_theorem_id(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

TheoremConstant bertrand_constant(std::uint64_t k) {
  if (k < 1) throw DomainError("bertrand_constant: k must be >= 1");
  TheoremConstant c{TheoremId::BERTRAND_K, {{"k", std::to_string(k)}}, {}, {}};
  const std::uint64_t four_k = 4 * k;
  const std::uint64_t below = prev_prime_before(four_k);
  const std::uint64_t pr = next_prime_after(four_k);
  c.trace.push_back(fmt::format("4k = {} is composite; {} < {} < {}", four_k, below, four_k, pr));
  const BigInt p465 = p465_value();
  c.trace.push_back(fmt::format("p_465 = {}", to_string(p465)));
  c.value = big(pr) > p465 ? big(pr) : p465;
  c.trace.push_back(fmt::format("value = max({}, {}) = {}", pr, to_string(p465), to_string(c.value)));
  return c;
}

TheoremConstant fractional_constant(const Scalar& k, const GuardConfig& guard) {
  if (mpq_class(k.to_mpq()) < 2) throw DomainError("fractional_constant: k must be >= 2");
  TheoremConstant c{TheoremId::FRACTIONAL_K, {{"k", k.to_string()}}, {}, {}};
  for (unsigned bits = guard.start_bits; bits <= guard.cap_bits; bits *= 2) {
    const MpInterval v = exp(sqrt(scalar_interval(k, bits)));
    const BigInt f_lo = floor_of(v.lo());
    const BigInt f_hi = floor_of(v.hi());
    if (f_lo != f_hi || mpfr_integer_p(v.lo())) {
      c.trace.push_back(fmt::format("{} bits: exp(sqrt(k)) not separated from an integer, doubling", bits));
      continue;
    }
    c.trace.push_back(fmt::format("{} bits: {} < exp(sqrt(k)) ~ {} < {}", bits, to_string(f_lo), v.to_string(15),
                                  to_string(f_lo + 1)));
    const BigInt below = prime_at_or_below(f_lo, c.trace);
    const BigInt pr = next_prime_over(f_lo, c.trace);
    c.trace.push_back(fmt::format("bracket: {} < exp(sqrt(k)) < {}", to_string(below), to_string(pr)));
    const BigInt p465 = p465_value();
    c.value = pr > p465 ? pr : p465;
    c.trace.push_back(fmt::format("value = max({}, p_465 = {}) = {}", to_string(pr), to_string(p465), to_string(c.value)));
    return c;
  }
  throw PrecisionError(fmt::format("fractional_constant: exp(sqrt({})) undecided at {} bits", k.to_string(), guard.cap_bits));
}

TheoremConstant strong3_constant(std::uint64_t g) {
  if (g <= 20) throw DomainError(fmt::format("strong3_constant: g = {} must exceed 20", g));
  TheoremConstant c{TheoremId::STRONG3_G, {{"g", std::to_string(g)}}, {}, {}};
  const BigInt g2 = pow(g, 2);
  const BigInt r = floor_root(g2, 19);
  c.trace.push_back(fmt::format("floor(g^(2/19)) = {}: {}^19 <= {} < {}^19", to_string(r), to_string(r),
                                to_string(g2), to_string(r + 1)));
  c.value = 3 * g2 * (r + 1);
  c.trace.push_back(fmt::format("value = 3 * {} * {} = {}", to_string(g2), to_string(r + 1), to_string(c.value)));
  return c;
}

TheoremConstant brocard2_constant(const PrimePair& pair) {
  if (pair.gap == 0 || pair.next <= pair.prev) throw DomainError("brocard2_constant: invalid pair");
  TheoremConstant c{TheoremId::BROCARD2_M,
                    {{"prev", std::to_string(pair.prev)}, {"next", std::to_string(pair.next)}},
                    {},
                    {}};
  const BigInt num = pow(BigInt(2), 21) * pow(pair.next, 40);
  const BigInt den = pow(pair.gap, 40);
  const BigInt q = num / den;  // floor for positive operands
  c.trace.push_back(fmt::format("X = floor(2^21 * {}^40 / {}^40) = {}", pair.next, pair.gap, to_string(q)));
  c.trace.push_back("flooring X before the 19th root is exact: t^19 <= X iff t^19 <= floor(X)");
  const BigInt r = floor_root(q, 19);
  c.trace.push_back(fmt::format("floor(X^(1/19)) = {}", to_string(r)));
  c.value = r + 1;
  c.trace.push_back(fmt::format("value = {} + 1 = {}", to_string(r), to_string(c.value)));
  return c;
}

TheoremConstant strong_brocard_constant(std::uint64_t k, std::uint64_t c_growth) {
  if (k < 1) throw DomainError("strong_brocard_constant: k must be >= 1");
  TheoremConstant c{TheoremId::STRONG_BROCARD_K,
                    {{"k", std::to_string(k)}, {"C_growth", std::to_string(c_growth)}},
                    {},
                    {}};
  const BigInt r = floor_pow_rational(big(k), 40, 17);
  c.trace.push_back(fmt::format("floor(k^(40/17)) = {}: {}^17 <= {}^40 < {}^17", to_string(r), to_string(r), k,
                                to_string(r + 1)));
  const BigInt m = r > big(c_growth) ? r : big(c_growth);
  c.value = m + 1;
  c.trace.push_back(fmt::format("value = max({}, {}) + 1 = {}", c_growth, to_string(r), to_string(c.value)));
  return c;
}

namespace {

// phi(x) = ln(0.5 + eps) + e ln x - ln C - 2 ln ln x with e = eps/(1+eps) is
// positive exactly when C ln^2 x < (0.5 + eps) x^e.
class CramerCrossover {
 public:
  CramerCrossover(const Scalar& eps, const Scalar& c, const GuardConfig& guard) : eps_(eps), c_(c), guard_(guard) {}

  // Sign of phi at ln x = t, where t is supplied as a function of precision.
  template <typename T>
  bool positive(T&& log_x) const {
    for (unsigned bits = guard_.start_bits; bits <= guard_.cap_bits; bits *= 2) {
      const MpInterval eps = scalar_interval(eps_, bits);
      const MpInterval one = MpInterval::from_u64(1, bits);
      const MpInterval half = MpInterval::from_rational(mpq_class(1, 2), bits);
      const MpInterval e = eps / (one + eps);
      const MpInterval t = log_x(bits);
      const MpInterval phi = log(half + eps) + e * t - log(scalar_interval(c_, bits)) - MpInterval::from_u64(2, bits) * log(t);
      const Tri s = certainly_less(MpInterval::from_u64(0, bits), phi);
      if (s != Tri::Unknown) return s == Tri::True;
    }
    throw PrecisionError(fmt::format("cramer_constant: crossover sign undecided at {} bits", guard_.cap_bits));
  }

  bool holds_at(const BigInt& x) const {
    return positive([&](unsigned bits) { return log(MpInterval::from_int(x, bits)); });
  }

 private:
  Scalar eps_;
  Scalar c_;
  GuardConfig guard_;
};

}  // namespace

TheoremConstant cramer_constant(const Scalar& epsilon, const Scalar& c_scalar, const GuardConfig& guard) {
  const mpq_class eq = epsilon.to_mpq();
  if (eq <= 0 || eq > 1) throw DomainError("cramer_constant: epsilon must lie in (0, 1]");
  if (c_scalar.to_mpq() <= 0) throw DomainError("cramer_constant: C must be positive");
  TheoremConstant c{TheoremId::CRAMER_EPS, {{"epsilon", epsilon.to_string()}, {"C", c_scalar.to_string()}}, {}, {}};
  const CramerCrossover cross(epsilon, c_scalar, guard);

  // phi is convex in t = ln x with its minimum at t* = 2 (1 + eps) / eps.
  auto t_star = [&](unsigned bits) {
    const MpInterval eps = scalar_interval(epsilon, bits);
    return MpInterval::from_u64(2, bits) * (MpInterval::from_u64(1, bits) + eps) / eps;
  };
  if (cross.positive(t_star)) {
    c.trace.push_back("inequality holds at the minimum of phi, hence for every x > 1");
    c.value = 2;
    c.trace.push_back("value = 2");
    return c;
  }
  const MpInterval ts = exp(t_star(guard.cap_bits));
  BigInt lo = ceil_of(ts.hi());
  c.trace.push_back(fmt::format("phi(t*) <= 0; phi increases for x >= exp(t*) ~ {}", ts.to_string(12)));
  BigInt x;
  if (cross.holds_at(lo)) {
    x = lo;
  } else {
    BigInt hi = 2 * lo;
    while (!cross.holds_at(hi)) {
      lo = hi;
      hi *= 2;
    }
    c.trace.push_back(fmt::format("doubling: fails at {}, holds at {}", to_string(lo), to_string(hi)));
    while (hi - lo > 1) {
      const BigInt mid = (lo + hi) / 2;
      (cross.holds_at(mid) ? hi : lo) = mid;
    }
    x = hi;
    c.trace.push_back(fmt::format("bisection: fails at {}, holds at {}", to_string(lo), to_string(hi)));
  }
  c.trace.push_back(fmt::format("smallest integer X past the crossover: {}", to_string(x)));
  c.value = is_prime_big(x) ? x : next_prime_over(x, c.trace);
  if (!primality_is_proven(c.value) && c.value == x) {
    c.trace.push_back(fmt::format("{} exceeds 64 bits: primality by Baillie-PSW (unproven)", to_string(x)));
  }
  c.trace.push_back(fmt::format("value = smallest prime >= X = {}", to_string(c.value)));
  return c;
}

TheoremConstant exponential_constant(const Scalar& k, const BigInt& x0) {
  if (k.to_mpq() < mpq_class(40, 19)) throw DomainError("exponential_constant: k must be >= 40/19");
  TheoremConstant c{TheoremId::EXPONENTIAL_K, {{"k", k.to_string()}, {"x0", to_string(x0)}}, {}, {}};
  c.trace.push_back(fmt::format("gap < p^(21/40) is only available above x0 = {}", to_string(x0)));
  c.value = next_prime_over(x0 < 1 ? BigInt(1) : x0, c.trace);
  c.trace.push_back(fmt::format("value = first prime above x0 = {}", to_string(c.value)));
  return c;
}

void to_json(nlohmann::json& j, const TheoremConstant& c) {
  j = nlohmann::json{{"theorem_id", theorem_name(c.id)}, {"params", c.params}, {"value", to_string(c.value)},
                     {"trace", c.trace}};
}

}  // namespace gapforge
