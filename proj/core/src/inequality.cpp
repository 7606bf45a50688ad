#include "gapforge/inequality.hpp"

#include <array>
#include <utility>

#include <fmt/format.h>

#include "gapforge/errors.hpp"
#include "gapforge/roots.hpp"

namespace gapforge {

namespace {

constexpr std::array<std::pair<InequalityId, std::string_view>, 10> kNames{{
    {InequalityId::GAP_BERTRAND, "GAP_BERTRAND"},
    {InequalityId::GAP_EXP, "GAP_EXP"},
    {InequalityId::GAP_LEGENDRE, "GAP_LEGENDRE"},
    {InequalityId::GAP_OPP_NEXT, "GAP_OPP_NEXT"},
    {InequalityId::GAP_OPP_PREV, "GAP_OPP_PREV"},
    {InequalityId::GAP_CRAMER_EPS, "GAP_CRAMER_EPS"},
    {InequalityId::GAP_FRACTIONAL, "GAP_FRACTIONAL"},
    {InequalityId::GAP_DUSART, "GAP_DUSART"},
    {InequalityId::GAP_BHP, "GAP_BHP"},
    {InequalityId::FILTER_WEAK_BROCARD, "FILTER_WEAK_BROCARD"},
}};

// Name of the single parameter an entry takes, if any.
const char* param_of(InequalityId id) {
  switch (id) {
    case InequalityId::GAP_BERTRAND:
    case InequalityId::GAP_EXP:
    case InequalityId::GAP_FRACTIONAL:
      return "k";
    case InequalityId::GAP_CRAMER_EPS:
      return "epsilon";
    default:
      return nullptr;
  }
}

BigInt B(std::int64_t v) { return big_signed(v); }

Tri tri(bool b) { return b ? Tri::True : Tri::False; }

}  // namespace

std::string_view inequality_name(InequalityId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "UNKNOWN";
}

std::optional<InequalityId> parse_inequality_id(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view mode_name(ComparisonMode m) {
  return m == ComparisonMode::EXACT_INTEGER ? "EXACT_INTEGER" : "GUARDED_REAL";
}

bool admits_exact(InequalityId id) { return id != InequalityId::GAP_DUSART; }

InequalitySpec InequalitySpec::make(InequalityId id, std::map<std::string, Scalar> params,
                                    std::optional<ComparisonMode> mode) {
  InequalitySpec s;
  s.id = id;
  const char* name = param_of(id);
  for (const auto& [key, value] : params) {
    if (name == nullptr || key != name) {
      throw DomainError(fmt::format("{} takes no parameter '{}'", inequality_name(id), key));
    }
    (void)value;
  }
  if (name != nullptr) {
    auto it = params.find(name);
    if (it == params.end()) {
      if (id != InequalityId::GAP_BERTRAND) throw DomainError(fmt::format("{} requires {}", inequality_name(id), name));
      it = params.emplace(name, Scalar(Rational(1))).first;
    }
    const mpq_class v = it->second.to_mpq();
    switch (id) {
      case InequalityId::GAP_BERTRAND:
        if (v < 1) throw DomainError("GAP_BERTRAND requires k >= 1");
        break;
      case InequalityId::GAP_EXP:
        if (v <= 0) throw DomainError("GAP_EXP requires k > 0");
        break;
      case InequalityId::GAP_FRACTIONAL:
        if (v <= 1) throw DomainError("GAP_FRACTIONAL requires k > 1");
        break;
      case InequalityId::GAP_CRAMER_EPS:
        if (v <= 0) throw DomainError("GAP_CRAMER_EPS requires epsilon > 0");
        break;
      default:
        break;
    }
  }
  s.params = std::move(params);
  bool exact_params = true;
  for (const auto& [key, value] : s.params) exact_params = exact_params && value.is_exact();
  const bool exact_ok = admits_exact(id) && exact_params;
  if (mode == ComparisonMode::EXACT_INTEGER && !exact_ok) {
    throw UnsupportedModeError(fmt::format("{} has no exact integer form for these parameters", inequality_name(id)));
  }
  s.mode = mode.value_or(exact_ok ? ComparisonMode::EXACT_INTEGER : ComparisonMode::GUARDED_REAL);
  return s;
}

const Scalar& InequalitySpec::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) throw DomainError(fmt::format("{} has no parameter {}", inequality_name(id), name));
  return it->second;
}

Params InequalitySpec::rendered_params() const {
  Params out;
  for (const auto& [k, v] : params) out[k] = v.to_string();
  out["mode"] = std::string(mode_name(mode));
  return out;
}

// ---- exact ----------------------------------------------------------------------------------

namespace {

struct Cleared {
  BigInt lhs;
  BigInt rhs;
};

Verdict from_less(Cleared c) {
  Verdict v;
  v.holds = tri(c.lhs < c.rhs);
  if (v.holds != Tri::True) {
    v.lhs = to_string(c.lhs);
    v.rhs = to_string(c.rhs);
  }
  return v;
}

unsigned long as_exp(std::int64_t v) { return static_cast<unsigned long>(v); }

// g < ((2a - b) / 2b) p^((a - b)/a), raised to the a-th power.
Verdict exact_exp(const Rational& k, const PrimePair& pr) {
  const std::int64_t a = k.num(), b = k.den();
  if (2 * a - b <= 0) {
    Verdict v;
    v.holds = Tri::False;
    v.lhs = std::to_string(pr.gap);
    v.rhs = fmt::format("({}/{})*p^e <= 0", 2 * a - b, 2 * b);
    return v;
  }
  const auto ua = as_exp(a);
  BigInt lhs = checked_pow(big(pr.gap), ua) * checked_pow(B(2 * b), ua);
  BigInt rhs = checked_pow(B(2 * a - b), ua);
  if (a >= b) {
    rhs *= checked_pow(big(pr.next), as_exp(a - b));
  } else {
    lhs *= checked_pow(big(pr.next), as_exp(b - a));
  }
  return from_less({std::move(lhs), std::move(rhs)});
}

// g < ((d + 2c) / 2d) p^(c/(c+d)), raised to the (c+d)-th power.
Verdict exact_cramer(const Rational& eps, const PrimePair& pr) {
  const std::int64_t c = eps.num(), d = eps.den();
  const auto e = as_exp(c + d);
  BigInt lhs = checked_pow(big(pr.gap), e) * checked_pow(B(2 * d), e);
  BigInt rhs = checked_pow(B(d + 2 * c), e) * checked_pow(big(pr.next), as_exp(c));
  return from_less({std::move(lhs), std::move(rhs)});
}

}  // namespace

Verdict evaluate_exact(const InequalitySpec& spec, const PrimePair& pr) {
  if (!admits_exact(spec.id)) {
    throw UnsupportedModeError(fmt::format("{} has no exact integer form", inequality_name(spec.id)));
  }
  const BigInt g = big(pr.gap);
  const BigInt p = big(pr.next);
  const BigInt q = big(pr.prev);
  switch (spec.id) {
    case InequalityId::GAP_BERTRAND: {
      // 2g b < p b - 2a + b for k = a/b
      const Rational& k = spec.param("k").exact();
      return from_less({2 * g * B(k.den()), p * B(k.den()) - 2 * B(k.num()) + B(k.den())});
    }
    case InequalityId::GAP_EXP:
      return exact_exp(spec.param("k").exact(), pr);
    case InequalityId::GAP_LEGENDRE: {
      if (pr.gap <= 1) return {Tri::True, {}, {}, 0};
      const BigInt d = g - 1;
      return from_less({d * d, 4 * p});
    }
    case InequalityId::GAP_OPP_NEXT:
      return from_less({g * g, p});
    case InequalityId::GAP_OPP_PREV:
      return from_less({g * g, q});
    case InequalityId::GAP_CRAMER_EPS:
      return exact_cramer(spec.param("epsilon").exact(), pr);
    case InequalityId::GAP_FRACTIONAL: {
      // g (a - b) < q b  and  g a < p b
      const Rational& k = spec.param("k").exact();
      const BigInt a = B(k.num()), b = B(k.den());
      Verdict first = from_less({g * (a - b), q * b});
      if (first.holds != Tri::True) return first;
      return from_less({g * a, p * b});
    }
    case InequalityId::GAP_BHP:
      return from_less({pow(g, 40), pow(p, 21)});
    case InequalityId::FILTER_WEAK_BROCARD: {
      // g^20 > 3^20 q, written as 3^20 q < g^20
      Verdict v = from_less({pow(BigInt(3), 20) * q, pow(g, 20)});
      std::swap(v.lhs, v.rhs);
      return v;
    }
    case InequalityId::GAP_DUSART:
      break;
  }
  throw UnsupportedModeError("unreachable");
}

// ---- guarded --------------------------------------------------------------------------------

namespace {

enum class Cmp { Less, LessEqual };

template <typename I>
struct Sides {
  I lhs;
  I rhs;
  Cmp cmp = Cmp::Less;
};

// Interval factories for the two tiers.
struct FastMaker {
  static bool usable(std::uint64_t v) { return FastInterval::representable(v); }
  static bool usable(const Scalar& s) {
    if (!s.is_exact()) return true;
    const auto lim = std::int64_t{1} << 53;
    const Rational& r = s.exact();
    return r.num() < lim && r.num() > -lim && r.den() < lim;
  }
  FastInterval u(std::uint64_t v) const { return FastInterval::from_u64(v); }
  FastInterval q(std::int64_t num, std::int64_t den) const {
    const FastInterval n = FastInterval::point(static_cast<double>(num));
    return den == 1 ? n : n / FastInterval::point(static_cast<double>(den));
  }
  FastInterval s(const Scalar& v) const {
    if (!v.is_exact()) return FastInterval::point(v.to_double());
    return q(v.exact().num(), v.exact().den());
  }
};

struct MpMaker {
  unsigned bits;
  MpInterval u(std::uint64_t v) const { return MpInterval::from_u64(v, bits); }
  MpInterval q(std::int64_t num, std::int64_t den) const {
    return MpInterval::from_rational(mpq_class(big_signed(num), big_signed(den)), bits);
  }
  MpInterval s(const Scalar& v) const {
    return v.is_exact() ? MpInterval::from_rational(v.to_mpq(), bits) : MpInterval::from_double(v.to_double(), bits);
  }
};

template <typename I, typename M>
Sides<I> guarded_sides(const InequalitySpec& spec, const PrimePair& pr, const M& mk) {
  const I g = mk.u(pr.gap);
  const I p = mk.u(pr.next);
  const I q = mk.u(pr.prev);
  const I one = mk.u(1);
  const I two = mk.u(2);
  const I half = mk.q(1, 2);
  switch (spec.id) {
    case InequalityId::GAP_BERTRAND: {
      const I k = mk.s(spec.param("k"));
      return {g, (p - two * k + one) / two};
    }
    case InequalityId::GAP_EXP: {
      const I k = mk.s(spec.param("k"));
      return {g, (k - half) * pow(p, (k - one) / k)};
    }
    case InequalityId::GAP_LEGENDRE:
      return {g, two * sqrt(p) + one};
    case InequalityId::GAP_OPP_NEXT:
      return {g, sqrt(p)};
    case InequalityId::GAP_OPP_PREV:
      return {g, sqrt(q)};
    case InequalityId::GAP_CRAMER_EPS: {
      const I e = mk.s(spec.param("epsilon"));
      return {g, (half + e) * pow(p, e / (one + e))};
    }
    case InequalityId::GAP_FRACTIONAL: {
      const I k = mk.s(spec.param("k"));
      return {g, min(q / (k - one), p / k)};
    }
    case InequalityId::GAP_DUSART: {
      const I l = log(q);
      return {g * (l * l), q, Cmp::LessEqual};
    }
    case InequalityId::GAP_BHP:
      return {g, pow(p, mk.q(21, 40))};
    case InequalityId::FILTER_WEAK_BROCARD:
      return {mk.u(3) * pow(q, mk.q(1, 20)), g};
  }
  throw DomainError("unreachable");
}

template <typename I>
Tri decide(const Sides<I>& s) {
  return s.cmp == Cmp::Less ? certainly_less(s.lhs, s.rhs) : certainly_less_equal(s.lhs, s.rhs);
}

std::string render(const FastInterval& x) { return fmt::format("{:.17g}", 0.5 * (x.lo() + x.hi())); }
std::string render(const MpInterval& x) { return x.to_string(20); }

template <typename I>
void fill(Verdict& v, const InequalitySpec& spec, const Sides<I>& s) {
  if (v.holds == Tri::True) return;
  if (spec.id == InequalityId::FILTER_WEAK_BROCARD) {
    v.lhs = render(s.rhs);
    v.rhs = render(s.lhs);
  } else {
    v.lhs = render(s.lhs);
    v.rhs = render(s.rhs);
  }
}

}  // namespace

Verdict evaluate_guarded(const InequalitySpec& spec, const PrimePair& pr, const GuardConfig& guard) {
  Verdict v;
  bool fast = guard.fast_path && FastMaker::usable(pr.next) && FastMaker::usable(pr.prev);
  for (const auto& [k, s] : spec.params) fast = fast && FastMaker::usable(s);
  if (fast) {
    const auto sides = guarded_sides<FastInterval>(spec, pr, FastMaker{});
    v.holds = decide(sides);
    if (v.holds != Tri::Unknown) {
      v.bits = 53;
      fill(v, spec, sides);
      return v;
    }
  }
  for (unsigned bits = guard.start_bits; bits <= guard.cap_bits; bits *= 2) {
    const auto sides = guarded_sides<MpInterval>(spec, pr, MpMaker{bits});
    v.holds = decide(sides);
    v.bits = bits;
    if (v.holds != Tri::Unknown || bits * 2 > guard.cap_bits) {
      fill(v, spec, sides);
      if (v.holds == Tri::Unknown) {
        v.lhs = render(sides.lhs);
        v.rhs = render(sides.rhs);
      }
      return v;
    }
  }
  v.holds = Tri::Unknown;
  return v;
}

Verdict evaluate(const InequalitySpec& spec, const PrimePair& pair, const GuardConfig& guard) {
  return spec.mode == ComparisonMode::EXACT_INTEGER ? evaluate_exact(spec, pair) : evaluate_guarded(spec, pair, guard);
}

// ---- interval forms ---------------------------------------------------------------------------

namespace {

// ceil((n/d)^(1/r)) for n >= 0, d > 0.
BigInt ceil_root_of_ratio(const BigInt& n, const BigInt& d, unsigned long r) {
  const BigInt t = floor_root(n / d, r);
  return pow(t, r) * d == n ? t : t + 1;
}

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

BigInt ceil_div(const BigInt& n, const BigInt& d) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

// (lo, hi) clamped so that 0 <= lo <= hi.
OpenInterval clamp(BigInt lo, BigInt hi) {
  if (lo < 0) lo = 0;
  if (lo > hi) lo = hi;
  return {std::move(lo), std::move(hi)};
}

// (p - R, p) with R = (n/d)^(1/r) > 0: floor(p - R) = p - ceil(R).
OpenInterval below_next(const BigInt& p, const BigInt& n, const BigInt& d, unsigned long r) {
  return clamp(p - ceil_root_of_ratio(n, d, r), p);
}

}  // namespace

std::optional<std::vector<OpenInterval>> interval_forms(const InequalitySpec& spec, const PrimePair& pr) {
  const BigInt p = big(pr.next);
  const BigInt q = big(pr.prev);
  switch (spec.id) {
    case InequalityId::GAP_BERTRAND: {
      // ((p + 2k - 1) / 2, p)
      if (!spec.param("k").is_exact()) return std::nullopt;
      const Rational& k = spec.param("k").exact();
      const BigInt a = B(k.num()), b = B(k.den());
      return std::vector{clamp(floor_div(p * b + 2 * a - b, 2 * b), p)};
    }
    case InequalityId::GAP_EXP: {
      // (p - (k - 1/2) p^((k-1)/k), p)
      if (!spec.param("k").is_exact()) return std::nullopt;
      const Rational& k = spec.param("k").exact();
      const std::int64_t a = k.num(), b = k.den();
      if (2 * a - b <= 0) return std::vector{OpenInterval{p, p}};
      const auto ua = as_exp(a);
      BigInt n = checked_pow(B(2 * a - b), ua);
      BigInt d = checked_pow(B(2 * b), ua);
      if (a >= b) {
        n *= checked_pow(p, as_exp(a - b));
      } else {
        d *= checked_pow(p, as_exp(b - a));
      }
      return std::vector{below_next(p, n, d, ua)};
    }
    case InequalityId::GAP_LEGENDRE:
      // (p - 2 sqrt(p) - 1, p); 4p is never a square
      return std::vector{clamp(p - 2 - floor_root(4 * p - 1, 2), p)};
    case InequalityId::GAP_OPP_NEXT:
      // (p - sqrt(p), p)
      return std::vector{clamp(p - 1 - floor_root(p - 1, 2), p)};
    case InequalityId::GAP_OPP_PREV:
      // (q, q + sqrt(q)); q is never a square
      return std::vector{OpenInterval{q, q + floor_root(q, 2) + 1}};
    case InequalityId::GAP_CRAMER_EPS: {
      // (p - (1/2 + eps) p^(eps/(1+eps)), p)
      if (!spec.param("epsilon").is_exact()) return std::nullopt;
      const Rational& e = spec.param("epsilon").exact();
      const std::int64_t c = e.num(), d = e.den();
      const auto r = as_exp(c + d);
      return std::vector{below_next(p, checked_pow(B(d + 2 * c), r) * checked_pow(p, as_exp(c)),
                                    checked_pow(B(2 * d), r), r)};
    }
    case InequalityId::GAP_FRACTIONAL: {
      // ((k-1) p / k, p) and (q, k q / (k-1))
      if (!spec.param("k").is_exact()) return std::nullopt;
      const Rational& k = spec.param("k").exact();
      const BigInt a = B(k.num()), b = B(k.den());
      return std::vector{clamp(floor_div((a - b) * p, a), p), OpenInterval{q, ceil_div(a * q, a - b)}};
    }
    case InequalityId::GAP_BHP:
      // (p - p^(21/40), p)
      return std::vector{below_next(p, pow(p, 21), BigInt(1), 40)};
    case InequalityId::GAP_DUSART:
    case InequalityId::FILTER_WEAK_BROCARD:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace gapforge
