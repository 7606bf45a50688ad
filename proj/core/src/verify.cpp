#include "gapforge/verify.hpp"

#include <fmt/format.h>

#include "gapforge/errors.hpp"
#include "gapforge/roots.hpp"

namespace gapforge {

void GapCheckResult::merge(GapCheckResult&& other) {
  pairs_checked += other.pairs_checked;
  violations.insert(violations.end(), std::make_move_iterator(other.violations.begin()),
                    std::make_move_iterator(other.violations.end()));
  undecided.insert(undecided.end(), std::make_move_iterator(other.undecided.begin()),
                   std::make_move_iterator(other.undecided.end()));
}

ViolationRecord violation_for(const InequalitySpec& spec, const PrimePair& pair, const Verdict& v) {
  ViolationRecord r;
  r.check_id = std::string(inequality_name(spec.id));
  r.params = spec.rendered_params();
  r.location = Location(pair);
  r.lhs = v.lhs;
  r.rhs = v.rhs;
  r.near_boundary = v.holds == Tri::Unknown;
  r.verdict = r.near_boundary ? "undecided" : "violated";
  return r;
}

GapCheckResult check_gap_inequality_shard(const InequalitySpec& spec, const SegmentedSieve& sieve,
                                          std::uint64_t prev_lo, std::uint64_t prev_end, std::uint64_t next_max,
                                          const GuardConfig& guard) {
  GapCheckResult out;
  for_each_prime_pair(sieve, prev_lo, prev_end, next_max, [&](const PrimePair& pair) {
    ++out.pairs_checked;
    const Verdict v = evaluate(spec, pair, guard);
    if (v.holds == Tri::False) {
      out.violations.push_back(violation_for(spec, pair, v));
    } else if (v.holds == Tri::Unknown) {
      out.undecided.push_back(violation_for(spec, pair, v));
    }
  });
  return out;
}

GapCheckResult check_gap_inequality(const InequalitySpec& spec, std::uint64_t lo, std::uint64_t hi,
                                    const GuardConfig& guard, const SieveConfig& sieve_config) {
  if (lo >= hi) throw DomainError(fmt::format("check range [{}, {}] is empty", lo, hi));
  if (lo < 2) lo = 2;
  const SegmentedSieve sieve(hi, sieve_config);
  return check_gap_inequality_shard(spec, sieve, lo, hi, hi, guard);
}

// ---- interval scanning --------------------------------------------------------------------------

IntervalReport ScanContext::scan(Location where, BigInt lo, BigInt hi, std::uint64_t required,
                                 std::string label) const {
  IntervalReport r;
  r.location = where;
  r.label = std::move(label);
  r.required = required;
  if (lo < hi) {
    const IntervalScanner scanner(table.get(), sieve);
    IntervalScan s = scanner.scan(lo, hi, early_exit ? std::optional<std::uint64_t>(required) : std::nullopt);
    r.found = s.count;
    r.witnesses = std::move(s.witnesses);
    r.early_exited = s.early_exited;
  }
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  r.satisfied = r.found >= r.required;
  return r;
}

ScanContext context_with_table(std::uint64_t table_limit, bool early_exit, const SieveConfig& sieve) {
  ScanContext ctx;
  ctx.table = std::make_shared<const PrimeTable>(primes_up_to(table_limit, sieve));
  ctx.sieve = sieve;
  ctx.early_exit = early_exit;
  return ctx;
}

namespace {

std::vector<IntervalReport> collect(const std::function<void(const ReportSink&)>& run) {
  std::vector<IntervalReport> out;
  run([&](IntervalReport&& r) { out.push_back(std::move(r)); });
  return out;
}

}  // namespace

OpenInterval power_interval_bounds(std::uint64_t a_exp, std::uint64_t b_exp, std::uint64_t n) {
  return {floor_root(checked_pow(big(n - 1), a_exp), b_exp), floor_root(checked_pow(big(n), a_exp) - 1, b_exp) + 1};
}

void verify_power_interval(std::uint64_t a_exp, std::uint64_t b_exp, std::uint64_t n_lo, std::uint64_t n_hi,
                           std::uint64_t required, const ScanContext& ctx, const ReportSink& sink) {
  if (a_exp < b_exp || b_exp == 0) throw DomainError("verify_power_interval: exponent a/b must be >= 1");
  if (n_lo < 2) throw DomainError("verify_power_interval: n_lo must be >= 2");
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    auto [lo, hi] = power_interval_bounds(a_exp, b_exp, n);
    sink(ctx.scan(Location(n), std::move(lo), std::move(hi), required));
  }
}

std::vector<IntervalReport> verify_power_interval(std::uint64_t a_exp, std::uint64_t b_exp, std::uint64_t n_lo,
                                                  std::uint64_t n_hi, std::uint64_t required, bool early_exit) {
  ScanContext ctx;
  ctx.early_exit = early_exit;
  return collect([&](const ReportSink& s) { verify_power_interval(a_exp, b_exp, n_lo, n_hi, required, ctx, s); });
}

void verify_bertrand_direct(std::uint64_t k, std::uint64_t n_lo, std::uint64_t n_hi, const ScanContext& ctx,
                            const ReportSink& sink) {
  if (k < 1) throw DomainError("verify_bertrand_direct: k must be >= 1");
  if (n_lo <= 2 * k + 2) throw DomainError(fmt::format("verify_bertrand_direct: n_lo must exceed 2k + 2 = {}", 2 * k + 2));
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    // p > n/2  <=>  2p > n  <=>  p > floor(n/2)
    sink(ctx.scan(Location(n), big(n / 2), big(n - 2 * k), 1));
  }
}

std::vector<IntervalReport> verify_bertrand_direct(std::uint64_t k, std::uint64_t n_lo, std::uint64_t n_hi) {
  return collect([&](const ReportSink& s) { verify_bertrand_direct(k, n_lo, n_hi, ScanContext{}, s); });
}

void verify_auxiliary_bertrand(std::uint64_t k, std::uint64_t p_lo, std::uint64_t p_hi, const ScanContext& ctx,
                               const ReportSink& sink) {
  if (k < 1) throw DomainError("verify_auxiliary_bertrand: k must be >= 1");
  if (p_hi < p_lo || p_hi < 2) return;
  const SegmentedSieve sieve(p_hi, ctx.sieve);
  sieve.for_each_prime(p_lo, p_hi, [&](std::uint64_t p) {
    // q > (p + 2k - 1)/2  <=>  2q > p + 2k - 1
    sink(ctx.scan(Location(p), big((p + 2 * k - 1) / 2), big(p), 1));
  });
}

std::vector<IntervalReport> verify_auxiliary_bertrand(std::uint64_t k, std::uint64_t p_lo, std::uint64_t p_hi) {
  return collect([&](const ReportSink& s) { verify_auxiliary_bertrand(k, p_lo, p_hi, ScanContext{}, s); });
}

void verify_oppermann(std::uint64_t n_lo, std::uint64_t n_hi, const ScanContext& ctx, const ReportSink& sink) {
  if (n_lo < 2) throw DomainError("verify_oppermann: n_lo must be >= 2");
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const BigInt sq = big(n) * big(n);
    sink(ctx.scan(Location(n), sq, sq + n, 1, "lower"));
    sink(ctx.scan(Location(n), sq + n, sq + 2 * big(n) + 1, 1, "upper"));
  }
}

std::vector<IntervalReport> verify_oppermann(std::uint64_t n_lo, std::uint64_t n_hi) {
  return collect([&](const ReportSink& s) { verify_oppermann(n_lo, n_hi, ScanContext{}, s); });
}

void verify_fractional(const Rational& k, std::uint64_t n_lo, std::uint64_t n_hi, const ScanContext& ctx,
                       const ReportSink& sink) {
  if (k < Rational(2)) throw DomainError("verify_fractional: k must be >= 2");
  const BigInt a = big_signed(k.num()), b = big_signed(k.den());
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    // k p > (k-1) n  <=>  a p > (a-b) n;  p < k n/(k-1)  <=>  (a-b) p < a n
    BigInt lo, hi;
    const BigInt num_lo = (a - b) * n, num_hi = a * n;
    mpz_fdiv_q(lo.get_mpz_t(), num_lo.get_mpz_t(), a.get_mpz_t());
    const BigInt d = a - b;
    mpz_cdiv_q(hi.get_mpz_t(), num_hi.get_mpz_t(), d.get_mpz_t());
    sink(ctx.scan(Location(n), std::move(lo), std::move(hi), 2));
  }
}

std::vector<IntervalReport> verify_fractional(const Rational& k, std::uint64_t n_lo, std::uint64_t n_hi) {
  return collect([&](const ReportSink& s) { verify_fractional(k, n_lo, n_hi, ScanContext{}, s); });
}

void verify_brocard_cubes(std::uint64_t prev_lo, std::uint64_t prev_end, std::uint64_t next_max,
                          std::uint64_t required, const ScanContext& ctx, const ReportSink& sink) {
  if (next_max < 3) return;
  const SegmentedSieve sieve(next_max, ctx.sieve);
  for_each_prime_pair(sieve, prev_lo < 2 ? 2 : prev_lo, prev_end, next_max, [&](const PrimePair& pair) {
    sink(ctx.scan(Location(pair), pow(pair.prev, 3), pow(pair.next, 3), required));
  });
}

std::vector<IntervalReport> verify_brocard_cubes(std::uint64_t p_hi, std::uint64_t required,
                                                 std::optional<std::uint64_t> k_strong) {
  const std::uint64_t want = k_strong ? 2 * *k_strong : required;
  return collect([&](const ReportSink& s) { verify_brocard_cubes(2, p_hi, p_hi, want, ScanContext{}, s); });
}

WeakBrocardResult verify_weak_brocard_squares(std::uint64_t prev_lo, std::uint64_t prev_end, std::uint64_t next_max,
                                              const ScanContext& ctx, const ReportSink& sink) {
  WeakBrocardResult out;
  if (next_max < 3) return out;
  const InequalitySpec filter = InequalitySpec::make(InequalityId::FILTER_WEAK_BROCARD);
  const SegmentedSieve sieve(next_max, ctx.sieve);
  for_each_prime_pair(sieve, prev_lo < 2 ? 2 : prev_lo, prev_end, next_max, [&](const PrimePair& pair) {
    ++out.pairs_scanned;
    if (evaluate_exact(filter, pair).holds != Tri::True) return;
    ++out.filter_passed;
    sink(ctx.scan(Location(pair), pow(pair.prev, 2), pow(pair.next, 2), 2));
  });
  return out;
}

std::vector<IntervalReport> verify_weak_brocard_squares(std::uint64_t p_hi) {
  return collect([&](const ReportSink& s) { verify_weak_brocard_squares(2, p_hi, p_hi, ScanContext{}, s); });
}

// ---- growth profile -----------------------------------------------------------------------------

std::uint64_t growth_required(std::uint64_t n) {
  const BigInt m = pow(n, 17);
  const BigInt t = floor_root(m, 40);
  return to_u64(pow(t, 40) == m ? t : t + 1);
}

GrowthProfile growth_profile_cubes(std::uint64_t n_lo, std::uint64_t n_hi, bool exact) {
  if (n_lo < 2) throw DomainError("growth_profile_cubes: n_lo must be >= 2");
  GrowthProfile prof;
  prof.n_lo = n_lo;
  prof.n_hi = n_hi;
  ScanContext ctx;
  ctx.early_exit = !exact;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    GrowthEntry e;
    e.n = n;
    e.required = growth_required(n);
    const IntervalReport r = ctx.scan(Location(n), pow(n - 1, 3), pow(n, 3), e.required);
    e.count = r.found;
    e.early_exited = r.early_exited;
    e.holds = pow(e.count, 40) >= pow(n, 17);
    if (!e.holds) prof.largest_failure = n;
    prof.entries.push_back(e);
  }
  prof.c0 = prof.largest_failure ? *prof.largest_failure + 1 : n_lo;
  return prof;
}

// ---- equivalence ------------------------------------------------------------------------------

EquivalenceResult check_interval_equivalence(const InequalitySpec& spec, std::uint64_t prev_lo,
                                             std::uint64_t prev_end, std::uint64_t next_max, const ScanContext& ctx,
                                             const SegmentedSieve& sieve) {
  EquivalenceResult out;
  ScanContext single = ctx;
  single.early_exit = true;
  for_each_prime_pair(sieve, prev_lo, prev_end, next_max, [&](const PrimePair& pair) {
    const auto forms = interval_forms(spec, pair);
    if (!forms) {
      throw DomainError(fmt::format("{} has no interval form", inequality_name(spec.id)));
    }
    const Verdict v = evaluate(spec, pair);
    if (v.holds == Tri::Unknown) return;
    ++out.pairs_checked;
    bool all_nonempty = true;
    std::string detail;
    for (const auto& f : *forms) {
      const IntervalReport r = single.scan(Location(pair), f.lo, f.hi, 1);
      all_nonempty = all_nonempty && r.satisfied;
      if (!detail.empty()) detail += ";";
      detail += fmt::format("({},{})={}", to_string(f.lo), to_string(f.hi), r.found);
    }
    const bool gap_holds = v.holds == Tri::True;
    if (gap_holds != all_nonempty) {
      ViolationRecord rec;
      rec.check_id = fmt::format("EQUIV_{}", inequality_name(spec.id));
      rec.params = spec.rendered_params();
      rec.location = Location(pair);
      rec.lhs = gap_holds ? "gap inequality holds" : "gap inequality fails";
      rec.rhs = detail;
      out.mismatches.push_back(std::move(rec));
    }
  });
  return out;
}

EquivalenceResult check_interval_equivalence(const InequalitySpec& spec, std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2) lo = 2;
  const SegmentedSieve sieve(hi);
  // Upper interval ends stay below 2 hi for every form with k >= 2.
  const ScanContext ctx = context_with_table(2 * hi + 64);
  return check_interval_equivalence(spec, lo, hi, hi, ctx, sieve);
}

ViolationRecord violation_for(const std::string& check_id, const Params& params, const IntervalReport& r) {
  ViolationRecord v;
  v.check_id = check_id;
  v.params = params;
  if (!r.label.empty()) v.params["half"] = r.label;
  v.location = r.location;
  v.lhs = fmt::format("found={}{} in ({},{})", r.found, r.early_exited ? "+" : "", to_string(r.lo), to_string(r.hi));
  v.rhs = fmt::format("required={}", r.required);
  return v;
}

void to_json(nlohmann::json& j, const IntervalReport& r) {
  j = nlohmann::json{{"location", r.location}, {"label", r.label},         {"lo", to_string(r.lo)},
                     {"hi", to_string(r.hi)},   {"required", r.required},   {"found", r.found},
                     {"witnesses", r.witnesses}, {"early_exited", r.early_exited}, {"satisfied", r.satisfied}};
}

void from_json(const nlohmann::json& j, IntervalReport& r) {
  j.at("location").get_to(r.location);
  j.at("label").get_to(r.label);
  r.lo = BigInt(j.at("lo").get<std::string>());
  r.hi = BigInt(j.at("hi").get<std::string>());
  j.at("required").get_to(r.required);
  j.at("found").get_to(r.found);
  j.at("witnesses").get_to(r.witnesses);
  j.at("early_exited").get_to(r.early_exited);
  j.at("satisfied").get_to(r.satisfied);
}

}  // namespace gapforge
