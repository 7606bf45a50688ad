#include "gapforge/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "gapforge/constants.hpp"
#include "gapforge/errors.hpp"
#include "gapforge/gaps.hpp"
#include "gapforge/inequality.hpp"
#include "gapforge/legendre.hpp"
#include "gapforge/verify.hpp"

namespace gapforge {

using nlohmann::json;

namespace {

// ---- parameters ---------------------------------------------------------------------------------

const std::map<std::string_view, std::set<std::string_view>>& allowed_params() {
  static const std::map<std::string_view, std::set<std::string_view>> m = {
      {"GAP_BERTRAND", {"k", "mode"}},
      {"GAP_EXP", {"k", "mode"}},
      {"GAP_LEGENDRE", {"mode"}},
      {"GAP_OPP_NEXT", {"mode"}},
      {"GAP_OPP_PREV", {"mode"}},
      {"GAP_CRAMER_EPS", {"epsilon", "mode", "C"}},
      {"GAP_FRACTIONAL", {"k", "mode"}},
      {"GAP_DUSART", {"mode"}},
      {"GAP_BHP", {"mode"}},
      {"FILTER_WEAK_BROCARD", {}},
      {"ANDRICA", {}},
      {"CRAMER_RATIO", {}},
      {"EQUIVALENCE", {"ineq", "k", "epsilon"}},
      {"POWER_INTERVAL", {"a", "b", "required", "early_exit"}},
      {"BERTRAND_DIRECT", {"k"}},
      {"AUXILIARY_BERTRAND", {"k"}},
      {"OPPERMANN", {}},
      {"FRACTIONAL", {"k"}},
      {"BROCARD_CUBES", {"required", "k", "c_growth"}},
      {"WEAK_BROCARD_SQUARES", {}},
      {"GROWTH_CUBES", {"exact"}},
      {"LEGENDRE_INJECTIVE", {}},
      {"LEGENDRE_GAP_COROLLARY", {}},
      {"LEGENDRE_GAP_CONJECTURE", {}},
  };
  return m;
}

void check_params(const CheckConfig& c) {
  const auto it = allowed_params().find(c.check_id);
  if (it == allowed_params().end()) throw ConfigError(fmt::format("line {}: unknown check_id '{}'", c.line, c.check_id));
  for (const auto& [k, v] : c.params) {
    if (it->second.count(k) == 0) {
      throw ConfigError(fmt::format("line {}: {} does not take parameter '{}'", c.line, c.check_id, k));
    }
  }
}

std::optional<std::string> opt(const CheckConfig& c, const std::string& key) {
  const auto it = c.params.find(key);
  if (it == c.params.end()) return std::nullopt;
  return it->second;
}

std::uint64_t u64_param(const CheckConfig& c, const std::string& key, std::uint64_t fallback) {
  const auto v = opt(c, key);
  return v ? parse_count(*v, fmt::format("line {}: {}", c.line, key)) : fallback;
}

Scalar scalar_param(const CheckConfig& c, const std::string& key, std::optional<Scalar> fallback = std::nullopt) {
  const auto v = opt(c, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ConfigError(fmt::format("line {}: {} requires {}=", c.line, c.check_id, key));
  }
  try {
    return Scalar::parse(*v);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("line {}: {}: {}", c.line, key, e.what()));
  }
}

bool bool_param(const CheckConfig& c, const std::string& key, bool fallback) {
  const auto v = opt(c, key);
  if (!v) return fallback;
  if (*v == "1" || *v == "true" || *v == "yes") return true;
  if (*v == "0" || *v == "false" || *v == "no") return false;
  throw ConfigError(fmt::format("line {}: {} must be true or false", c.line, key));
}

std::uint64_t saturate(const BigInt& v) { return fits_u64(v) ? to_u64(v) : ~std::uint64_t{0}; }

std::uint64_t integer_k(const CheckConfig& c) {
  const Scalar k = scalar_param(c, "k", Scalar(Rational(1)));
  if (!k.is_exact()) throw ConfigError(fmt::format("line {}: k must be rational here", c.line));
  const Rational& r = k.exact();
  if (r.num() < 1) throw ConfigError(fmt::format("line {}: k must be >= 1", c.line));
  // ceil(k): the Bertrand constant is non-decreasing in k
  return static_cast<std::uint64_t>((r.num() + r.den() - 1) / r.den());
}

InequalitySpec spec_for(const CheckConfig& c, InequalityId id) {
  std::map<std::string, Scalar> params;
  for (const char* key : {"k", "epsilon"}) {
    if (const auto v = opt(c, key)) params[key] = scalar_param(c, key);
  }
  std::optional<ComparisonMode> mode;
  if (const auto m = opt(c, "mode")) {
    if (*m == "exact") {
      mode = ComparisonMode::EXACT_INTEGER;
    } else if (*m == "guarded") {
      mode = ComparisonMode::GUARDED_REAL;
    } else {
      throw ConfigError(fmt::format("line {}: mode must be exact or guarded", c.line));
    }
  }
  try {
    return InequalitySpec::make(id, std::move(params), mode);
  } catch (const UnsupportedModeError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("line {}: {}", c.line, e.what()));
  }
}

// ---- shard payloads -----------------------------------------------------------------------------

struct Findings {
  std::uint64_t threshold = 0;
  std::size_t cap = 0;
  std::uint64_t violations = 0, below = 0, undecided = 0;
  std::vector<ViolationRecord> violation_records, below_records, undecided_records;
  bool truncated = false;

  void add(ViolationRecord r) {
    auto push = [&](std::vector<ViolationRecord>& v, std::uint64_t& n) {
      ++n;
      if (v.size() < cap) {
        v.push_back(std::move(r));
      } else {
        truncated = true;
      }
    };
    if (r.near_boundary) {
      push(undecided_records, undecided);
    } else if (r.location.key() > threshold) {
      push(violation_records, violations);
    } else {
      push(below_records, below);
    }
  }
};

struct ShardPayload {
  std::uint64_t checked = 0;
  Findings findings;
  json stats = json::object();
  double wall_time = 0;
};

json payload_to_json(const ShardPayload& p) {
  const Findings& f = p.findings;
  return json{{"checked", p.checked},
              {"violations", f.violations},
              {"below", f.below},
              {"undecided", f.undecided},
              {"violation_records", f.violation_records},
              {"below_records", f.below_records},
              {"undecided_records", f.undecided_records},
              {"truncated", f.truncated},
              {"stats", p.stats},
              {"wall_time", p.wall_time}};
}

json pair_json(const PrimePair& p, long double v) {
  return json{{"prev", p.prev}, {"next", p.next}, {"value", static_cast<double>(v)}};
}

// Larger value, ties to the smaller prev; `null` loses to everything.
bool better_entry(const json& cand, const json& best) {
  if (best.is_null()) return true;
  if (cand.is_null()) return false;
  const double a = cand.at("value").get<double>(), b = best.at("value").get<double>();
  return a > b || (a == b && cand.at("prev").get<std::uint64_t>() < best.at("prev").get<std::uint64_t>());
}

// ---- check runners ------------------------------------------------------------------------------

class Runner {
 public:
  Runner(const CheckConfig& check, const CampaignConfig& config) : check_(check), config_(config) {}
  virtual ~Runner() = default;

  virtual bool single_shard() const { return false; }
  virtual void prepare() {}
  // Inclusive key range [lo, hi].
  virtual void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const = 0;
  virtual void merge_stats(json& acc, const json& part) const {
    if (!part.empty()) acc = part;
  }
  virtual void finalize_stats(json& /*acc*/) const {}

 protected:
  GuardConfig guard() const { return {true, 64, config_.precision_cap}; }
  const CheckConfig& check_;
  const CampaignConfig& config_;
};

class GapRunner : public Runner {
 public:
  GapRunner(const CheckConfig& c, const CampaignConfig& cfg, InequalityId id)
      : Runner(c, cfg), spec_(spec_for(c, id)) {}
  void prepare() override { sieve_ = std::make_shared<SegmentedSieve>(check_.to); }
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    GapCheckResult r = check_gap_inequality_shard(spec_, *sieve_, std::max<std::uint64_t>(lo, 2), hi + 1, check_.to, guard());
    out.checked = r.pairs_checked;
    for (auto& v : r.violations) out.findings.add(std::move(v));
    for (auto& v : r.undecided) out.findings.add(std::move(v));
  }

 private:
  InequalitySpec spec_;
  std::shared_ptr<SegmentedSieve> sieve_;
};

class FilterRunner : public Runner {
 public:
  using Runner::Runner;
  void prepare() override { sieve_ = std::make_shared<SegmentedSieve>(check_.to); }
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    const InequalitySpec spec = InequalitySpec::make(InequalityId::FILTER_WEAK_BROCARD);
    std::uint64_t passed = 0;
    for_each_prime_pair(*sieve_, std::max<std::uint64_t>(lo, 2), hi + 1, check_.to, [&](const PrimePair& p) {
      ++out.checked;
      if (evaluate_exact(spec, p).holds == Tri::True) ++passed;
    });
    out.stats = json{{"filter_passed", passed}};
  }
  void merge_stats(json& acc, const json& part) const override {
    acc["filter_passed"] = acc.value("filter_passed", std::uint64_t{0}) + part.value("filter_passed", std::uint64_t{0});
  }

 private:
  std::shared_ptr<SegmentedSieve> sieve_;
};

std::string decade_key(int d) { return fmt::format("{:02d}", d); }

class AndricaRunner : public Runner {
 public:
  using Runner::Runner;
  void prepare() override { sieve_ = std::make_shared<SegmentedSieve>(check_.to); }
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    GapExtremes ex;
    DecadeMaxima decades;
    for_each_prime_pair(*sieve_, std::max<std::uint64_t>(lo, 2), hi + 1, check_.to, [&](const PrimePair& p) {
      ++out.checked;
      const GapRecord r = GapRecord::of(p);
      ex.absorb(r);
      decades.absorb(r);
      if (!andrica_below_one_exact(p)) {
        const BigInt d = big(p.gap) - 1;
        out.findings.add({"ANDRICA", {}, Location(p), "(gap-1)^2=" + to_string(d * d), "4prev=" + to_string(4 * big(p.prev))});
      }
    });
    json dec = json::object();
    for (const auto& [d, e] : decades.entries()) dec[decade_key(d)] = pair_json(e.pair, e.value);
    out.stats = json{{"max", ex.empty() ? json() : pair_json(ex.max_andrica_pair, ex.max_andrica)}, {"decades", dec}};
  }
  void merge_stats(json& acc, const json& part) const override {
    if (!acc.contains("max")) acc["max"] = json();
    if (!acc.contains("decades")) acc["decades"] = json::object();
    if (better_entry(part.at("max"), acc["max"])) acc["max"] = part.at("max");
    for (const auto& [d, e] : part.at("decades").items()) {
      if (!acc["decades"].contains(d) || better_entry(e, acc["decades"][d])) acc["decades"][d] = e;
    }
  }
  void finalize_stats(json& acc) const override {
    bool non_increasing = true;
    double last = 0;
    bool first = true;
    const json decades = acc.value("decades", json::object());
    for (const auto& [d, e] : decades.items()) {
      if (std::stoi(d) < 1) continue;
      const double v = e.at("value").get<double>();
      if (!first && v > last) non_increasing = false;
      last = v;
      first = false;
    }
    acc["decades_non_increasing_from_10"] = non_increasing;
  }

 private:
  std::shared_ptr<SegmentedSieve> sieve_;
};

class CramerRunner : public Runner {
 public:
  using Runner::Runner;
  void prepare() override { sieve_ = std::make_shared<SegmentedSieve>(check_.to); }
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    GapExtremes ex;
    for_each_prime_pair(*sieve_, std::max<std::uint64_t>(lo, 2), hi + 1, check_.to, [&](const PrimePair& p) {
      ++out.checked;
      ex.absorb(GapRecord::of(p));
    });
    out.stats = json{{"max", ex.empty() ? json() : pair_json(ex.max_cramer_pair, ex.max_cramer)},
                     {"max_gap", ex.empty() ? json() : json{{"prev", ex.max_gap_pair.prev}, {"next", ex.max_gap_pair.next}, {"value", static_cast<double>(ex.max_gap_pair.gap)}}}};
  }
  void merge_stats(json& acc, const json& part) const override {
    for (const char* key : {"max", "max_gap"}) {
      if (!acc.contains(key)) acc[key] = json();
      if (better_entry(part.at(key), acc[key])) acc[key] = part.at(key);
    }
  }

 private:
  std::shared_ptr<SegmentedSieve> sieve_;
};

class EquivalenceRunner : public Runner {
 public:
  EquivalenceRunner(const CheckConfig& c, const CampaignConfig& cfg) : Runner(c, cfg), spec_(make_spec(c)) {}
  void prepare() override {
    sieve_ = std::make_shared<SegmentedSieve>(check_.to);
    ctx_.table = std::make_shared<const PrimeTable>(primes_up_to(2 * check_.to + 64));
  }
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    EquivalenceResult r =
        check_interval_equivalence(spec_, std::max<std::uint64_t>(lo, 2), hi + 1, check_.to, ctx_, *sieve_);
    out.checked = r.pairs_checked;
    for (auto& m : r.mismatches) out.findings.add(std::move(m));
  }

 private:
  static InequalitySpec make_spec(const CheckConfig& c) {
    const auto name = opt(c, "ineq");
    if (!name) throw ConfigError(fmt::format("line {}: EQUIVALENCE requires ineq=", c.line));
    const auto id = parse_inequality_id(*name);
    if (!id) throw ConfigError(fmt::format("line {}: unknown inequality '{}'", c.line, *name));
    InequalitySpec s = spec_for(c, *id);
    if (!interval_forms(s, PrimePair::of(3, 5))) {
      throw ConfigError(fmt::format("line {}: {} has no interval form", c.line, *name));
    }
    return s;
  }
  InequalitySpec spec_;
  std::shared_ptr<SegmentedSieve> sieve_;
  ScanContext ctx_;
};

// Interval families: fn(lo, hi, ctx, sink) produces reports; failures become findings.
class IntervalRunner : public Runner {
 public:
  using Body = std::function<void(std::uint64_t, std::uint64_t, const ScanContext&, const ReportSink&)>;
  IntervalRunner(const CheckConfig& c, const CampaignConfig& cfg, Body body, std::uint64_t reports_per_item = 1)
      : Runner(c, cfg), body_(std::move(body)), per_item_(reports_per_item) {}
  void set_table(std::uint64_t limit) { table_limit_ = limit; }
  void set_early_exit(bool e) { ctx_.early_exit = e; }
  void prepare() override {
    if (table_limit_ > 0) ctx_.table = std::make_shared<const PrimeTable>(primes_up_to(table_limit_));
  }
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    std::uint64_t reports = 0, early = 0;
    body_(lo, hi, ctx_, [&](IntervalReport&& r) {
      ++reports;
      if (r.early_exited) ++early;
      if (!r.satisfied) out.findings.add(violation_for(check_.check_id, check_.params, r));
    });
    out.checked = reports / per_item_;
    out.stats = json{{"early_exited", early}};
  }
  void merge_stats(json& acc, const json& part) const override {
    acc["early_exited"] = acc.value("early_exited", std::uint64_t{0}) + part.value("early_exited", std::uint64_t{0});
  }

 private:
  Body body_;
  std::uint64_t per_item_;
  std::uint64_t table_limit_ = 0;
  ScanContext ctx_;
};

class WeakBrocardRunner : public Runner {
 public:
  using Runner::Runner;
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    const WeakBrocardResult r =
        verify_weak_brocard_squares(std::max<std::uint64_t>(lo, 2), hi + 1, check_.to, ScanContext{}, [&](IntervalReport&& rep) {
          if (!rep.satisfied) out.findings.add(violation_for(check_.check_id, check_.params, rep));
        });
    out.checked = r.pairs_scanned;
    out.stats = json{{"filter_passed", r.filter_passed}};
  }
  void merge_stats(json& acc, const json& part) const override {
    acc["filter_passed"] = acc.value("filter_passed", std::uint64_t{0}) + part.value("filter_passed", std::uint64_t{0});
  }
};

class GrowthRunner : public Runner {
 public:
  using Runner::Runner;
  void run(std::uint64_t lo, std::uint64_t hi, ShardPayload& out) const override {
    const bool exact = bool_param(check_, "exact", false);
    const GrowthProfile prof = growth_profile_cubes(std::max<std::uint64_t>(lo, 2), hi, exact);
    for (const auto& e : prof.entries) {
      ++out.checked;
      if (!e.holds) {
        out.findings.add({"GROWTH_CUBES", check_.params, Location(e.n), fmt::format("count^40 with count={}", e.count),
                          fmt::format("n^17 (requires count>={})", e.required)});
      }
    }
    out.stats = json{{"largest_failure", prof.largest_failure ? json(*prof.largest_failure) : json()}};
  }
  void merge_stats(json& acc, const json& part) const override {
    if (!acc.contains("largest_failure")) acc["largest_failure"] = json();
    const json& f = part.at("largest_failure");
    if (!f.is_null() && (acc["largest_failure"].is_null() || f.get<std::uint64_t>() > acc["largest_failure"].get<std::uint64_t>())) {
      acc["largest_failure"] = f;
    }
  }
  void finalize_stats(json& acc) const override {
    const json f = acc.value("largest_failure", json());
    acc["c0"] = f.is_null() ? std::max<std::uint64_t>(check_.from, 2) : f.get<std::uint64_t>() + 1;
  }
};

class LegendreRunner : public Runner {
 public:
  using Runner::Runner;
  bool single_shard() const override { return true; }
  void run(std::uint64_t /*lo*/, std::uint64_t hi, ShardPayload& out) const override {
    const std::string& id = check_.check_id;
    if (id == "LEGENDRE_INJECTIVE") {
      for (auto& v : check_map_injective(hi)) out.findings.add(std::move(v));
      out.checked = hi;
    } else if (id == "LEGENDRE_GAP_COROLLARY") {
      auto v = check_legendre_gap_corollary(hi);
      std::uint64_t lower = 0, upper = 0;
      for (const auto& r : v) (r.params.at("side") == "lower" ? lower : upper) += 1;
      for (auto& r : v) out.findings.add(std::move(r));
      out.checked = hi >= 2 ? hi - 1 : 0;
      out.stats = json{{"lower_side_failures", lower}, {"upper_side_failures", upper}};
    } else {
      LegendreGapConjectureReport r = check_legendre_gap_conjecture(hi);
      for (auto& v : r.violations) out.findings.add(std::move(v));
      out.checked = r.checked;
      out.stats = json{{"skipped_no_predecessor", r.skipped_no_predecessor}};
    }
  }
};

std::unique_ptr<Runner> make_runner(const CheckConfig& c, const CampaignConfig& cfg) {
  check_params(c);
  const std::string& id = c.check_id;
  if (id == "FILTER_WEAK_BROCARD") return std::make_unique<FilterRunner>(c, cfg);
  if (const auto ineq = parse_inequality_id(id)) return std::make_unique<GapRunner>(c, cfg, *ineq);
  if (id == "ANDRICA") return std::make_unique<AndricaRunner>(c, cfg);
  if (id == "CRAMER_RATIO") return std::make_unique<CramerRunner>(c, cfg);
  if (id == "EQUIVALENCE") return std::make_unique<EquivalenceRunner>(c, cfg);
  if (id == "POWER_INTERVAL") {
    const std::uint64_t a = u64_param(c, "a", 3), b = u64_param(c, "b", 1), req = u64_param(c, "required", 1);
    if (b == 0 || a < b) throw ConfigError(fmt::format("line {}: POWER_INTERVAL needs a >= b >= 1", c.line));
    auto r = std::make_unique<IntervalRunner>(c, cfg, [a, b, req](std::uint64_t lo, std::uint64_t hi, const ScanContext& ctx, const ReportSink& s) {
      verify_power_interval(a, b, std::max<std::uint64_t>(lo, 2), hi, req, ctx, s);
    });
    r->set_early_exit(bool_param(c, "early_exit", true));
    return r;
  }
  if (id == "BERTRAND_DIRECT") {
    const std::uint64_t k = integer_k(c);
    if (c.from <= 2 * k + 2) throw ConfigError(fmt::format("line {}: BERTRAND_DIRECT needs from > 2k + 2 = {}", c.line, 2 * k + 2));
    return std::make_unique<IntervalRunner>(c, cfg, [k](std::uint64_t lo, std::uint64_t hi, const ScanContext& ctx, const ReportSink& s) {
      verify_bertrand_direct(k, lo, hi, ctx, s);
    });
  }
  if (id == "AUXILIARY_BERTRAND") {
    const std::uint64_t k = integer_k(c);
    auto r = std::make_unique<IntervalRunner>(c, cfg, [k](std::uint64_t lo, std::uint64_t hi, const ScanContext& ctx, const ReportSink& s) {
      verify_auxiliary_bertrand(k, lo, hi, ctx, s);
    });
    r->set_table(c.to);
    return r;
  }
  if (id == "OPPERMANN") {
    return std::make_unique<IntervalRunner>(
        c, cfg,
        [](std::uint64_t lo, std::uint64_t hi, const ScanContext& ctx, const ReportSink& s) {
          verify_oppermann(std::max<std::uint64_t>(lo, 2), hi, ctx, s);
        },
        2);
  }
  if (id == "FRACTIONAL") {
    const Scalar k = scalar_param(c, "k");
    if (!k.is_exact() || k.exact() < Rational(2)) throw ConfigError(fmt::format("line {}: FRACTIONAL needs rational k >= 2", c.line));
    const Rational kr = k.exact();
    return std::make_unique<IntervalRunner>(c, cfg, [kr](std::uint64_t lo, std::uint64_t hi, const ScanContext& ctx, const ReportSink& s) {
      verify_fractional(kr, std::max<std::uint64_t>(lo, 1), hi, ctx, s);
    });
  }
  if (id == "BROCARD_CUBES") {
    const auto k = opt(c, "k");
    const std::uint64_t req = k ? 2 * u64_param(c, "k", 0) : u64_param(c, "required", 4);
    const std::uint64_t to = c.to;
    return std::make_unique<IntervalRunner>(c, cfg, [req, to](std::uint64_t lo, std::uint64_t hi, const ScanContext& ctx, const ReportSink& s) {
      verify_brocard_cubes(lo, hi + 1, to, req, ctx, s);
    });
  }
  if (id == "WEAK_BROCARD_SQUARES") return std::make_unique<WeakBrocardRunner>(c, cfg);
  if (id == "GROWTH_CUBES") return std::make_unique<GrowthRunner>(c, cfg);
  if (id.rfind("LEGENDRE_", 0) == 0) return std::make_unique<LegendreRunner>(c, cfg);
  throw ConfigError(fmt::format("line {}: unknown check_id '{}'", c.line, id));
}

struct Shard {
  std::size_t check_index;
  std::size_t shard_index;
  std::uint64_t lo;
  std::uint64_t hi;
};

std::vector<std::pair<std::uint64_t, std::uint64_t>> shard_ranges(const CheckConfig& c, std::uint64_t shards, bool single) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t len = c.to - c.from + 1;
  const std::uint64_t n = single ? 1 : std::min<std::uint64_t>(shards, len);
  const std::uint64_t width = (len + n - 1) / n;
  for (std::uint64_t lo = c.from; lo <= c.to;) {
    const std::uint64_t hi = c.to - lo < width - 1 ? c.to : lo + width - 1;
    out.emplace_back(lo, hi);
    if (hi == c.to) break;
    lo = hi + 1;
  }
  return out;
}

}  // namespace

std::uint64_t derived_threshold(const CheckConfig& c, const CampaignConfig& cfg) {
  if (c.threshold) return *c.threshold;
  const std::string& id = c.check_id;
  if (id == "GAP_BERTRAND" || id == "BERTRAND_DIRECT" || id == "AUXILIARY_BERTRAND") {
    return saturate(bertrand_constant(integer_k(c)).value);
  }
  if (id == "GAP_FRACTIONAL" || id == "FRACTIONAL") {
    return saturate(fractional_constant(scalar_param(c, "k"), {true, 64, cfg.precision_cap}).value);
  }
  if (id == "GAP_DUSART") return nth_prime(463);
  if (id == "GAP_BHP" || id == "GAP_EXP" || id == "POWER_INTERVAL" || id == "GROWTH_CUBES") return cfg.x0;
  if (id == "GAP_CRAMER_EPS") {
    const BigInt p = cramer_constant(scalar_param(c, "epsilon"), scalar_param(c, "C", Scalar(Rational(1))),
                                     {true, 64, cfg.precision_cap})
                         .value;
    return saturate(p - 1);
  }
  if (id == "BROCARD_CUBES" && opt(c, "k")) {
    return saturate(strong_brocard_constant(u64_param(c, "k", 1), u64_param(c, "c_growth", 2)).value);
  }
  return 0;
}

bool operator==(const VerificationSummary& a, const VerificationSummary& b) {
  auto strip = [](const VerificationSummary& s) {
    VerificationSummary t = s;
    for (auto& c : t.checks) c.wall_time = 0;
    t.totals.wall_time = 0;
    return t;
  };
  const VerificationSummary x = strip(a), y = strip(b);
  if (x.x0 != y.x0 || x.precision_cap != y.precision_cap || x.complete != y.complete) return false;
  if (x.totals.checked != y.totals.checked || x.totals.violations != y.totals.violations ||
      x.totals.below_threshold_findings != y.totals.below_threshold_findings ||
      x.totals.near_boundary_count != y.totals.near_boundary_count) {
    return false;
  }
  if (x.checks.size() != y.checks.size()) return false;
  for (std::size_t i = 0; i < x.checks.size(); ++i) {
    const CheckSummary &p = x.checks[i], &q = y.checks[i];
    if (p.check_id != q.check_id || p.params != q.params || p.from != q.from || p.to != q.to ||
        p.threshold != q.threshold || p.checked != q.checked || p.violations != q.violations ||
        p.below_threshold_findings != q.below_threshold_findings || p.near_boundary_count != q.near_boundary_count ||
        p.violation_records != q.violation_records || p.below_threshold_records != q.below_threshold_records ||
        p.near_boundary_records != q.near_boundary_records || p.records_truncated != q.records_truncated ||
        p.stats != q.stats) {
      return false;
    }
  }
  return true;
}

VerificationSummary run_campaign(const CampaignConfig& config, const RunOptions& options) {
  config.validate();
  const std::size_t n_checks = config.checks.size();

  std::vector<std::unique_ptr<Runner>> runners;
  std::vector<std::uint64_t> thresholds;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> layouts;
  for (const auto& c : config.checks) {
    runners.push_back(make_runner(c, config));
    thresholds.push_back(derived_threshold(c, config));
    layouts.push_back(shard_ranges(c, config.shards_per_check, runners.back()->single_shard()));
  }

  std::unique_ptr<Checkpoint> checkpoint;
  if (config.checkpoint_path) {
    checkpoint = std::make_unique<Checkpoint>(*config.checkpoint_path, sha256_hex(config.canonical()), options.checkpoint_mode);
  }

  std::map<ShardKey, json> results;
  if (checkpoint) {
    for (const auto& [key, rec] : checkpoint->completed()) {
      if (key.check_index >= n_checks || key.shard_index >= layouts[key.check_index].size()) {
        throw CheckpointError("checkpoint shard outside the configured layout; rerun with --reset");
      }
      const auto& [lo, hi] = layouts[key.check_index][key.shard_index];
      if (rec.range_lo != lo || rec.range_hi != hi) {
        throw CheckpointError("checkpoint shard range does not match the configured layout; rerun with --reset");
      }
      results[key] = rec.payload;
    }
  }

  std::vector<Shard> pending;
  std::vector<bool> needs_prepare(n_checks, false);
  for (std::size_t i = 0; i < n_checks; ++i) {
    for (std::size_t s = 0; s < layouts[i].size(); ++s) {
      if (results.count({i, s}) == 0) {
        pending.push_back({i, s, layouts[i][s].first, layouts[i][s].second});
        needs_prepare[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n_checks; ++i) {
    if (needs_prepare[i]) runners[i]->prepare();
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> finished{0};
  std::atomic<bool> stop{false};
  std::mutex mutex;
  std::exception_ptr failure;
  const std::size_t total_shards = pending.size();

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t t = next.fetch_add(1);
      if (t >= pending.size()) return;
      const Shard& sh = pending[t];
      try {
        ShardPayload payload;
        payload.findings.threshold = thresholds[sh.check_index];
        payload.findings.cap = config.max_records;
        const auto start = std::chrono::steady_clock::now();
        runners[sh.check_index]->run(sh.lo, sh.hi, payload);
        payload.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json j = payload_to_json(payload);
        if (checkpoint) {
          checkpoint->append({{sh.check_index, sh.shard_index}, config.checks[sh.check_index].check_id, sh.lo, sh.hi, j});
        }
        const std::size_t done = finished.fetch_add(1) + 1;
        {
          std::lock_guard lock(mutex);
          results[{sh.check_index, sh.shard_index}] = std::move(j);
          if (options.progress) {
            options.progress(fmt::format("[{}/{}] {} [{}, {}] done", done, total_shards,
                                         config.checks[sh.check_index].check_id, sh.lo, sh.hi));
          }
        }
        if (options.stop_after_shards != 0 && done >= options.stop_after_shards) stop.store(true);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        stop.store(true);
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(std::max<std::size_t>(pending.size(), 1))));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  VerificationSummary summary;
  summary.x0 = config.x0;
  summary.precision_cap = config.precision_cap;
  for (std::size_t i = 0; i < n_checks; ++i) {
    const CheckConfig& c = config.checks[i];
    CheckSummary cs;
    cs.check_id = c.check_id;
    cs.params = c.params;
    cs.from = c.from;
    cs.to = c.to;
    cs.threshold = thresholds[i];
    json stats = json::object();
    for (std::size_t s = 0; s < layouts[i].size(); ++s) {
      const auto it = results.find({i, s});
      if (it == results.end()) {
        summary.complete = false;
        continue;
      }
      const json& p = it->second;
      cs.checked += p.at("checked").get<std::uint64_t>();
      cs.violations += p.at("violations").get<std::uint64_t>();
      cs.below_threshold_findings += p.at("below").get<std::uint64_t>();
      cs.near_boundary_count += p.at("undecided").get<std::uint64_t>();
      cs.records_truncated = cs.records_truncated || p.at("truncated").get<bool>();
      auto take = [&](const char* key, std::vector<ViolationRecord>& into) {
        for (const auto& r : p.at(key)) {
          if (into.size() < config.max_records) {
            into.push_back(r.get<ViolationRecord>());
          } else {
            cs.records_truncated = true;
          }
        }
      };
      take("violation_records", cs.violation_records);
      take("below_records", cs.below_threshold_records);
      take("undecided_records", cs.near_boundary_records);
      runners[i]->merge_stats(stats, p.at("stats"));
      cs.wall_time += p.at("wall_time").get<double>();
    }
    runners[i]->finalize_stats(stats);
    cs.stats = std::move(stats);
    sort_by_location(cs.violation_records);
    sort_by_location(cs.below_threshold_records);
    sort_by_location(cs.near_boundary_records);
    summary.totals.checked += cs.checked;
    summary.totals.violations += cs.violations;
    summary.totals.below_threshold_findings += cs.below_threshold_findings;
    summary.totals.near_boundary_count += cs.near_boundary_count;
    summary.totals.wall_time += cs.wall_time;
    summary.checks.push_back(std::move(cs));
  }
  return summary;
}

int exit_code_for(const VerificationSummary& summary) { return summary.totals.violations > 0 ? 1 : 0; }

}  // namespace gapforge
