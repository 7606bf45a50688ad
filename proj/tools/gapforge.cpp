// gapforge: command-line front end for the verification library.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "gapforge/campaign.hpp"
#include "gapforge/campaign_config.hpp"
#include "gapforge/constants.hpp"
#include "gapforge/errors.hpp"
#include "gapforge/gaps.hpp"
#include "gapforge/legendre.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/report.hpp"
#include "gapforge/sieve.hpp"

namespace gf = gapforge;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kViolations = 1, kConfig = 2, kResource = 3 };

struct RangeFlags {
  std::string from = "2";
  std::string to;
  std::uint64_t lo() const { return gf::parse_count(from, "--from"); }
  std::uint64_t hi() const {
    if (to.empty()) throw gf::ConfigError("--to is required");
    return gf::parse_count(to, "--to");
  }
};

struct CampaignFlags {
  std::optional<unsigned> threads;
  std::optional<std::string> format;
  std::optional<std::string> checkpoint;
  std::optional<std::string> x0;
  bool resume = false;
  bool reset = false;
  bool quiet = false;

  void apply(gf::CampaignConfig& cfg) const {
    if (threads) cfg.threads = *threads;
    if (format) cfg.format = gf::parse_format(*format);
    if (checkpoint) cfg.checkpoint_path = *checkpoint;
    if (x0) cfg.x0 = gf::parse_count(*x0, "--x0");
  }
  gf::RunOptions options() const {
    if (resume && reset) throw gf::ConfigError("--resume and --reset are mutually exclusive");
    gf::RunOptions o;
    o.checkpoint_mode = resume ? gf::CheckpointMode::Resume : reset ? gf::CheckpointMode::Reset : gf::CheckpointMode::Fresh;
    if (!quiet) o.progress = [](const std::string& line) { std::cerr << line << '\n'; };
    return o;
  }
};

void add_campaign_flags(CLI::App* app, CampaignFlags& f) {
  app->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--format", f.format, "json or csv");
  app->add_option("--checkpoint", f.checkpoint, "Checkpoint file");
  app->add_option("--x0", f.x0, "Verified-gap threshold x0");
  app->add_flag("--resume", f.resume, "Resume from an existing checkpoint");
  app->add_flag("--reset", f.reset, "Discard an existing checkpoint");
  app->add_flag("--quiet", f.quiet, "Suppress progress lines");
}

int run_and_report(gf::CampaignConfig cfg, const CampaignFlags& flags) {
  flags.apply(cfg);
  const gf::VerificationSummary s = gf::run_campaign(cfg, flags.options());
  gf::emit_report(std::cout, s, cfg.format);
  return gf::exit_code_for(s);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string numbers(const std::vector<gf::LegendrePrime>& v) {
  json a = json::array();
  for (const auto& l : v) a.push_back(l.value);
  return a.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime-gap inequality verification toolkit"};
  app.require_subcommand(1);

  // scan-gaps
  RangeFlags scan_range;
  std::string scan_format = "csv";
  auto* scan = app.add_subcommand("scan-gaps", "Consecutive prime gaps with Andrica and Cramer statistics");
  scan->add_option("--from", scan_range.from, "Smallest prev");
  scan->add_option("--to", scan_range.to, "Largest next")->required();
  scan->add_option("--format", scan_format, "csv (one row per pair) or json (extremes and decade maxima)");

  // verify
  std::string check_id;
  RangeFlags verify_range;
  std::optional<std::string> v_k, v_eps, v_required, v_mode, v_threshold, v_ineq, v_c;
  CampaignFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Run a single check over a range");
  verify->add_option("check_id", check_id, "Check identifier")->required();
  verify->add_option("--from", verify_range.from, "Range start");
  verify->add_option("--to", verify_range.to, "Range end")->required();
  verify->add_option("--k", v_k, "Parameter k");
  verify->add_option("--epsilon", v_eps, "Parameter epsilon");
  verify->add_option("--C", v_c, "Constant C for the Cramer-type threshold");
  verify->add_option("--required", v_required, "Primes required per interval");
  verify->add_option("--mode", v_mode, "exact or guarded");
  verify->add_option("--ineq", v_ineq, "Inequality for EQUIVALENCE");
  verify->add_option("--threshold", v_threshold, "Override the derived threshold");
  std::vector<std::string> v_params;
  verify->add_option("--param", v_params, "Extra check parameter key=value (repeatable)");
  add_campaign_flags(verify, verify_flags);

  // constants
  std::string theorem;
  std::optional<std::string> c_k, c_g, c_eps, c_c, c_pm, c_x0, c_growth;
  unsigned c_cap = 512;
  auto* constants = app.add_subcommand("constants", "Compute a theorem's explicit constant");
  constants->add_option("theorem_id", theorem, "Theorem identifier")->required();
  constants->add_option("--k", c_k, "Parameter k");
  constants->add_option("--g", c_g, "Parameter g");
  constants->add_option("--epsilon", c_eps, "Parameter epsilon");
  constants->add_option("--C", c_c, "Constant C (default 1)");
  constants->add_option("--pm", c_pm, "Prime p_m; the pair is (previous prime, p_m)");
  constants->add_option("--x0", c_x0, "Verified-gap threshold x0");
  constants->add_option("--c-growth", c_growth, "Growth constant (default 2)");
  constants->add_option("--precision-cap", c_cap, "MPFR precision cap in bits");

  // legendre
  auto* legendre = app.add_subcommand("legendre", "Legendre primes and the Legendre map");
  legendre->require_subcommand(1);
  std::string l_to, l_n, l_from = "1";
  auto* l_list = legendre->add_subcommand("list", "Legendre primes up to a limit");
  l_list->add_option("--to", l_to, "Limit")->required();
  auto* l_map = legendre->add_subcommand("map", "l(n) for n in a range");
  l_map->add_option("--from", l_from, "First n");
  l_map->add_option("--to", l_n, "Last n")->required();
  auto* l_check = legendre->add_subcommand("check", "Injectivity, gap corollary and strong-form corroboration");
  l_check->add_option("--to", l_to, "Largest n (limit n^2 for the strong form)")->required();

  // campaign
  std::string config_path;
  CampaignFlags campaign_flags;
  auto* campaign = app.add_subcommand("campaign", "Run a campaign file");
  campaign->add_option("config", config_path, "Campaign config file")->required()->check(CLI::ExistingFile);
  add_campaign_flags(campaign, campaign_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*scan) {
      const std::uint64_t lo = scan_range.lo(), hi = scan_range.hi();
      if (scan_format == "csv") {
        gf::write_gap_csv_header(std::cout);
        gf::for_each_gap(lo, hi, [](const gf::GapRecord& r) { gf::write_gap_csv_row(std::cout, r); });
      } else if (scan_format == "json") {
        const gf::GapExtremes ex = gf::extremes(lo, hi);
        const gf::DecadeMaxima dm = gf::andrica_decade_maxima(lo, hi);
        json decades = json::array();
        for (const auto& [d, e] : dm.entries()) {
          decades.push_back({{"decade", d}, {"prev", e.pair.prev}, {"next", e.pair.next}, {"andrica", static_cast<double>(e.value)}});
        }
        auto pair = [](const gf::PrimePair& p) { return json{p.prev, p.next}; };
        print_json({{"range", {lo, hi}},
                    {"pairs", ex.pairs},
                    {"max_gap", {{"pair", pair(ex.max_gap_pair)}, {"gap", ex.max_gap_pair.gap}}},
                    {"max_andrica", {{"pair", pair(ex.max_andrica_pair)}, {"value", static_cast<double>(ex.max_andrica)}}},
                    {"max_cramer", {{"pair", pair(ex.max_cramer_pair)}, {"value", static_cast<double>(ex.max_cramer)}}},
                    {"andrica_decade_maxima", decades}});
      } else {
        throw gf::ConfigError("--format must be csv or json");
      }
      return kOk;
    }

    if (*verify) {
      gf::CampaignConfig cfg;
      gf::CheckConfig c;
      c.check_id = check_id;
      c.from = verify_range.lo();
      c.to = verify_range.hi();
      c.line = 0;
      if (v_k) c.params["k"] = *v_k;
      if (v_eps) c.params["epsilon"] = *v_eps;
      if (v_c) c.params["C"] = *v_c;
      if (v_required) c.params["required"] = *v_required;
      if (v_mode) c.params["mode"] = *v_mode;
      if (v_ineq) c.params["ineq"] = *v_ineq;
      for (const auto& kv : v_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw gf::ConfigError(fmt::format("--param expects key=value, got '{}'", kv));
        c.params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      if (v_threshold) c.threshold = gf::parse_count(*v_threshold, "--threshold");
      cfg.checks.push_back(std::move(c));
      return run_and_report(std::move(cfg), verify_flags);
    }

    if (*constants) {
      const auto id = gf::parse_theorem_id(theorem);
      if (!id) throw gf::ConfigError(fmt::format("unknown theorem_id '{}'", theorem));
      auto need = [](const std::optional<std::string>& v, const char* flag) {
        if (!v) throw gf::ConfigError(fmt::format("{} is required", flag));
        return *v;
      };
      auto scalar = [&](const std::optional<std::string>& v, const char* flag) {
        try {
          return gf::Scalar::parse(need(v, flag));
        } catch (const gf::DomainError& e) {
          throw gf::ConfigError(fmt::format("{}: {}", flag, e.what()));
        }
      };
      const gf::GuardConfig guard{true, 64, c_cap};
      gf::TheoremConstant tc;
      switch (*id) {
        case gf::TheoremId::BERTRAND_K:
          tc = gf::bertrand_constant(gf::parse_count(need(c_k, "--k"), "--k"));
          break;
        case gf::TheoremId::FRACTIONAL_K:
          tc = gf::fractional_constant(scalar(c_k, "--k"), guard);
          break;
        case gf::TheoremId::STRONG3_G:
          tc = gf::strong3_constant(gf::parse_count(need(c_g, "--g"), "--g"));
          break;
        case gf::TheoremId::BROCARD2_M: {
          const std::uint64_t pm = gf::parse_count(need(c_pm, "--pm"), "--pm");
          if (pm < 3 || !gf::is_prime(pm)) throw gf::ConfigError("--pm must be a prime >= 3");
          tc = gf::brocard2_constant(gf::PrimePair::of(gf::prev_prime_before(pm), pm));
          break;
        }
        case gf::TheoremId::STRONG_BROCARD_K:
          tc = gf::strong_brocard_constant(gf::parse_count(need(c_k, "--k"), "--k"),
                                           c_growth ? gf::parse_count(*c_growth, "--c-growth") : 2);
          break;
        case gf::TheoremId::CRAMER_EPS:
          tc = gf::cramer_constant(scalar(c_eps, "--epsilon"), c_c ? scalar(c_c, "--C") : gf::Scalar(gf::Rational(1)), guard);
          break;
        case gf::TheoremId::EXPONENTIAL_K:
          tc = gf::exponential_constant(scalar(c_k, "--k"), gf::BigInt(need(c_x0, "--x0")));
          break;
      }
      print_json(tc);
      return kOk;
    }

    if (*legendre) {
      if (*l_list) {
        std::cout << numbers(gf::legendre_primes_up_to(gf::parse_count(l_to, "--to"))) << '\n';
        return kOk;
      }
      if (*l_map) {
        const std::uint64_t lo = gf::parse_count(l_from, "--from"), hi = gf::parse_count(l_n, "--to");
        if (lo < 1 || lo > hi) throw gf::ConfigError("need 1 <= --from <= --to");
        const gf::LegendreIndex index(hi);
        json out = json::array();
        for (std::uint64_t n = lo; n <= hi; ++n) out.push_back({{"n", n}, {"l", index.map(n).l}});
        print_json(out);
        return kOk;
      }
      const std::uint64_t n = gf::parse_count(l_to, "--to");
      const auto injective = gf::check_map_injective(n);
      const auto corollary = gf::check_legendre_gap_corollary(n);
      const gf::StrongLegendreReport strong = gf::check_strong_legendre_equivalence(n * n);
      json adjacent = json::array();
      for (const auto& p : strong.adjacent_pairs) adjacent.push_back({p.prev, p.next});
      print_json({{"n_max", n},
                  {"injective_collisions", injective},
                  {"gap_corollary_violations", corollary},
                  {"strong_form",
                   {{"limit", strong.limit},
                    {"adjacent_pairs", adjacent},
                    {"sparse_intervals", strong.sparse_intervals},
                    {"corroborated", strong.corroborated}}}});
      return injective.empty() ? kOk : kViolations;
    }

    if (*campaign) {
      return run_and_report(gf::load_campaign_config(config_path), campaign_flags);
    }
  } catch (const gf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const gf::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kConfig;
  } catch (const gf::UnsupportedModeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const gf::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const gf::ResourceLimitError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const gf::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  }
  return kOk;
}
