#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gapforge/campaign.hpp"
#include "gapforge/errors.hpp"
#include "gapforge/report.hpp"

using namespace gapforge;

namespace {

CampaignConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_campaign_config(in);
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gapforge-tests";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p.string();
}

const char* kThreeChecks = R"(# three checks, mixed kinds
shards=9
check=GAP_OPP_NEXT from=2 to=20000
check=OPPERMANN from=2 to=3000
check=GAP_DUSART from=2 to=50000
)";

}  // namespace

TEST_SUITE("campaign") {
  TEST_CASE("config parsing") {
    const CampaignConfig c = parse(
        "# comment\n"
        "x0=1000\n"
        "threads=3\n"
        "precision_cap=256\n"
        "format=csv\n"
        "check=GAP_BERTRAND k=2 from=10 to=1e6\n"
        "check=ANDRICA to=10^4 threshold=50   # trailing comment\n");
    CHECK(c.x0 == 1000);
    CHECK(c.threads == 3);
    CHECK(c.precision_cap == 256);
    CHECK(c.format == OutputFormat::CSV);
    REQUIRE(c.checks.size() == 2);
    CHECK(c.checks[0].check_id == "GAP_BERTRAND");
    CHECK(c.checks[0].params.at("k") == "2");
    CHECK(c.checks[0].from == 10);
    CHECK(c.checks[0].to == 1'000'000);
    CHECK(c.checks[1].from == 2);
    CHECK(c.checks[1].to == 10'000);
    CHECK(c.checks[1].threshold == std::optional<std::uint64_t>(50));
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse(""), ConfigError);
    CHECK_THROWS_AS(parse("threads=2\n"), ConfigError);
    CHECK_THROWS_AS(parse("check=NOT_A_CHECK to=10\n"), ConfigError);
    CHECK_THROWS_AS(parse("check=ANDRICA from=10\n"), ConfigError);
    CHECK_THROWS_AS(parse("check=ANDRICA from=10 to=5\n"), ConfigError);
    CHECK_THROWS_AS(parse("check=ANDRICA to=abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("check=ANDRICA to=10 to=20\n"), ConfigError);
    CHECK_THROWS_AS(parse("threads=0\ncheck=ANDRICA to=10\n"), ConfigError);
    CHECK_THROWS_AS(parse("precision_cap=32\ncheck=ANDRICA to=10\n"), ConfigError);
    CHECK_THROWS_AS(parse("bogus=1\ncheck=ANDRICA to=10\n"), ConfigError);
    CHECK_THROWS_AS(parse("format=xml\ncheck=ANDRICA to=10\n"), ConfigError);
    CHECK_THROWS_AS(load_campaign_config("/nonexistent/campaign.cfg"), ConfigError);
  }

  TEST_CASE("run-time parameter errors") {
    CHECK_THROWS_AS(run_campaign(parse("check=ANDRICA to=100 k=2\n")), ConfigError);
    CHECK_THROWS_AS(run_campaign(parse("check=GAP_EXP to=100\n")), ConfigError);
    CHECK_THROWS_AS(run_campaign(parse("check=GAP_DUSART to=100 mode=exact\n")), UnsupportedModeError);
    CHECK_THROWS_AS(run_campaign(parse("check=EQUIVALENCE to=100 ineq=GAP_DUSART\n")), ConfigError);
    CHECK_THROWS_AS(run_campaign(parse("check=BERTRAND_DIRECT from=3 to=100 k=2\n")), ConfigError);
  }

  TEST_CASE("canonical form ignores threads, paths and format") {
    CampaignConfig a = parse("threads=1\ncheck=ANDRICA to=100\n");
    CampaignConfig b = parse("threads=8\nformat=csv\ncheckpoint=/tmp/x\ncheck=ANDRICA to=100\n");
    CHECK(a.canonical() == b.canonical());
    CampaignConfig c = parse("check=ANDRICA to=101\n");
    CHECK(a.canonical() != c.canonical());
  }

  TEST_CASE("Andrica to 1e6 has no violations") {
    const VerificationSummary s = run_campaign(parse("check=ANDRICA from=2 to=1e6\n"));
    REQUIRE(s.checks.size() == 1);
    CHECK(s.checks[0].checked == 78'497);
    CHECK(s.checks[0].violations == 0);
    CHECK(s.checks[0].stats.at("max").at("prev") == 7);
    CHECK(s.checks[0].stats.at("decades_non_increasing_from_10") == true);
    CHECK(exit_code_for(s) == 0);
  }

  TEST_CASE("small-prime violations are listed in order") {
    const VerificationSummary s = run_campaign(parse("shards=5\ncheck=GAP_OPP_NEXT from=2 to=200\n"));
    const CheckSummary& c = s.checks[0];
    REQUIRE(c.violations > 0);
    CHECK(c.violation_records.front().location == Location(PrimePair::of(7, 11)));
    for (std::size_t i = 1; i < c.violation_records.size(); ++i) {
      CHECK(c.violation_records[i - 1].location < c.violation_records[i].location);
    }
    CHECK(exit_code_for(s) == 1);
  }

  TEST_CASE("thresholds split findings") {
    const VerificationSummary s = run_campaign(parse("check=GAP_DUSART to=1e5\n"));
    const CheckSummary& c = s.checks[0];
    CHECK(c.threshold == 3299);
    CHECK(c.violations == 0);
    CHECK(c.below_threshold_findings > 0);
    for (const auto& r : c.below_threshold_records) CHECK(r.location.key() <= 3299);
    CHECK(exit_code_for(s) == 0);
    const VerificationSummary t = run_campaign(parse("check=GAP_DUSART to=1e5 threshold=0\n"));
    CHECK(t.checks[0].violations == c.below_threshold_findings);
  }

  TEST_CASE("derived thresholds") {
    const CampaignConfig cfg = parse(
        "x0=500\n"
        "check=GAP_BERTRAND to=10 k=1\n"
        "check=GAP_FRACTIONAL to=10 k=100\n"
        "check=GAP_CRAMER_EPS to=10 epsilon=1\n"
        "check=GAP_BHP to=10\n"
        "check=BROCARD_CUBES to=10 k=5\n"
        "check=GAP_LEGENDRE to=10\n");
    CHECK(derived_threshold(cfg.checks[0], cfg) == 3307);
    CHECK(derived_threshold(cfg.checks[1], cfg) == 22027);
    CHECK(derived_threshold(cfg.checks[2], cfg) == 1030);
    CHECK(derived_threshold(cfg.checks[3], cfg) == 500);
    CHECK(derived_threshold(cfg.checks[4], cfg) == 45);
    CHECK(derived_threshold(cfg.checks[5], cfg) == 0);
  }

  TEST_CASE("record cap marks truncation") {
    const VerificationSummary s = run_campaign(parse("max_records=2\ncheck=GAP_OPP_NEXT to=2000\n"));
    CHECK(s.checks[0].violation_records.size() == 2);
    CHECK(s.checks[0].records_truncated);
    CHECK(s.checks[0].violations == 3);
  }

  TEST_CASE("totals are sums of per-check entries") {
    const VerificationSummary s = run_campaign(parse(kThreeChecks));
    std::uint64_t checked = 0, violations = 0, below = 0, nb = 0;
    for (const auto& c : s.checks) {
      checked += c.checked;
      violations += c.violations;
      below += c.below_threshold_findings;
      nb += c.near_boundary_count;
    }
    CHECK(s.totals.checked == checked);
    CHECK(s.totals.violations == violations);
    CHECK(s.totals.below_threshold_findings == below);
    CHECK(s.totals.near_boundary_count == nb);
  }

  TEST_CASE("thread-count invariance") {
    CampaignConfig cfg = parse(kThreeChecks);
    const VerificationSummary one = run_campaign(cfg);
    for (unsigned t : {2u, 4u, 7u}) {
      cfg.threads = t;
      CHECK(run_campaign(cfg) == one);
    }
  }

  TEST_CASE("resume equivalence at every shard boundary") {
    CampaignConfig cfg = parse(kThreeChecks);
    const VerificationSummary full = run_campaign(cfg);
    cfg.checkpoint_path = temp_path("resume.ckpt");
    for (std::size_t stop : {std::size_t{1}, std::size_t{5}, std::size_t{9}, std::size_t{17}, std::size_t{26}}) {
      RunOptions first;
      first.checkpoint_mode = CheckpointMode::Reset;
      first.stop_after_shards = stop;
      const VerificationSummary partial = run_campaign(cfg, first);
      CHECK_FALSE(partial.complete);
      RunOptions second;
      second.checkpoint_mode = CheckpointMode::Resume;
      std::size_t recomputed = 0;
      second.progress = [&](const std::string&) { ++recomputed; };
      const VerificationSummary resumed = run_campaign(cfg, second);
      CHECK(resumed.complete);
      CHECK(resumed == full);
      CHECK(recomputed == 27 - stop);
    }
  }

  TEST_CASE("checkpoint refusals") {
    CampaignConfig cfg = parse("shards=4\ncheck=GAP_OPP_NEXT to=5000\n");
    const std::string path = temp_path("refuse.ckpt");
    cfg.checkpoint_path = path;
    run_campaign(cfg);
    // Existing file without --resume or --reset.
    CHECK_THROWS_AS(run_campaign(cfg), CheckpointError);

    // A different configuration.
    CampaignConfig other = cfg;
    other.checks[0].to = 6000;
    RunOptions resume;
    resume.checkpoint_mode = CheckpointMode::Resume;
    CHECK_THROWS_AS(run_campaign(other, resume), CheckpointError);

    // Tampered payload.
    std::string text;
    {
      std::ifstream in(path);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const auto pos = text.find("\"checked\":");
    REQUIRE(pos != std::string::npos);
    std::string tampered = text;
    tampered.replace(pos, 10, "\"checked\":9");
    {
      std::ofstream out(path, std::ios::trunc);
      out << tampered;
    }
    CHECK_THROWS_AS(run_campaign(cfg, resume), CheckpointError);

    // Reset recovers.
    RunOptions reset;
    reset.checkpoint_mode = CheckpointMode::Reset;
    CHECK(run_campaign(cfg, reset).complete);
  }

  TEST_CASE("a torn final line is dropped on resume") {
    CampaignConfig cfg = parse("shards=4\ncheck=GAP_OPP_NEXT to=5000\n");
    const VerificationSummary full = run_campaign(cfg);
    const std::string path = temp_path("torn.ckpt");
    cfg.checkpoint_path = path;
    run_campaign(cfg);
    {
      std::ofstream out(path, std::ios::app);
      out << "{\"type\":\"shard\",\"check_ind";
    }
    RunOptions resume;
    resume.checkpoint_mode = CheckpointMode::Resume;
    CHECK(run_campaign(cfg, resume) == full);
  }

  TEST_CASE("sha256 digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("JSON report round trip") {
    const VerificationSummary s = run_campaign(parse(kThreeChecks));
    const std::string text = render_report(s, OutputFormat::JSON);
    CHECK(nlohmann::json::parse(text).at("schema") == "gapforge/1");
    const VerificationSummary back = parse_summary(text);
    CHECK(back == s);
    CHECK(render_report(back, OutputFormat::JSON) == text);
    CHECK_THROWS_AS(parse_summary("{\"schema\":\"other\"}"), ConfigError);
    CHECK_THROWS_AS(parse_summary("not json"), ConfigError);
  }

  TEST_CASE("CSV report has one row per check") {
    const VerificationSummary s = run_campaign(parse(kThreeChecks));
    std::istringstream in(render_report(s, OutputFormat::CSV));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 1 + s.checks.size());
    CHECK(lines[0].rfind("check_id,", 0) == 0);
    CHECK(lines[1].rfind("GAP_OPP_NEXT,", 0) == 0);
  }

  TEST_CASE("every known check runs on a small range") {
    for (const auto id : known_checks()) {
      std::string line = "check=" + std::string(id) + " to=300";
      if (id == "GAP_EXP" || id == "GAP_FRACTIONAL" || id == "FRACTIONAL") line += " k=3";
      if (id == "GAP_CRAMER_EPS") line += " epsilon=1/2";
      if (id == "EQUIVALENCE") line += " ineq=GAP_LEGENDRE";
      if (id == "BERTRAND_DIRECT") line = "check=BERTRAND_DIRECT from=5 to=300";
      CAPTURE(line);
      const VerificationSummary s = run_campaign(parse(line + "\n"));
      CHECK(s.complete);
      CHECK(s.checks[0].checked > 0);
    }
  }
}
