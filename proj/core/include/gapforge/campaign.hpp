#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapforge/campaign_config.hpp"
#include "gapforge/checkpoint.hpp"
#include "gapforge/records.hpp"

namespace gapforge {

struct CheckSummary {
  std::string check_id;
  Params params;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t threshold = 0;  // findings at keys <= threshold are below threshold
  std::uint64_t checked = 0;    // pairs, n values or primes examined
  std::uint64_t violations = 0;
  std::uint64_t below_threshold_findings = 0;
  std::uint64_t near_boundary_count = 0;
  std::vector<ViolationRecord> violation_records;  // sorted by location, at most max_records
  std::vector<ViolationRecord> below_threshold_records;
  std::vector<ViolationRecord> near_boundary_records;
  bool records_truncated = false;
  nlohmann::json stats = nlohmann::json::object();
  double wall_time = 0;
};

struct CampaignTotals {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t below_threshold_findings = 0;
  std::uint64_t near_boundary_count = 0;
  double wall_time = 0;
};

struct VerificationSummary {
  std::uint64_t x0 = 1;
  unsigned precision_cap = 512;
  bool complete = true;  // false when the run stopped before every shard finished
  std::vector<CheckSummary> checks;
  CampaignTotals totals;

  // Equality ignores wall_time.
  friend bool operator==(const VerificationSummary& a, const VerificationSummary& b);
};

struct RunOptions {
  CheckpointMode checkpoint_mode = CheckpointMode::Fresh;
  // Stop once this many shards have been computed in this run (simulates an
  // interruption at a shard boundary). 0 means run to completion.
  std::size_t stop_after_shards = 0;
  // Receives one plain-text progress line per finished shard.
  std::function<void(const std::string&)> progress;
};

// The threshold a check uses when the config gives none.
std::uint64_t derived_threshold(const CheckConfig& check, const CampaignConfig& config);

// Throws ConfigError, CheckpointError, ResourceLimitError and PrecisionError.
VerificationSummary run_campaign(const CampaignConfig& config, const RunOptions& options = {});

// Exit status: 0 no violations above threshold, 1 otherwise.
int exit_code_for(const VerificationSummary& summary);

}  // namespace gapforge
