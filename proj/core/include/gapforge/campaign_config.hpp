#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapforge/records.hpp"

namespace gapforge {

enum class OutputFormat { JSON, CSV };

struct CheckConfig {
  std::string check_id;
  Params params;  // everything on the line except check, from, to, threshold
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::optional<std::uint64_t> threshold;  // overrides the derived constant
  int line = 0;
};

struct CampaignConfig {
  std::vector<CheckConfig> checks;
  std::uint64_t x0 = 1;
  unsigned precision_cap = 512;
  unsigned threads = 1;
  std::optional<std::string> checkpoint_path;
  OutputFormat format = OutputFormat::JSON;
  std::uint64_t shards_per_check = 64;
  std::size_t max_records = 1000;  // stored records per list; counts stay exact

  // Throws ConfigError on the first invalid field.
  void validate() const;
  // Canonical text of everything that determines results (not threads, paths or format).
  std::string canonical() const;
};

// The recognised check identifiers.
const std::vector<std::string_view>& known_checks();
bool is_known_check(std::string_view id);

// Accepts digits, "1e8" and "10^8".
std::uint64_t parse_count(std::string_view text, std::string_view what);

// Flat key=value format. Global lines hold one pair (threads=4); check lines
// start with check=ID followed by space-separated pairs:
//   check=GAP_EXP from=2 to=1e6 k=3
// '#' starts a comment. Throws ConfigError with the offending line number.
CampaignConfig parse_campaign_config(std::istream& in);
CampaignConfig load_campaign_config(const std::string& path);

OutputFormat parse_format(std::string_view text);

}  // namespace gapforge
