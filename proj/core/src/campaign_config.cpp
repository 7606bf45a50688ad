#include "gapforge/campaign_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "gapforge/errors.hpp"

namespace gapforge {

const std::vector<std::string_view>& known_checks() {
  static const std::vector<std::string_view> ids = {
      "GAP_BERTRAND",
      "GAP_EXP",
      "GAP_LEGENDRE",
      "GAP_OPP_NEXT",
      "GAP_OPP_PREV",
      "GAP_CRAMER_EPS",
      "GAP_FRACTIONAL",
      "GAP_DUSART",
      "GAP_BHP",
      "FILTER_WEAK_BROCARD",
      "ANDRICA",
      "CRAMER_RATIO",
      "EQUIVALENCE",
      "POWER_INTERVAL",
      "BERTRAND_DIRECT",
      "AUXILIARY_BERTRAND",
      "OPPERMANN",
      "FRACTIONAL",
      "BROCARD_CUBES",
      "WEAK_BROCARD_SQUARES",
      "GROWTH_CUBES",
      "LEGENDRE_INJECTIVE",
      "LEGENDRE_GAP_COROLLARY",
      "LEGENDRE_GAP_CONJECTURE",
  };
  return ids;
}

bool is_known_check(std::string_view id) {
  const auto& ids = known_checks();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

std::uint64_t digits(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", what, text));
  }
  return v;
}

std::uint64_t power_of(std::uint64_t base, std::uint64_t exp, std::string_view what) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > ~std::uint64_t{0} / base) throw ConfigError(fmt::format("{}: value overflows 64 bits", what));
    v *= base;
  }
  return v;
}

std::uint64_t times(std::uint64_t a, std::uint64_t b, std::string_view what) {
  if (a != 0 && b > ~std::uint64_t{0} / a) throw ConfigError(fmt::format("{}: value overflows 64 bits", what));
  return a * b;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::pair<std::string, std::string> split_pair(std::string_view token, int line) {
  const auto eq = token.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(fmt::format("line {}: expected key=value, got '{}'", line, token));
  }
  return {trim(token.substr(0, eq)), trim(token.substr(eq + 1))};
}

}  // namespace

std::uint64_t parse_count(std::string_view text, std::string_view what) {
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    return times(digits(text.substr(0, e), what), power_of(10, digits(text.substr(e + 1), what), what), what);
  }
  if (const auto c = text.find('^'); c != std::string_view::npos) {
    return power_of(digits(text.substr(0, c), what), digits(text.substr(c + 1), what), what);
  }
  return digits(text, what);
}

OutputFormat parse_format(std::string_view text) {
  if (text == "json" || text == "JSON") return OutputFormat::JSON;
  if (text == "csv" || text == "CSV") return OutputFormat::CSV;
  throw ConfigError(fmt::format("unknown output format '{}'", text));
}

void CampaignConfig::validate() const {
  if (checks.empty()) throw ConfigError("campaign has no checks");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (precision_cap < 64) throw ConfigError("precision_cap must be >= 64 bits");
  if (shards_per_check < 1) throw ConfigError("shards must be >= 1");
  for (const auto& c : checks) {
    if (!is_known_check(c.check_id)) throw ConfigError(fmt::format("line {}: unknown check_id '{}'", c.line, c.check_id));
    if (c.from > c.to) throw ConfigError(fmt::format("line {}: empty range [{}, {}]", c.line, c.from, c.to));
  }
}

std::string CampaignConfig::canonical() const {
  std::string out = fmt::format("x0={}\nprecision_cap={}\nshards={}\nmax_records={}\n", x0, precision_cap,
                                shards_per_check, max_records);
  for (const auto& c : checks) {
    out += fmt::format("check={} from={} to={}", c.check_id, c.from, c.to);
    if (c.threshold) out += fmt::format(" threshold={}", *c.threshold);
    for (const auto& [k, v] : c.params) out += fmt::format(" {}={}", k, v);
    out += "\n";
  }
  return out;
}

CampaignConfig parse_campaign_config(std::istream& in) {
  CampaignConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;

    if (text.rfind("check=", 0) == 0) {
      std::istringstream tokens(text);
      std::string tok;
      tokens >> tok;
      CheckConfig c;
      c.line = line;
      auto [key, id] = split_pair(tok, line);
      (void)key;
      if (id.empty()) throw ConfigError(fmt::format("line {}: missing check id", line));
      c.check_id = id;
      bool have_from = false, have_to = false;
      std::set<std::string> seen;
      while (tokens >> tok) {
        auto [k, v] = split_pair(tok, line);
        const std::string what = fmt::format("line {}: {}", line, k);
        if (!seen.insert(k).second) throw ConfigError(fmt::format("line {}: duplicate key '{}'", line, k));
        if (k == "from") {
          c.from = parse_count(v, what);
          have_from = true;
        } else if (k == "to") {
          c.to = parse_count(v, what);
          have_to = true;
        } else if (k == "threshold") {
          c.threshold = parse_count(v, what);
        } else {
          c.params[k] = v;
        }
      }
      if (!have_to) throw ConfigError(fmt::format("line {}: check {} needs to=", line, c.check_id));
      if (!have_from) c.from = 2;
      cfg.checks.push_back(std::move(c));
      continue;
    }

    auto [key, value] = split_pair(text, line);
    const std::string what = fmt::format("line {}: {}", line, key);
    if (key == "x0") {
      cfg.x0 = parse_count(value, what);
    } else if (key == "precision_cap") {
      cfg.precision_cap = static_cast<unsigned>(parse_count(value, what));
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_count(value, what));
    } else if (key == "checkpoint") {
      cfg.checkpoint_path = value;
    } else if (key == "format") {
      cfg.format = parse_format(value);
    } else if (key == "shards") {
      cfg.shards_per_check = parse_count(value, what);
    } else if (key == "max_records") {
      cfg.max_records = parse_count(value, what);
    } else {
      throw ConfigError(fmt::format("line {}: unknown setting '{}'", line, key));
    }
  }
  cfg.validate();
  return cfg;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
  return parse_campaign_config(in);
}

}  // namespace gapforge
