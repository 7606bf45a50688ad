#include "gapforge/report.hpp"

#include <sstream>

#include <fmt/format.h>

#include "gapforge/errors.hpp"

namespace gapforge {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "gapforge/1";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_params(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ' ';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

json summary_to_json(const VerificationSummary& s) {
  json checks = json::array();
  for (const auto& c : s.checks) {
    checks.push_back(json{{"check_id", c.check_id},
                          {"params", c.params},
                          {"range", {c.from, c.to}},
                          {"threshold", c.threshold},
                          {"checked", c.checked},
                          {"violations", c.violations},
                          {"below_threshold_findings", c.below_threshold_findings},
                          {"near_boundary_count", c.near_boundary_count},
                          {"violation_records", c.violation_records},
                          {"below_threshold_records", c.below_threshold_records},
                          {"near_boundary_records", c.near_boundary_records},
                          {"records_truncated", c.records_truncated},
                          {"stats", c.stats},
                          {"wall_time", c.wall_time}});
  }
  return json{{"schema", kSchema},
              {"x0", s.x0},
              {"precision_cap", s.precision_cap},
              {"complete", s.complete},
              {"checks", checks},
              {"totals",
               {{"checked", s.totals.checked},
                {"violations", s.totals.violations},
                {"below_threshold_findings", s.totals.below_threshold_findings},
                {"near_boundary_count", s.totals.near_boundary_count},
                {"wall_time", s.totals.wall_time}}}};
}

VerificationSummary summary_from_json(const json& j) {
  if (j.value("schema", "") != kSchema) throw ConfigError("report schema is not gapforge/1");
  try {
    VerificationSummary s;
    s.x0 = j.at("x0").get<std::uint64_t>();
    s.precision_cap = j.at("precision_cap").get<unsigned>();
    s.complete = j.at("complete").get<bool>();
    for (const auto& c : j.at("checks")) {
      CheckSummary cs;
      cs.check_id = c.at("check_id").get<std::string>();
      cs.params = c.at("params").get<Params>();
      cs.from = c.at("range").at(0).get<std::uint64_t>();
      cs.to = c.at("range").at(1).get<std::uint64_t>();
      cs.threshold = c.at("threshold").get<std::uint64_t>();
      cs.checked = c.at("checked").get<std::uint64_t>();
      cs.violations = c.at("violations").get<std::uint64_t>();
      cs.below_threshold_findings = c.at("below_threshold_findings").get<std::uint64_t>();
      cs.near_boundary_count = c.at("near_boundary_count").get<std::uint64_t>();
      cs.violation_records = c.at("violation_records").get<std::vector<ViolationRecord>>();
      cs.below_threshold_records = c.at("below_threshold_records").get<std::vector<ViolationRecord>>();
      cs.near_boundary_records = c.at("near_boundary_records").get<std::vector<ViolationRecord>>();
      cs.records_truncated = c.at("records_truncated").get<bool>();
      cs.stats = c.at("stats");
      cs.wall_time = c.at("wall_time").get<double>();
      s.checks.push_back(std::move(cs));
    }
    const json& t = j.at("totals");
    s.totals.checked = t.at("checked").get<std::uint64_t>();
    s.totals.violations = t.at("violations").get<std::uint64_t>();
    s.totals.below_threshold_findings = t.at("below_threshold_findings").get<std::uint64_t>();
    s.totals.near_boundary_count = t.at("near_boundary_count").get<std::uint64_t>();
    s.totals.wall_time = t.at("wall_time").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

void emit_report(std::ostream& out, const VerificationSummary& s, OutputFormat format) {
  if (format == OutputFormat::JSON) {
    out << summary_to_json(s).dump(2) << '\n';
    return;
  }
  out << "check_id,params,from,to,threshold,checked,violations,below_threshold,near_boundary,first_violation,wall_time\n";
  for (const auto& c : s.checks) {
    const std::string first = c.violation_records.empty() ? "" : c.violation_records.front().location.to_string();
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{:.3f}\n", csv_field(c.check_id), csv_field(render_params(c.params)),
                       c.from, c.to, c.threshold, c.checked, c.violations, c.below_threshold_findings,
                       c.near_boundary_count, csv_field(first), c.wall_time);
  }
}

std::string render_report(const VerificationSummary& s, OutputFormat format) {
  std::ostringstream ss;
  emit_report(ss, s, format);
  return ss.str();
}

VerificationSummary parse_summary(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  return summary_from_json(j);
}

}  // namespace gapforge
