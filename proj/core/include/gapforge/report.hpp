#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "gapforge/campaign.hpp"
#include "gapforge/campaign_config.hpp"

namespace gapforge {

nlohmann::json summary_to_json(const VerificationSummary& summary);
VerificationSummary summary_from_json(const nlohmann::json& j);

// JSON: the full document. CSV: one row per check.
void emit_report(std::ostream& out, const VerificationSummary& summary, OutputFormat format);
std::string render_report(const VerificationSummary& summary, OutputFormat format);

// Parses a JSON report; throws ConfigError on schema mismatch.
VerificationSummary parse_summary(const std::string& text);

}  // namespace gapforge
