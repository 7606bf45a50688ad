#include "gapforge/records.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace gapforge {

std::string Location::to_string() const {
  if (is_pair()) return fmt::format("({},{})", pair().prev, pair().next);
  return std::to_string(n());
}

bool operator<(const Location& a, const Location& b) {
  if (a.key() != b.key()) return a.key() < b.key();
  if (a.is_pair() != b.is_pair()) return !a.is_pair();
  if (a.is_pair()) return a.pair().next < b.pair().next;
  return false;
}

void sort_by_location(std::vector<ViolationRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ViolationRecord& a, const ViolationRecord& b) { return a.location < b.location; });
}

void to_json(nlohmann::json& j, const Location& loc) {
  if (loc.is_pair()) {
    j = nlohmann::json{{"prev", loc.pair().prev}, {"next", loc.pair().next}};
  } else {
    j = nlohmann::json{{"n", loc.n()}};
  }
}

void from_json(const nlohmann::json& j, Location& loc) {
  if (j.contains("prev")) {
    loc = Location(PrimePair::of(j.at("prev").get<std::uint64_t>(), j.at("next").get<std::uint64_t>()));
  } else {
    loc = Location(j.at("n").get<std::uint64_t>());
  }
}

void to_json(nlohmann::json& j, const ViolationRecord& v) {
  j = nlohmann::json{{"check_id", v.check_id}, {"params", v.params}, {"location", v.location},
                     {"lhs", v.lhs},           {"rhs", v.rhs},       {"verdict", v.verdict},
                     {"near_boundary", v.near_boundary}};
}

void from_json(const nlohmann::json& j, ViolationRecord& v) {
  j.at("check_id").get_to(v.check_id);
  j.at("params").get_to(v.params);
  j.at("location").get_to(v.location);
  j.at("lhs").get_to(v.lhs);
  j.at("rhs").get_to(v.rhs);
  j.at("verdict").get_to(v.verdict);
  j.at("near_boundary").get_to(v.near_boundary);
}

}  // namespace gapforge
