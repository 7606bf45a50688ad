#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gapforge/sieve.hpp"

namespace gapforge {

using Params = std::map<std::string, std::string>;

// Where a finding sits: an integer n, or a consecutive-prime pair.
class Location {
 public:
  Location() : value_(std::uint64_t{0}) {}
  Location(std::uint64_t n) : value_(n) {}
  Location(PrimePair pair) : value_(pair) {}

  bool is_pair() const { return std::holds_alternative<PrimePair>(value_); }
  std::uint64_t n() const { return std::get<std::uint64_t>(value_); }
  const PrimePair& pair() const { return std::get<PrimePair>(value_); }
  // Ordering key: n, or prev for pairs.
  std::uint64_t key() const { return is_pair() ? pair().prev : n(); }
  std::string to_string() const;

  friend bool operator==(const Location&, const Location&) = default;
  friend bool operator<(const Location& a, const Location& b);

 private:
  std::variant<std::uint64_t, PrimePair> value_;
};

// A falsified (or undecidable) instance of a check.
struct ViolationRecord {
  std::string check_id;
  Params params;
  Location location;
  std::string lhs;
  std::string rhs;
  std::string verdict = "violated";  // "violated" | "undecided"
  bool near_boundary = false;

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

void sort_by_location(std::vector<ViolationRecord>& records);

void to_json(nlohmann::json& j, const Location& loc);
void from_json(const nlohmann::json& j, Location& loc);
void to_json(nlohmann::json& j, const ViolationRecord& v);
void from_json(const nlohmann::json& j, ViolationRecord& v);

}  // namespace gapforge
