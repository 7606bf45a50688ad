#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gapforge/bigint.hpp"
#include "gapforge/interval.hpp"
#include "gapforge/rational.hpp"
#include "gapforge/records.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

enum class TheoremId {
  BERTRAND_K,
  FRACTIONAL_K,
  STRONG3_G,
  BROCARD2_M,
  STRONG_BROCARD_K,
  CRAMER_EPS,
  EXPONENTIAL_K,
};

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view name);

struct TheoremConstant {
  TheoremId id{};
  Params params;
  BigInt value;
  std::vector<std::string> trace;
};

// Index used by the Bertrand and fractional thresholds.
inline constexpr std::uint64_t kBertrandFloorIndex = 465;

// max(p_r, p_465) with p_{r-1} < 4k < p_r.
TheoremConstant bertrand_constant(std::uint64_t k);

// max(p_r, p_465) with p_{r-1} < exp(sqrt(k)) < p_r, bracketed with certified
// interval evaluation. Throws PrecisionError if the cap cannot separate
// exp(sqrt(k)) from an integer.
TheoremConstant fractional_constant(const Scalar& k, const GuardConfig& guard = {});

// 3 g^2 (floor(g^(2/19)) + 1) for g > 20.
TheoremConstant strong3_constant(std::uint64_t g);

// floor((2^21 p_m^40 / gap^40)^(1/19)) + 1 for the pair (p_{m-1}, p_m).
TheoremConstant brocard2_constant(const PrimePair& pair);

// floor(max(C_growth, k^(40/17))) + 1.
TheoremConstant strong_brocard_constant(std::uint64_t k, std::uint64_t c_growth);

// Smallest prime P with C ln^2 x < (0.5 + eps) x^(eps/(1+eps)) for every real x >= P.
TheoremConstant cramer_constant(const Scalar& epsilon, const Scalar& c, const GuardConfig& guard = {});

// Threshold for the exponential chain: the gap bound below it rests on the
// configured x0, so the constant is the first prime above x0. k >= 40/19.
TheoremConstant exponential_constant(const Scalar& k, const BigInt& x0);

void to_json(nlohmann::json& j, const TheoremConstant& c);

}  // namespace gapforge
