#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapforge/bigint.hpp"
#include "gapforge/interval.hpp"
#include "gapforge/rational.hpp"
#include "gapforge/records.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

// Gap inequalities over a consecutive pair (prev, next), gap = next - prev.
enum class InequalityId {
  GAP_BERTRAND,         // gap < (next - 2k + 1) / 2
  GAP_EXP,              // gap < (k - 1/2) next^((k-1)/k)
  GAP_LEGENDRE,         // gap < 2 sqrt(next) + 1
  GAP_OPP_NEXT,         // gap < sqrt(next)
  GAP_OPP_PREV,         // gap < sqrt(prev)
  GAP_CRAMER_EPS,       // gap < (1/2 + eps) next^(eps/(1+eps))
  GAP_FRACTIONAL,       // gap < min(prev / (k-1), next / k)
  GAP_DUSART,           // next <= prev (1 + 1/ln^2 prev)
  GAP_BHP,              // gap < next^(21/40)
  FILTER_WEAK_BROCARD,  // gap > 3 prev^(1/20)
};

inline constexpr InequalityId kAllInequalities[] = {
    InequalityId::GAP_BERTRAND,   InequalityId::GAP_EXP,        InequalityId::GAP_LEGENDRE,
    InequalityId::GAP_OPP_NEXT,   InequalityId::GAP_OPP_PREV,   InequalityId::GAP_CRAMER_EPS,
    InequalityId::GAP_FRACTIONAL, InequalityId::GAP_DUSART,     InequalityId::GAP_BHP,
    InequalityId::FILTER_WEAK_BROCARD,
};

std::string_view inequality_name(InequalityId id);
std::optional<InequalityId> parse_inequality_id(std::string_view name);

enum class ComparisonMode { EXACT_INTEGER, GUARDED_REAL };

std::string_view mode_name(ComparisonMode m);

struct InequalitySpec {
  InequalityId id{};
  std::map<std::string, Scalar> params;
  ComparisonMode mode = ComparisonMode::EXACT_INTEGER;

  // Validates params and picks EXACT_INTEGER whenever the inequality has an
  // integer form and every parameter is rational. Requesting EXACT_INTEGER
  // otherwise throws UnsupportedModeError.
  static InequalitySpec make(InequalityId id, std::map<std::string, Scalar> params = {},
                             std::optional<ComparisonMode> mode = std::nullopt);

  const Scalar& param(const std::string& name) const;
  Params rendered_params() const;
};

bool admits_exact(InequalityId id);

struct Verdict {
  Tri holds = Tri::Unknown;  // Unknown only in GUARDED_REAL, at the precision cap
  std::string lhs;           // rendered when holds != True
  std::string rhs;
  unsigned bits = 0;         // precision that decided a guarded verdict; 53 = double tier
};

Verdict evaluate_exact(const InequalitySpec& spec, const PrimePair& pair);
Verdict evaluate_guarded(const InequalitySpec& spec, const PrimePair& pair, const GuardConfig& guard = {});
// Dispatches on spec.mode.
Verdict evaluate(const InequalitySpec& spec, const PrimePair& pair, const GuardConfig& guard = {});

// Open integer intervals whose each containing a prime is equivalent to the
// gap inequality for this pair. Built from roots of the bounds with floor_root,
// independently of the gap predicate. nullopt for entries without such a form.
struct OpenInterval {
  BigInt lo;
  BigInt hi;
};
std::optional<std::vector<OpenInterval>> interval_forms(const InequalitySpec& spec, const PrimePair& pair);

}  // namespace gapforge
