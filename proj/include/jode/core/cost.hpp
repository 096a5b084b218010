#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "jode/core/decision.hpp"

namespace jode {

/// Mean per-trial cost over the trials carrying a given verdict. `mean` is
/// empty (never NaN) when no trial matches.
struct ConditionalCost {
  std::size_t count = 0;
  std::optional<double> mean;
};

/// verdicts[i] and costs[i] describe trial i; costs of unselected trials are ignored.
[[nodiscard]] ConditionalCost conditional_cost(std::span<const Verdict> verdicts, std::span<const double> costs,
                                               Verdict selector);

/// Per-trial cost of an estimate against the truth: squared error (MSE) or
/// mismatch indicator (ZeroOne).
[[nodiscard]] double estimate_cost(CostKind cost, std::span<const double> estimate, std::span<const double> truth);

}  // namespace jode
