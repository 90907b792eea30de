#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>

namespace tubepack {

// Search effort is accounted in abstract nodes so that results do not depend
// on the machine. A node is one unit of packing work (a tube insertion
// attempt, a box placement attempt). Time limits convert at a fixed rate;
// an optional wall-clock deadline can cut runs short when reproducibility
// does not matter.
struct Budget {
  std::int64_t total = 0;
  std::int64_t remaining = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static constexpr std::int64_t kNodesPerSecond = 50'000;
  static constexpr std::int64_t kMinQuantum = 2'500;  // 0.05 s worth of nodes

  static Budget from_seconds(double seconds) {
    Budget b;
    b.total = static_cast<std::int64_t>(seconds * kNodesPerSecond);
    b.remaining = b.total;
    return b;
  }

  bool past_deadline() const {
    return deadline && std::chrono::steady_clock::now() >= *deadline;
  }
};

// Grants a share of the remaining quota proportional to the items handed to
// one sub-solver call, floored at the minimum quantum, and deducts it. Grants
// never exceed what is left, so sequential calls never overdraw the total.
inline std::int64_t split_budget(Budget& b, std::int64_t assigned_items,
                                 std::int64_t pending_items) {
  if (b.remaining <= 0) return 0;
  const std::int64_t denom = std::max<std::int64_t>(pending_items, 1);
  const std::int64_t share =
      static_cast<std::int64_t>(static_cast<double>(b.remaining) *
                                static_cast<double>(std::max<std::int64_t>(assigned_items, 0)) /
                                static_cast<double>(denom));
  const std::int64_t grant = std::min(b.remaining, std::max(share, Budget::kMinQuantum));
  b.remaining -= grant;
  return grant;
}

}  // namespace tubepack
