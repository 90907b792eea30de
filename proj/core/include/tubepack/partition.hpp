#pragma once

#include <cstdint>
#include <optional>

#include "tubepack/budget.hpp"
#include "tubepack/circlepack.hpp"
#include "tubepack/io_format.hpp"
#include "tubepack/model.hpp"

namespace tubepack {

struct SolveParams {
  double time_limit_sec = 30.0;  // converted to a node quota
  bool wallclock = false;        // also enforce the limit as real time
  std::uint64_t seed = 0;
  double noise = 0.2;
  double clearance = 0.0;  // telescoping diametral clearance
  int threads = 1;
  bool free_box_rotation = true;
};

// Longest pending tube length that still fits the remaining depth.
std::optional<double> select_slice_length(const std::vector<TubeClass>& pending,
                                          double remaining_depth);

// Packs the instance into as few containers as the recursive partition
// manages: each container is sliced by decreasing tube length into tube
// holders, space above a finished slice is filled recursively, and holders
// that admit no tube take boxes. Throws Unpackable when an item fits no empty
// container in any orientation.
Solution solve(const InstanceDoc& instance, const SolveParams& params = {});

}  // namespace tubepack
