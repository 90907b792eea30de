#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "tubepack/model.hpp"

namespace tubepack {

// Candidate anchor for a box: a point where three orthogonal planes meet,
// with the sign triple naming the open octant a box may grow into.
struct Corner {
  double x = 0.0, y = 0.0, z = 0.0;
  std::array<int, 3> sig = {+1, +1, +1};
};

// Axis-aligned extent of a box already placed in the holder.
struct PlacedBox {
  double x0 = 0, y0 = 0, z0 = 0;
  double x1 = 0, y1 = 0, z1 = 0;
  int type_index = 0;  // into the caller's class list
  Orientation orientation;
};

struct BoxClass {
  BoxType type;
  int count = 0;
};

struct BoxPackParams {
  std::int64_t node_quota = 50'000 * 30;  // one node per placement attempt
  std::uint64_t seed = 0;                 // reserved; the search is deterministic
  bool free_rotation = true;              // false restricts to vertical-axis turns
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct BoxPackOutcome {
  std::vector<BoxPlacement> placements;
  std::vector<int> counts_by_type;  // aligned with the input class list
  double used_depth = 0.0;
  double used_height = 0.0;
  int packed_count = 0;
  bool complete = false;
};

// The single corner at the holder origin, growing along +x, +y, +z.
std::vector<Corner> initial_corners(double w, double h, double d);

// Anchors the oriented box at the corner, growing along its signature.
// Succeeds when the box lies inside the holder, overlaps nothing, and rests
// against a wall or a placed box face in each negative growth direction.
std::optional<PlacedBox> try_place(const BoxType& b, Orientation o, const Corner& c,
                                   const std::vector<PlacedBox>& placed, double w,
                                   double h, double d);

struct CornerChoice {
  std::size_t corner_index = 0;
  PlacedBox box;
};

// Best feasible (corner, orientation) pair by the resulting global
// (depth, height, width) extents, ties by corner order then orientation.
// With a row orientation given, other orientations are tried only when no
// corner admits it.
std::optional<CornerChoice> best_corner_placement(
    const BoxType& b, const std::vector<Corner>& corners,
    const std::vector<PlacedBox>& placed, double w, double h, double d,
    const std::optional<Orientation>& row_orientation,
    const std::vector<Orientation>& allowed);

// Removes corners whose octant the new box blocks, then adds the up to three
// far-vertex corners of the new box, slid against their supports and dropped
// when another box already blocks them. `placed` must already contain the new
// box. Kept sorted by (z, y, x).
void update_corners(std::vector<Corner>& corners, const PlacedBox& nb,
                    const std::vector<PlacedBox>& placed, double w, double h,
                    double d);

// Greedy corner placement with branching on the next box type and on the
// orientation opening each row, depth-first under the node quota. Keeps the
// outcome with lexicographically largest per-class counts (classes in the
// given order, which callers pass by decreasing volume).
BoxPackOutcome pack_B1(const std::vector<BoxClass>& boxes, double w, double h,
                       double d, const BoxPackParams& params);

// Same search, but among outcomes placing every box prefers minimum
// (used depth, used height). Incomplete outcomes fall back to the pack_B1
// ranking and are flagged.
BoxPackOutcome pack_B2(const std::vector<BoxClass>& boxes, double w, double h,
                       double max_depth, const BoxPackParams& params);

}  // namespace tubepack
