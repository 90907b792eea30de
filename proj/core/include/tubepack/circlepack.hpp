#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubepack/model.hpp"

namespace tubepack {

// Rectangular cross-section a set of rings is packed into: the full holder
// width and the vertical space still available.
struct CrossSection {
  double width = 0.0;
  double height_cap = 0.0;
};

struct Circle {
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Multiset entry: a tube type and how many of it take part.
struct TubeClass {
  TubeType type;
  int count = 0;
};

struct CirclePackParams {
  std::int64_t node_quota = 50'000 * 30;  // one node per tube insertion attempt
  int min_restarts = 1;
  std::uint64_t seed = 0;
  double noise = 0.2;      // probability of picking among the 3 best candidates
  double clearance = 0.0;  // diametral telescoping clearance
  double grid = 0.0;       // 0 = exact; 0.01 snaps placements to the mm/100 grid
  int threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct PackOutcome {
  std::vector<RingPlacement> rings;       // top-level rings with telescoping trees
  std::vector<std::string> type_axis;     // ids by decreasing effective diameter
  std::vector<int> counts_by_type;        // aligned with type_axis, telescoped included
  std::map<std::string, int> placed_by_id;
  double used_height = 0.0;               // max over top-level rings of y + r
  bool complete = false;                  // all requested (top) tubes placed
};

// All centres where a circle of radius r rests against two supports among the
// walls, the floor, the ceiling and the placed circles, lies inside the
// cross-section and overlaps nothing beyond 1e-6 mm. Sorted by (y, x)
// ascending. Exact tangency points; no grid snapping.
std::vector<Point2> tangency_candidates(double r, const std::vector<Circle>& placed,
                                        const CrossSection& cs);

// One greedy construction pass. Top-level insertion walks `tubes` by
// decreasing effective diameter, placing each unit at the bottom-left-most
// candidate (or, with probability `noise`, at one of the 3 best). Afterwards
// `pool` tubes (and top leftovers) are telescoped into whatever was placed.
PackOutcome greedy_construct(const std::vector<TubeClass>& tubes,
                             const std::vector<TubeClass>& pool,
                             const CrossSection& cs, std::uint64_t rng_seed,
                             double noise, double clearance = 0.0,
                             double grid = 0.0);

// Telescopes pool tubes into the given host rings, largest internal diameter
// first, first-fit by decreasing external diameter, end-to-end along the
// depth. Inserted tubes become hosts for what remains. Consumed classes are
// removed from `pool`.
void telescope_fill(std::vector<RingPlacement>& hosts, std::vector<TubeClass>& pool,
                    const std::vector<TubeType>& catalog, double clearance = 0.0,
                    double grid = 0.0);

// Restarted greedy keeping the outcome with the lexicographically largest
// per-type counts (types by decreasing diameter). For holders the tube set
// overfills.
PackOutcome pack_T1(const std::vector<TubeClass>& tubes,
                    const std::vector<TubeClass>& pool, const CrossSection& cs,
                    const CirclePackParams& params);

// Restarted greedy keeping, among outcomes that place every requested tube,
// the one of minimum used height. Falls back to the pack_T1 choice (flagged
// incomplete) when no restart places them all.
PackOutcome pack_T2(const std::vector<TubeClass>& tubes,
                    const std::vector<TubeClass>& pool, const CrossSection& cs,
                    const CirclePackParams& params);

}  // namespace tubepack
