#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tubepack {

// All lengths are millimetres. Recorded coordinates live on a 0.01 mm grid;
// geometry kernels compute in double and snap when a value is recorded.
inline double round2(double v) { return std::round(v * 100.0) / 100.0; }
inline double ceil2(double v) { return std::ceil(v * 100.0 - 1e-6) / 100.0; }
inline double floor2(double v) { return std::floor(v * 100.0 + 1e-6) / 100.0; }

struct ContainerSpec {
  double width = 0.0;   // W
  double height = 0.0;  // H
  double depth = 0.0;   // D
};

struct TubeType {
  std::string id;
  double idiam = 0.0;  // internal diameter
  double ediam = 0.0;  // external diameter
  std::optional<double> socket_ediam;  // flared end, overrides ediam for packing
  double len = 0.0;
  int count = 0;
  double unit_value = 0.0;
};

struct BoxType {
  std::string id;
  double width = 0.0;
  double height = 0.0;
  double depth = 0.0;
  int count = 0;
  double unit_value = 0.0;

  double volume() const { return width * height * depth; }
};

// Diameter that matters for packing geometry: the socket wins when present.
double effective_ediam(const TubeType& t);

// Stable sort by (length desc, effective external diameter desc).
std::vector<TubeType> canonical_tube_order(std::vector<TubeType> ts);

// Stable sort by volume desc.
std::vector<BoxType> canonical_box_order(std::vector<BoxType> bs);

// One of the six axis permutations of a box. perm()[k] names the source
// dimension (0=width, 1=height, 2=depth) that lands on target axis k.
struct Orientation {
  std::uint8_t index = 0;

  const std::array<std::uint8_t, 3>& perm() const;
  // Oriented (width, height, depth) of a box under this permutation.
  std::array<double, 3> apply(const BoxType& b) const;
  // Three-letter name, e.g. "dwh" = width from depth, height from width,
  // depth from height.
  std::string_view name() const;
  static std::optional<Orientation> from_name(std::string_view n);

  bool operator==(const Orientation&) const = default;
};

// All six orientations, duplicates for symmetric boxes not deduplicated.
std::array<Orientation, 6> orientations_of(const BoxType& b);

struct RingPlacement {
  std::string type;  // TubeType id
  double x = 0.0;    // centre in the holder cross-section
  double y = 0.0;
  double z = 0.0;    // offset from the holder front face
  std::vector<RingPlacement> children;  // tubes telescoped inside this one
};

struct BoxPlacement {
  std::string type;  // BoxType id
  double x = 0.0;    // min corner inside the holder
  double y = 0.0;
  double z = 0.0;
  Orientation orientation;
};

enum class HolderKind { Tubes, Boxes };

// An axis-aligned sub-box of a container. Holders span the full container
// width and carry either tubes or boxes, never both.
struct Holder {
  std::string id;
  HolderKind kind = HolderKind::Tubes;
  double x = 0.0, y = 0.0, z = 0.0;  // origin inside the container
  double w = 0.0, h = 0.0, d = 0.0;
  std::vector<RingPlacement> rings;
  std::vector<BoxPlacement> boxes;
};

struct PackedContainer {
  std::vector<Holder> holders;
};

struct SolutionMetrics {
  int containers_used = 0;
  std::vector<double> fill_ratio;  // per container: packed item volume / container volume
  double extra_value = 0.0;
  double wall_time_sec = 0.0;
};

struct Solution {
  std::vector<PackedContainer> containers;
  // Items that could not be placed, by type id, sorted; empty on success.
  std::vector<std::pair<std::string, int>> unpacked_tubes;
  std::vector<std::pair<std::string, int>> unpacked_boxes;
  SolutionMetrics metrics;
};

// Number of rings in a telescoping tree, the root included.
int ring_tree_size(const RingPlacement& r);

}  // namespace tubepack
