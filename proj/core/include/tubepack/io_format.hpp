#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tubepack/errors.hpp"
#include "tubepack/model.hpp"

namespace tubepack {

// A parsed instance: container dimensions plus the tube and box catalogs.
struct InstanceDoc {
  ContainerSpec container;
  std::vector<TubeType> tubes;
  std::vector<BoxType> boxes;
  std::string source_text;  // kept for error spans and digests
};

// Plain-text instance format, three whitespace-separated blocks:
//
//   container
//   <width> <height> <depth>
//   tubes
//   <id> <idiam> <ediam> <len> <count> [socket_ediam] [value]
//   boxes
//   <id> <width> <height> <depth> <count> [value]
//
// Full-line '#' comments and blank lines are ignored. Numbers are decimals
// with at most two fraction digits; counts are integers.
InstanceDoc parse_instance(const std::string& text);

// Canonical re-serialization of an instance (single-space columns, minimal
// decimals). parse(write(x)) == x up to formatting.
std::string write_instance(const InstanceDoc& doc);

// FNV-1a 64 over the canonical instance text, as 16 hex digits.
std::string instance_digest(const InstanceDoc& doc);

// Solution document: self-contained (carries a dimensions catalog) so that
// rendering needs no instance file. All coordinates on the 0.01 mm grid.
struct SolutionDoc {
  int schema_version = 1;
  std::string instance_digest;
  ContainerSpec container;
  std::vector<TubeType> tube_catalog;
  std::vector<BoxType> box_catalog;
  std::vector<PackedContainer> containers;
  std::vector<std::pair<std::string, int>> unpacked_tubes;
  std::vector<std::pair<std::string, int>> unpacked_boxes;
  int containers_used = 0;
  std::vector<double> fill_ratio;
  double extra_value = 0.0;
};

// Builds the document for a solved instance, rounding every stored
// coordinate to the grid.
SolutionDoc make_solution_doc(const InstanceDoc& instance, const Solution& sol);

// Canonical JSON: key-sorted, two-space indent, newline-terminated, ring ids
// assigned depth-first per holder with telescoping parent references.
std::string write_solution(const SolutionDoc& doc);

// Inverse of write_solution. Throws SchemaError on unknown versions, missing
// fields or dangling parent ids.
SolutionDoc read_solution(const std::string& text);

// SVG longitudinal section (x = depth, y = height) of one container: one
// labelled rectangle per holder. Deterministic text output.
std::string render_longitudinal(const SolutionDoc& doc, std::size_t container_index);

// SVG cross-section of one tube holder: a circle per ring, telescoped rings
// drawn inside their parents, labelled by tube type.
std::string render_transversal(const SolutionDoc& doc, std::size_t container_index,
                               const std::string& holder_id);

// Plain-text manifest of a box holder: one row per placement with origin,
// oriented dimensions and orientation name, sorted by (z, y, x).
std::string box_manifest(const SolutionDoc& doc, std::size_t container_index,
                         const std::string& holder_id);

}  // namespace tubepack
