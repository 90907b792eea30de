#pragma once

#include <string>
#include <vector>

#include "tubepack/io_format.hpp"

namespace tubepack {

enum class ViolationCode {
  Overlap,
  OutOfBounds,
  Protrusion,
  TubeAboveShorter,
  BoxBelowTube,
  TelescopeClearance,
  CountMismatch,
  WidthRule,
  DepthMismatch,
};

const char* to_string(ViolationCode c);

struct Violation {
  ViolationCode code;
  std::string subject;  // e.g. "container 1 / holder H2 / ring r3"
  std::string detail;
  double magnitude = 0.0;  // mm of excess where applicable
};

// Independent feasibility check of a solution document against its instance:
// geometry (containment, overlap), the holder rules (full width, tube-holder
// depth equals tube length, no protrusion, shorter-on-longer, no tubes above
// boxes), telescoping clearance, and item conservation. Order-stable, pure.
// Tube axes are structural in this format (rings only carry a depth offset),
// so the parallel-to-depth rule holds vacuously.
// Throws MalformedSolution when the document references unknown type ids.
std::vector<Violation> validate(const InstanceDoc& instance, const SolutionDoc& sol,
                                double tolerance = 1e-4);

}  // namespace tubepack
