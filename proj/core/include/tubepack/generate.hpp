#pragma once

#include <cstdint>
#include <vector>

#include "tubepack/io_format.hpp"

namespace tubepack {

// Profile for synthetic benchmark instances, mirroring the catalog shape of
// real orders: a few tube diameters over standard lengths plus a handful of
// box sizes.
struct GenProfile {
  int n_tube_types = 3;
  int total_tubes = 800;
  int n_box_types = 2;
  int total_boxes = 20;
  std::uint64_t seed = 0;
  ContainerSpec container{2350.0, 2690.0, 12000.0};
  double ediam_min = 40.0;
  double ediam_max = 200.0;
  double idiam_frac_min = 0.6;   // internal diameter as a fraction of external
  double idiam_frac_max = 0.95;
  std::vector<double> lengths{3000.0, 5000.0, 6000.0, 12000.0};
  double box_side_min = 200.0;
  double box_side_max = 800.0;
  double socket_probability = 0.15;

  bool valid() const {
    return n_tube_types >= 0 && n_box_types >= 0 && total_tubes >= n_tube_types &&
           total_boxes >= n_box_types && (n_tube_types > 0 || n_box_types > 0);
  }
};

// Deterministic for a fixed profile; counts are split across types by a
// seeded multinomial. Every generated item fits the container. Throws
// std::invalid_argument on a rejected profile (e.g. more types than items).
InstanceDoc generate_instance(const GenProfile& profile);

}  // namespace tubepack
