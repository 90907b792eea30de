#include "tubepack/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tubepack {
namespace {

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * u01(rng);
}

std::vector<int> multinomial(std::mt19937_64& rng, int total, int bins) {
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < total; ++i)
    counts[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(bins))]++;
  return counts;
}

}  // namespace

InstanceDoc generate_instance(const GenProfile& p) {
  if (!p.valid()) throw std::invalid_argument("rejected generator profile");

  std::mt19937_64 rng(p.seed);
  InstanceDoc doc;
  doc.container = p.container;

  const double diam_cap = std::min(p.container.width, p.container.height);
  std::vector<double> lengths;
  for (double l : p.lengths)
    if (l <= p.container.depth) lengths.push_back(l);
  if (lengths.empty() && p.n_tube_types > 0)
    throw std::invalid_argument("no tube length fits the container depth");

  if (p.n_tube_types > 0) {
    const auto counts = multinomial(rng, p.total_tubes, p.n_tube_types);
    for (int i = 0; i < p.n_tube_types; ++i) {
      TubeType t;
      t.id = "T" + std::to_string(i + 1);
      double ediam = round2(uniform(rng, p.ediam_min, std::min(p.ediam_max, diam_cap)));
      t.ediam = ediam;
      t.idiam = round2(ediam * uniform(rng, p.idiam_frac_min, p.idiam_frac_max));
      if (t.idiam >= t.ediam) t.idiam = round2(t.ediam - 0.01);
      t.len = lengths[static_cast<std::size_t>(rng() % lengths.size())];
      const double socket_draw = u01(rng);
      if (socket_draw < p.socket_probability) {
        const double s = round2(std::min(ediam * uniform(rng, 1.0, 1.08), diam_cap));
        if (s >= t.ediam) t.socket_ediam = s;
      }
      t.count = counts[i];
      doc.tubes.push_back(std::move(t));
    }
  }

  if (p.n_box_types > 0) {
    const auto counts = multinomial(rng, p.total_boxes, p.n_box_types);
    for (int i = 0; i < p.n_box_types; ++i) {
      BoxType b;
      b.id = "B" + std::to_string(i + 1);
      b.width = round2(uniform(rng, p.box_side_min, p.box_side_max));
      b.height = round2(uniform(rng, p.box_side_min, p.box_side_max));
      b.depth = round2(uniform(rng, p.box_side_min, p.box_side_max));
      b.count = counts[i];
      doc.boxes.push_back(std::move(b));
    }
  }

  doc.source_text = write_instance(doc);
  return doc;
}

}  // namespace tubepack
