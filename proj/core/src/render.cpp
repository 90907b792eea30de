#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tubepack/io_format.hpp"

namespace tubepack {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

const Holder* find_holder(const SolutionDoc& doc, std::size_t container_index,
                          const std::string& holder_id) {
  if (container_index >= doc.containers.size())
    throw std::out_of_range("container index " + std::to_string(container_index) +
                            " out of range");
  for (const auto& h : doc.containers[container_index].holders)
    if (h.id == holder_id) return &h;
  throw std::out_of_range("no holder '" + holder_id + "' in container " +
                          std::to_string(container_index + 1));
}

std::map<std::string, int> item_counts(const Holder& h) {
  std::map<std::string, int> counts;
  std::function<void(const RingPlacement&)> walk = [&](const RingPlacement& r) {
    counts[r.type]++;
    for (const auto& c : r.children) walk(c);
  };
  for (const auto& r : h.rings) walk(r);
  for (const auto& b : h.boxes) counts[b.type]++;
  return counts;
}

std::string summary(const Holder& h) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, n] : item_counts(h)) {
    if (!first) os << ' ';
    os << id << "x" << n;
    first = false;
  }
  return os.str();
}

void emit_ring(std::ostringstream& os, const SolutionDoc& doc, const RingPlacement& r,
               double holder_h) {
  double ediam = 0.0;
  for (const auto& t : doc.tube_catalog)
    if (t.id == r.type) ediam = t.socket_ediam ? *t.socket_ediam : t.ediam;
  const double rad = ediam / 2.0;
  os << "  <circle cx=\"" << fmt(r.x) << "\" cy=\"" << fmt(holder_h - r.y) << "\" r=\""
     << fmt(rad) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "  <text x=\"" << fmt(r.x) << "\" y=\"" << fmt(holder_h - r.y)
     << "\" font-size=\"" << fmt(std::max(rad * 0.6, 8.0))
     << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << r.type
     << "</text>\n";
  for (const auto& c : r.children) emit_ring(os, doc, c, holder_h);
}

}  // namespace

std::string render_longitudinal(const SolutionDoc& doc, std::size_t container_index) {
  if (container_index >= doc.containers.size())
    throw std::out_of_range("container index " + std::to_string(container_index) +
                            " out of range");
  const auto& cont = doc.containers[container_index];
  const double D = doc.container.depth, H = doc.container.height;
  const double margin = std::max(D, H) * 0.05 + 10.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(-margin) << ' '
     << fmt(-margin) << ' ' << fmt(D + 2 * margin) << ' ' << fmt(H + 2 * margin)
     << "\">\n";
  os << "  <!-- longitudinal section, container " << (container_index + 1)
     << ": x = depth, y = height -->\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(D) << "\" height=\"" << fmt(H)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"6\"/>\n";
  os << "  <text x=\"" << fmt(D / 2) << "\" y=\"" << fmt(H + margin * 0.7)
     << "\" font-size=\"" << fmt(margin * 0.45)
     << "\" text-anchor=\"middle\">depth</text>\n";
  os << "  <text x=\"" << fmt(-margin * 0.7) << "\" y=\"" << fmt(H / 2)
     << "\" font-size=\"" << fmt(margin * 0.45) << "\" text-anchor=\"middle\""
     << " transform=\"rotate(-90 " << fmt(-margin * 0.7) << ' ' << fmt(H / 2)
     << ")\">height</text>\n";

  for (const auto& h : cont.holders) {
    const double ry = H - h.y - h.h;  // SVG y grows downward
    os << "  <rect x=\"" << fmt(h.z) << "\" y=\"" << fmt(ry) << "\" width=\""
       << fmt(h.d) << "\" height=\"" << fmt(h.h)
       << "\" fill=\"" << (h.kind == HolderKind::Tubes ? "#dce8f5" : "#f5e8cf")
       << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
    const double fs = std::clamp(h.h * 0.25, 40.0, 140.0);
    os << "  <text x=\"" << fmt(h.z + h.d / 2) << "\" y=\"" << fmt(ry + h.h / 2)
       << "\" font-size=\"" << fmt(fs)
       << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << h.id << " ["
       << (h.kind == HolderKind::Tubes ? "tubes" : "boxes") << "] " << summary(h)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_transversal(const SolutionDoc& doc, std::size_t container_index,
                               const std::string& holder_id) {
  const Holder* h = find_holder(doc, container_index, holder_id);
  if (h->kind != HolderKind::Tubes)
    throw NotATubeHolder("holder '" + holder_id + "' does not hold tubes");

  const double margin = std::max(h->w, h->h) * 0.05 + 10.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(-margin) << ' '
     << fmt(-margin) << ' ' << fmt(h->w + 2 * margin) << ' ' << fmt(h->h + 2 * margin)
     << "\">\n";
  os << "  <!-- transversal section, holder " << h->id << " of container "
     << (container_index + 1) << " -->\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(h->w) << "\" height=\"" << fmt(h->h)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"4\"/>\n";
  for (const auto& r : h->rings) emit_ring(os, doc, r, h->h);
  os << "</svg>\n";
  return os.str();
}

std::string box_manifest(const SolutionDoc& doc, std::size_t container_index,
                         const std::string& holder_id) {
  const Holder* h = find_holder(doc, container_index, holder_id);
  if (h->kind != HolderKind::Boxes)
    throw NotABoxHolder("holder '" + holder_id + "' does not hold boxes");

  std::vector<const BoxPlacement*> rows;
  for (const auto& b : h->boxes) rows.push_back(&b);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BoxPlacement* a, const BoxPlacement* b) {
                     if (a->z != b->z) return a->z < b->z;
                     if (a->y != b->y) return a->y < b->y;
                     return a->x < b->x;
                   });

  std::map<std::string, const BoxType*> types;
  for (const auto& b : doc.box_catalog) types[b.id] = &b;

  std::ostringstream os;
  os << "box x y z w h d orientation\n";
  for (const auto* b : rows) {
    auto it = types.find(b->type);
    double w = 0, hh = 0, d = 0;
    if (it != types.end()) {
      const auto dims = b->orientation.apply(*it->second);
      w = dims[0];
      hh = dims[1];
      d = dims[2];
    }
    os << b->type << ' ' << fmt(b->x) << ' ' << fmt(b->y) << ' ' << fmt(b->z) << ' '
       << fmt(w) << ' ' << fmt(hh) << ' ' << fmt(d) << ' ' << b->orientation.name()
       << '\n';
  }
  return os.str();
}

}  // namespace tubepack
