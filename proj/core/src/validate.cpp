#include "tubepack/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "tubepack/errors.hpp"

namespace tubepack {

const char* to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::Overlap: return "Overlap";
    case ViolationCode::OutOfBounds: return "OutOfBounds";
    case ViolationCode::Protrusion: return "Protrusion";
    case ViolationCode::TubeAboveShorter: return "TubeAboveShorter";
    case ViolationCode::BoxBelowTube: return "BoxBelowTube";
    case ViolationCode::TelescopeClearance: return "TelescopeClearance";
    case ViolationCode::CountMismatch: return "CountMismatch";
    case ViolationCode::WidthRule: return "WidthRule";
    case ViolationCode::DepthMismatch: return "DepthMismatch";
  }
  return "?";
}

namespace {

struct TubeInfo {
  double idiam, ediam, eff, len;
};

double overlap_len(double a0, double a1, double b0, double b1) {
  return std::min(a1, b1) - std::max(a0, b0);
}

class Checker {
 public:
  Checker(const InstanceDoc& instance, const SolutionDoc& sol, double tol)
      : inst_(instance), sol_(sol), tol_(tol) {
    for (const auto& t : instance.tubes)
      tubes_[t.id] = {t.idiam, t.ediam, t.socket_ediam ? *t.socket_ediam : t.ediam,
                      t.len};
    for (const auto& b : instance.boxes) boxes_[b.id] = &b;
  }

  std::vector<Violation> run() {
    for (std::size_t ci = 0; ci < sol_.containers.size(); ++ci) check_container(ci);
    check_counts();
    return std::move(out_);
  }

 private:
  void add(ViolationCode code, std::string subject, std::string detail,
           double magnitude = 0.0) {
    out_.push_back({code, std::move(subject), std::move(detail),
                    std::max(magnitude, 0.0)});
  }

  const TubeInfo& tube(const std::string& id, const std::string& where) {
    auto it = tubes_.find(id);
    if (it == tubes_.end())
      throw MalformedSolution("unknown tube type '" + id + "' in " + where);
    return it->second;
  }

  const BoxType& box(const std::string& id, const std::string& where) {
    auto it = boxes_.find(id);
    if (it == boxes_.end())
      throw MalformedSolution("unknown box type '" + id + "' in " + where);
    return *it->second;
  }

  void check_container(std::size_t ci) {
    const auto& cont = sol_.containers[ci];
    const ContainerSpec& cs = inst_.container;
    const std::string cname = "container " + std::to_string(ci + 1);

    std::map<std::string, int> seen_ids;
    for (const auto& h : cont.holders)
      if (++seen_ids[h.id] == 2)
        throw MalformedSolution("duplicate holder id '" + h.id + "' in " + cname);

    for (const auto& h : cont.holders) {
      const std::string hname = cname + " / holder " + h.id;

      if (std::abs(h.w - cs.width) > tol_)
        add(ViolationCode::WidthRule, hname,
            "holder width differs from container width",
            std::abs(h.w - cs.width));
      if (h.x < -tol_ || h.y < -tol_ || h.z < -tol_ || h.x + h.w > cs.width + tol_ ||
          h.y + h.h > cs.height + tol_ || h.z + h.d > cs.depth + tol_)
        add(ViolationCode::OutOfBounds, hname, "holder exceeds the container",
            std::max({-h.x, -h.y, -h.z, h.x + h.w - cs.width, h.y + h.h - cs.height,
                      h.z + h.d - cs.depth}));

      if (h.kind == HolderKind::Tubes)
        check_tube_holder(h, hname);
      else
        check_box_holder(h, hname);
    }

    // pairwise holder geometry and stacking rules
    for (std::size_t i = 0; i < cont.holders.size(); ++i) {
      for (std::size_t j = i + 1; j < cont.holders.size(); ++j) {
        const Holder& a = cont.holders[i];
        const Holder& b = cont.holders[j];
        const std::string pname =
            cname + " / holders " + a.id + "+" + b.id;
        const double px = overlap_len(a.x, a.x + a.w, b.x, b.x + b.w);
        const double py = overlap_len(a.y, a.y + a.h, b.y, b.y + b.h);
        const double pz = overlap_len(a.z, a.z + a.d, b.z, b.z + b.d);
        if (px > tol_ && py > tol_ && pz > tol_)
          add(ViolationCode::Overlap, pname, "holders intersect",
              std::min({px, py, pz}));
        check_stacking(a, b, pname);
        check_stacking(b, a, pname);
      }
    }
  }

  // `upper` resting on `lower`: contact along y with overlapping footprint.
  void check_stacking(const Holder& upper, const Holder& lower,
                      const std::string& pname) {
    if (std::abs(upper.y - (lower.y + lower.h)) > tol_) return;
    const double fx = overlap_len(upper.x, upper.x + upper.w, lower.x, lower.x + lower.w);
    const double fz = overlap_len(upper.z, upper.z + upper.d, lower.z, lower.z + lower.d);
    if (fx <= tol_ || fz <= tol_) return;

    if (upper.kind == HolderKind::Tubes && lower.kind == HolderKind::Boxes)
      add(ViolationCode::BoxBelowTube, pname,
          "tube holder " + upper.id + " rests on box holder " + lower.id);
    if (upper.kind == HolderKind::Tubes && lower.kind == HolderKind::Tubes &&
        upper.d > lower.d + tol_)
      add(ViolationCode::TubeAboveShorter, pname,
          "tubes in " + upper.id + " are longer than the tubes below",
          upper.d - lower.d);
    const double front = lower.z - upper.z;
    const double back = (upper.z + upper.d) - (lower.z + lower.d);
    if (front > tol_ || back > tol_)
      add(ViolationCode::Protrusion, pname,
          upper.id + " protrudes beyond " + lower.id, std::max(front, back));
  }

  void check_tube_holder(const Holder& h, const std::string& hname) {
    struct Flat {
      const RingPlacement* ring;
      const RingPlacement* parent;
      double r, len;
    };
    std::vector<Flat> flat;
    std::function<void(const RingPlacement&, const RingPlacement*)> walk =
        [&](const RingPlacement& r, const RingPlacement* parent) {
          const TubeInfo& t = tube(r.type, hname);
          flat.push_back({&r, parent, t.eff / 2.0, t.len});
          for (const auto& c : r.children) walk(c, &r);
        };
    for (const auto& r : h.rings) walk(r, nullptr);

    for (std::size_t i = 0; i < h.rings.size(); ++i) {
      const RingPlacement& r = h.rings[i];
      const TubeInfo& t = tube(r.type, hname);
      const std::string rname = hname + " / ring " + std::to_string(i + 1);
      if (std::abs(t.len - h.d) > tol_)
        add(ViolationCode::DepthMismatch, rname,
            "tube length differs from holder depth", std::abs(t.len - h.d));
      const double rr = t.eff / 2.0;
      const double excess =
          std::max({rr - r.x, r.x + rr - h.w, rr - r.y, r.y + rr - h.h});
      if (excess > tol_)
        add(ViolationCode::OutOfBounds, rname, "ring outside the cross-section",
            excess);
      if (r.z < -tol_ || r.z + t.len > h.d + tol_)
        add(ViolationCode::OutOfBounds, rname, "ring outside the holder depth",
            std::max(-r.z, r.z + t.len - h.d));
    }

    // top-level pairwise overlap (same depth span by construction, but the
    // z ranges are still honoured for hand-written documents)
    for (std::size_t i = 0; i < h.rings.size(); ++i) {
      for (std::size_t j = i + 1; j < h.rings.size(); ++j) {
        const RingPlacement& a = h.rings[i];
        const RingPlacement& b = h.rings[j];
        const TubeInfo& ta = tube(a.type, hname);
        const TubeInfo& tb = tube(b.type, hname);
        if (overlap_len(a.z, a.z + ta.len, b.z, b.z + tb.len) <= tol_) continue;
        const double dist = std::hypot(a.x - b.x, a.y - b.y);
        const double need = (ta.eff + tb.eff) / 2.0;
        if (dist < need - tol_)
          add(ViolationCode::Overlap,
              hname + " / rings " + std::to_string(i + 1) + "+" + std::to_string(j + 1),
              "rings intersect", need - dist);
      }
    }

    // telescoping: clearance, containment in the parent bore, sibling spans
    std::function<void(const RingPlacement&, const std::string&)> nest =
        [&](const RingPlacement& parent, const std::string& pname) {
          const TubeInfo& tp = tube(parent.type, hname);
          for (std::size_t k = 0; k < parent.children.size(); ++k) {
            const RingPlacement& c = parent.children[k];
            const TubeInfo& tc = tube(c.type, hname);
            const std::string cname = pname + " / nested " + std::to_string(k + 1);
            if (tc.eff > tp.idiam + tol_)
              add(ViolationCode::TelescopeClearance, cname,
                  "tube does not pass the host bore", tc.eff - tp.idiam);
            const double dist = std::hypot(c.x - parent.x, c.y - parent.y);
            if (dist + tc.eff / 2.0 > tp.idiam / 2.0 + tol_)
              add(ViolationCode::TelescopeClearance, cname,
                  "ring leaves the host bore", dist + tc.eff / 2.0 - tp.idiam / 2.0);
            if (c.z < parent.z - tol_ || c.z + tc.len > parent.z + tp.len + tol_)
              add(ViolationCode::OutOfBounds, cname,
                  "nested tube sticks out of its host",
                  std::max(parent.z - c.z, c.z + tc.len - parent.z - tp.len));
            for (std::size_t m = k + 1; m < parent.children.size(); ++m) {
              const RingPlacement& s = parent.children[m];
              const TubeInfo& ts = tube(s.type, hname);
              if (overlap_len(c.z, c.z + tc.len, s.z, s.z + ts.len) <= tol_) continue;
              const double d2 = std::hypot(c.x - s.x, c.y - s.y);
              if (d2 < (tc.eff + ts.eff) / 2.0 - tol_)
                add(ViolationCode::Overlap, cname, "nested tubes intersect",
                    (tc.eff + ts.eff) / 2.0 - d2);
            }
            nest(c, cname);
          }
        };
    for (std::size_t i = 0; i < h.rings.size(); ++i)
      nest(h.rings[i], hname + " / ring " + std::to_string(i + 1));
  }

  void check_box_holder(const Holder& h, const std::string& hname) {
    struct Ext {
      double x0, y0, z0, x1, y1, z1;
    };
    std::vector<Ext> ext;
    for (std::size_t i = 0; i < h.boxes.size(); ++i) {
      const BoxPlacement& p = h.boxes[i];
      const BoxType& t = box(p.type, hname);
      const auto dims = p.orientation.apply(t);
      Ext e{p.x, p.y, p.z, p.x + dims[0], p.y + dims[1], p.z + dims[2]};
      const std::string bname = hname + " / box " + std::to_string(i + 1);
      const double excess = std::max({-e.x0, -e.y0, -e.z0, e.x1 - h.w, e.y1 - h.h,
                                      e.z1 - h.d});
      if (excess > tol_)
        add(ViolationCode::OutOfBounds, bname, "box outside the holder", excess);
      ext.push_back(e);
    }
    for (std::size_t i = 0; i < ext.size(); ++i) {
      for (std::size_t j = i + 1; j < ext.size(); ++j) {
        const double px = overlap_len(ext[i].x0, ext[i].x1, ext[j].x0, ext[j].x1);
        const double py = overlap_len(ext[i].y0, ext[i].y1, ext[j].y0, ext[j].y1);
        const double pz = overlap_len(ext[i].z0, ext[i].z1, ext[j].z0, ext[j].z1);
        if (px > tol_ && py > tol_ && pz > tol_)
          add(ViolationCode::Overlap,
              hname + " / boxes " + std::to_string(i + 1) + "+" + std::to_string(j + 1),
              "boxes intersect", std::min({px, py, pz}));
      }
    }
  }

  void check_counts() {
    std::map<std::string, long> placed_tubes, placed_boxes;
    for (const auto& cont : sol_.containers) {
      for (const auto& h : cont.holders) {
        std::function<void(const RingPlacement&)> walk = [&](const RingPlacement& r) {
          tube(r.type, "holder " + h.id);
          placed_tubes[r.type]++;
          for (const auto& c : r.children) walk(c);
        };
        for (const auto& r : h.rings) walk(r);
        for (const auto& b : h.boxes) {
          box(b.type, "holder " + h.id);
          placed_boxes[b.type]++;
        }
      }
    }
    for (const auto& [id, n] : sol_.unpacked_tubes) {
      tube(id, "unpacked list");
      placed_tubes[id] += n;
    }
    for (const auto& [id, n] : sol_.unpacked_boxes) {
      box(id, "unpacked list");
      placed_boxes[id] += n;
    }
    for (const auto& t : inst_.tubes) {
      const long got = placed_tubes.count(t.id) ? placed_tubes[t.id] : 0;
      if (got != t.count)
        add(ViolationCode::CountMismatch, "tube type " + t.id,
            "placed+unpacked = " + std::to_string(got) + ", ordered = " +
                std::to_string(t.count),
            std::abs(got - static_cast<long>(t.count)));
    }
    for (const auto& b : inst_.boxes) {
      const long got = placed_boxes.count(b.id) ? placed_boxes[b.id] : 0;
      if (got != b.count)
        add(ViolationCode::CountMismatch, "box type " + b.id,
            "placed+unpacked = " + std::to_string(got) + ", ordered = " +
                std::to_string(b.count),
            std::abs(got - static_cast<long>(b.count)));
    }
  }

  const InstanceDoc& inst_;
  const SolutionDoc& sol_;
  double tol_;
  std::map<std::string, TubeInfo> tubes_;
  std::map<std::string, const BoxType*> boxes_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const InstanceDoc& instance, const SolutionDoc& sol,
                                double tolerance) {
  Checker c(instance, sol, tolerance);
  return c.run();
}

}  // namespace tubepack
