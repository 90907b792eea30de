#include "tubepack/boxpack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tubepack {
namespace {

constexpr double kTol = 1e-6;

struct Dims {
  double w, h, d;
};

PlacedBox anchored(const Dims& dm, const Corner& c) {
  PlacedBox b;
  const double dims[3] = {dm.w, dm.h, dm.d};
  const double p[3] = {c.x, c.y, c.z};
  double lo[3], hi[3];
  for (int k = 0; k < 3; ++k) {
    if (c.sig[k] >= 0) {
      lo[k] = p[k];
      hi[k] = p[k] + dims[k];
    } else {
      lo[k] = p[k] - dims[k];
      hi[k] = p[k];
    }
  }
  b.x0 = lo[0]; b.y0 = lo[1]; b.z0 = lo[2];
  b.x1 = hi[0]; b.y1 = hi[1]; b.z1 = hi[2];
  return b;
}

bool inside_holder(const PlacedBox& b, double w, double h, double d) {
  return b.x0 >= -kTol && b.y0 >= -kTol && b.z0 >= -kTol && b.x1 <= w + kTol &&
         b.y1 <= h + kTol && b.z1 <= d + kTol;
}

bool boxes_overlap(const PlacedBox& a, const PlacedBox& b) {
  return a.x0 < b.x1 - kTol && b.x0 < a.x1 - kTol && a.y0 < b.y1 - kTol &&
         b.y0 < a.y1 - kTol && a.z0 < b.z1 - kTol && b.z0 < a.z1 - kTol;
}

double overlap_len(double a0, double a1, double b0, double b1) {
  return std::min(a1, b1) - std::max(a0, b0);
}

// Contact with a wall or a placed box face in each negative axis direction.
bool supported(const PlacedBox& b, const std::vector<PlacedBox>& placed) {
  bool sx = b.x0 <= kTol, sy = b.y0 <= kTol, sz = b.z0 <= kTol;
  for (const auto& p : placed) {
    if (!sx && std::abs(p.x1 - b.x0) <= kTol &&
        overlap_len(b.y0, b.y1, p.y0, p.y1) > kTol &&
        overlap_len(b.z0, b.z1, p.z0, p.z1) > kTol)
      sx = true;
    if (!sy && std::abs(p.y1 - b.y0) <= kTol &&
        overlap_len(b.x0, b.x1, p.x0, p.x1) > kTol &&
        overlap_len(b.z0, b.z1, p.z0, p.z1) > kTol)
      sy = true;
    if (!sz && std::abs(p.z1 - b.z0) <= kTol &&
        overlap_len(b.x0, b.x1, p.x0, p.x1) > kTol &&
        overlap_len(b.y0, b.y1, p.y0, p.y1) > kTol)
      sz = true;
    if (sx && sy && sz) return true;
  }
  return sx && sy && sz;
}

// The box closes over the corner's open octant right at the point.
bool blocks_corner(const Corner& c, const PlacedBox& b) {
  const double p[3] = {c.x, c.y, c.z};
  const double lo[3] = {b.x0, b.y0, b.z0};
  const double hi[3] = {b.x1, b.y1, b.z1};
  for (int k = 0; k < 3; ++k) {
    if (c.sig[k] >= 0) {
      if (!(lo[k] <= p[k] + kTol && hi[k] >= p[k] + kTol)) return false;
    } else {
      if (!(hi[k] >= p[k] - kTol && lo[k] <= p[k] - kTol)) return false;
    }
  }
  return true;
}

bool corner_less(const Corner& a, const Corner& b) {
  if (a.z != b.z) return a.z < b.z;
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

bool corner_eq(const Corner& a, const Corner& b) {
  return std::abs(a.x - b.x) <= 1e-9 && std::abs(a.y - b.y) <= 1e-9 &&
         std::abs(a.z - b.z) <= 1e-9 && a.sig == b.sig;
}

}  // namespace

std::vector<Corner> initial_corners(double, double, double) {
  return {Corner{0.0, 0.0, 0.0, {+1, +1, +1}}};
}

std::optional<PlacedBox> try_place(const BoxType& b, Orientation o, const Corner& c,
                                   const std::vector<PlacedBox>& placed, double w,
                                   double h, double d) {
  const auto dims = o.apply(b);
  PlacedBox pb = anchored({dims[0], dims[1], dims[2]}, c);
  pb.orientation = o;
  if (!inside_holder(pb, w, h, d)) return std::nullopt;
  for (const auto& p : placed)
    if (boxes_overlap(pb, p)) return std::nullopt;
  if (!supported(pb, placed)) return std::nullopt;
  return pb;
}

std::optional<CornerChoice> best_corner_placement(
    const BoxType& b, const std::vector<Corner>& corners,
    const std::vector<PlacedBox>& placed, double w, double h, double d,
    const std::optional<Orientation>& row_orientation,
    const std::vector<Orientation>& allowed) {
  double cur_d = 0.0, cur_h = 0.0, cur_w = 0.0;
  for (const auto& p : placed) {
    cur_d = std::max(cur_d, p.z1);
    cur_h = std::max(cur_h, p.y1);
    cur_w = std::max(cur_w, p.x1);
  }

  auto scan = [&](const std::vector<Orientation>& os) -> std::optional<CornerChoice> {
    std::optional<CornerChoice> best;
    double bk[3] = {0, 0, 0};
    for (std::size_t ci = 0; ci < corners.size(); ++ci) {
      for (const auto& o : os) {
        auto pb = try_place(b, o, corners[ci], placed, w, h, d);
        if (!pb) continue;
        const double key[3] = {std::max(cur_d, pb->z1), std::max(cur_h, pb->y1),
                               std::max(cur_w, pb->x1)};
        if (!best || key[0] < bk[0] ||
            (key[0] == bk[0] && (key[1] < bk[1] || (key[1] == bk[1] && key[2] < bk[2])))) {
          best = CornerChoice{ci, *pb};
          bk[0] = key[0];
          bk[1] = key[1];
          bk[2] = key[2];
        }
      }
    }
    return best;
  };

  if (row_orientation) {
    if (auto r = scan({*row_orientation})) return r;
  }
  return scan(allowed);
}

void update_corners(std::vector<Corner>& corners, const PlacedBox& nb,
                    const std::vector<PlacedBox>& placed, double w, double h,
                    double d) {
  corners.erase(std::remove_if(corners.begin(), corners.end(),
                               [&](const Corner& c) { return blocks_corner(c, nb); }),
                corners.end());

  const Corner fresh[3] = {
      {nb.x1, nb.y0, nb.z0, {+1, +1, +1}},
      {nb.x0, nb.y1, nb.z0, {+1, +1, +1}},
      {nb.x0, nb.y0, nb.z1, {+1, +1, +1}},
  };
  const double dims[3] = {w, h, d};

  for (Corner c : fresh) {
    // Slide against supports, one axis at a time (x, then y, then z).
    double p[3] = {c.x, c.y, c.z};
    for (int k = 0; k < 3; ++k) {
      if (c.sig[k] < 0) continue;  // only negative growth directions slide
      double support = 0.0;
      for (const auto& b : placed) {
        const double lo[3] = {b.x0, b.y0, b.z0};
        const double hi[3] = {b.x1, b.y1, b.z1};
        if (hi[k] > p[k] + kTol) continue;
        bool covers = true;
        for (int m = 0; m < 3; ++m) {
          if (m == k) continue;
          if (p[m] < lo[m] - kTol || p[m] > hi[m] + kTol) covers = false;
        }
        if (covers) support = std::max(support, hi[k]);
      }
      p[k] = std::min(p[k], std::max(support, 0.0));
    }
    c.x = p[0]; c.y = p[1]; c.z = p[2];

    if (c.x < -kTol || c.y < -kTol || c.z < -kTol) continue;
    if (c.x >= dims[0] - kTol || c.y >= dims[1] - kTol || c.z >= dims[2] - kTol)
      continue;  // no room left in the growth octant
    bool blocked = false;
    for (const auto& b : placed)
      if (blocks_corner(c, b)) {
        blocked = true;
        break;
      }
    if (blocked) continue;

    bool dup = false;
    for (const auto& e : corners)
      if (corner_eq(e, c)) {
        dup = true;
        break;
      }
    if (!dup) corners.insert(std::upper_bound(corners.begin(), corners.end(), c, corner_less), c);
  }
}

namespace {

enum class BoxGoal { MaxCounts, MinDepthHeight };

struct Extents {
  double d = 0, h = 0, w = 0;
};

Extents extents_of(const std::vector<PlacedBox>& placed) {
  Extents e;
  for (const auto& p : placed) {
    e.d = std::max(e.d, p.z1);
    e.h = std::max(e.h, p.y1);
    e.w = std::max(e.w, p.x1);
  }
  return e;
}

struct Leaf {
  std::vector<int> counts;
  std::vector<PlacedBox> placed;
  Extents ext;
  bool complete = false;
  bool valid = false;
};

// true when a beats b
bool leaf_better(const Leaf& a, const Leaf& b, BoxGoal goal) {
  if (!b.valid) return true;
  if (!a.valid) return false;
  if (goal == BoxGoal::MinDepthHeight) {
    if (a.complete != b.complete) return a.complete;
    if (a.complete) {
      if (a.ext.d != b.ext.d) return a.ext.d < b.ext.d;
      if (a.ext.h != b.ext.h) return a.ext.h < b.ext.h;
      if (a.ext.w != b.ext.w) return a.ext.w < b.ext.w;
      return false;
    }
  }
  return std::lexicographical_compare(b.counts.begin(), b.counts.end(),
                                      a.counts.begin(), a.counts.end());
}

class Search {
 public:
  Search(const std::vector<BoxClass>& classes, double w, double h, double d,
         const BoxPackParams& params, BoxGoal goal)
      : classes_(classes), w_(w), h_(h), d_(d), goal_(goal),
        nodes_(params.node_quota), deadline_(params.deadline) {
    if (params.free_rotation) {
      for (std::uint8_t i = 0; i < 6; ++i) allowed_.push_back(Orientation{i});
    } else {
      allowed_.push_back(Orientation{0});  // whd
      allowed_.push_back(Orientation{5});  // dhw: turn about the vertical axis
    }
    remaining_.reserve(classes.size());
    for (const auto& c : classes) remaining_.push_back(c.count);
    corners_ = initial_corners(w, h, d);
  }

  Leaf run() {
    dfs();
    if (!best_.valid) evaluate_leaf();  // everything empty or nothing ever fit
    return std::move(best_);
  }

 private:
  bool out_of_time() {
    if (!deadline_) return false;
    if ((++ticks_ & 0xFF) != 0) return false;
    return std::chrono::steady_clock::now() >= *deadline_;
  }

  std::optional<CornerChoice> placement_for(std::size_t t,
                                            const std::optional<Orientation>& row_o) {
    --nodes_;
    return best_corner_placement(classes_[t].type, corners_, placed_, w_, h_, d_,
                                 row_o, allowed_);
  }

  void apply(std::size_t t, const CornerChoice& ch) {
    PlacedBox pb = ch.box;
    pb.type_index = static_cast<int>(t);
    placed_.push_back(pb);
    update_corners(corners_, pb, placed_, w_, h_, d_);
    remaining_[t]--;
  }

  void evaluate_leaf() {
    Leaf leaf;
    leaf.valid = true;
    leaf.counts.reserve(classes_.size());
    bool complete = true;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      leaf.counts.push_back(classes_[i].count - remaining_[i]);
      if (remaining_[i] > 0) complete = false;
    }
    leaf.complete = complete;
    leaf.ext = extents_of(placed_);
    if (leaf_better(leaf, best_, goal_)) {
      leaf.placed = placed_;
      best_ = std::move(leaf);
    }
  }

  void dfs() {
    if (aborted_ || out_of_time()) {
      aborted_ = true;
      evaluate_leaf();
      return;
    }

    struct Option {
      std::size_t type;
      double key[3];
      std::uint8_t orient;
      CornerChoice choice;
    };
    std::vector<Option> options;
    const Extents cur = extents_of(placed_);
    for (std::size_t t = 0; t < classes_.size(); ++t) {
      if (remaining_[t] == 0) continue;
      std::size_t first_for_type = options.size();
      for (const auto& o : allowed_) {
        --nodes_;
        auto pb = try_best_for_orientation(t, o, cur);
        if (pb) {
          Option opt;
          opt.type = t;
          opt.key[0] = std::max(cur.d, pb->box.z1);
          opt.key[1] = std::max(cur.h, pb->box.y1);
          opt.key[2] = std::max(cur.w, pb->box.x1);
          opt.orient = o.index;
          opt.choice = *pb;
          options.push_back(std::move(opt));
        }
      }
      std::sort(options.begin() + first_for_type, options.end(),
                [](const Option& a, const Option& b) {
                  if (a.key[0] != b.key[0]) return a.key[0] < b.key[0];
                  if (a.key[1] != b.key[1]) return a.key[1] < b.key[1];
                  if (a.key[2] != b.key[2]) return a.key[2] < b.key[2];
                  return a.orient < b.orient;
                });
    }

    if (options.empty()) {
      evaluate_leaf();
      return;
    }

    bool first = true;
    for (const auto& opt : options) {
      if (!first && nodes_ <= 0) break;  // budget spent: greedy path only
      if (aborted_) break;
      first = false;

      const auto corners_snapshot = corners_;
      const auto placed_size = placed_.size();
      const Orientation o{opt.orient};
      apply(opt.type, opt.choice);
      const double row_y = opt.choice.box.y0;
      const double row_z = opt.choice.box.z0;
      double row_x1 = opt.choice.box.x1;

      // Extend the row: same type, same orientation, flush along the width.
      while (remaining_[opt.type] > 0) {
        auto ch = placement_for(opt.type, o);
        if (!ch) break;
        const PlacedBox& nb = ch->box;
        if (nb.orientation != o) break;
        if (std::abs(nb.y0 - row_y) > kTol || std::abs(nb.z0 - row_z) > kTol ||
            std::abs(nb.x0 - row_x1) > kTol)
          break;  // next row starts here; branch on it instead
        row_x1 = nb.x1;
        apply(opt.type, *ch);
      }

      dfs();

      // undo the whole row
      for (std::size_t i = placed_.size(); i > placed_size; --i)
        remaining_[placed_[i - 1].type_index]++;
      placed_.resize(placed_size);
      corners_ = corners_snapshot;
    }
  }

  std::optional<CornerChoice> try_best_for_orientation(std::size_t t, Orientation o,
                                                       const Extents&) {
    return best_corner_placement(classes_[t].type, corners_, placed_, w_, h_, d_, o,
                                 {o});
  }

  const std::vector<BoxClass>& classes_;
  double w_, h_, d_;
  BoxGoal goal_;
  std::int64_t nodes_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<Orientation> allowed_;
  std::vector<int> remaining_;
  std::vector<PlacedBox> placed_;
  std::vector<Corner> corners_;
  Leaf best_;
  bool aborted_ = false;
  std::uint64_t ticks_ = 0;
};

BoxPackOutcome to_outcome(const Leaf& leaf, const std::vector<BoxClass>& classes) {
  BoxPackOutcome out;
  out.counts_by_type = leaf.counts;
  out.used_depth = leaf.ext.d;
  out.used_height = leaf.ext.h;
  out.complete = leaf.complete;
  for (const auto& pb : leaf.placed) {
    BoxPlacement p;
    p.type = classes[static_cast<std::size_t>(pb.type_index)].type.id;
    p.x = pb.x0;
    p.y = pb.y0;
    p.z = pb.z0;
    p.orientation = pb.orientation;
    out.placements.push_back(std::move(p));
  }
  out.packed_count = static_cast<int>(out.placements.size());
  return out;
}

}  // namespace

BoxPackOutcome pack_B1(const std::vector<BoxClass>& boxes, double w, double h,
                       double d, const BoxPackParams& params) {
  Search s(boxes, w, h, d, params, BoxGoal::MaxCounts);
  return to_outcome(s.run(), boxes);
}

BoxPackOutcome pack_B2(const std::vector<BoxClass>& boxes, double w, double h,
                       double max_depth, const BoxPackParams& params) {
  Search s(boxes, w, h, max_depth, params, BoxGoal::MinDepthHeight);
  return to_outcome(s.run(), boxes);
}

}  // namespace tubepack
