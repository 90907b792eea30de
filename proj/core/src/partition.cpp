#include "tubepack/partition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "tubepack/boxpack.hpp"
#include "tubepack/errors.hpp"

namespace tubepack {
namespace {

constexpr double kGrid = 0.01;

std::int64_t unit_count(const std::vector<TubeClass>& ts) {
  std::int64_t n = 0;
  for (const auto& t : ts) n += t.count;
  return n;
}

std::int64_t unit_count(const std::vector<BoxClass>& bs) {
  std::int64_t n = 0;
  for (const auto& b : bs) n += b.count;
  return n;
}

bool box_fits(const BoxType& b, double w, double h, double d, bool free_rotation) {
  for (const auto& o : orientations_of(b)) {
    if (!free_rotation && o.index != 0 && o.index != 5) continue;
    const auto dims = o.apply(b);
    if (dims[0] <= w + 1e-9 && dims[1] <= h + 1e-9 && dims[2] <= d + 1e-9) return true;
  }
  return false;
}

void drop_empty(std::vector<TubeClass>& ts) {
  ts.erase(std::remove_if(ts.begin(), ts.end(),
                          [](const TubeClass& t) { return t.count <= 0; }),
           ts.end());
}

void drop_empty(std::vector<BoxClass>& bs) {
  bs.erase(std::remove_if(bs.begin(), bs.end(),
                          [](const BoxClass& b) { return b.count <= 0; }),
           bs.end());
}

struct Filler {
  const SolveParams& params;
  Budget& budget;
  std::vector<TubeClass>& tubes;  // pending, canonical order
  std::vector<BoxClass>& boxes;   // pending, canonical order
  PackedContainer& container;
  int next_holder = 1;
  std::uint64_t next_seed;

  std::string fresh_id() { return "H" + std::to_string(next_holder++); }

  // Cheap necessary condition for anything fitting a W x H x D space.
  bool anything_fits(double w, double h, double d) const {
    for (const auto& t : tubes) {
      const double e = effective_ediam(t.type);
      if (e <= w + 1e-9 && e <= h + 1e-9 && t.type.len <= d + 1e-9) return true;
    }
    for (const auto& b : boxes)
      if (box_fits(b.type, w, h, d, params.free_box_rotation)) return true;
    return false;
  }

  void consume_tubes(const std::map<std::string, int>& placed) {
    for (auto& t : tubes) {
      auto it = placed.find(t.type.id);
      if (it != placed.end()) t.count -= it->second;
    }
    drop_empty(tubes);
  }

  // The recursive slicing loop. (y0, z0) is the frame origin inside the
  // container; W x H x D its dimensions.
  void fill(double W, double H, double D, double y0, double z0) {
    double d = 0.0;
    while (true) {
      auto slice = select_slice_length(tubes, D - d);
      if (!slice) {
        fill_with_boxes(W, H, D - d, y0, z0 + d);
        return;
      }
      const double ell = *slice;

      std::vector<TubeClass> top, pool;
      for (const auto& t : tubes) {
        if (t.type.len == ell)
          top.push_back(t);
        else if (t.type.len < ell)
          pool.push_back(t);
      }

      CirclePackParams cp;
      cp.node_quota = split_budget(budget, unit_count(top),
                                   unit_count(tubes) + unit_count(boxes));
      cp.seed = next_seed;
      next_seed += 1'000'003;  // restarts advance seeds by one; keep calls apart
      cp.noise = params.noise;
      cp.clearance = params.clearance;
      cp.grid = kGrid;
      cp.threads = params.threads;
      if (params.wallclock && budget.deadline) cp.deadline = budget.deadline;

      CrossSection cs{W, H};
      PackOutcome outcome = pack_T2(top, pool, cs, cp);

      const double a = outcome.complete ? ceil2(outcome.used_height) : H;
      if (!outcome.rings.empty()) {
        Holder holder;
        holder.id = fresh_id();
        holder.kind = HolderKind::Tubes;
        holder.x = 0.0;
        holder.y = y0;
        holder.z = z0 + d;
        holder.w = W;
        holder.h = a;
        holder.d = ell;
        holder.rings = std::move(outcome.rings);
        container.holders.push_back(std::move(holder));
        consume_tubes(outcome.placed_by_id);
      }

      if (H - a > 1e-9 && anything_fits(W, H - a, ell))
        fill(W, H - a, ell, y0 + a, z0 + d);

      d += ell;
      if (D - d <= 1e-9) {
        // no depth left; boxes would get a zero-depth holder
        return;
      }
    }
  }

  void fill_with_boxes(double W, double H, double D, double y0, double z0) {
    if (D <= 1e-9) return;
    std::vector<BoxClass> eligible;
    for (const auto& b : boxes) {
      const double min_side = std::min({b.type.width, b.type.height, b.type.depth});
      if (min_side <= D + 1e-9) eligible.push_back(b);
    }
    if (eligible.empty()) return;

    const std::int64_t grant = split_budget(
        budget, unit_count(eligible), unit_count(tubes) + unit_count(boxes));

    BoxPackParams bp;
    bp.seed = next_seed;
    next_seed += 1'000'003;
    bp.free_rotation = params.free_box_rotation;
    if (params.wallclock && budget.deadline) bp.deadline = budget.deadline;

    // Probe with a slice of the grant; when it fits everything, spend the
    // rest minimizing depth then height.
    bp.node_quota = std::min(grant / 2, std::max<std::int64_t>(
                                            Budget::kMinQuantum,
                                            40 * unit_count(eligible)));
    BoxPackOutcome probe = pack_B1(eligible, W, H, D, bp);

    bp.node_quota = grant - bp.node_quota;
    BoxPackOutcome outcome =
        probe.complete ? pack_B2(eligible, W, H, D, bp) : pack_B1(eligible, W, H, D, bp);

    if (outcome.placements.empty()) return;

    Holder holder;
    holder.id = fresh_id();
    holder.kind = HolderKind::Boxes;
    holder.x = 0.0;
    holder.y = y0;
    holder.z = z0;
    holder.w = W;
    holder.h = H;
    holder.d = D;
    holder.boxes = std::move(outcome.placements);
    container.holders.push_back(std::move(holder));

    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (outcome.counts_by_type[i] == 0) continue;
      for (auto& b : boxes)
        if (b.type.id == eligible[i].type.id) b.count -= outcome.counts_by_type[i];
    }
    drop_empty(boxes);
  }
};

double cylinder_volume(const TubeType& t) {
  const double r = t.ediam / 2.0;
  return std::numbers::pi * r * r * t.len;
}

}  // namespace

std::optional<double> select_slice_length(const std::vector<TubeClass>& pending,
                                          double remaining_depth) {
  std::optional<double> best;
  for (const auto& t : pending) {
    if (t.count <= 0) continue;
    if (t.type.len > remaining_depth + 1e-9) continue;
    if (!best || t.type.len > *best) best = t.type.len;
  }
  return best;
}

Solution solve(const InstanceDoc& instance, const SolveParams& params) {
  const auto t_start = std::chrono::steady_clock::now();
  const ContainerSpec& cs = instance.container;

  // Every item must fit an empty container, or no partition terminates.
  for (const auto& t : instance.tubes) {
    if (t.count <= 0) continue;
    const double e = effective_ediam(t);
    if (e > cs.width + 1e-9 || e > cs.height + 1e-9 || t.len > cs.depth + 1e-9)
      throw Unpackable("tube '" + t.id + "' fits in no empty container");
  }
  for (const auto& b : instance.boxes) {
    if (b.count <= 0) continue;
    if (!box_fits(b, cs.width, cs.height, cs.depth, params.free_box_rotation))
      throw Unpackable("box '" + b.id + "' fits in no empty container");
  }

  std::vector<TubeClass> tubes;
  for (const auto& t : canonical_tube_order(instance.tubes))
    if (t.count > 0) tubes.push_back({t, t.count});
  std::vector<BoxClass> boxes;
  for (const auto& b : canonical_box_order(instance.boxes))
    if (b.count > 0) boxes.push_back({b, b.count});

  Budget budget = Budget::from_seconds(params.time_limit_sec);
  if (params.wallclock)
    budget.deadline = t_start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(params.time_limit_sec));

  Solution sol;
  while (!tubes.empty() || !boxes.empty()) {
    PackedContainer container;
    Filler filler{params, budget, tubes, boxes, container, 1,
                  params.seed + 7'919 * (sol.containers.size() + 1)};
    const std::int64_t before = unit_count(tubes) + unit_count(boxes);
    filler.fill(cs.width, cs.height, cs.depth, 0.0, 0.0);
    const std::int64_t after = unit_count(tubes) + unit_count(boxes);
    if (after >= before) {
      // Progress is guaranteed by the preflight check; failing here means the
      // partition lost items, which is a bug, not bad data.
      throw std::logic_error("container packed no item");
    }
    sol.containers.push_back(std::move(container));
  }

  // Metrics: packed item volume (tube bodies as full outer cylinders,
  // telescoped ones included) against the container volume.
  std::map<std::string, const TubeType*> tube_types;
  for (const auto& t : instance.tubes) tube_types[t.id] = &t;
  std::map<std::string, const BoxType*> box_types;
  for (const auto& b : instance.boxes) box_types[b.id] = &b;
  const double cont_vol = cs.width * cs.height * cs.depth;
  for (const auto& c : sol.containers) {
    double vol = 0.0;
    for (const auto& h : c.holders) {
      std::function<void(const RingPlacement&)> walk = [&](const RingPlacement& r) {
        vol += cylinder_volume(*tube_types.at(r.type));
        for (const auto& ch : r.children) walk(ch);
      };
      for (const auto& r : h.rings) walk(r);
      for (const auto& b : h.boxes) vol += box_types.at(b.type)->volume();
    }
    sol.metrics.fill_ratio.push_back(vol / cont_vol);
  }
  sol.metrics.containers_used = static_cast<int>(sol.containers.size());
  sol.metrics.extra_value = 0.0;
  sol.metrics.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return sol;
}

}  // namespace tubepack
