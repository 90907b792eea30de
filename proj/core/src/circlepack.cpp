#include "tubepack/circlepack.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <queue>
#include <random>
#include <thread>
#include <unordered_map>

namespace tubepack {
namespace {

constexpr double kTol = 1e-6;
constexpr std::int64_t kMaxRestarts = 20'000;

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool in_bounds(double x, double y, double r, const CrossSection& cs) {
  return x >= r - kTol && x <= cs.width - r + kTol && y >= r - kTol &&
         y <= cs.height_cap - r + kTol;
}

void corner_candidates(double r, const CrossSection& cs, std::vector<Point2>& out) {
  out.push_back({r, r});
  out.push_back({cs.width - r, r});
  out.push_back({r, cs.height_cap - r});
  out.push_back({cs.width - r, cs.height_cap - r});
}

void wall_circle_candidates(double r, const CrossSection& cs, const Circle& c,
                            std::vector<Point2>& out) {
  const double rr = r + c.r;
  for (double y : {r, cs.height_cap - r}) {  // resting on floor / under ceiling
    const double dy = c.y - y;
    const double dx2 = rr * rr - dy * dy;
    if (dx2 >= 0.0) {
      const double dx = std::sqrt(dx2);
      out.push_back({c.x - dx, y});
      out.push_back({c.x + dx, y});
    }
  }
  for (double x : {r, cs.width - r}) {  // against left / right wall
    const double dx = c.x - x;
    const double dy2 = rr * rr - dx * dx;
    if (dy2 >= 0.0) {
      const double dy = std::sqrt(dy2);
      out.push_back({x, c.y - dy});
      out.push_back({x, c.y + dy});
    }
  }
}

void pair_candidates(double r, const Circle& a, const Circle& b,
                     std::vector<Point2>& out) {
  const double r1 = a.r + r, r2 = b.r + r;
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double d2 = dx * dx + dy * dy;
  if (d2 <= 0.0) return;
  const double d = std::sqrt(d2);
  if (d > r1 + r2) return;
  const double t = (d2 + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h2 = r1 * r1 - t * t;
  if (h2 < 0.0) return;
  const double h = std::sqrt(h2);
  const double ux = dx / d, uy = dy / d;
  const double bx = a.x + t * ux, by = a.y + t * uy;
  out.push_back({bx - h * uy, by + h * ux});
  out.push_back({bx + h * uy, by - h * ux});
}

// Uniform hash grid over circle centres. Buckets may alias; every visitor
// re-checks distances, so aliasing only costs time.
class CircleGrid {
 public:
  explicit CircleGrid(double cell) : cell_(std::max(cell, 1.0)) {}

  void insert(const Circle& c, int idx) { buckets_[key(c.x, c.y)].push_back(idx); }

  template <class F>
  void for_near(double x, double y, double radius, F&& f) const {
    const long long x0 = cellof(x - radius), x1 = cellof(x + radius);
    const long long y0 = cellof(y - radius), y1 = cellof(y + radius);
    for (long long cy = y0; cy <= y1; ++cy)
      for (long long cx = x0; cx <= x1; ++cx) {
        auto it = buckets_.find(mix(cx, cy));
        if (it == buckets_.end()) continue;
        for (int i : it->second) f(i);
      }
  }

 private:
  long long cellof(double v) const {
    return static_cast<long long>(std::floor(v / cell_));
  }
  static long long mix(long long cx, long long cy) {
    return cx * 73856093LL ^ cy * 19349663LL;
  }
  long long key(double x, double y) const { return mix(cellof(x), cellof(y)); }

  double cell_;
  std::unordered_map<long long, std::vector<int>> buckets_;
};

struct CandMinHeapCmp {
  bool operator()(const Point2& a, const Point2& b) const {
    if (a.y != b.y) return a.y > b.y;  // smallest (y, x) on top
    return a.x > b.x;
  }
};

// Incremental bottom-left construction state. Candidates live in a
// lazy-deletion min-heap keyed by (y, x); every pop is re-validated against
// the circles placed since the candidate was generated.
class Builder {
 public:
  Builder(const CrossSection& cs, double rmax, double grid_snap)
      : cs_(cs), rmax_(rmax), grid_snap_(grid_snap), grid_(2.0 * std::max(rmax, 1.0)) {}

  const std::vector<Circle>& circles() const { return circles_; }
  const std::vector<int>& owners() const { return owners_; }

  bool admissible(double x, double y, double r) const {
    if (!in_bounds(x, y, r, cs_)) return false;
    bool ok = true;
    grid_.for_near(x, y, r + rmax_ + 1.0, [&](int i) {
      if (!ok) return;
      const Circle& c = circles_[i];
      const double dx = x - c.x, dy = y - c.y;
      const double need = r + c.r - kTol;
      if (need > 0.0 && dx * dx + dy * dy < need * need) ok = false;
    });
    return ok;
  }

  // Places one circle of radius r for type slot `owner`; returns false when no
  // candidate admits it.
  bool place_one(double r, int owner, std::mt19937_64& rng, double noise) {
    ensure_heap(r);
    while (true) {
      std::vector<Point2> picks;
      const bool noisy = noise > 0.0 && u01(rng) < noise;
      const std::size_t want = noisy ? 3 : 1;
      while (picks.size() < want) {
        auto p = pop_valid(r);
        if (!p) break;
        bool dup = false;
        for (const auto& q : picks)
          if (q.x == p->x && q.y == p->y) dup = true;
        if (!dup) picks.push_back(*p);
      }
      if (picks.empty()) return false;
      const std::size_t chosen =
          noisy ? static_cast<std::size_t>(rng() % picks.size()) : 0;
      const auto snap = snapped(picks[chosen], r);
      for (std::size_t i = 0; i < picks.size(); ++i)
        if (i != chosen) heap_.push(picks[i]);
      if (!snap) continue;  // unusable after snapping; candidate is spent
      commit({snap->x, snap->y, r}, owner);
      return true;
    }
  }

 private:
  void commit(const Circle& c, int owner) {
    circles_.push_back(c);
    owners_.push_back(owner);
    grid_.insert(c, static_cast<int>(circles_.size()) - 1);
    if (heap_r_ >= 0.0) feed_from_circle(heap_r_, static_cast<int>(circles_.size()) - 1);
  }

  void ensure_heap(double r) {
    if (heap_r_ == r) return;
    heap_ = {};
    heap_r_ = r;
    std::vector<Point2> raw;
    corner_candidates(r, cs_, raw);
    for (const auto& p : raw) heap_.push(p);
    for (int i = 0; i < static_cast<int>(circles_.size()); ++i) feed_from_circle(r, i);
  }

  // Candidates involving circle i and anything placed before it.
  void feed_from_circle(double r, int i) {
    std::vector<Point2> raw;
    const Circle& c = circles_[i];
    wall_circle_candidates(r, cs_, c, raw);
    grid_.for_near(c.x, c.y, c.r + rmax_ + 2.0 * r + 1.0, [&](int j) {
      if (j >= i) return;
      pair_candidates(r, circles_[j], c, raw);
    });
    for (const auto& p : raw) heap_.push(p);
  }

  std::optional<Point2> pop_valid(double r) {
    while (!heap_.empty()) {
      Point2 p = heap_.top();
      heap_.pop();
      if (admissible(p.x, p.y, r)) return p;
    }
    return std::nullopt;
  }

  // Nearest grid point first, then the three remaining floor/ceil mixes.
  std::optional<Point2> snapped(const Point2& p, double r) const {
    if (grid_snap_ <= 0.0) return p;
    const double rx0 = round2(p.x), ry0 = round2(p.y);
    const double rx1 = round2(rx0 >= p.x ? rx0 - grid_snap_ : rx0 + grid_snap_);
    const double ry1 = round2(ry0 >= p.y ? ry0 - grid_snap_ : ry0 + grid_snap_);
    const Point2 tries[4] = {{rx0, ry0}, {rx0, ry1}, {rx1, ry0}, {rx1, ry1}};
    for (const auto& t : tries)
      if (admissible(t.x, t.y, r)) return t;
    return std::nullopt;
  }

  const CrossSection& cs_;
  double rmax_;
  double grid_snap_;
  CircleGrid grid_;
  std::vector<Circle> circles_;
  std::vector<int> owners_;
  std::priority_queue<Point2, std::vector<Point2>, CandMinHeapCmp> heap_;
  double heap_r_ = -1.0;
};

struct TypeKey {
  double eff;
  double len;
  const std::string* id;
};

bool type_before(const TypeKey& a, const TypeKey& b) {
  if (a.eff != b.eff) return a.eff > b.eff;
  if (a.len != b.len) return a.len > b.len;
  return *a.id < *b.id;
}

std::vector<int> count_units(const std::vector<TubeClass>& cs) {
  std::vector<int> n;
  n.reserve(cs.size());
  for (const auto& c : cs) n.push_back(c.count);
  return n;
}

std::int64_t total_units(const std::vector<TubeClass>& a, const std::vector<TubeClass>& b) {
  std::int64_t n = 0;
  for (const auto& c : a) n += c.count;
  for (const auto& c : b) n += c.count;
  return n;
}

}  // namespace

std::vector<Point2> tangency_candidates(double r, const std::vector<Circle>& placed,
                                        const CrossSection& cs) {
  std::vector<Point2> raw;
  corner_candidates(r, cs, raw);
  for (const auto& c : placed) wall_circle_candidates(r, cs, c, raw);
  for (std::size_t i = 0; i < placed.size(); ++i)
    for (std::size_t j = i + 1; j < placed.size(); ++j)
      pair_candidates(r, placed[i], placed[j], raw);

  std::vector<Point2> out;
  for (const auto& p : raw) {
    if (!in_bounds(p.x, p.y, r, cs)) continue;
    bool ok = true;
    for (const auto& c : placed) {
      const double dx = p.x - c.x, dy = p.y - c.y;
      const double need = r + c.r - kTol;
      if (need > 0.0 && dx * dx + dy * dy < need * need) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Point2& a, const Point2& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  return out;
}

void telescope_fill(std::vector<RingPlacement>& hosts, std::vector<TubeClass>& pool,
                    const std::vector<TubeType>& catalog, double clearance,
                    double grid) {
  std::unordered_map<std::string, const TubeType*> types;
  for (const auto& t : catalog) types.emplace(t.id, &t);

  std::vector<RingPlacement*> level;
  level.reserve(hosts.size());
  for (auto& h : hosts) level.push_back(&h);

  while (!level.empty()) {
    std::stable_sort(level.begin(), level.end(),
                     [&](const RingPlacement* a, const RingPlacement* b) {
                       return types.at(a->type)->idiam > types.at(b->type)->idiam;
                     });
    std::vector<RingPlacement*> next;
    for (RingPlacement* host : level) {
      const TubeType& ht = *types.at(host->type);
      const std::size_t pre = host->children.size();
      double consumed = 0.0;
      for (const auto& c : host->children) consumed += types.at(c.type)->len;
      while (true) {
        int pick = -1;
        for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
          if (pool[i].count <= 0) continue;
          const TubeType& pt = pool[i].type;
          if (effective_ediam(pt) > ht.idiam - clearance + 1e-9) continue;
          if (pt.len > ht.len - consumed + 1e-9) continue;
          if (pick < 0) {
            pick = i;
            continue;
          }
          const TubeType& cur = pool[pick].type;
          const TypeKey ka{effective_ediam(pt), pt.len, &pt.id};
          const TypeKey kb{effective_ediam(cur), cur.len, &cur.id};
          if (type_before(ka, kb)) pick = i;
        }
        if (pick < 0) break;
        const TubeType& pt = pool[pick].type;
        double off = ht.idiam / 2.0 - effective_ediam(pt) / 2.0;
        if (grid > 0.0) off = floor2(off);
        RingPlacement child;
        child.type = pt.id;
        child.x = host->x;
        child.y = host->y - off;  // resting at the bottom of the host bore
        child.z = host->z + consumed;
        consumed += pt.len;
        host->children.push_back(std::move(child));
        pool[pick].count--;
      }
      for (std::size_t i = pre; i < host->children.size(); ++i)
        next.push_back(&host->children[i]);
    }
    level = std::move(next);
  }

  pool.erase(std::remove_if(pool.begin(), pool.end(),
                            [](const TubeClass& c) { return c.count <= 0; }),
             pool.end());
}

PackOutcome greedy_construct(const std::vector<TubeClass>& tubes,
                             const std::vector<TubeClass>& pool,
                             const CrossSection& cs, std::uint64_t rng_seed,
                             double noise, double clearance, double grid) {
  // Type axis over everything involved, by decreasing effective diameter.
  std::vector<TubeType> catalog;
  for (const auto& c : tubes) catalog.push_back(c.type);
  for (const auto& c : pool) catalog.push_back(c.type);
  std::vector<std::size_t> axis_idx(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) axis_idx[i] = i;
  std::stable_sort(axis_idx.begin(), axis_idx.end(), [&](std::size_t a, std::size_t b) {
    const TypeKey ka{effective_ediam(catalog[a]), catalog[a].len, &catalog[a].id};
    const TypeKey kb{effective_ediam(catalog[b]), catalog[b].len, &catalog[b].id};
    return type_before(ka, kb);
  });

  PackOutcome out;
  for (std::size_t i : axis_idx) {
    if (std::find(out.type_axis.begin(), out.type_axis.end(), catalog[i].id) ==
        out.type_axis.end())
      out.type_axis.push_back(catalog[i].id);
  }

  double rmax = 0.0;
  for (const auto& t : catalog) rmax = std::max(rmax, effective_ediam(t) / 2.0);

  Builder builder(cs, rmax, grid);
  std::mt19937_64 rng(rng_seed);

  // Top-level greedy, decreasing diameter.
  std::vector<std::size_t> top_order;
  for (std::size_t i = 0; i < tubes.size(); ++i) top_order.push_back(i);
  std::stable_sort(top_order.begin(), top_order.end(), [&](std::size_t a, std::size_t b) {
    const TubeType &ta = tubes[a].type, &tb = tubes[b].type;
    const TypeKey ka{effective_ediam(ta), ta.len, &ta.id};
    const TypeKey kb{effective_ediam(tb), tb.len, &tb.id};
    return type_before(ka, kb);
  });

  std::vector<int> leftovers = count_units(tubes);
  for (std::size_t idx : top_order) {
    const TubeType& t = tubes[idx].type;
    const double r = effective_ediam(t) / 2.0;
    while (leftovers[idx] > 0) {
      if (!builder.place_one(r, static_cast<int>(idx), rng, noise)) break;
      leftovers[idx]--;
    }
  }

  // Materialize top-level rings in placement order.
  for (std::size_t i = 0; i < builder.circles().size(); ++i) {
    const Circle& c = builder.circles()[i];
    RingPlacement ring;
    ring.type = tubes[static_cast<std::size_t>(builder.owners()[i])].type.id;
    ring.x = c.x;
    ring.y = c.y;
    ring.z = 0.0;
    out.rings.push_back(std::move(ring));
    out.used_height = std::max(out.used_height, c.y + c.r);
  }

  // Telescope pool tubes plus whatever did not fit at the top level.
  std::vector<TubeClass> work_pool = pool;
  for (std::size_t i = 0; i < tubes.size(); ++i)
    if (leftovers[i] > 0) work_pool.push_back({tubes[i].type, leftovers[i]});
  telescope_fill(out.rings, work_pool, catalog, clearance, grid);

  std::function<void(const RingPlacement&)> tally = [&](const RingPlacement& r) {
    out.placed_by_id[r.type]++;
    for (const auto& c : r.children) tally(c);
  };
  for (const auto& r : out.rings) tally(r);

  for (const auto& id : out.type_axis) {
    auto it = out.placed_by_id.find(id);
    out.counts_by_type.push_back(it == out.placed_by_id.end() ? 0 : it->second);
  }

  std::int64_t want = 0, got = 0;
  for (const auto& c : tubes) want += c.count;
  for (const auto& c : tubes) {
    auto it = out.placed_by_id.find(c.type.id);
    if (it != out.placed_by_id.end()) got += it->second;
  }
  // A type id must not appear in both `tubes` and `pool`; top leftovers are the
  // only pool entries sharing ids, and those are top units by definition.
  out.complete = got >= want;
  return out;
}

namespace {

enum class Goal { MaxCounts, MinHeight };

// true when `a` beats `b`
bool outcome_better(const PackOutcome& a, const PackOutcome& b, Goal goal) {
  if (goal == Goal::MinHeight) {
    if (a.complete != b.complete) return a.complete;
    if (a.complete && b.complete) {
      if (a.used_height != b.used_height) return a.used_height < b.used_height;
      return false;
    }
  }
  return std::lexicographical_compare(b.counts_by_type.begin(), b.counts_by_type.end(),
                                      a.counts_by_type.begin(), a.counts_by_type.end());
}

PackOutcome run_restarts(const std::vector<TubeClass>& tubes,
                         const std::vector<TubeClass>& pool, const CrossSection& cs,
                         const CirclePackParams& params, Goal goal) {
  const std::int64_t cost = std::max<std::int64_t>(total_units(tubes, pool), 1);
  std::int64_t restarts = std::max<std::int64_t>(params.min_restarts,
                                                 params.node_quota / cost);
  restarts = std::clamp<std::int64_t>(restarts, 1, kMaxRestarts);

  const int threads = static_cast<int>(
      std::clamp<std::int64_t>(params.threads, 1, restarts));

  struct Best {
    PackOutcome outcome;
    std::int64_t index = -1;
  };
  std::vector<Best> best(threads);

  auto work = [&](int t) {
    for (std::int64_t i = t; i < restarts; i += threads) {
      if (params.deadline && best[t].index >= 0 &&
          std::chrono::steady_clock::now() >= *params.deadline)
        break;
      const double noise = (i == 0) ? 0.0 : params.noise;
      PackOutcome o = greedy_construct(tubes, pool, cs, params.seed + i, noise,
                                       params.clearance, params.grid);
      if (best[t].index < 0 || outcome_better(o, best[t].outcome, goal))
        best[t] = {std::move(o), i};
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> ws;
    ws.reserve(threads);
    for (int t = 0; t < threads; ++t) ws.emplace_back(work, t);
    for (auto& w : ws) w.join();
  }

  int pick = 0;
  for (int t = 1; t < threads; ++t) {
    if (best[t].index < 0) continue;
    if (best[pick].index < 0 || outcome_better(best[t].outcome, best[pick].outcome, goal) ||
        (!outcome_better(best[pick].outcome, best[t].outcome, goal) &&
         best[t].index < best[pick].index))
      pick = t;
  }
  return best[pick].outcome;
}

}  // namespace

PackOutcome pack_T1(const std::vector<TubeClass>& tubes,
                    const std::vector<TubeClass>& pool, const CrossSection& cs,
                    const CirclePackParams& params) {
  return run_restarts(tubes, pool, cs, params, Goal::MaxCounts);
}

PackOutcome pack_T2(const std::vector<TubeClass>& tubes,
                    const std::vector<TubeClass>& pool, const CrossSection& cs,
                    const CirclePackParams& params) {
  return run_restarts(tubes, pool, cs, params, Goal::MinHeight);
}

}  // namespace tubepack
