// Brute-force reference implementations used only by tests. They share the
// documented geometry rules with the library but none of its code paths.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

constexpr double kTol = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- circles --

struct Circ {
  double x, y, r;
};

struct Pt {
  double x, y;
};

inline std::vector<Pt> circle_candidates(double r, const std::vector<Circ>& placed,
                                         double width, double cap) {
  std::vector<Pt> pts;
  auto add = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    if (x < r - kTol || x > width - r + kTol || y < r - kTol || y > cap - r + kTol)
      return;
    for (const auto& c : placed)
      if (std::hypot(x - c.x, y - c.y) < r + c.r - kTol) return;
    pts.push_back({x, y});
  };
  add(r, r);
  add(width - r, r);
  add(r, cap - r);
  add(width - r, cap - r);
  for (const auto& c : placed) {
    const double rr = r + c.r;
    for (double y : {r, cap - r}) {
      const double q = rr * rr - (c.y - y) * (c.y - y);
      if (q >= 0) {
        add(c.x - std::sqrt(q), y);
        add(c.x + std::sqrt(q), y);
      }
    }
    for (double x : {r, width - r}) {
      const double q = rr * rr - (c.x - x) * (c.x - x);
      if (q >= 0) {
        add(x, c.y - std::sqrt(q));
        add(x, c.y + std::sqrt(q));
      }
    }
  }
  for (std::size_t i = 0; i < placed.size(); ++i) {
    for (std::size_t j = i + 1; j < placed.size(); ++j) {
      const Circ &a = placed[i], &b = placed[j];
      const double r1 = a.r + r, r2 = b.r + r;
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double d = std::hypot(dx, dy);
      if (d <= 0 || d > r1 + r2) continue;
      const double t = (d * d + r1 * r1 - r2 * r2) / (2 * d);
      const double h2 = r1 * r1 - t * t;
      if (h2 < 0) continue;
      const double h = std::sqrt(h2);
      const double ux = dx / d, uy = dy / d;
      add(a.x + t * ux - h * uy, a.y + t * uy + h * ux);
      add(a.x + t * ux + h * uy, a.y + t * uy - h * ux);
    }
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt& a, const Pt& b) {
                          return std::abs(a.x - b.x) < 1e-7 && std::abs(a.y - b.y) < 1e-7;
                        }),
            pts.end());
  return pts;
}

inline void min_height_dfs(std::vector<Circ>& placed, std::map<double, int>& remaining,
                           double width, double cap, double& best) {
  double h = 0;
  bool done = true;
  for (const auto& [r, n] : remaining)
    if (n > 0) done = false;
  for (const auto& c : placed) h = std::max(h, c.y + c.r);
  if (done) {
    best = std::min(best, h);
    return;
  }
  if (h >= best - 1e-9) return;
  for (auto& [r, n] : remaining) {
    if (n <= 0) continue;
    const auto cands = circle_candidates(r, placed, width, cap);
    n--;
    for (const auto& p : cands) {
      if (p.y + r >= best - 1e-9) break;  // sorted by y: nothing lower follows
      placed.push_back({p.x, p.y, r});
      min_height_dfs(placed, remaining, width, cap, best);
      placed.pop_back();
    }
    n++;
  }
}

// Exact minimum packing height over every placement order and candidate
// choice; +inf when the set cannot be placed completely.
inline double exact_min_height(const std::vector<double>& radii, double width,
                               double cap) {
  std::map<double, int> remaining;
  for (double r : radii) remaining[r]++;
  std::vector<Circ> placed;
  double best = kInf;
  min_height_dfs(placed, remaining, width, cap, best);
  return best;
}

// Maximum number of circles of one radius that fit, by the same enumeration.
inline int exact_max_count(double r, int available, double width, double cap) {
  // place greedily over every branch, tracking the best count
  struct Ctx {
    double width, cap, r;
    int best = 0;
  } ctx{width, cap, r, 0};
  std::vector<Circ> placed;
  std::vector<Pt> seen;
  std::function<void(void)> dfs = [&]() {
    ctx.best = std::max(ctx.best, static_cast<int>(placed.size()));
    if (static_cast<int>(placed.size()) == available) return;
    for (const auto& p : circle_candidates(ctx.r, placed, ctx.width, ctx.cap)) {
      placed.push_back({p.x, p.y, ctx.r});
      dfs();
      placed.pop_back();
    }
  };
  dfs();
  return ctx.best;
}

// ------------------------------------------------------------------ boxes --

struct OBox {
  double x0, y0, z0, x1, y1, z1;
  int type = 0;
};

struct OCorner {
  double x, y, z;
};

inline bool obox_overlap(const OBox& a, const OBox& b) {
  return a.x0 < b.x1 - kTol && b.x0 < a.x1 - kTol && a.y0 < b.y1 - kTol &&
         b.y0 < a.y1 - kTol && a.z0 < b.z1 - kTol && b.z0 < a.z1 - kTol;
}

inline double ospan(double a0, double a1, double b0, double b1) {
  return std::min(a1, b1) - std::max(a0, b0);
}

inline bool osupported(const OBox& b, const std::vector<OBox>& placed) {
  bool sx = b.x0 <= kTol, sy = b.y0 <= kTol, sz = b.z0 <= kTol;
  for (const auto& p : placed) {
    if (std::abs(p.x1 - b.x0) <= kTol && ospan(b.y0, b.y1, p.y0, p.y1) > kTol &&
        ospan(b.z0, b.z1, p.z0, p.z1) > kTol)
      sx = true;
    if (std::abs(p.y1 - b.y0) <= kTol && ospan(b.x0, b.x1, p.x0, p.x1) > kTol &&
        ospan(b.z0, b.z1, p.z0, p.z1) > kTol)
      sy = true;
    if (std::abs(p.z1 - b.z0) <= kTol && ospan(b.x0, b.x1, p.x0, p.x1) > kTol &&
        ospan(b.y0, b.y1, p.y0, p.y1) > kTol)
      sz = true;
  }
  return sx && sy && sz;
}

inline bool oblocked(const OCorner& c, const OBox& b) {
  return b.x0 <= c.x + kTol && b.x1 >= c.x + kTol && b.y0 <= c.y + kTol &&
         b.y1 >= c.y + kTol && b.z0 <= c.z + kTol && b.z1 >= c.z + kTol;
}

inline std::vector<OCorner> ocorners_after(const std::vector<OCorner>& corners,
                                           const OBox& nb,
                                           const std::vector<OBox>& placed, double W,
                                           double H, double D) {
  std::vector<OCorner> out;
  for (const auto& c : corners)
    if (!oblocked(c, nb)) out.push_back(c);

  const OCorner fresh[3] = {{nb.x1, nb.y0, nb.z0}, {nb.x0, nb.y1, nb.z0},
                            {nb.x0, nb.y0, nb.z1}};
  for (OCorner c : fresh) {
    double p[3] = {c.x, c.y, c.z};
    for (int k = 0; k < 3; ++k) {
      double support = 0;
      for (const auto& b : placed) {
        const double lo[3] = {b.x0, b.y0, b.z0}, hi[3] = {b.x1, b.y1, b.z1};
        if (hi[k] > p[k] + kTol) continue;
        bool covers = true;
        for (int m = 0; m < 3; ++m)
          if (m != k && (p[m] < lo[m] - kTol || p[m] > hi[m] + kTol)) covers = false;
        if (covers) support = std::max(support, hi[k]);
      }
      p[k] = std::min(p[k], std::max(support, 0.0));
    }
    c = {p[0], p[1], p[2]};
    if (c.x >= W - kTol || c.y >= H - kTol || c.z >= D - kTol) continue;
    bool blocked = false;
    for (const auto& b : placed)
      if (oblocked(c, b)) blocked = true;
    if (blocked) continue;
    bool dup = false;
    for (const auto& e : out)
      if (std::abs(e.x - c.x) < 1e-9 && std::abs(e.y - c.y) < 1e-9 &&
          std::abs(e.z - c.z) < 1e-9)
        dup = true;
    if (!dup) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const OCorner& a, const OCorner& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  return out;
}

struct BoxOracleResult {
  std::vector<int> best_counts;       // lexicographic max, class order
  double depth = kInf, height = kInf;  // over complete packings
  bool complete_found = false;
};

// Exhaustive reference for pack_B1 / pack_B2 on small inputs.
inline BoxOracleResult box_oracle(const std::vector<std::array<double, 3>>& types,
                                  const std::vector<int>& counts, double W, double H,
                                  double D) {
  std::vector<std::array<std::array<double, 3>, 6>> dims(types.size());
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                               {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (std::size_t t = 0; t < types.size(); ++t)
    for (int o = 0; o < 6; ++o)
      dims[t][o] = {types[t][perms[o][0]], types[t][perms[o][1]], types[t][perms[o][2]]};

  BoxOracleResult res;
  res.best_counts.assign(types.size(), 0);

  std::vector<int> remaining = counts;
  std::vector<OBox> placed;
  std::vector<OCorner> corners = {{0, 0, 0}};

  std::function<void(const std::vector<OCorner>&)> dfs =
      [&](const std::vector<OCorner>& cs) {
        bool extended = false;
        for (std::size_t t = 0; t < dims.size(); ++t) {
          if (remaining[t] <= 0) continue;
          std::set<std::array<double, 3>> tried;
          for (const auto& d3 : dims[t]) {
            if (!tried.insert(d3).second) continue;
            for (const auto& c : cs) {
              OBox nb{c.x, c.y, c.z, c.x + d3[0], c.y + d3[1], c.z + d3[2],
                      static_cast<int>(t)};
              if (nb.x1 > W + kTol || nb.y1 > H + kTol || nb.z1 > D + kTol) continue;
              bool bad = false;
              for (const auto& p : placed)
                if (obox_overlap(nb, p)) bad = true;
              if (bad || !osupported(nb, placed)) continue;
              extended = true;
              placed.push_back(nb);
              remaining[t]--;
              dfs(ocorners_after(cs, nb, placed, W, H, D));
              remaining[t]++;
              placed.pop_back();
            }
          }
        }
        if (extended) return;

        std::vector<int> got(dims.size());
        bool complete = true;
        for (std::size_t t = 0; t < dims.size(); ++t) {
          got[t] = counts[t] - remaining[t];
          complete = complete && remaining[t] == 0;
        }
        if (std::lexicographical_compare(res.best_counts.begin(), res.best_counts.end(),
                                         got.begin(), got.end()))
          res.best_counts = got;
        if (complete) {
          double d = 0, h = 0;
          for (const auto& p : placed) {
            d = std::max(d, p.z1);
            h = std::max(h, p.y1);
          }
          if (!res.complete_found || d < res.depth - kTol ||
              (std::abs(d - res.depth) <= kTol && h < res.height - kTol)) {
            res.depth = d;
            res.height = h;
          }
          res.complete_found = true;
        }
      };
  dfs(corners);
  return res;
}

}  // namespace oracle
