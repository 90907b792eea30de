#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tubepack/circlepack.hpp"

using namespace tubepack;

namespace {

TubeType plain_tube(const std::string& id, double ediam, double len,
                    double idiam = -1.0) {
  TubeType t;
  t.id = id;
  t.ediam = ediam;
  t.idiam = idiam >= 0 ? idiam : ediam * 0.8;
  t.len = len;
  return t;
}

bool contains_point(const std::vector<Point2>& pts, double x, double y,
                    double tol = 1e-6) {
  for (const auto& p : pts)
    if (std::abs(p.x - x) <= tol && std::abs(p.y - y) <= tol) return true;
  return false;
}

void flatten(const RingPlacement& r, std::vector<const RingPlacement*>& out) {
  out.push_back(&r);
  for (const auto& c : r.children) flatten(c, out);
}

}  // namespace

TEST_SUITE_BEGIN("circlepack");

TEST_CASE("wall-floor corners are candidates in an empty section") {
  const auto pts = tangency_candidates(100.0, {}, {1000.0, 5000.0});
  CHECK(contains_point(pts, 100.0, 100.0));
  CHECK(contains_point(pts, 900.0, 100.0));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const bool ordered = pts[i - 1].y < pts[i].y ||
                         (pts[i - 1].y == pts[i].y && pts[i - 1].x <= pts[i].x);
    CHECK(ordered);
  }
}

TEST_CASE("candidate tangent to two placed circles") {
  const std::vector<Circle> placed = {{100, 100, 100}, {300, 100, 100}};
  const auto pts = tangency_candidates(100.0, placed, {1000.0, 5000.0});
  const double y = 100.0 + std::sqrt(200.0 * 200.0 - 100.0 * 100.0);
  REQUIRE(contains_point(pts, 200.0, y));
  for (const auto& c : placed) {
    const double d = std::hypot(200.0 - c.x, y - c.y);
    CHECK(d == doctest::Approx(200.0).epsilon(1e-9));
  }
}

TEST_CASE("candidate resting on the floor against one circle") {
  const std::vector<Circle> placed = {{100, 100, 100}};
  const auto pts = tangency_candidates(50.0, placed, {1000.0, 5000.0});
  const double x = 100.0 + std::sqrt(150.0 * 150.0 - 50.0 * 50.0);
  CHECK(contains_point(pts, x, 50.0));
  CHECK(x == doctest::Approx(241.4213562).epsilon(1e-6));
}

TEST_CASE("nothing fits: empty candidate list") {
  const auto pts = tangency_candidates(1250.0, {}, {2350.0, 2690.0});
  CHECK(pts.empty());
}

TEST_CASE("greedy fills the bottom row left to right") {
  const auto out = greedy_construct({{plain_tube("t", 100.0, 6000.0), 2}}, {},
                                    {2350.0, 2690.0}, 0, 0.0);
  REQUIRE(out.rings.size() == 2);
  CHECK(out.rings[0].x == doctest::Approx(50.0));
  CHECK(out.rings[0].y == doctest::Approx(50.0));
  CHECK(out.rings[1].x == doctest::Approx(150.0));
  CHECK(out.rings[1].y == doctest::Approx(50.0));
  CHECK(out.used_height == doctest::Approx(100.0));
  CHECK(out.complete);
}

TEST_CASE("a tube wider than the section is never placed") {
  const auto out = greedy_construct({{plain_tube("t", 2500.0, 6000.0), 1}}, {},
                                    {2350.0, 2690.0}, 0, 0.0);
  CHECK(out.rings.empty());
  CHECK(!out.complete);
}

TEST_CASE("greedy is deterministic for a fixed seed") {
  const std::vector<TubeClass> tubes = {{plain_tube("a", 90.0, 3000.0), 7},
                                        {plain_tube("b", 60.0, 3000.0), 9}};
  const auto o1 = greedy_construct(tubes, {}, {400.0, 800.0}, 42, 0.5);
  const auto o2 = greedy_construct(tubes, {}, {400.0, 800.0}, 42, 0.5);
  REQUIRE(o1.rings.size() == o2.rings.size());
  for (std::size_t i = 0; i < o1.rings.size(); ++i) {
    CHECK(o1.rings[i].x == o2.rings[i].x);
    CHECK(o1.rings[i].y == o2.rings[i].y);
  }
  CHECK(o1.counts_by_type == o2.counts_by_type);
}

TEST_CASE("noise-free greedy equals the step-by-step reference") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    const double width = 200 + static_cast<double>(rng() % 300);
    const CrossSection cs{width, 600.0};
    std::vector<TubeClass> tubes;
    const int ntypes = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < ntypes; ++t)
      tubes.push_back({plain_tube("t" + std::to_string(t),
                                  30.0 + static_cast<double>(rng() % 60), 1000.0),
                       1 + static_cast<int>(rng() % 4)});

    const auto out = greedy_construct(tubes, {}, cs, 0, 0.0);

    // reference: recompute the full candidate list each step, take the front
    auto sorted = tubes;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const TubeClass& a, const TubeClass& b) {
                       return effective_ediam(a.type) > effective_ediam(b.type);
                     });
    std::vector<Circle> placed;
    for (const auto& tc : sorted) {
      const double r = effective_ediam(tc.type) / 2.0;
      for (int k = 0; k < tc.count; ++k) {
        const auto cands = tangency_candidates(r, placed, cs);
        if (cands.empty()) break;
        placed.push_back({cands[0].x, cands[0].y, r});
      }
    }
    REQUIRE(out.rings.size() == placed.size());
    for (std::size_t i = 0; i < placed.size(); ++i) {
      CHECK(out.rings[i].x == doctest::Approx(placed[i].x).epsilon(1e-12));
      CHECK(out.rings[i].y == doctest::Approx(placed[i].y).epsilon(1e-12));
    }
  }
}

TEST_CASE("rings stay inside bounds and never overlap") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    const CrossSection cs{300.0 + static_cast<double>(rng() % 200), 500.0};
    std::vector<TubeClass> tubes;
    for (int t = 0; t < 3; ++t)
      tubes.push_back({plain_tube("t" + std::to_string(t),
                                  25.0 + static_cast<double>(rng() % 80), 2000.0),
                       2 + static_cast<int>(rng() % 5)});
    const auto out = greedy_construct(tubes, {}, cs, rng(), 0.3);
    std::map<std::string, double> radii;
    for (const auto& tc : tubes) radii[tc.type.id] = effective_ediam(tc.type) / 2.0;
    for (std::size_t i = 0; i < out.rings.size(); ++i) {
      const auto& a = out.rings[i];
      const double ra = radii[a.type];
      CHECK(a.x >= ra - 1e-6);
      CHECK(a.x <= cs.width - ra + 1e-6);
      CHECK(a.y >= ra - 1e-6);
      CHECK(a.y <= cs.height_cap - ra + 1e-6);
      for (std::size_t j = i + 1; j < out.rings.size(); ++j) {
        const auto& b = out.rings[j];
        CHECK(std::hypot(a.x - b.x, a.y - b.y) >= ra + radii[b.type] - 1e-6);
      }
    }
  }
}

TEST_CASE("telescoping accepts what passes the bore and rejects the rest") {
  // host G: idiam 56.50; H (ediam 41.41) passes, E (ediam 85.30) does not
  const TubeType host_g = plain_tube("G", 61.31, 3000.0, 56.50);
  const TubeType tube_h = plain_tube("H", 41.41, 3000.0, 36.80);
  const TubeType host_d = plain_tube("D", 98.0, 6000.0, 75.39);
  const TubeType tube_e = plain_tube("E", 85.30, 6000.0, 63.39);

  std::vector<RingPlacement> hosts = {{"G", 100.0, 100.0, 0.0, {}}};
  std::vector<TubeClass> pool = {{tube_h, 1}};
  telescope_fill(hosts, pool, {host_g, tube_h});
  REQUIRE(hosts[0].children.size() == 1);
  CHECK(hosts[0].children[0].type == "H");
  CHECK(pool.empty());

  hosts = {{"D", 100.0, 100.0, 0.0, {}}};
  pool = {{tube_e, 1}};
  telescope_fill(hosts, pool, {host_d, tube_e});
  CHECK(hosts[0].children.empty());
  REQUIRE(pool.size() == 1);
  CHECK(pool[0].count == 1);
}

TEST_CASE("telescoped tubes pack end-to-end within the host length") {
  const TubeType host_f = plain_tube("F", 126.46, 3000.0, 120.20);
  const TubeType tube_h = plain_tube("H", 41.41, 3000.0, 36.80);
  std::vector<RingPlacement> hosts = {{"F", 100.0, 100.0, 0.0, {}}};
  std::vector<TubeClass> pool = {{tube_h, 2}};
  telescope_fill(hosts, pool, {host_f, tube_h});
  CHECK(hosts[0].children.size() == 1);  // two of 3000 exceed a 3000 host
  REQUIRE(pool.size() == 1);
  CHECK(pool[0].count == 1);
}

TEST_CASE("telescoping recurses into inserted tubes") {
  const TubeType host_f = plain_tube("F", 126.46, 3000.0, 120.20);
  const TubeType tube_g = plain_tube("G", 61.31, 3000.0, 56.50);
  const TubeType tube_h = plain_tube("H", 41.41, 3000.0, 36.80);
  std::vector<RingPlacement> hosts = {{"F", 100.0, 100.0, 0.0, {}}};
  std::vector<TubeClass> pool = {{tube_g, 1}, {tube_h, 1}};
  telescope_fill(hosts, pool, {host_f, tube_g, tube_h});
  REQUIRE(hosts[0].children.size() == 1);  // G takes the full host length
  REQUIRE(hosts[0].children[0].type == "G");
  REQUIRE(hosts[0].children[0].children.size() == 1);  // H nested inside G
  CHECK(hosts[0].children[0].children[0].type == "H");
  std::vector<const RingPlacement*> all;
  flatten(hosts[0], all);
  CHECK(all.size() == 3);
  CHECK(pool.empty());
}

TEST_CASE("pack_T1 with a tiny budget equals the greedy baseline") {
  const std::vector<TubeClass> tubes = {{plain_tube("a", 80.0, 3000.0), 5},
                                        {plain_tube("b", 50.0, 3000.0), 5}};
  CirclePackParams p;
  p.node_quota = 1;  // forces a single restart
  p.seed = 9;
  const auto t1 = pack_T1(tubes, {}, {300.0, 400.0}, p);
  const auto ref = greedy_construct(tubes, {}, {300.0, 400.0}, 9, 0.0);
  CHECK(t1.counts_by_type == ref.counts_by_type);
  CHECK(t1.used_height == doctest::Approx(ref.used_height));
}

TEST_CASE("five circles of radius 50 in a 190x100 section: only one fits") {
  CHECK(oracle::exact_max_count(50.0, 5, 190.0, 100.0) == 1);
  CirclePackParams p;
  p.min_restarts = 100;
  const auto out = pack_T1({{plain_tube("t", 100.0, 1000.0), 5}}, {}, {190.0, 100.0}, p);
  REQUIRE(out.counts_by_type.size() == 1);
  CHECK(out.counts_by_type[0] == 1);
}

TEST_CASE("pack_T2 single tube uses its own diameter as height") {
  CirclePackParams p;
  const auto out = pack_T2({{plain_tube("A", 128.33, 12000.0), 1}}, {},
                           {2350.0, 2690.0}, p);
  CHECK(out.complete);
  CHECK(out.used_height == doctest::Approx(128.33));
}

TEST_CASE("pack_T2 three equal circles nest to the oracle height") {
  const double expect = oracle::exact_min_height({50, 50, 50}, 200.0, 1000.0);
  CHECK(expect == doctest::Approx(100.0 + std::sqrt(100.0 * 100.0 - 50.0 * 50.0)));
  CirclePackParams p;
  p.min_restarts = 200;
  const auto out = pack_T2({{plain_tube("t", 100.0, 1000.0), 3}}, {}, {200.0, 1000.0}, p);
  REQUIRE(out.complete);
  CHECK(out.used_height == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("pack_T2 of nothing is empty and complete") {
  CirclePackParams p;
  const auto out = pack_T2({}, {}, {2350.0, 2690.0}, p);
  CHECK(out.complete);
  CHECK(out.used_height == 0.0);
  CHECK(out.rings.empty());
}

TEST_CASE("pack_T2 height never improves when a tube is added") {
  CirclePackParams p;
  p.min_restarts = 200;
  const CrossSection cs{200.0, 1000.0};
  std::vector<TubeClass> small = {{plain_tube("a", 100.0, 1000.0), 2}};
  std::vector<TubeClass> larger = {{plain_tube("a", 100.0, 1000.0), 2},
                                   {plain_tube("b", 60.0, 1000.0), 1}};
  const auto hs = pack_T2(small, {}, cs, p);
  const auto hl = pack_T2(larger, {}, cs, p);
  REQUIRE(hs.complete);
  REQUIRE(hl.complete);
  CHECK(hl.used_height >= hs.used_height - 1e-9);
}

TEST_CASE("restart pool size does not change the outcome") {
  const std::vector<TubeClass> tubes = {{plain_tube("a", 70.0, 3000.0), 6},
                                        {plain_tube("b", 45.0, 3000.0), 8}};
  CirclePackParams p1;
  p1.min_restarts = 64;
  p1.seed = 5;
  p1.threads = 1;
  CirclePackParams p4 = p1;
  p4.threads = 4;
  const auto o1 = pack_T2(tubes, {}, {350.0, 600.0}, p1);
  const auto o4 = pack_T2(tubes, {}, {350.0, 600.0}, p4);
  CHECK(o1.used_height == o4.used_height);
  REQUIRE(o1.rings.size() == o4.rings.size());
  for (std::size_t i = 0; i < o1.rings.size(); ++i) {
    CHECK(o1.rings[i].x == o4.rings[i].x);
    CHECK(o1.rings[i].y == o4.rings[i].y);
  }
}

TEST_CASE("grid snapping keeps placements on the 0.01 mm grid") {
  const std::vector<TubeClass> tubes = {{plain_tube("a", 64.17, 1000.0), 5},
                                        {plain_tube("b", 41.41, 1000.0), 5}};
  const auto out = greedy_construct(tubes, {}, {300.0, 400.0}, 1, 0.2, 0.0, 0.01);
  std::function<void(const RingPlacement&)> walk = [&](const RingPlacement& r) {
    CHECK(r.x == doctest::Approx(round2(r.x)).epsilon(1e-12));
    CHECK(r.y == doctest::Approx(round2(r.y)).epsilon(1e-12));
    for (const auto& c : r.children) walk(c);
  };
  for (const auto& r : out.rings) walk(r);
}

TEST_SUITE_END();
