#include <array>
#include <random>
#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "tubepack/model.hpp"

using namespace tubepack;

TEST_SUITE_BEGIN("model");

TEST_CASE("effective external diameter follows the socket") {
  TubeType t;
  t.id = "B";
  t.idiam = 77.8;
  t.ediam = 92.42;
  CHECK(effective_ediam(t) == doctest::Approx(92.42));
  t.socket_ediam = 100.0;
  CHECK(effective_ediam(t) == doctest::Approx(100.0));
}

TEST_CASE("canonical tube order on the sample catalog") {
  const auto inst = sample_instance();
  const auto ordered = canonical_tube_order(inst.tubes);
  std::vector<std::string> ids;
  for (const auto& t : ordered) ids.push_back(t.id);
  CHECK(ids == std::vector<std::string>{"A", "B", "C", "D", "E", "I", "F", "G", "H"});
}

TEST_CASE("tube order is stable and idempotent") {
  TubeType a, b;
  a.id = "a1";
  a.idiam = 10;
  a.ediam = 50;
  a.len = 1000;
  b = a;
  b.id = "a2";
  const auto once = canonical_tube_order({a, b});
  CHECK(once[0].id == "a1");  // ties keep input order
  CHECK(once[1].id == "a2");
  const auto twice = canonical_tube_order(once);
  CHECK(twice[0].id == once[0].id);
  CHECK(twice[1].id == once[1].id);
  CHECK(canonical_tube_order({}).empty());
}

TEST_CASE("canonical box order on the sample catalog") {
  const auto inst = sample_instance();
  const auto ordered = canonical_box_order(inst.boxes);
  std::vector<std::string> ids;
  for (const auto& b : ordered) ids.push_back(b.id);
  CHECK(ids == std::vector<std::string>{"B1", "B3", "B2"});
  CHECK(ordered[0].volume() == doctest::Approx(132.0e6));
  CHECK(ordered[1].volume() == doctest::Approx(78.12e6));
  CHECK(ordered[2].volume() == doctest::Approx(64.4e6));
}

TEST_CASE("box order keeps input order for equal volumes") {
  BoxType a{"x", 10, 20, 30, 1, 0.0};
  BoxType b{"y", 30, 20, 10, 1, 0.0};
  const auto ordered = canonical_box_order({a, b});
  CHECK(ordered[0].id == "x");
  CHECK(ordered[1].id == "y");
  CHECK(canonical_box_order({a})[0].id == "x");
}

TEST_CASE("exactly six orientations, duplicates kept") {
  BoxType b{"b", 500, 330, 800, 1, 0.0};
  const auto os = orientations_of(b);
  CHECK(os.size() == 6);
  std::set<std::array<double, 3>> dims;
  for (const auto& o : os) dims.insert(o.apply(b));
  CHECK(dims.size() == 6);

  BoxType cube{"c", 100, 100, 100, 1, 0.0};
  dims.clear();
  for (const auto& o : orientations_of(cube)) dims.insert(o.apply(cube));
  CHECK(dims.size() == 1);  // six identical triples

  CHECK(Orientation{0}.apply(b) == std::array<double, 3>{500, 330, 800});
}

TEST_CASE("orientation names round-trip") {
  for (std::uint8_t i = 0; i < 6; ++i) {
    const Orientation o{i};
    const auto back = Orientation::from_name(o.name());
    REQUIRE(back.has_value());
    CHECK(back->index == i);
  }
  CHECK(!Orientation::from_name("wwd").has_value());
}

TEST_CASE("sorting is a permutation and the socket never shrinks a tube") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<TubeType> ts;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      TubeType t;
      t.id = "t" + std::to_string(i);
      t.idiam = 10 + static_cast<double>(rng() % 50);
      t.ediam = t.idiam + 1 + static_cast<double>(rng() % 50);
      if (rng() % 3 == 0) t.socket_ediam = t.ediam + static_cast<double>(rng() % 10);
      t.len = 1000.0 * (1 + static_cast<double>(rng() % 4));
      ts.push_back(t);
    }
    const auto sorted = canonical_tube_order(ts);
    REQUIRE(sorted.size() == ts.size());
    std::multiset<std::string> in, out;
    for (const auto& t : ts) in.insert(t.id);
    for (const auto& t : sorted) {
      out.insert(t.id);
      CHECK(effective_ediam(t) >= t.ediam);
    }
    CHECK(in == out);
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      const bool ok = sorted[i - 1].len > sorted[i].len ||
                      (sorted[i - 1].len == sorted[i].len &&
                       effective_ediam(sorted[i - 1]) >= effective_ediam(sorted[i]));
      CHECK(ok);
    }
  }
}

TEST_SUITE_END();
