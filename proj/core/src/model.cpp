#include "tubepack/model.hpp"

#include <algorithm>

namespace tubepack {

double effective_ediam(const TubeType& t) {
  return t.socket_ediam ? *t.socket_ediam : t.ediam;
}

std::vector<TubeType> canonical_tube_order(std::vector<TubeType> ts) {
  std::stable_sort(ts.begin(), ts.end(), [](const TubeType& a, const TubeType& b) {
    if (a.len != b.len) return a.len > b.len;
    return effective_ediam(a) > effective_ediam(b);
  });
  return ts;
}

std::vector<BoxType> canonical_box_order(std::vector<BoxType> bs) {
  std::stable_sort(bs.begin(), bs.end(), [](const BoxType& a, const BoxType& b) {
    return a.volume() > b.volume();
  });
  return bs;
}

namespace {
constexpr std::array<std::array<std::uint8_t, 3>, 6> kPerms = {{
    {0, 1, 2},  // whd
    {0, 2, 1},  // wdh
    {1, 0, 2},  // hwd
    {1, 2, 0},  // hdw
    {2, 0, 1},  // dwh
    {2, 1, 0},  // dhw
}};
constexpr std::array<const char*, 6> kNames = {"whd", "wdh", "hwd",
                                               "hdw", "dwh", "dhw"};
}  // namespace

const std::array<std::uint8_t, 3>& Orientation::perm() const {
  return kPerms[index];
}

std::array<double, 3> Orientation::apply(const BoxType& b) const {
  const std::array<double, 3> src = {b.width, b.height, b.depth};
  const auto& p = kPerms[index];
  return {src[p[0]], src[p[1]], src[p[2]]};
}

std::string_view Orientation::name() const { return kNames[index]; }

std::optional<Orientation> Orientation::from_name(std::string_view n) {
  for (std::uint8_t i = 0; i < 6; ++i)
    if (n == kNames[i]) return Orientation{i};
  return std::nullopt;
}

std::array<Orientation, 6> orientations_of(const BoxType&) {
  return {Orientation{0}, Orientation{1}, Orientation{2},
          Orientation{3}, Orientation{4}, Orientation{5}};
}

int ring_tree_size(const RingPlacement& r) {
  int n = 1;
  for (const auto& c : r.children) n += ring_tree_size(c);
  return n;
}

}  // namespace tubepack
