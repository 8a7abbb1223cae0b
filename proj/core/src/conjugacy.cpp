#include "qrmix/conjugacy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qrmix {

ConjugacyData conjugacy_classes(const Group& g) {
  const std::size_t n = g.order();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> raw_class(n, kUnassigned);
  std::vector<std::vector<Element>> orbits;
  for (Element x = 0; x < n; ++x) {
    if (raw_class[x] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(orbits.size());
    std::vector<Element> orbit;
    for (Element h = 0; h < n; ++h) {
      const Element y = g.conjugate(h, x);
      if (raw_class[y] == kUnassigned) {
        raw_class[y] = id;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }

  std::vector<std::uint32_t> order(orbits.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (orbits[a].size() != orbits[b].size()) return orbits[a].size() < orbits[b].size();
    return orbits[a].front() < orbits[b].front();
  });

  ConjugacyData data;
  data.class_of.resize(n);
  for (std::uint32_t c = 0; c < order.size(); ++c) {
    auto& orbit = orbits[order[c]];
    for (Element y : orbit) data.class_of[y] = c;
    data.class_sizes.push_back(orbit.size());
    data.representatives.push_back(orbit.front());
    data.members.push_back(std::move(orbit));
  }
  return data;
}

}  // namespace qrmix
