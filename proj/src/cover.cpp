#include "rollmix/cover.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <string>

#include "rollmix/errors.hpp"

namespace rollmix {

namespace {

// Minimal union-find with path halving; enough for chaining cover sets.
struct DisjointSet {
  std::vector<int> parent;

  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool SetCover::set_contains(int set_id, int state) const {
  const auto& members = sets[set_id];
  return std::binary_search(members.begin(), members.end(), state);
}

SetCover make_cover(int num_states, std::vector<std::vector<int>> sets) {
  if (num_states <= 0)
    throw Error(ErrorKind::NotCovering, "state space is empty");

  SetCover cover;
  cover.num_states = num_states;
  cover.sets = std::move(sets);
  cover.sets_of_state.assign(num_states, {});

  for (int j = 0; j < cover.num_sets(); ++j) {
    auto& members = cover.sets[j];
    if (members.empty())
      throw Error(ErrorKind::EmptyCoverSet, "cover set " + std::to_string(j));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int s : members) {
      if (s < 0 || s >= num_states)
        throw Error(ErrorKind::UnknownState,
                    "cover set " + std::to_string(j) + " lists state id " +
                        std::to_string(s));
      cover.sets_of_state[s].push_back(j);
    }
  }

  std::vector<int> uncovered;
  for (int s = 0; s < num_states; ++s)
    if (cover.sets_of_state[s].empty()) uncovered.push_back(s);
  if (!uncovered.empty()) {
    std::string msg = "uncovered state ids:";
    for (int s : uncovered) msg += " " + std::to_string(s);
    throw Error(ErrorKind::NotCovering, msg);
  }
  return cover;
}

Partition build_partition(const SetCover& cover) {
  DisjointSet dsu(cover.num_states);
  for (const auto& members : cover.sets)
    for (size_t i = 1; i < members.size(); ++i)
      dsu.unite(members[0], members[i]);

  // Canonical class ids: order of each class's smallest state.
  Partition partition;
  partition.class_of.assign(cover.num_states, -1);
  for (int s = 0; s < cover.num_states; ++s) {
    int root = dsu.find(s);
    if (partition.class_of[root] == -1) {
      partition.class_of[root] = static_cast<int>(partition.classes.size());
      partition.classes.emplace_back();
    }
    partition.class_of[s] = partition.class_of[root];
    partition.classes[partition.class_of[s]].push_back(s);
  }
  return partition;
}

int expansion(const SetCover& cover, const Partition& partition, int set_id) {
  if (set_id < 0 || set_id >= cover.num_sets())
    throw Error(ErrorKind::UnknownCoverSet, "set id " + std::to_string(set_id));
  return partition.class_of[cover.sets[set_id].front()];
}

const std::vector<int>& similarity_sets_of(const SetCover& cover, int state) {
  if (state < 0 || state >= cover.num_states)
    throw Error(ErrorKind::UnknownState, "state id " + std::to_string(state));
  return cover.sets_of_state[state];
}

bool compatible_triple(const SetCover& cover, int set_id, int u, int v) {
  if (set_id < 0 || set_id >= cover.num_sets()) return false;
  if (u < 0 || u >= cover.num_states || v < 0 || v >= cover.num_states)
    return false;
  return cover.set_contains(set_id, u) && cover.set_contains(set_id, v);
}

// ---------------------------------------------------------------------------
// Pseudometric-induced covers
// ---------------------------------------------------------------------------

void validate_pseudometric(const Pseudometric& metric) {
  const int n = metric.num_states;
  if (n <= 0 || static_cast<int>(metric.dist.size()) != n * n)
    throw Error(ErrorKind::PseudometricViolation, "distance matrix shape");

  for (int a = 0; a < n; ++a)
    if (metric.at(a, a) != 0)
      throw Error(ErrorKind::PseudometricViolation,
                  "d(" + std::to_string(a) + "," + std::to_string(a) +
                      ") != 0");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (metric.at(a, b) < 0)
        throw Error(ErrorKind::PseudometricViolation,
                    "d(" + std::to_string(a) + "," + std::to_string(b) +
                        ") < 0");
      if (metric.at(a, b) != metric.at(b, a))
        throw Error(ErrorKind::PseudometricViolation,
                    "d(" + std::to_string(a) + "," + std::to_string(b) +
                        ") != d(" + std::to_string(b) + "," +
                        std::to_string(a) + ")");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (metric.at(a, c) > metric.at(a, b) + metric.at(b, c))
          throw Error(ErrorKind::PseudometricViolation,
                      "triangle inequality fails at (" + std::to_string(a) +
                          "," + std::to_string(b) + "," + std::to_string(c) +
                          ")");
}

SetCover cover_from_pseudometric(
    const Pseudometric& metric, const std::vector<Rational>& radii,
    std::vector<std::vector<std::pair<int, int>>>* provenance) {
  validate_pseudometric(metric);
  for (const auto& r : radii)
    if (r <= 0)
      throw Error(ErrorKind::PseudometricViolation,
                  "ball radius must be positive");

  const int n = metric.num_states;
  std::map<std::vector<int>, int> seen;  // ball members -> emitted set id
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<std::pair<int, int>>> origins;

  for (int ri = 0; ri < static_cast<int>(radii.size()); ++ri)
    for (int center = 0; center < n; ++center) {
      std::vector<int> ball;
      for (int y = 0; y < n; ++y)
        if (metric.at(center, y) < radii[ri]) ball.push_back(y);
      auto [it, inserted] = seen.emplace(ball, static_cast<int>(sets.size()));
      if (inserted) {
        sets.push_back(ball);
        origins.push_back({{center, ri}});
      } else {
        origins[it->second].push_back({center, ri});
      }
    }

  if (provenance) *provenance = std::move(origins);
  return make_cover(n, std::move(sets));
}

}  // namespace rollmix
