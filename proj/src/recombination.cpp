#include "rollmix/recombination.hpp"

#include <string>
#include <utility>

#include "rollmix/errors.hpp"

namespace rollmix {

namespace {

void require_compatible(const SetCover& cover, int set_id, int u, int v) {
  if (!compatible_triple(cover, set_id, u, v))
    throw Error(ErrorKind::IncompatibleTriple,
                "set " + std::to_string(set_id) + " with states " +
                    std::to_string(u) + ", " + std::to_string(v));
}

// (rollout, offset) of a state, or (-1, -1) when absent.
std::pair<int, int> locate(const Population& population, int state) {
  for (int i = 0; i < population.size(); ++i) {
    const auto& states = population.rollouts[i].states;
    for (int k = 0; k < static_cast<int>(states.size()); ++k)
      if (states[k] == state) return {i, k};
  }
  return {-1, -1};
}

}  // namespace

Population apply_one_point(const Population& population, const SetCover& cover,
                           int set_id, int u, int v) {
  require_compatible(cover, set_id, u, v);
  auto [i1, k] = locate(population, u);
  auto [i2, q] = locate(population, v);
  if (i1 < 0 || i2 < 0 || i1 == i2) return population;  // u == v included

  Population out = population;
  auto& a = out.rollouts[i1].states;
  auto& b = out.rollouts[i2].states;
  std::vector<int> tail_a(a.begin() + k, a.end());
  a.resize(k);
  a.insert(a.end(), b.begin() + q, b.end());
  b.resize(q);
  b.insert(b.end(), tail_a.begin(), tail_a.end());
  std::swap(out.rollouts[i1].terminal, out.rollouts[i2].terminal);
  return out;
}

Population apply_single_swap(const Population& population, const SetCover& cover,
                             int set_id, int u, int v) {
  require_compatible(cover, set_id, u, v);
  if (u == v) return population;
  auto [i1, k] = locate(population, u);
  auto [i2, q] = locate(population, v);
  if (i1 < 0 || i2 < 0) return population;

  Population out = population;
  out.rollouts[i1].states[k] = v;
  out.rollouts[i2].states[q] = u;
  return out;
}

Population apply_op(const Population& population, const SetCover& cover,
                    const CrossoverOp& op) {
  return op.kind == CrossKind::OnePoint
             ? apply_one_point(population, cover, op.set, op.u, op.v)
             : apply_single_swap(population, cover, op.set, op.u, op.v);
}

Population apply_sequence(const Population& population, const SetCover& cover,
                          std::span<const CrossoverOp> ops) {
  Population current = population;
  for (const auto& op : ops) current = apply_op(current, cover, op);
  return current;
}

std::vector<CrossoverOp> enumerate_generators(const SetCover& cover) {
  std::vector<CrossoverOp> ops;
  for (int j = 0; j < cover.num_sets(); ++j) {
    const auto& members = cover.sets[j];  // sorted
    for (size_t a = 0; a < members.size(); ++a)
      for (size_t b = a + 1; b < members.size(); ++b) {
        ops.push_back({CrossKind::OnePoint, j, members[a], members[b]});
        ops.push_back({CrossKind::SingleSwap, j, members[a], members[b]});
      }
  }
  return ops;
}

// ---------------------------------------------------------------------------
// PopulationStepper
// ---------------------------------------------------------------------------

PopulationStepper::PopulationStepper(Population population)
    : population_(std::move(population)) {
  int max_state = -1;
  for (const auto& r : population_.rollouts)
    for (int s : r.states) max_state = std::max(max_state, s);
  pos_rollout_.assign(max_state + 1, -1);
  pos_offset_.assign(max_state + 1, -1);
  for (int i = 0; i < population_.size(); ++i) reindex_tail(i, 0);
}

void PopulationStepper::reindex_tail(int rollout, int from_offset) {
  const auto& states = population_.rollouts[rollout].states;
  for (int k = from_offset; k < static_cast<int>(states.size()); ++k) {
    pos_rollout_[states[k]] = rollout;
    pos_offset_[states[k]] = k;
  }
}

int PopulationStepper::apply(const CrossoverOp& op, std::array<int, 2>& changed) {
  const int u = op.u, v = op.v;
  if (u == v) return 0;
  if (u >= static_cast<int>(pos_rollout_.size()) ||
      v >= static_cast<int>(pos_rollout_.size()))
    return 0;
  const int i1 = pos_rollout_[u], i2 = pos_rollout_[v];
  if (i1 < 0 || i2 < 0) return 0;
  const int k = pos_offset_[u], q = pos_offset_[v];

  if (op.kind == CrossKind::SingleSwap) {
    population_.rollouts[i1].states[k] = v;
    population_.rollouts[i2].states[q] = u;
    pos_rollout_[v] = i1;
    pos_offset_[v] = k;
    pos_rollout_[u] = i2;
    pos_offset_[u] = q;
    if (i1 == i2) {
      changed[0] = i1;
      return 1;
    }
    changed[0] = i1;
    changed[1] = i2;
    return 2;
  }

  if (i1 == i2) return 0;  // one-point within one rollout: identity

  auto& a = population_.rollouts[i1].states;
  auto& b = population_.rollouts[i2].states;
  std::vector<int> tail_a(a.begin() + k, a.end());
  a.resize(k);
  a.insert(a.end(), b.begin() + q, b.end());
  b.resize(q);
  b.insert(b.end(), tail_a.begin(), tail_a.end());
  std::swap(population_.rollouts[i1].terminal, population_.rollouts[i2].terminal);
  reindex_tail(i1, k);
  reindex_tail(i2, q);
  changed[0] = i1;
  changed[1] = i2;
  return 2;
}

}  // namespace rollmix
