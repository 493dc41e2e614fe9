#pragma once

// The two crossover moves and the generator family they induce.
//
// Both moves are parameterized by a compatible triple (set O, u, v) with
// u, v members of O.  One-point crossover exchanges the two suffixes that
// start at u and at v — states, u and v included, and terminals — provided u
// and v lie in two distinct rollouts; otherwise it does nothing.  Single swap
// exchanges just the two positions holding u and v, whether those positions
// lie in different rollouts or in one.  Both moves are involutions, fix the
// multiset of states and of terminals, and never change any rollout's action.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rollmix/cover.hpp"
#include "rollmix/population.hpp"

namespace rollmix {

enum class CrossKind : std::uint8_t {
  OnePoint,    // suffix exchange
  SingleSwap,  // position exchange
};

struct CrossoverOp {
  CrossKind kind = CrossKind::OnePoint;
  int set = -1;
  int u = -1;
  int v = -1;

  friend bool operator==(const CrossoverOp&, const CrossoverOp&) = default;
};

// Pure application: validates the triple (throws Error{IncompatibleTriple})
// and returns the transformed population.  If u or v does not occur in the
// population, or the move's own guard applies (same rollout for one-point,
// u == v for either), the input is returned unchanged.
Population apply_one_point(const Population& population, const SetCover& cover,
                           int set_id, int u, int v);
Population apply_single_swap(const Population& population, const SetCover& cover,
                             int set_id, int u, int v);
Population apply_op(const Population& population, const SetCover& cover,
                    const CrossoverOp& op);
Population apply_sequence(const Population& population, const SetCover& cover,
                          std::span<const CrossoverOp> ops);

// All non-trivially-acting generators in a fixed deterministic order: cover
// sets in id order; within a set, member pairs u < v in lexicographic order;
// for each pair the one-point move first, then the single swap.  Pairs with
// u == v are omitted (they act as the identity).
std::vector<CrossoverOp> enumerate_generators(const SetCover& cover);

// In-place stepper for long chain runs.  Keeps a position index
// state -> (rollout, offset) so each application costs O(len of the two
// affected suffixes) instead of O(population).  Behaviour is identical to
// the pure API (asserted by tests).
class PopulationStepper {
 public:
  explicit PopulationStepper(Population population);

  // Applies op without triple validation (callers pass enumerated
  // generators).  Returns the number of rollout slots whose content changed
  // (0, 1 or 2) and writes their indices into `changed`.
  int apply(const CrossoverOp& op, std::array<int, 2>& changed);

  const Population& population() const { return population_; }

 private:
  Population population_;
  std::vector<int> pos_rollout_;  // state -> rollout index
  std::vector<int> pos_offset_;   // state -> offset within rollout
  void reindex_tail(int rollout, int from_offset);
};

}  // namespace rollmix
