#pragma once

// Occurrence statistics of a population, aggregated at merged-class level.
//
// For each action: how many rollouts carry it (numb) and how often each class
// holds their first state (order_action).  For each class: how often each
// class holds the state following one of its members (order_class) and which
// terminal labels directly follow a member (succ_terminals).  Totals follow:
// order_action_total(a) = numb(a), and order_class_total(c) — successors plus
// terminal occurrences — equals class_size(c) because every state occurs
// exactly once and is followed by exactly one thing.

#include <cstdint>
#include <vector>

#include "rollmix/cover.hpp"
#include "rollmix/population.hpp"

namespace rollmix {

struct OrderTable {
  int b = 0;  // population size (number of rollouts)

  std::vector<std::int64_t> numb;                    // per action
  std::vector<std::vector<std::int64_t>> order_action;  // action x class
  std::vector<std::vector<std::int64_t>> order_class;   // class x class
  std::vector<std::vector<int>> succ_terminals;         // per class, sorted

  std::vector<std::int64_t> order_action_total;  // per action (== numb)
  std::vector<std::int64_t> order_class_total;   // per class
  std::vector<std::int64_t> class_size;          // per class
  std::vector<std::int64_t> set_size;            // per cover set

  // Successor-class ids with a nonzero count, sorted (the "down" sets).
  std::vector<int> down_action(int action) const;
  std::vector<int> down_class(int class_id) const;

  int num_actions() const { return static_cast<int>(numb.size()); }
  int num_classes() const { return static_cast<int>(class_size.size()); }
};

// One pass over the population.  num_actions bounds the action-id range.
OrderTable build_order_table(const Population& population, const SetCover& cover,
                             const Partition& partition, int num_actions);

inline OrderTable build_order_table(const Problem& problem) {
  return build_order_table(problem.population, problem.cover, problem.partition,
                           problem.num_actions());
}

}  // namespace rollmix
