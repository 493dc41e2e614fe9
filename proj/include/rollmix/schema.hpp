#pragma once

// Schemata: patterns over rollouts.
//
// A schema is either the universal pattern "#", which every rollout fits, or
// an action plus a path of position constraints plus a tail.  Each path entry
// names a cover set or a merged class; the rollout's state at that position
// must belong to it.  A terminal tail pins the exact height (path length) and
// the terminal label; a "#" tail allows any continuation, including none
// beyond the path.

#include <string>
#include <vector>

#include "rollmix/cover.hpp"
#include "rollmix/population.hpp"

namespace rollmix {

struct SchemaEntry {
  bool is_class = false;  // false: cover-set id; true: merged-class id
  int id = -1;

  friend bool operator==(const SchemaEntry&, const SchemaEntry&) = default;
};

struct Schema {
  bool universal = false;        // the bare "#" schema; other fields unused
  int action = -1;
  std::vector<SchemaEntry> path;
  bool tail_wildcard = true;     // "#" tail; otherwise tail_terminal is set
  int tail_terminal = -1;

  int height() const { return static_cast<int>(path.size()); }

  friend bool operator==(const Schema&, const Schema&) = default;
};

// Does `rollout` match `schema`?  Membership tests project the rollout's
// states and terminal to their base ids first, so a schema written against
// the base problem matches inside any inflation of it.
bool fits(const Rollout& rollout, const Schema& schema, const Problem& problem);

// Specialization preorder: true iff every rollout fitting `lower` also fits
// `upper`, decided syntactically.  Holds when the schemata are equal, when
// `upper` is universal, or when `upper` is "#"-tailed, shares the action,
// its path is an entry-wise prefix of `lower`'s, and `lower` either carries a
// terminal tail or continues with at least one more entry.
bool schema_geq(const Schema& upper, const Schema& lower);

// Replace every cover-set entry by its merged class; class entries, action
// and tail are unchanged.  Coarsening is monotone: anything fitting `schema`
// fits the result.
Schema coarsen(const Schema& schema, const SetCover& cover,
               const Partition& partition);

// Canonical display form, e.g. "(beta; 4>7>5; f2)", "(alpha; 1>*A; #)", "#".
// Class entries render as "*" + class name.  Used in reports; stable.
std::string schema_string(const Schema& schema, const Problem& problem);

}  // namespace rollmix
