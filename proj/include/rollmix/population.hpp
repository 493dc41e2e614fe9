#pragma once

// Rollout populations and the full problem instance (state space + cover +
// actions + terminals + population), including inflation.
//
// A rollout is an action followed by a nonempty sequence of states and a
// terminal label.  A population is an ordered list of rollouts in which every
// state of the space occurs exactly once across all rollouts and every
// terminal label occurs at most once.  "Ordered" matters: two populations are
// equal only if they list equal rollouts in the same slots.

#include <optional>
#include <string>
#include <vector>

#include "rollmix/cover.hpp"
#include "rollmix/rational.hpp"

namespace rollmix {

struct Rollout {
  int action = -1;
  std::vector<int> states;  // nonempty; height == states.size()
  int terminal = -1;

  int height() const { return static_cast<int>(states.size()); }

  friend bool operator==(const Rollout&, const Rollout&) = default;
};

struct Population {
  std::vector<Rollout> rollouts;

  int size() const { return static_cast<int>(rollouts.size()); }

  friend bool operator==(const Population&, const Population&) = default;
};

// Sum of rollout heights == number of distinct states in use.
int total_states(const Population& population);

// A full problem instance.  Ids are dense; names live in the tables below
// and exist only for I/O.  After inflation by m, entity (base, copy) has id
// base * m + copy, so inflation by 1 is the identity and the base of any id
// is id / m.
struct Problem {
  std::vector<std::string> state_names;
  std::vector<std::string> action_names;
  std::vector<std::string> terminal_names;
  std::vector<std::string> set_names;

  SetCover cover;
  Partition partition;
  std::vector<std::optional<Rational>> payoffs;  // per terminal, optional
  Population population;

  int inflation = 1;  // m; 1 for a base problem

  int num_actions() const { return static_cast<int>(action_names.size()); }
  int num_terminals() const { return static_cast<int>(terminal_names.size()); }

  int base_state(int state) const { return state / inflation; }
  int base_terminal(int terminal) const { return terminal / inflation; }
  int base_set(int set_id) const { return set_id; }  // sets inflate in place
};

// Structural validation of a fully assembled problem: reference ranges,
// global distinctness of states and terminals, nonempty rollouts, and the
// closed-world requirement that every declared state occurs in the
// population (actions and terminals may be declared without occurring).
// Throws Error{UnknownState, UnknownAction, UnknownTerminal, DuplicateState,
// DuplicateTerminal, MissingState, EmptyRollout, EmptyPopulation}.
void validate_problem(const Problem& problem);

// True iff similar states only ever occupy equal position indices: for every
// cover set, all of its members sit at one common position (positions count
// within-rollout, 0-based; the comparison spans rollout boundaries and also
// pairs within a single rollout).
bool is_homologous(const Population& population, const SetCover& cover);

// Inflation by m >= 1: every state, terminal and cover set is replaced by m
// copies; rollout i becomes copies (i,0..m-1) listed i-major, copy k of a
// rollout using copy k of each of its states and of its terminal.  Cover set
// j inflates in place to the union of its members' copies, so set ids and
// class ids carry over; payoffs are inherited from the base terminal.
// inflate(problem, 1) returns the problem unchanged.
Problem inflate(const Problem& problem, int m);

}  // namespace rollmix
