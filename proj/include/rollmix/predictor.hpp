#pragma once

// Closed-form limiting schema frequencies, the induced class-level absorbing
// chain, its ancestral sampler, and exact / Monte Carlo expected payoffs.
// Everything exact is computed in Rational.

#include <cstdint>
#include <optional>
#include <vector>

#include "rollmix/order_table.hpp"
#include "rollmix/rational.hpp"
#include "rollmix/rng.hpp"
#include "rollmix/schema.hpp"

namespace rollmix {

// The exact limiting frequency of `schema` in the long-run mixed population.
// For a schema (a; O_1..O_{k-1}; tail):
//
//   numb(a)/b  ·  prod_q |O_q| / |class(O_q)|
//              ·  order(a -> class(O_1)) / numb(a)
//              ·  prod_{q>=2} order(class(O_{q-1}) -> class(O_q))
//                             / order_class_total(class(O_{q-1}))
//              ·  tail factor,
//
// where the tail factor is 1 for "#", (occurrences of the tail terminal
// directly following the last class) / order_class_total(last class) for a
// terminal tail, and 0 when it never follows.  The universal schema gives 1;
// any zero count along the way gives 0; an empty path gives numb(a)/b for a
// "#" tail and 0 for a terminal tail.
//
// Schemata are written against the base problem.  When the table describes
// an inflation by m, set and class ids carry over unchanged, and a terminal
// tail matches every one of its m copies — pass the inflation so the tail
// occurrences are counted by base id (the Problem overload does).  The value
// is then exactly the base problem's.
Rational limiting_frequency(const OrderTable& table, const Schema& schema,
                            const SetCover& cover, const Partition& partition,
                            int inflation = 1);

inline Rational limiting_frequency(const OrderTable& table, const Schema& schema,
                                   const Problem& problem) {
  return limiting_frequency(table, schema, problem.cover, problem.partition,
                            problem.inflation);
}

// Absorbing Markov chain over merged classes with terminals absorbing.
// start[a] is the first-state class distribution of action a's rollouts;
// step_class[c] / step_term[c] split class c's one-step distribution
// (each directly-following terminal label gets 1/order_class_total(c)).
// Every represented row sums to exactly 1.
struct ClassChain {
  std::vector<std::vector<std::pair<int, Rational>>> start;       // per action
  std::vector<std::vector<std::pair<int, Rational>>> step_class;  // per class
  std::vector<std::vector<std::pair<int, Rational>>> step_term;   // per class
};

ClassChain build_class_chain(const OrderTable& table);

// One ancestral sample: action drawn with probability numb(a)/b, then the
// chain is walked until a terminal absorbs it.  A walk that would grow past
// `height_cap` classes is cut off (truncated = true, terminal = -1); one
// absorbing at exactly height_cap completes normally.
struct SampledPath {
  int action = -1;
  std::vector<int> classes;
  int terminal = -1;
  bool truncated = false;
};

SampledPath sample_class_rollout(const ClassChain& chain, const OrderTable& table,
                                 Rng& rng, int height_cap);

// Exact expected payoff of a rollout developed from `action`: solves the
// absorption equations V = S V + c over the classes reachable from the
// action's start distribution by Gaussian elimination in Rational.  Throws
// Error{TerminalUnreachable} if a reachable class cannot reach any terminal
// and Error{MissingPayoff} if a reachable terminal has no payoff.
Rational expected_payoff_exact(const ClassChain& chain, const OrderTable& table,
                               const std::vector<std::optional<Rational>>& payoffs,
                               int action);

// Monte Carlo counterpart over `samples` ancestral draws conditioned on the
// action.  Truncated draws are excluded from the average and counted; if all
// draws truncate, throws Error{AllTruncated}.
struct PayoffEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t truncated = 0;
  std::int64_t used = 0;
};

PayoffEstimate estimate_payoff_mc(const ClassChain& chain, const OrderTable& table,
                                  const std::vector<std::optional<Rational>>& payoffs,
                                  int action, std::int64_t samples, Rng& rng,
                                  int height_cap);

}  // namespace rollmix
