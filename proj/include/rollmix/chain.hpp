#pragma once

// The population-level Markov chain: pick the identity with probability
// p_identity, otherwise one of the enumerated crossover generators uniformly
// (or with supplied weights), and apply it.  Both moves are involutions, so
// the transition matrix is symmetric, the uniform distribution over the
// reachable equivalence class is stationary, and the chain is irreducible on
// that class and aperiodic whenever p_identity > 0.
//
// Also here: exhaustive enumeration of the reachable class, the exact
// transition matrix on it, exact class-average / first-slot schema
// fractions, the class-id projection of populations, and the empirical
// frequency runner used by the convergence experiments.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rollmix/population.hpp"
#include "rollmix/predictor.hpp"
#include "rollmix/rational.hpp"
#include "rollmix/recombination.hpp"
#include "rollmix/rng.hpp"
#include "rollmix/schema.hpp"

namespace rollmix {

// Mixing distribution over {identity} + generators, exact and samplable.
struct MixingDistribution {
  Rational p_identity;
  std::vector<CrossoverOp> ops;
  std::vector<Rational> op_probs;  // same length; sums to 1 - p_identity

  // Sampling caches (doubles derived from the exact values).
  double p_identity_d = 0.0;
  std::vector<double> cumulative;  // over ops, conditional on not-identity

  // Draws the identity (nullptr) or an op.
  const CrossoverOp* sample(Rng& rng) const;
};

// Uniform weights over all generators of the cover; p_identity must lie in
// [0, 1] (default one half).  Throws Error{ConfigError} if out of range or if
// the cover admits no generator while p_identity < 1.
MixingDistribution make_uniform_mixing(const SetCover& cover,
                                       const Rational& p_identity);

// ---------------------------------------------------------------------------
// Reachable equivalence class
// ---------------------------------------------------------------------------

// Populations are interned in a compact byte encoding to keep large classes
// (hundreds of thousands of members) affordable.
struct PopulationClass {
  std::vector<std::string> members;                 // packed, BFS order
  std::unordered_map<std::string, int> index;       // packed -> member id
  Population decode(int member_id) const;
  int find(const Population& population) const;     // -1 if absent
};

std::string pack_population(const Population& population);
Population unpack_population(const std::string& packed);

// Breadth-first closure of {population} under the cover's generators.
// Throws Error{ClassTooLarge} as soon as more than `bound` members exist.
PopulationClass enumerate_class(const Population& population, const SetCover& cover,
                                std::int64_t bound = 1'000'000);

// Exact transition matrix on an enumerated class under `mix`, sparse rows of
// (column, probability) sorted by column.  Row r: p_identity on the diagonal
// plus each op's probability on the member it maps r to.
std::vector<std::vector<std::pair<int, Rational>>> exact_transition_matrix(
    const PopulationClass& cls, const SetCover& cover, const MixingDistribution& mix);

// Exact schema statistics over an enumerated class: the fraction of
// (member, slot) pairs whose rollout fits, and the fraction of members whose
// first slot fits.
Rational uniform_average_fraction(const PopulationClass& cls, const Schema& schema,
                                  const Problem& problem);
Rational first_position_fraction(const PopulationClass& cls, const Schema& schema,
                                 const Problem& problem);

// Class-id projection: every state replaced by its merged-class id, actions
// and terminals kept.  Value equality of projections is plain sequence
// equality.
Population project_classes(const Population& population, const Partition& partition);

// ---------------------------------------------------------------------------
// Empirical frequency runner
// ---------------------------------------------------------------------------

// One chain transition on a stepper (used by run_chain; exposed for tests).
// Returns the op applied, or nullptr for an identity step.
const CrossoverOp* chain_step(PopulationStepper& stepper,
                              const MixingDistribution& mix, Rng& rng);

struct FrequencyEstimate {
  Schema schema;
  std::int64_t hits = 0;              // fitting (population, slot) pairs seen
  std::int64_t individuals_seen = 0;  // population size x populations visited
  double phi_hat = 0.0;               // hits / individuals_seen
};

// Visits t populations X_0..X_{t-1} of the chain started at the problem's
// population inflated by m (X_0 included in the tally, t-1 transitions) and
// tallies, for every schema, how many (population, slot) pairs fit.  Fit
// counts are maintained incrementally from the slots each op changes.
// Schemata are written against the base problem; matching projects through
// the inflation.  Deterministic in (problem, mix parameters, t, seed, m).
std::vector<FrequencyEstimate> run_chain(const Problem& problem,
                                         const Rational& p_identity,
                                         std::int64_t t,
                                         const std::vector<Schema>& schemata,
                                         std::uint64_t seed, int m);

}  // namespace rollmix
