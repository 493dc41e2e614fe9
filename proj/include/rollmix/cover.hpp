#pragma once

// Set covers over a finite state space and the partition they induce.
//
// A cover is a family of nonempty subsets of {0..num_states-1} whose union is
// the whole space; sets may overlap arbitrarily.  Two states are similar when
// some cover set contains both.  The transitive closure of similarity is an
// equivalence; its classes ("merged classes") are what the limiting-frequency
// machinery works with.  Each class is the union of the cover sets that got
// chained together, so every cover set expands to a unique class.

#include <optional>
#include <vector>

#include "rollmix/rational.hpp"

namespace rollmix {

struct SetCover {
  int num_states = 0;
  std::vector<std::vector<int>> sets;           // per set: sorted member states
  std::vector<std::vector<int>> sets_of_state;  // per state: sorted set ids

  int num_sets() const { return static_cast<int>(sets.size()); }
  bool set_contains(int set_id, int state) const;
};

// Validates and indexes a cover: every set nonempty, members in range and
// deduplicated, every state covered.  Throws Error{EmptyCoverSet,
// UnknownState, NotCovering}.
SetCover make_cover(int num_states, std::vector<std::vector<int>> sets);

struct Partition {
  std::vector<int> class_of;               // state -> class id
  std::vector<std::vector<int>> classes;   // class id -> sorted states

  int num_classes() const { return static_cast<int>(classes.size()); }
  int class_size(int class_id) const {
    return static_cast<int>(classes[class_id].size());
  }
};

// Connected components of the "shares a cover set" graph, computed with a
// union-find over the cover sets.  Class ids are assigned in order of each
// class's smallest state, so they are canonical for a given cover.
Partition build_partition(const SetCover& cover);

// The unique class containing every member of the given cover set.
int expansion(const SetCover& cover, const Partition& partition, int set_id);

// Ids of the cover sets containing `state` (sorted).  A state similar to
// nothing but itself still lists the sets that contain it.
const std::vector<int>& similarity_sets_of(const SetCover& cover, int state);

// True iff `set_id` is valid and contains both u and v (u == v allowed; the
// induced crossover is then the identity).
bool compatible_triple(const SetCover& cover, int set_id, int u, int v);

// ---------------------------------------------------------------------------
// Pseudometric-induced covers
// ---------------------------------------------------------------------------

// Symmetric matrix of pairwise distances; d(x,x) = 0 required, distinct
// points at distance zero allowed (pseudometric, not metric).
struct Pseudometric {
  int num_states = 0;
  std::vector<Rational> dist;  // row-major num_states × num_states

  const Rational& at(int a, int b) const { return dist[a * num_states + b]; }
};

// Validates the axioms (zero diagonal, nonnegativity, symmetry, triangle
// inequality); throws Error{PseudometricViolation} naming the first witness.
void validate_pseudometric(const Pseudometric& metric);

// Cover by open balls B(x, eps) = { y : d(x,y) < eps } for every state x and
// every radius in `radii` (all radii must be positive).  Duplicate balls are
// merged: each distinct point set appears once.  Sets are emitted in order of
// first appearance over (radius-major, center-minor) generation, so the
// result is deterministic.  `provenance`, when non-null, receives for each
// emitted set the (center, radius-index) pairs that generated it.
SetCover cover_from_pseudometric(
    const Pseudometric& metric, const std::vector<Rational>& radii,
    std::vector<std::vector<std::pair<int, int>>>* provenance = nullptr);

}  // namespace rollmix
