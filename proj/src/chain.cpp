#include "rollmix/chain.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "rollmix/errors.hpp"

namespace rollmix {

// ---------------------------------------------------------------------------
// Mixing distribution
// ---------------------------------------------------------------------------

const CrossoverOp* MixingDistribution::sample(Rng& rng) const {
  if (rng.next_unit() < p_identity_d) return nullptr;
  return &ops[rng.next_below(ops.size())];
}

MixingDistribution make_uniform_mixing(const SetCover& cover,
                                       const Rational& p_identity) {
  if (p_identity < 0 || p_identity > 1)
    throw Error(ErrorKind::ConfigError, "p_identity must lie in [0, 1]");
  MixingDistribution mix;
  mix.p_identity = p_identity;
  mix.p_identity_d = rational_double(p_identity);
  mix.ops = enumerate_generators(cover);
  if (mix.ops.empty()) {
    if (p_identity != 1)
      throw Error(ErrorKind::ConfigError,
                  "cover admits no crossover generator; p_identity must be 1");
    return mix;
  }
  const Rational each =
      (Rational(1) - p_identity) / Rational(static_cast<long>(mix.ops.size()));
  mix.op_probs.assign(mix.ops.size(), each);
  return mix;
}

// ---------------------------------------------------------------------------
// Packed populations
// ---------------------------------------------------------------------------
//
// Layout, u16 little-endian cells: [rollout count] then per rollout
// [action][height][states...][terminal].  The encoding is canonical, so
// string equality is population equality.

namespace {

constexpr int kCellLimit = 0xffff;

void append_cell(std::string& out, int value) {
  out.push_back(static_cast<char>(value & 0xff));
  out.push_back(static_cast<char>((value >> 8) & 0xff));
}

int read_cell(const std::string& s, size_t cell) {
  return static_cast<unsigned char>(s[2 * cell]) |
         (static_cast<unsigned char>(s[2 * cell + 1]) << 8);
}

void check_cell(int value) {
  if (value < 0 || value > kCellLimit)
    throw Error(ErrorKind::ConfigError,
                "population does not fit the packed encoding");
}

// A member decoded once so every generator can be applied to it cheaply.
struct DecodedMember {
  Population pop;
  std::vector<int> pos_rollout;   // state -> rollout index (-1 absent)
  std::vector<int> pos_offset;    // state -> offset
  std::vector<size_t> first_cell; // rollout -> cell index of its action
};

void decode_member(const std::string& packed, int num_states, DecodedMember& out) {
  out.pop = unpack_population(packed);
  out.pos_rollout.assign(num_states, -1);
  out.pos_offset.assign(num_states, -1);
  out.first_cell.assign(out.pop.size(), 0);
  size_t cell = 1;
  for (int i = 0; i < out.pop.size(); ++i) {
    out.first_cell[i] = cell;
    const auto& r = out.pop.rollouts[i];
    for (int k = 0; k < r.height(); ++k) {
      out.pos_rollout[r.states[k]] = i;
      out.pos_offset[r.states[k]] = k;
    }
    cell += 3 + r.states.size();
  }
}

// Applies `op` to a decoded member, writing the packed result without
// materializing the new population.  Returns false when the op acts as the
// identity.
bool packed_apply(const DecodedMember& x, const std::string& xpacked,
                  const CrossoverOp& op, std::string& out) {
  const int u = op.u, v = op.v;
  if (u == v) return false;
  if (u >= static_cast<int>(x.pos_rollout.size()) ||
      v >= static_cast<int>(x.pos_rollout.size()))
    return false;
  const int i1 = x.pos_rollout[u], i2 = x.pos_rollout[v];
  if (i1 < 0 || i2 < 0) return false;
  const int k = x.pos_offset[u], q = x.pos_offset[v];

  if (op.kind == CrossKind::SingleSwap) {
    out = xpacked;
    const size_t cell_u = x.first_cell[i1] + 2 + k;
    const size_t cell_v = x.first_cell[i2] + 2 + q;
    out[2 * cell_u] = static_cast<char>(v & 0xff);
    out[2 * cell_u + 1] = static_cast<char>((v >> 8) & 0xff);
    out[2 * cell_v] = static_cast<char>(u & 0xff);
    out[2 * cell_v + 1] = static_cast<char>((u >> 8) & 0xff);
    return true;
  }

  if (i1 == i2) return false;  // one-point inside one rollout: identity

  out.clear();
  out.reserve(xpacked.size());
  append_cell(out, x.pop.size());
  for (int j = 0; j < x.pop.size(); ++j) {
    const auto& r = x.pop.rollouts[j];
    if (j != i1 && j != i2) {
      const size_t from = 2 * x.first_cell[j];
      out.append(xpacked, from, 2 * (3 + r.states.size()));
      continue;
    }
    const auto& other = x.pop.rollouts[j == i1 ? i2 : i1];
    const int cut = j == i1 ? k : q;
    const int other_cut = j == i1 ? q : k;
    append_cell(out, r.action);
    append_cell(out, cut + other.height() - other_cut);
    for (int p = 0; p < cut; ++p) append_cell(out, r.states[p]);
    for (int p = other_cut; p < other.height(); ++p)
      append_cell(out, other.states[p]);
    append_cell(out, other.terminal);
  }
  return true;
}

}  // namespace

std::string pack_population(const Population& population) {
  std::string out;
  size_t cells = 1;
  for (const auto& r : population.rollouts) cells += 3 + r.states.size();
  out.reserve(2 * cells);
  check_cell(population.size());
  append_cell(out, population.size());
  for (const auto& r : population.rollouts) {
    check_cell(r.action);
    check_cell(r.height());
    check_cell(r.terminal);
    append_cell(out, r.action);
    append_cell(out, r.height());
    for (int s : r.states) {
      check_cell(s);
      append_cell(out, s);
    }
    append_cell(out, r.terminal);
  }
  return out;
}

Population unpack_population(const std::string& packed) {
  Population pop;
  size_t cell = 1;
  const int count = read_cell(packed, 0);
  pop.rollouts.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rollout r;
    r.action = read_cell(packed, cell++);
    const int height = read_cell(packed, cell++);
    r.states.reserve(height);
    for (int k = 0; k < height; ++k) r.states.push_back(read_cell(packed, cell++));
    r.terminal = read_cell(packed, cell++);
    pop.rollouts.push_back(std::move(r));
  }
  return pop;
}

// ---------------------------------------------------------------------------
// Class enumeration
// ---------------------------------------------------------------------------

Population PopulationClass::decode(int member_id) const {
  return unpack_population(members[member_id]);
}

int PopulationClass::find(const Population& population) const {
  auto it = index.find(pack_population(population));
  return it == index.end() ? -1 : it->second;
}

PopulationClass enumerate_class(const Population& population, const SetCover& cover,
                                std::int64_t bound) {
  if (bound < 1) throw Error(ErrorKind::ConfigError, "class bound must be >= 1");
  const auto ops = enumerate_generators(cover);

  PopulationClass cls;
  cls.members.push_back(pack_population(population));
  cls.index.emplace(cls.members[0], 0);

  DecodedMember x;
  std::string xpacked, ybuf;
  for (size_t head = 0; head < cls.members.size(); ++head) {
    xpacked = cls.members[head];  // copy: members may reallocate below
    decode_member(xpacked, cover.num_states, x);
    for (const auto& op : ops) {
      if (!packed_apply(x, xpacked, op, ybuf)) continue;
      if (cls.index.find(ybuf) != cls.index.end()) continue;
      if (static_cast<std::int64_t>(cls.members.size()) >= bound)
        throw Error(ErrorKind::ClassTooLarge,
                    "more than " + std::to_string(bound) +
                        " reachable populations");
      cls.index.emplace(ybuf, static_cast<int>(cls.members.size()));
      cls.members.push_back(ybuf);
    }
  }
  return cls;
}

std::vector<std::vector<std::pair<int, Rational>>> exact_transition_matrix(
    const PopulationClass& cls, const SetCover& cover,
    const MixingDistribution& mix) {
  const int n = static_cast<int>(cls.members.size());
  std::vector<std::vector<std::pair<int, Rational>>> rows(n);

  DecodedMember x;
  std::string ybuf;
  for (int r = 0; r < n; ++r) {
    std::map<int, Rational> acc;
    if (mix.p_identity > 0) acc[r] += mix.p_identity;
    decode_member(cls.members[r], cover.num_states, x);
    for (size_t i = 0; i < mix.ops.size(); ++i) {
      int target = r;
      if (packed_apply(x, cls.members[r], mix.ops[i], ybuf)) {
        auto it = cls.index.find(ybuf);
        if (it == cls.index.end())
          throw Error(ErrorKind::ConfigError,
                      "class is not closed under the generators");
        target = it->second;
      }
      acc[target] += mix.op_probs[i];
    }
    rows[r].reserve(acc.size());
    for (const auto& [column, probability] : acc)
      if (probability > 0) rows[r].emplace_back(column, probability);
  }
  return rows;
}

Rational uniform_average_fraction(const PopulationClass& cls, const Schema& schema,
                                  const Problem& problem) {
  std::int64_t hits = 0;
  std::int64_t slots = 0;
  for (const auto& packed : cls.members) {
    const Population pop = unpack_population(packed);
    slots += pop.size();
    for (const auto& r : pop.rollouts)
      if (fits(r, schema, problem)) ++hits;
  }
  return Rational(static_cast<long>(hits)) / Rational(static_cast<long>(slots));
}

Rational first_position_fraction(const PopulationClass& cls, const Schema& schema,
                                 const Problem& problem) {
  std::int64_t hits = 0;
  for (const auto& packed : cls.members) {
    const Population pop = unpack_population(packed);
    if (fits(pop.rollouts.front(), schema, problem)) ++hits;
  }
  return Rational(static_cast<long>(hits)) /
         Rational(static_cast<long>(cls.members.size()));
}

Population project_classes(const Population& population, const Partition& partition) {
  Population out = population;
  for (auto& r : out.rollouts)
    for (auto& s : r.states) s = partition.class_of[s];
  return out;
}

// ---------------------------------------------------------------------------
// Empirical frequency runner
// ---------------------------------------------------------------------------

const CrossoverOp* chain_step(PopulationStepper& stepper,
                              const MixingDistribution& mix, Rng& rng) {
  const CrossoverOp* op = mix.sample(rng);
  if (op) {
    std::array<int, 2> changed;
    stepper.apply(*op, changed);
  }
  return op;
}

std::vector<FrequencyEstimate> run_chain(const Problem& problem,
                                         const Rational& p_identity,
                                         std::int64_t t,
                                         const std::vector<Schema>& schemata,
                                         std::uint64_t seed, int m) {
  if (t < 1) throw Error(ErrorKind::ConfigError, "step count must be >= 1");
  const Problem inflated = inflate(problem, m);
  const MixingDistribution mix = make_uniform_mixing(inflated.cover, p_identity);

  PopulationStepper stepper(inflated.population);
  const int b_total = inflated.population.size();
  const int ns = static_cast<int>(schemata.size());

  // Per-schema fit flags per slot, maintained incrementally from the slots
  // each op changes.
  std::vector<std::vector<char>> flags(ns, std::vector<char>(b_total, 0));
  std::vector<std::int64_t> current(ns, 0);
  for (int s = 0; s < ns; ++s)
    for (int i = 0; i < b_total; ++i) {
      const bool f = fits(stepper.population().rollouts[i], schemata[s], inflated);
      flags[s][i] = f;
      current[s] += f;
    }

  std::vector<std::int64_t> hits(ns, 0);
  Rng rng(seed);
  std::array<int, 2> changed;
  for (std::int64_t step = 0; step < t; ++step) {
    for (int s = 0; s < ns; ++s) hits[s] += current[s];
    if (step + 1 == t) break;
    const CrossoverOp* op = mix.sample(rng);
    if (!op) continue;
    const int nc = stepper.apply(*op, changed);
    for (int c = 0; c < nc; ++c) {
      const int slot = changed[c];
      for (int s = 0; s < ns; ++s) {
        const bool f =
            fits(stepper.population().rollouts[slot], schemata[s], inflated);
        current[s] += static_cast<int>(f) - static_cast<int>(flags[s][slot]);
        flags[s][slot] = f;
      }
    }
  }

  std::vector<FrequencyEstimate> out(ns);
  for (int s = 0; s < ns; ++s) {
    out[s].schema = schemata[s];
    out[s].hits = hits[s];
    out[s].individuals_seen = static_cast<std::int64_t>(b_total) * t;
    out[s].phi_hat = static_cast<double>(hits[s]) /
                     static_cast<double>(out[s].individuals_seen);
  }
  return out;
}

}  // namespace rollmix
