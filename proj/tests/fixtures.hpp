#pragma once

// Shared fixtures.  The main worked example ("fig2") follows the four-rollout
// population the closed-form results were hand-checked against; the rest are
// small designed populations whose reachable classes / statistics are known
// by hand:
//
//   t1    2 rollouts, one overlap pair            class size 4 (hand count)
//   t2    3 rollouts, chained overlapping sets    class in [10, 10^4]
//   hom1  3 homologous height-1 rollouts,         class 36 = |S3 x S3|
//         chain cover {x1,x2},{x2,x3}
//   hom2  3 homologous height-2 rollouts,         class 216 = |S3 x S3 x S3|
//         chain covers at both heights
//   phom  homologous but with two actions (the class average still matches
//         the closed form; the first slot's action is frozen)

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "rollmix/io.hpp"
#include "rollmix/rng.hpp"

namespace rollmix::testfix {

inline Document from_text(const char* text) {
  return parse_document(nlohmann::json::parse(text));
}

inline Document fig2() {
  static const char* text = R"({
    "states": ["1a","1b","1c","3b","3c","3d","6c","5a","5b","5c","7a","7b","7c"],
    "actions": ["alpha","beta","gamma"],
    "terminals": {"f1": "1", "f2": "2", "f3": "3", "f4": "4"},
    "cover": {
      "1": ["1a","1b","1c"],
      "2": ["1a"],
      "3": ["1a","3b","3c","3d"],
      "4": ["3b","3c"],
      "5": ["5a","5b","5c"],
      "6": ["3b","3c","6c"],
      "7": ["7a","7b","7c"]
    },
    "population": [
      {"action":"alpha","states":["1b","1a","7a"],"terminal":"f1"},
      {"action":"alpha","states":["3d","1c","3c","5a"],"terminal":"f2"},
      {"action":"beta","states":["6c","3b","7b","5b","7c"],"terminal":"f3"},
      {"action":"gamma","states":["5c"],"terminal":"f4"}
    ],
    "schemata": [
      {"name":"main","action":"beta","path":["4","7","5"],"tail":"f2"},
      {"name":"zero","action":"beta","path":["4","7","5"],"tail":"f1"},
      {"name":"all","tail":"#"}
    ]
  })";
  return from_text(text);
}

inline Document t1() {
  static const char* text = R"({
    "states": ["u1","u2","w"],
    "actions": ["alpha","beta"],
    "terminals": {"f1": "1", "f2": "2"},
    "cover": {"U": ["u1","u2"], "W": ["w"]},
    "population": [
      {"action":"alpha","states":["u1"],"terminal":"f1"},
      {"action":"beta","states":["u2","w"],"terminal":"f2"}
    ]
  })";
  return from_text(text);
}

inline Document t2() {
  static const char* text = R"({
    "states": ["p1","p2","q1","z"],
    "actions": ["alpha","beta","gamma"],
    "terminals": {"f1": "1", "f2": "2", "f3": "5/2"},
    "cover": {"O1": ["p1","p2"], "O2": ["q1","p2"], "Z": ["z"]},
    "population": [
      {"action":"alpha","states":["p1","q1"],"terminal":"f1"},
      {"action":"beta","states":["p2"],"terminal":"f2"},
      {"action":"gamma","states":["z"],"terminal":"f3"}
    ]
  })";
  return from_text(text);
}

inline Document hom1() {
  static const char* text = R"({
    "states": ["x1","x2","x3"],
    "actions": ["alpha"],
    "terminals": {"f1": "1", "f2": "2", "f3": "3", "fu": null},
    "cover": {"X": ["x1","x2"], "X2": ["x2","x3"]},
    "population": [
      {"action":"alpha","states":["x1"],"terminal":"f1"},
      {"action":"alpha","states":["x2"],"terminal":"f2"},
      {"action":"alpha","states":["x3"],"terminal":"f3"}
    ]
  })";
  return from_text(text);
}

inline Document hom2() {
  static const char* text = R"({
    "states": ["a1","a2","a3","b1","b2","b3"],
    "actions": ["alpha"],
    "terminals": {"f1": "1", "f2": "2", "f3": "3"},
    "cover": {
      "A1": ["a1","a2"], "A2": ["a2","a3"],
      "B1": ["b1","b2"], "B2": ["b2","b3"]
    },
    "population": [
      {"action":"alpha","states":["a1","b1"],"terminal":"f1"},
      {"action":"alpha","states":["a2","b2"],"terminal":"f2"},
      {"action":"alpha","states":["a3","b3"],"terminal":"f3"}
    ]
  })";
  return from_text(text);
}

inline Document phom() {
  static const char* text = R"({
    "states": ["x1","x2","y1","y2"],
    "actions": ["alpha","beta"],
    "terminals": {"f1": "1", "f2": "2"},
    "cover": {"X": ["x1","x2"], "Y": ["y1","y2"]},
    "population": [
      {"action":"alpha","states":["x1","y1"],"terminal":"f1"},
      {"action":"beta","states":["x2","y2"],"terminal":"f2"}
    ]
  })";
  return from_text(text);
}

// -- name lookups -----------------------------------------------------------

inline int state_id(const Problem& p, const std::string& name) {
  for (size_t i = 0; i < p.state_names.size(); ++i)
    if (p.state_names[i] == name) return static_cast<int>(i);
  return -1;
}

inline int set_id(const Problem& p, const std::string& name) {
  for (size_t i = 0; i < p.set_names.size(); ++i)
    if (p.set_names[i] == name) return static_cast<int>(i);
  return -1;
}

inline int action_id(const Problem& p, const std::string& name) {
  for (size_t i = 0; i < p.action_names.size(); ++i)
    if (p.action_names[i] == name) return static_cast<int>(i);
  return -1;
}

inline int terminal_id(const Problem& p, const std::string& name) {
  for (size_t i = 0; i < p.terminal_names.size(); ++i)
    if (p.terminal_names[i] == name) return static_cast<int>(i);
  return -1;
}

inline int class_of(const Problem& p, const std::string& state_name) {
  return p.partition.class_of[state_id(p, state_name)];
}

// Schema builders keyed by names.
inline Schema make_schema(const Problem& p, const std::string& action,
                          const std::vector<std::string>& path,
                          const std::string& tail) {
  Schema schema;
  schema.universal = false;
  schema.action = action_id(p, action);
  for (const auto& name : path) {
    SchemaEntry entry;
    if (!name.empty() && name[0] == '*') {
      entry.is_class = true;
      entry.id = expansion(p.cover, p.partition, set_id(p, name.substr(1)));
    } else {
      entry.is_class = false;
      entry.id = set_id(p, name);
    }
    schema.path.push_back(entry);
  }
  if (tail == "#") {
    schema.tail_wildcard = true;
  } else {
    schema.tail_wildcard = false;
    schema.tail_terminal = terminal_id(p, tail);
  }
  return schema;
}

inline Schema universal_schema() {
  Schema schema;
  schema.universal = true;
  return schema;
}

// -- random valid problems for property tests -------------------------------

inline Problem random_problem(Rng& rng) {
  Problem p;
  const int n = 3 + static_cast<int>(rng.next_below(8));  // 3..10 states
  for (int s = 0; s < n; ++s) p.state_names.push_back("s" + std::to_string(s));
  const int na = 1 + static_cast<int>(rng.next_below(3));
  for (int a = 0; a < na; ++a) p.action_names.push_back("a" + std::to_string(a));

  // Deal every state into one of b nonempty ordered rollouts.
  const int b =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
              std::min(n, 4))));
  std::vector<int> perm(n);
  for (int s = 0; s < n; ++s) perm[s] = s;
  for (int s = n - 1; s > 0; --s)
    std::swap(perm[s], perm[rng.next_below(static_cast<std::uint64_t>(s + 1))]);
  std::vector<int> cuts = {0, n};
  while (static_cast<int>(cuts.size()) < b + 1) {
    const int c = 1 + static_cast<int>(rng.next_below(n - 1));
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());

  const int extra_terminals = static_cast<int>(rng.next_below(2));
  for (int f = 0; f < b + extra_terminals; ++f) {
    p.terminal_names.push_back("t" + std::to_string(f));
    if (rng.next_below(4) == 0)
      p.payoffs.push_back(std::nullopt);
    else
      p.payoffs.push_back(Rational(static_cast<long>(f + 1), 2));
  }

  for (int i = 0; i < b; ++i) {
    Rollout r;
    r.action = static_cast<int>(rng.next_below(na));
    for (int k = cuts[i]; k < cuts[i + 1]; ++k) r.states.push_back(perm[k]);
    r.terminal = i;
    p.population.rollouts.push_back(std::move(r));
  }

  const int k = 1 + static_cast<int>(rng.next_below(5));
  std::vector<std::vector<int>> sets;
  for (int j = 0; j < k; ++j) {
    std::vector<int> members;
    for (int s = 0; s < n; ++s)
      if (rng.next_below(3) == 0) members.push_back(s);
    if (members.empty()) members.push_back(static_cast<int>(rng.next_below(n)));
    sets.push_back(std::move(members));
  }
  std::vector<char> covered(n, 0);
  for (const auto& members : sets)
    for (int s : members) covered[s] = 1;
  for (int s = 0; s < n; ++s)
    if (!covered[s]) sets.push_back({s});
  for (size_t j = 0; j < sets.size(); ++j)
    p.set_names.push_back("O" + std::to_string(j));

  p.cover = make_cover(n, std::move(sets));
  p.partition = build_partition(p.cover);
  validate_problem(p);
  return p;
}

// -- multiset views used by conservation checks -----------------------------

inline std::vector<int> sorted_states(const Population& pop) {
  std::vector<int> out;
  for (const auto& r : pop.rollouts)
    out.insert(out.end(), r.states.begin(), r.states.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> sorted_terminals(const Population& pop) {
  std::vector<int> out;
  for (const auto& r : pop.rollouts) out.push_back(r.terminal);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> slot_actions(const Population& pop) {
  std::vector<int> out;
  for (const auto& r : pop.rollouts) out.push_back(r.action);
  return out;
}

}  // namespace rollmix::testfix
