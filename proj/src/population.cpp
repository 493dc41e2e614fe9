#include "rollmix/population.hpp"

#include <algorithm>
#include <string>

#include "rollmix/errors.hpp"

namespace rollmix {

int total_states(const Population& population) {
  int total = 0;
  for (const auto& r : population.rollouts) total += r.height();
  return total;
}

void validate_problem(const Problem& problem) {
  const auto& pop = problem.population;
  if (pop.rollouts.empty())
    throw Error(ErrorKind::EmptyPopulation, "population has no rollouts");

  const int num_states = problem.cover.num_states;
  if (static_cast<int>(problem.state_names.size()) != num_states)
    throw Error(ErrorKind::ConfigError, "state name table does not match cover");
  if (static_cast<int>(problem.payoffs.size()) !=
      static_cast<int>(problem.terminal_names.size()))
    throw Error(ErrorKind::ConfigError, "payoff table does not match terminals");

  std::vector<char> state_seen(num_states, 0);
  std::vector<char> terminal_seen(problem.terminal_names.size(), 0);

  for (size_t i = 0; i < pop.rollouts.size(); ++i) {
    const auto& r = pop.rollouts[i];
    const std::string where = "rollout " + std::to_string(i);
    if (r.action < 0 || r.action >= problem.num_actions())
      throw Error(ErrorKind::UnknownAction, where);
    if (r.states.empty()) throw Error(ErrorKind::EmptyRollout, where);
    for (int s : r.states) {
      if (s < 0 || s >= num_states)
        throw Error(ErrorKind::UnknownState,
                    where + " references state id " + std::to_string(s));
      if (state_seen[s])
        throw Error(ErrorKind::DuplicateState,
                    "state '" + problem.state_names[s] + "' occurs twice");
      state_seen[s] = 1;
    }
    if (r.terminal < 0 || r.terminal >= problem.num_terminals())
      throw Error(ErrorKind::UnknownTerminal, where);
    if (terminal_seen[r.terminal])
      throw Error(ErrorKind::DuplicateTerminal,
                  "terminal '" + problem.terminal_names[r.terminal] +
                      "' occurs twice");
    terminal_seen[r.terminal] = 1;
  }

  // Closed world: the state space is exactly the states in play.
  for (int s = 0; s < num_states; ++s)
    if (!state_seen[s])
      throw Error(ErrorKind::MissingState,
                  "state '" + problem.state_names[s] +
                      "' never occurs in the population");
}

bool is_homologous(const Population& population, const SetCover& cover) {
  // Position of each state; every state occurs at most once in a valid
  // population, and states absent from it constrain nothing.
  std::vector<int> position(cover.num_states, -1);
  for (const auto& r : population.rollouts)
    for (int k = 0; k < r.height(); ++k) position[r.states[k]] = k;

  for (const auto& members : cover.sets) {
    int common = -1;
    for (int s : members) {
      if (position[s] < 0) continue;
      if (common == -1) common = position[s];
      else if (common != position[s]) return false;
    }
  }
  return true;
}

Problem inflate(const Problem& problem, int m) {
  if (m < 1)
    throw Error(ErrorKind::ConfigError, "inflation level must be >= 1");
  if (m == 1) return problem;
  if (problem.inflation != 1)
    throw Error(ErrorKind::ConfigError, "problem is already inflated");

  Problem out;
  out.inflation = m;
  out.action_names = problem.action_names;
  out.set_names = problem.set_names;

  const auto copy_name = [m](const std::string& base, int k) {
    return base + "@" + std::to_string(k + 1);
  };

  const int ns = problem.cover.num_states;
  out.state_names.reserve(ns * m);
  for (int s = 0; s < ns; ++s)
    for (int k = 0; k < m; ++k)
      out.state_names.push_back(copy_name(problem.state_names[s], k));

  const int nt = problem.num_terminals();
  out.terminal_names.reserve(nt * m);
  out.payoffs.reserve(nt * m);
  for (int f = 0; f < nt; ++f)
    for (int k = 0; k < m; ++k) {
      out.terminal_names.push_back(copy_name(problem.terminal_names[f], k));
      out.payoffs.push_back(problem.payoffs[f]);
    }

  // Each cover set inflates in place to all copies of its members, so set
  // ids (and therefore class ids, canonical by smallest state) carry over.
  std::vector<std::vector<int>> sets;
  sets.reserve(problem.cover.num_sets());
  for (const auto& members : problem.cover.sets) {
    std::vector<int> inflated;
    inflated.reserve(members.size() * m);
    for (int s : members)
      for (int k = 0; k < m; ++k) inflated.push_back(s * m + k);
    sets.push_back(std::move(inflated));
  }
  out.cover = make_cover(ns * m, std::move(sets));
  out.partition = build_partition(out.cover);

  out.population.rollouts.reserve(problem.population.size() * m);
  for (const auto& r : problem.population.rollouts)
    for (int k = 0; k < m; ++k) {
      Rollout copy;
      copy.action = r.action;
      copy.states.reserve(r.states.size());
      for (int s : r.states) copy.states.push_back(s * m + k);
      copy.terminal = r.terminal * m + k;
      out.population.rollouts.push_back(std::move(copy));
    }
  return out;
}

}  // namespace rollmix
