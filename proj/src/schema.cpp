#include "rollmix/schema.hpp"

#include <string>

#include "rollmix/errors.hpp"

namespace rollmix {

namespace {

void check_entry(const SchemaEntry& entry, const SetCover& cover,
                 const Partition& partition) {
  const int limit = entry.is_class ? partition.num_classes() : cover.num_sets();
  if (entry.id < 0 || entry.id >= limit)
    throw Error(ErrorKind::UnknownSchemaSymbol,
                std::string(entry.is_class ? "class" : "cover set") + " id " +
                    std::to_string(entry.id));
}

}  // namespace

bool fits(const Rollout& rollout, const Schema& schema, const Problem& problem) {
  if (schema.universal) return true;
  if (schema.action != rollout.action) return false;

  const int k = schema.height();
  if (schema.tail_wildcard) {
    if (rollout.height() < k) return false;
  } else if (rollout.height() != k) {
    return false;
  }

  // Schemata are written against the base problem.  Sets inflate in place
  // and class ids carry over, so a base state bs lies in base set j exactly
  // when its copy 0 (id bs * m) lies in the inflated set j; likewise for
  // classes.  For a base problem m == 1 and this is the identity.
  const int m = problem.inflation;
  for (int q = 0; q < k; ++q) {
    const SchemaEntry& entry = schema.path[q];
    check_entry(entry, problem.cover, problem.partition);
    const int rep = problem.base_state(rollout.states[q]) * m;
    const bool member =
        entry.is_class ? problem.partition.class_of[rep] == entry.id
                       : problem.cover.set_contains(entry.id, rep);
    if (!member) return false;
  }

  if (!schema.tail_wildcard) {
    const int base_terminals =
        static_cast<int>(problem.terminal_names.size()) / m;
    if (schema.tail_terminal < 0 || schema.tail_terminal >= base_terminals)
      throw Error(ErrorKind::UnknownSchemaSymbol,
                  "terminal id " + std::to_string(schema.tail_terminal));
    if (problem.base_terminal(rollout.terminal) != schema.tail_terminal)
      return false;
  }
  return true;
}

bool schema_geq(const Schema& upper, const Schema& lower) {
  if (upper == lower) return true;
  if (upper.universal) return true;
  if (lower.universal) return false;
  if (!upper.tail_wildcard) return false;
  if (upper.action != lower.action) return false;
  const int k = upper.height(), l = lower.height();
  if (l < k) return false;
  for (int q = 0; q < k; ++q)
    if (!(upper.path[q] == lower.path[q])) return false;
  // A "#"-tailed lower must strictly extend the path; a terminal-tailed
  // lower may share it.
  return lower.tail_wildcard ? l > k : true;
}

Schema coarsen(const Schema& schema, const SetCover& cover,
               const Partition& partition) {
  Schema out = schema;
  if (schema.universal) return out;
  for (auto& entry : out.path) {
    check_entry(entry, cover, partition);
    if (!entry.is_class) {
      entry.id = expansion(cover, partition, entry.id);
      entry.is_class = true;
    }
  }
  return out;
}

std::string schema_string(const Schema& schema, const Problem& problem) {
  if (schema.universal) return "#";
  std::string out = "(";
  out += problem.action_names[schema.action];
  out += "; ";
  for (size_t q = 0; q < schema.path.size(); ++q) {
    if (q) out += ">";
    const SchemaEntry& entry = schema.path[q];
    if (!entry.is_class) {
      out += problem.set_names[entry.id];
    } else {
      // A class displays as "*" plus the cover sets merged into it.
      out += "*";
      bool first = true;
      for (int j = 0; j < problem.cover.num_sets(); ++j)
        if (expansion(problem.cover, problem.partition, j) == entry.id) {
          if (!first) out += "+";
          out += problem.set_names[j];
          first = false;
        }
    }
  }
  out += "; ";
  if (schema.tail_wildcard)
    out += "#";
  else
    out += problem.terminal_names[schema.tail_terminal * problem.inflation];
  out += ")";
  return out;
}

}  // namespace rollmix
