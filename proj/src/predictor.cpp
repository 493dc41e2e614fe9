#include "rollmix/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rollmix/errors.hpp"

namespace rollmix {

namespace {

Rational ratio(std::int64_t num, std::int64_t den) {
  return Rational(static_cast<long>(num)) / Rational(static_cast<long>(den));
}

// Resolve a path entry to its merged class and the |O|/|class| factor
// (exactly 1 for class entries).
std::pair<int, Rational> resolve_entry(const SchemaEntry& entry,
                                       const OrderTable& table,
                                       const SetCover& cover,
                                       const Partition& partition) {
  if (entry.is_class) {
    if (entry.id < 0 || entry.id >= partition.num_classes())
      throw Error(ErrorKind::UnknownSchemaSymbol,
                  "class id " + std::to_string(entry.id));
    return {entry.id, Rational(1)};
  }
  if (entry.id < 0 || entry.id >= cover.num_sets())
    throw Error(ErrorKind::UnknownSchemaSymbol,
                "cover set id " + std::to_string(entry.id));
  const int cls = expansion(cover, partition, entry.id);
  return {cls, ratio(table.set_size[entry.id], table.class_size[cls])};
}

}  // namespace

Rational limiting_frequency(const OrderTable& table, const Schema& schema,
                            const SetCover& cover, const Partition& partition,
                            int inflation) {
  if (schema.universal) return Rational(1);
  if (schema.action < 0 || schema.action >= table.num_actions())
    throw Error(ErrorKind::UnknownSchemaSymbol,
                "action id " + std::to_string(schema.action));
  if (!schema.tail_wildcard && schema.tail_terminal < 0)
    throw Error(ErrorKind::UnknownSchemaSymbol, "terminal id -1");

  const std::int64_t numb = table.numb[schema.action];
  if (numb == 0) return Rational(0);

  Rational freq = ratio(numb, table.b);
  const int k = schema.height();
  if (k == 0) {
    // Height-0 pattern: any development of the action for "#", nothing for a
    // terminal tail (a rollout always has at least one state).
    return schema.tail_wildcard ? freq : Rational(0);
  }

  int prev_class = -1;
  for (int q = 0; q < k; ++q) {
    auto [cls, size_factor] = resolve_entry(schema.path[q], table, cover, partition);
    freq *= size_factor;
    if (q == 0) {
      const std::int64_t count = table.order_action[schema.action][cls];
      if (count == 0) return Rational(0);
      freq *= ratio(count, numb);
    } else {
      const std::int64_t count = table.order_class[prev_class][cls];
      if (count == 0) return Rational(0);
      freq *= ratio(count, table.order_class_total[prev_class]);
    }
    prev_class = cls;
  }

  if (!schema.tail_wildcard) {
    // The tail names a base terminal; in an inflated table each of its
    // copies counts as one matching successor occurrence.
    std::int64_t matches = 0;
    for (int f : table.succ_terminals[prev_class])
      if (f / inflation == schema.tail_terminal) ++matches;
    if (matches == 0) return Rational(0);
    freq *= ratio(matches, table.order_class_total[prev_class]);
  }
  return freq;
}

// ---------------------------------------------------------------------------
// Class-level absorbing chain
// ---------------------------------------------------------------------------

ClassChain build_class_chain(const OrderTable& table) {
  ClassChain chain;
  chain.start.resize(table.num_actions());
  chain.step_class.resize(table.num_classes());
  chain.step_term.resize(table.num_classes());

  for (int a = 0; a < table.num_actions(); ++a) {
    if (table.numb[a] == 0) continue;  // action absent: no start row
    for (int c = 0; c < table.num_classes(); ++c)
      if (table.order_action[a][c] > 0)
        chain.start[a].push_back({c, ratio(table.order_action[a][c], table.numb[a])});
  }
  for (int c = 0; c < table.num_classes(); ++c) {
    const std::int64_t total = table.order_class_total[c];
    for (int d = 0; d < table.num_classes(); ++d)
      if (table.order_class[c][d] > 0)
        chain.step_class[c].push_back({d, ratio(table.order_class[c][d], total)});
    for (int f : table.succ_terminals[c])
      chain.step_term[c].push_back({f, ratio(1, total)});
  }
  return chain;
}

SampledPath sample_class_rollout(const ClassChain& chain, const OrderTable& table,
                                 Rng& rng, int height_cap) {
  // Sampling uses the table's integer counts directly; they define exactly
  // the chain's distributions, with no rational-to-double rounding at all.
  (void)chain;
  SampledPath path;

  // Action with probability numb(a)/b, by exact integer counts.
  std::int64_t pick = static_cast<std::int64_t>(
      rng.next_below(static_cast<std::uint64_t>(table.b)));
  for (int a = 0; a < table.num_actions(); ++a) {
    pick -= table.numb[a];
    if (pick < 0) {
      path.action = a;
      break;
    }
  }

  // First class from the action's start counts.
  std::int64_t draw = static_cast<std::int64_t>(
      rng.next_below(static_cast<std::uint64_t>(table.numb[path.action])));
  int current = -1;
  for (int c = 0; c < table.num_classes(); ++c) {
    draw -= table.order_action[path.action][c];
    if (draw < 0) {
      current = c;
      break;
    }
  }
  path.classes.push_back(current);

  // Walk: each occurrence of a successor (class occurrence or terminal
  // label) of the current class is equally likely.  A path that would grow
  // beyond height_cap classes is cut off instead; one that absorbs at
  // exactly height_cap completes normally.
  while (true) {
    std::int64_t step = static_cast<std::int64_t>(rng.next_below(
        static_cast<std::uint64_t>(table.order_class_total[current])));
    int next = -1;
    for (int d = 0; d < table.num_classes(); ++d) {
      step -= table.order_class[current][d];
      if (step < 0) {
        next = d;
        break;
      }
    }
    if (next >= 0) {
      if (static_cast<int>(path.classes.size()) >= height_cap) {
        path.truncated = true;
        return path;
      }
      path.classes.push_back(next);
      current = next;
      continue;
    }
    // Remaining mass: terminals, one occurrence each.
    path.terminal = table.succ_terminals[current][step];
    return path;
  }
}

// ---------------------------------------------------------------------------
// Expected payoff
// ---------------------------------------------------------------------------

namespace {

std::vector<int> reachable_classes(const ClassChain& chain, int action) {
  std::vector<char> seen(chain.step_class.size(), 0);
  std::vector<int> stack, order;
  for (const auto& entry : chain.start[action])
    if (!seen[entry.first]) {
      seen[entry.first] = 1;
      stack.push_back(entry.first);
    }
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    order.push_back(c);
    for (const auto& entry : chain.step_class[c])
      if (!seen[entry.first]) {
        seen[entry.first] = 1;
        stack.push_back(entry.first);
      }
  }
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

Rational expected_payoff_exact(const ClassChain& chain, const OrderTable& table,
                               const std::vector<std::optional<Rational>>& payoffs,
                               int action) {
  if (action < 0 || action >= table.num_actions() || table.numb[action] == 0)
    throw Error(ErrorKind::ConfigError,
                "no rollout carries action id " + std::to_string(action));

  const std::vector<int> classes = reachable_classes(chain, action);
  const int n = static_cast<int>(classes.size());
  std::vector<int> local(table.num_classes(), -1);
  for (int i = 0; i < n; ++i) local[classes[i]] = i;

  // Every reachable class must be able to absorb: walk backwards from the
  // classes with a direct terminal successor.
  {
    std::vector<char> absorbs(n, 0);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
      if (!chain.step_term[classes[i]].empty()) {
        absorbs[i] = 1;
        stack.push_back(i);
      }
    // Reverse adjacency within the reachable set.
    std::vector<std::vector<int>> rev(n);
    for (int i = 0; i < n; ++i)
      for (const auto& entry : chain.step_class[classes[i]])
        if (local[entry.first] >= 0) rev[local[entry.first]].push_back(i);
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j : rev[i])
        if (!absorbs[j]) {
          absorbs[j] = 1;
          stack.push_back(j);
        }
    }
    for (int i = 0; i < n; ++i)
      if (!absorbs[i])
        throw Error(ErrorKind::TerminalUnreachable,
                    "class id " + std::to_string(classes[i]));
  }

  // V = S V + c  =>  (I - S) V = c, with c the one-step terminal payoff.
  std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> rhs(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    mat[i][i] = Rational(1);
    for (const auto& [d, p] : chain.step_class[classes[i]])
      if (local[d] >= 0) mat[i][local[d]] -= p;
    for (const auto& [f, p] : chain.step_term[classes[i]]) {
      if (f < 0 || f >= static_cast<int>(payoffs.size()) || !payoffs[f])
        throw Error(ErrorKind::MissingPayoff,
                    "terminal id " + std::to_string(f));
      rhs[i] += p * (*payoffs[f]);
    }
  }

  // Gaussian elimination with partial (first-nonzero) pivoting, exact.
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (mat[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0)
      throw Error(ErrorKind::TerminalUnreachable,
                  "singular absorption system");  // cannot happen if absorbing
    std::swap(mat[col], mat[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = col + 1; row < n; ++row) {
      if (mat[row][col] == 0) continue;
      const Rational factor = mat[row][col] / mat[col][col];
      for (int k = col; k < n; ++k) mat[row][k] -= factor * mat[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  std::vector<Rational> sol(n, Rational(0));
  for (int row = n - 1; row >= 0; --row) {
    Rational acc = rhs[row];
    for (int k = row + 1; k < n; ++k) acc -= mat[row][k] * sol[k];
    sol[row] = acc / mat[row][row];
  }

  Rational expected(0);
  for (const auto& [c, p] : chain.start[action]) expected += p * sol[local[c]];
  return expected;
}

PayoffEstimate estimate_payoff_mc(const ClassChain&, const OrderTable& table,
                                  const std::vector<std::optional<Rational>>& payoffs,
                                  int action, std::int64_t samples, Rng& rng,
                                  int height_cap) {
  // The walk samples the integer count tables directly; they induce exactly
  // the chain's rows, without rational-to-double conversion per draw.
  if (action < 0 || action >= table.num_actions() || table.numb[action] == 0)
    throw Error(ErrorKind::ConfigError,
                "no rollout carries action id " + std::to_string(action));

  // Terminal payoffs as doubles, resolved lazily so unreachable terminals
  // without payoffs stay legal.
  std::vector<double> cache(payoffs.size(), 0.0);
  std::vector<char> cached(payoffs.size(), 0);

  PayoffEstimate est;
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    // Conditioned on the action: start straight from its first-class counts.
    std::int64_t draw = static_cast<std::int64_t>(
        rng.next_below(static_cast<std::uint64_t>(table.numb[action])));
    int current = -1;
    for (int c = 0; c < table.num_classes(); ++c) {
      draw -= table.order_action[action][c];
      if (draw < 0) {
        current = c;
        break;
      }
    }
    int height = 1;
    int terminal = -1;
    while (true) {
      std::int64_t step = static_cast<std::int64_t>(rng.next_below(
          static_cast<std::uint64_t>(table.order_class_total[current])));
      int next = -1;
      for (int d = 0; d < table.num_classes(); ++d) {
        step -= table.order_class[current][d];
        if (step < 0) {
          next = d;
          break;
        }
      }
      if (next >= 0) {
        if (height >= height_cap) break;  // would exceed the cap: truncate
        current = next;
        ++height;
        continue;
      }
      terminal = table.succ_terminals[current][step];
      break;
    }
    if (terminal < 0) {
      est.truncated += 1;
      continue;
    }
    if (!cached[terminal]) {
      if (!payoffs[terminal])
        throw Error(ErrorKind::MissingPayoff,
                    "terminal id " + std::to_string(terminal));
      cache[terminal] = rational_double(*payoffs[terminal]);
      cached[terminal] = 1;
    }
    const double value = cache[terminal];
    est.used += 1;
    sum += value;
    sum_sq += value * value;
  }

  if (est.used == 0)
    throw Error(ErrorKind::AllTruncated,
                std::to_string(est.truncated) + " samples hit the height cap");
  est.mean = sum / static_cast<double>(est.used);
  if (est.used > 1) {
    const double var =
        (sum_sq - sum * sum / static_cast<double>(est.used)) /
        static_cast<double>(est.used - 1);
    est.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(est.used));
  }
  return est;
}

}  // namespace rollmix
