#include "rollmix/order_table.hpp"

#include <algorithm>
#include <string>

#include "rollmix/errors.hpp"

namespace rollmix {

std::vector<int> OrderTable::down_action(int action) const {
  std::vector<int> out;
  for (int c = 0; c < num_classes(); ++c)
    if (order_action[action][c] > 0) out.push_back(c);
  return out;
}

std::vector<int> OrderTable::down_class(int class_id) const {
  std::vector<int> out;
  for (int c = 0; c < num_classes(); ++c)
    if (order_class[class_id][c] > 0) out.push_back(c);
  return out;
}

OrderTable build_order_table(const Population& population, const SetCover& cover,
                             const Partition& partition, int num_actions) {
  const int num_classes = partition.num_classes();
  OrderTable table;
  table.b = population.size();
  table.numb.assign(num_actions, 0);
  table.order_action.assign(num_actions, std::vector<std::int64_t>(num_classes, 0));
  table.order_class.assign(num_classes, std::vector<std::int64_t>(num_classes, 0));
  table.succ_terminals.assign(num_classes, {});
  table.order_action_total.assign(num_actions, 0);
  table.order_class_total.assign(num_classes, 0);

  table.class_size.assign(num_classes, 0);
  for (int c = 0; c < num_classes; ++c)
    table.class_size[c] = partition.class_size(c);
  table.set_size.assign(cover.num_sets(), 0);
  for (int j = 0; j < cover.num_sets(); ++j)
    table.set_size[j] = static_cast<std::int64_t>(cover.sets[j].size());

  for (const auto& r : population.rollouts) {
    if (r.action < 0 || r.action >= num_actions)
      throw Error(ErrorKind::UnknownAction,
                  "action id " + std::to_string(r.action));
    table.numb[r.action] += 1;
    const int first = partition.class_of[r.states.front()];
    table.order_action[r.action][first] += 1;
    for (int k = 0; k + 1 < r.height(); ++k) {
      const int from = partition.class_of[r.states[k]];
      const int to = partition.class_of[r.states[k + 1]];
      table.order_class[from][to] += 1;
    }
    table.succ_terminals[partition.class_of[r.states.back()]].push_back(r.terminal);
  }

  for (auto& terms : table.succ_terminals) std::sort(terms.begin(), terms.end());

  for (int a = 0; a < num_actions; ++a)
    for (int c = 0; c < num_classes; ++c)
      table.order_action_total[a] += table.order_action[a][c];
  for (int c = 0; c < num_classes; ++c) {
    for (int d = 0; d < num_classes; ++d)
      table.order_class_total[c] += table.order_class[c][d];
    // Terminal labels are globally distinct, so each occurrence is one label.
    table.order_class_total[c] +=
        static_cast<std::int64_t>(table.succ_terminals[c].size());
  }
  return table;
}

}  // namespace rollmix
