#include <doctest.h>

#include <numeric>

#include "rollmix/order_table.hpp"
#include "rollmix/recombination.hpp"
#include "fixtures.hpp"

using namespace rollmix;
using namespace rollmix::testfix;

TEST_CASE("worked-example occurrence counts") {
  const Document doc = fig2();
  const Problem& p = doc.problem;
  const OrderTable table = build_order_table(p);

  const int A = class_of(p, "1a");
  const int five = class_of(p, "5a");
  const int seven = class_of(p, "7a");
  const int alpha = action_id(p, "alpha");
  const int beta = action_id(p, "beta");
  const int gamma = action_id(p, "gamma");

  CHECK(table.b == 4);
  CHECK(table.numb[alpha] == 2);
  CHECK(table.numb[beta] == 1);
  CHECK(table.numb[gamma] == 1);

  CHECK(table.order_action[alpha][A] == 2);
  CHECK(table.order_action[beta][A] == 1);
  CHECK(table.order_action[gamma][five] == 1);
  CHECK(table.order_action[alpha][five] == 0);

  CHECK(table.order_class[A][A] == 4);
  CHECK(table.order_class[A][seven] == 2);
  CHECK(table.order_class[A][five] == 1);
  CHECK(table.order_class[seven][five] == 1);
  CHECK(table.order_class[five][seven] == 1);
  CHECK(table.order_class[five][A] == 0);
  CHECK(table.order_class[seven][A] == 0);

  CHECK(table.succ_terminals[seven] ==
        std::vector<int>{terminal_id(p, "f1"), terminal_id(p, "f3")});
  CHECK(table.succ_terminals[five] ==
        std::vector<int>{terminal_id(p, "f2"), terminal_id(p, "f4")});
  CHECK(table.succ_terminals[A].empty());

  CHECK(table.order_class_total[A] == 7);
  CHECK(table.order_class_total[five] == 3);
  CHECK(table.order_class_total[seven] == 3);

  CHECK(table.class_size[A] == 7);
  CHECK(table.set_size[set_id(p, "1")] == 3);
  CHECK(table.set_size[set_id(p, "2")] == 1);
  CHECK(table.set_size[set_id(p, "3")] == 4);
  CHECK(table.set_size[set_id(p, "4")] == 2);

  CHECK(table.down_class(A) == std::vector<int>{A, five, seven});
  CHECK(table.down_class(five) == std::vector<int>{seven});
  CHECK(table.down_class(seven) == std::vector<int>{five});
  CHECK(table.down_action(alpha) == std::vector<int>{A});
}

TEST_CASE("structural identities hold on random populations") {
  Rng rng(0x04de47ab1eu);
  for (int iter = 0; iter < 300; ++iter) {
    const Problem p = random_problem(rng);
    const OrderTable table = build_order_table(p);

    CHECK(std::accumulate(table.numb.begin(), table.numb.end(), std::int64_t{0}) ==
          table.b);
    // First states account for every rollout of each action.
    CHECK(table.order_action_total == table.numb);
    // Closed world: every member of a class occurs and is followed by
    // exactly one thing, so successor counts add up to the class size.
    CHECK(table.order_class_total == table.class_size);
  }
}

TEST_CASE("class-level counts are invariant under both moves") {
  Rng rng(0x1435a11bu);

  const auto check_invariant = [](const Problem& p, Rng& r) {
    const OrderTable before = build_order_table(p);
    const auto ops = enumerate_generators(p.cover);
    if (ops.empty()) return;
    for (int rep = 0; rep < 25; ++rep) {
      const auto& op = ops[r.next_below(ops.size())];
      Problem moved = p;
      moved.population = apply_op(p.population, p.cover, op);
      const OrderTable after = build_order_table(moved);
      CHECK(after.numb == before.numb);
      CHECK(after.order_action == before.order_action);
      CHECK(after.order_class == before.order_class);
      CHECK(after.succ_terminals == before.succ_terminals);
      CHECK(after.order_class_total == before.order_class_total);
    }
  };

  check_invariant(fig2().problem, rng);
  for (int iter = 0; iter < 100; ++iter) check_invariant(random_problem(rng), rng);
}

TEST_CASE("inflation scales every count by m") {
  const Document doc = fig2();
  const Problem& base = doc.problem;
  const OrderTable base_table = build_order_table(base);

  for (int m : {1, 2, 3, 5}) {
    const Problem pm = inflate(base, m);
    const OrderTable table = build_order_table(pm);
    CHECK(table.b == base_table.b * m);
    for (int a = 0; a < base.num_actions(); ++a) {
      CHECK(table.numb[a] == base_table.numb[a] * m);
      for (int c = 0; c < base.partition.num_classes(); ++c)
        CHECK(table.order_action[a][c] == base_table.order_action[a][c] * m);
    }
    for (int c = 0; c < base.partition.num_classes(); ++c) {
      CHECK(table.class_size[c] == base_table.class_size[c] * m);
      CHECK(table.order_class_total[c] == base_table.order_class_total[c] * m);
      for (int d = 0; d < base.partition.num_classes(); ++d)
        CHECK(table.order_class[c][d] == base_table.order_class[c][d] * m);
      CHECK(table.succ_terminals[c].size() ==
            base_table.succ_terminals[c].size() * m);
      for (int f : table.succ_terminals[c]) {
        const int base_f = pm.base_terminal(f);
        CHECK(std::binary_search(base_table.succ_terminals[c].begin(),
                                 base_table.succ_terminals[c].end(), base_f));
      }
    }
    for (int j = 0; j < base.cover.num_sets(); ++j)
      CHECK(table.set_size[j] == base_table.set_size[j] * m);
  }

  // The pinned example: at m = 3 the in-class successor count reaches 12.
  const OrderTable t3 = build_order_table(inflate(base, 3));
  const int A = class_of(base, "1a");
  CHECK(t3.order_class[A][A] == 12);
}
