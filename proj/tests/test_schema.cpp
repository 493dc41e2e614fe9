#include <doctest.h>

#include "rollmix/errors.hpp"
#include "rollmix/schema.hpp"
#include "fixtures.hpp"

using namespace rollmix;
using namespace rollmix::testfix;

namespace {

Rollout rollout_of(const Problem& p, const std::string& action,
                   const std::vector<std::string>& states,
                   const std::string& terminal) {
  Rollout r;
  r.action = action_id(p, action);
  for (const auto& name : states) r.states.push_back(state_id(p, name));
  r.terminal = terminal_id(p, terminal);
  return r;
}

}  // namespace

TEST_CASE("fit semantics on the worked example") {
  const Document doc = fig2();
  const Problem& p = doc.problem;

  // The long rollout produced by the worked crossover chain.
  const Rollout deep =
      rollout_of(p, "beta", {"6c", "3d", "1c", "3b", "7b", "5b"}, "f2");
  CHECK(fits(deep, make_schema(p, "beta", {"6", "3", "1", "4"}, "#"), p));
  // The original third rollout fails the same pattern at position 2.
  const Rollout orig = p.population.rollouts[2];
  CHECK_FALSE(fits(orig, make_schema(p, "beta", {"6", "3", "1", "4"}, "#"), p));

  const Schema pinned = make_schema(p, "beta", {"4", "7", "5"}, "f2");
  CHECK(fits(rollout_of(p, "beta", {"3b", "7a", "5b"}, "f2"), pinned, p));
  // Terminal tails pin the exact height and the label.
  CHECK_FALSE(fits(rollout_of(p, "beta", {"3b", "7a", "5b"}, "f3"), pinned, p));
  CHECK_FALSE(
      fits(rollout_of(p, "beta", {"3b", "7a", "5b", "7c"}, "f2"), pinned, p));
  CHECK(fits(rollout_of(p, "beta", {"3b", "7a", "5b", "7c"}, "f2"),
             make_schema(p, "beta", {"4", "7", "5"}, "#"), p));
  // Wrong action.
  CHECK_FALSE(fits(rollout_of(p, "alpha", {"3b", "7a", "5b"}, "f2"), pinned, p));
  // "#" tails allow exactly the path length as well.
  CHECK(fits(rollout_of(p, "beta", {"3b"}, "f2"),
             make_schema(p, "beta", {"4"}, "#"), p));
  // Height-0 patterns.
  CHECK(fits(orig, make_schema(p, "beta", {}, "#"), p));
  CHECK_FALSE(fits(orig, make_schema(p, "alpha", {}, "#"), p));

  // The universal pattern matches everything.
  for (const auto& r : p.population.rollouts)
    CHECK(fits(r, universal_schema(), p));

  // Class entries match through the merged class.
  CHECK(fits(orig, make_schema(p, "beta", {"*1"}, "#"), p));
  CHECK(fits(p.population.rollouts[1], make_schema(p, "alpha", {"*4", "*1"}, "#"), p));
}

TEST_CASE("fit matching projects through inflation") {
  const Document doc = fig2();
  const Problem p2 = inflate(doc.problem, 2);
  const Schema deep_schema = make_schema(doc.problem, "beta", {"6", "3"}, "#");
  const Schema exact_schema = make_schema(doc.problem, "gamma", {"5"}, "f4");

  for (int k = 0; k < 2; ++k) {
    CHECK(fits(p2.population.rollouts[2 * 2 + k], deep_schema, p2));
    CHECK(fits(p2.population.rollouts[3 * 2 + k], exact_schema, p2));
    CHECK_FALSE(fits(p2.population.rollouts[0 * 2 + k], deep_schema, p2));
  }
}

TEST_CASE("specialization order") {
  const Document doc = fig2();
  const Problem& p = doc.problem;
  const Schema fine = make_schema(p, "beta", {"4", "7", "5"}, "f2");
  const Schema prefix1 = make_schema(p, "beta", {"4"}, "#");
  const Schema prefix2 = make_schema(p, "beta", {"4", "7"}, "#");
  const Schema full_wild = make_schema(p, "beta", {"4", "7", "5"}, "#");

  CHECK(schema_geq(universal_schema(), fine));
  CHECK(schema_geq(universal_schema(), universal_schema()));
  CHECK_FALSE(schema_geq(fine, universal_schema()));

  CHECK(schema_geq(fine, fine));
  CHECK(schema_geq(full_wild, fine));
  CHECK(schema_geq(prefix1, fine));
  CHECK(schema_geq(prefix1, prefix2));
  CHECK(schema_geq(prefix2, fine));
  CHECK_FALSE(schema_geq(prefix2, prefix1));
  CHECK_FALSE(schema_geq(fine, full_wild));
  CHECK_FALSE(schema_geq(fine, prefix1));

  // Same-length "#" tails of different entries are incomparable.
  const Schema h = make_schema(p, "beta", {"6", "3", "1", "4"}, "#");
  const Schema g = make_schema(p, "beta", {"6", "3", "1", "6"}, "#");
  CHECK_FALSE(schema_geq(h, g));
  CHECK_FALSE(schema_geq(g, h));

  // Different actions never compare.
  CHECK_FALSE(schema_geq(make_schema(p, "alpha", {"4"}, "#"), fine));

  // A terminal tail is not a wildcard.
  CHECK_FALSE(schema_geq(make_schema(p, "beta", {"4"}, "f2"), fine));
}

TEST_CASE("specialization order implies fit containment") {
  Rng rng(0xc0a15eedu);
  for (int iter = 0; iter < 400; ++iter) {
    const Problem p = random_problem(rng);
    // Build a random lower schema, then an upper one by trimming its path
    // and wildcarding the tail; geq must hold and fits must be contained.
    Schema lower;
    lower.universal = false;
    lower.action = static_cast<int>(rng.next_below(p.num_actions()));
    const int len = static_cast<int>(rng.next_below(4));
    for (int q = 0; q < len; ++q) {
      SchemaEntry entry;
      entry.is_class = rng.next_below(2) == 0;
      entry.id = static_cast<int>(
          entry.is_class ? rng.next_below(p.partition.num_classes())
                         : rng.next_below(p.cover.num_sets()));
      lower.path.push_back(entry);
    }
    if (rng.next_below(2) == 0) {
      lower.tail_wildcard = false;
      lower.tail_terminal = static_cast<int>(rng.next_below(p.num_terminals()));
    }

    Schema upper = lower;
    upper.tail_wildcard = true;
    upper.tail_terminal = -1;
    const int keep = static_cast<int>(rng.next_below(len + 1));
    upper.path.resize(keep);
    if (upper.path.size() == lower.path.size() && lower.tail_wildcard) {
      REQUIRE(schema_geq(upper, lower));  // equal schemata
    } else {
      REQUIRE(schema_geq(upper, lower));
    }

    for (const auto& r : p.population.rollouts)
      if (fits(r, lower, p)) CHECK(fits(r, upper, p));
  }
}

TEST_CASE("coarsening replaces sets by their classes and is monotone") {
  const Document doc = fig2();
  const Problem& p = doc.problem;
  const Schema fine = make_schema(p, "beta", {"4", "7", "5"}, "f2");
  const Schema coarse = coarsen(fine, p.cover, p.partition);

  REQUIRE(coarse.path.size() == 3);
  for (const auto& entry : coarse.path) CHECK(entry.is_class);
  CHECK(coarse.path[0].id == class_of(p, "3b"));
  CHECK(coarse.path[1].id == class_of(p, "7a"));
  CHECK(coarse.path[2].id == class_of(p, "5a"));
  CHECK(coarse.action == fine.action);
  CHECK(coarse.tail_terminal == fine.tail_terminal);
  CHECK(coarsen(coarse, p.cover, p.partition) == coarse);  // idempotent
  CHECK(coarsen(universal_schema(), p.cover, p.partition) == universal_schema());

  Rng rng(0xc0445e9u);
  for (int iter = 0; iter < 200; ++iter) {
    const Problem q = random_problem(rng);
    Schema schema;
    schema.universal = false;
    schema.action = static_cast<int>(rng.next_below(q.num_actions()));
    const int len = static_cast<int>(rng.next_below(3));
    for (int i = 0; i < len; ++i) {
      SchemaEntry entry;
      entry.is_class = false;
      entry.id = static_cast<int>(rng.next_below(q.cover.num_sets()));
      schema.path.push_back(entry);
    }
    const Schema merged = coarsen(schema, q.cover, q.partition);
    for (const auto& r : q.population.rollouts)
      if (fits(r, schema, q)) CHECK(fits(r, merged, q));
  }
}

TEST_CASE("display strings") {
  const Document doc = fig2();
  const Problem& p = doc.problem;
  CHECK(schema_string(make_schema(p, "beta", {"4", "7", "5"}, "f2"), p) ==
        "(beta; 4>7>5; f2)");
  CHECK(schema_string(make_schema(p, "alpha", {"1"}, "#"), p) == "(alpha; 1; #)");
  CHECK(schema_string(universal_schema(), p) == "#");
  const Schema coarse =
      coarsen(make_schema(p, "beta", {"4", "7", "5"}, "f2"), p.cover, p.partition);
  CHECK(schema_string(coarse, p) == "(beta; *1+2+3+4+6>*7>*5; f2)");
}
