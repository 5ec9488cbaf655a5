#include <doctest.h>

#include <string>
#include <vector>

#include "statbench/reactive.hpp"
#include "support/checks.hpp"

using statbench::reactive::CycleError;
using statbench::reactive::NodeError;
using G = statbench::reactive::Graph<int>;

TEST_CASE("inputs") {
  G g;
  g.register_input("a", 3);
  CHECK(g.read("a") == 3);
  CHECK_THROWS_AS(g.register_input("a", 4), statbench::ConflictError);
  CHECK_THROWS_AS(g.read("nope"), statbench::NotFoundError);
  CHECK_THROWS_AS(g.set_input("nope", 1), statbench::NotFoundError);
}

TEST_CASE("computed nodes evaluate lazily and cache") {
  G g;
  g.register_input("a", 1);
  g.register_computed("c", [](G& gg) { return gg.read("a") + 1; });
  CHECK(g.evaluations("c") == 0);
  CHECK(g.read("c") == 2);
  CHECK(g.read("c") == 2);
  CHECK(g.evaluations("c") == 1);
  g.set_input("a", 5);
  CHECK(g.is_dirty("c"));  // nobody observes it
  CHECK(g.evaluations("c") == 1);
  CHECK(g.read("c") == 6);
  CHECK_THROWS_AS(g.set_input("c", 1), statbench::Error);
}

TEST_CASE("reads outside evaluation record no edges") {
  G g;
  g.register_input("a", 1);
  g.register_computed("c", [](G& gg) { return gg.read("a"); });
  g.read("a");
  g.read("c");
  CHECK(g.dependencies("c") == std::set<std::string>{"a"});
  CHECK(g.dependencies("a").empty());
}

TEST_CASE("diamond recomputes once and fires its observer once") {
  G g;
  g.register_input("a", 1);
  g.register_computed("b", [](G& gg) { return gg.read("a") * 2; });
  g.register_computed("c", [](G& gg) { return gg.read("a") * 3; });
  g.register_computed("d", [](G& gg) { return gg.read("b") + gg.read("c"); });
  std::vector<int> seen;
  g.register_observer("o", [&](G& gg) { seen.push_back(gg.read("d")); });
  CHECK(seen == std::vector<int>{5});

  const auto r = g.set_input("a", 2);
  CHECK(seen == std::vector<int>{5, 10});
  CHECK(g.evaluations("d") == 2);
  CHECK(r.effects_run == std::vector<std::string>{"o"});
  CHECK(std::count(r.recomputed.begin(), r.recomputed.end(), "d") == 1);

  const auto noop = g.set_input("a", 2);
  CHECK(noop.empty());
  CHECK(noop.recomputed.empty());
  CHECK(seen.size() == 2);
}

TEST_CASE("chain recomputes in topological order") {
  G g;
  g.register_input("x", 0);
  const int k = 6;
  for (int i = 1; i <= k; ++i) {
    const std::string prev = i == 1 ? "x" : "n" + std::to_string(i - 1);
    g.register_computed("n" + std::to_string(i), [prev](G& gg) { return gg.read(prev) + 1; });
  }
  g.register_observer("o", [&](G& gg) { gg.read("n" + std::to_string(k)); });
  const auto r = g.set_input("x", 10);
  REQUIRE(r.recomputed.size() == static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) CHECK(r.recomputed[static_cast<std::size_t>(i - 1)] == "n" + std::to_string(i));
  CHECK(g.read("n6") == 16);
}

TEST_CASE("conditional reads drop dependencies") {
  G g;
  g.register_input("f", 1);
  g.register_input("a", 10);
  g.register_computed("c", [](G& gg) { return gg.read("f") ? gg.read("a") : -1; });
  int runs = 0;
  g.register_observer("o", [&](G& gg) {
    gg.read("c");
    ++runs;
  });
  g.set_input("f", 0);
  CHECK(g.dependencies("c") == std::set<std::string>{"f"});
  const auto evals = g.evaluations("c");
  const auto r = g.set_input("a", 11);
  CHECK_FALSE(g.is_dirty("c"));
  CHECK(g.evaluations("c") == evals);
  CHECK(r.effects_run.empty());
  CHECK(runs == 2);
}

TEST_CASE("observers") {
  G g;
  g.register_input("a", 0);
  std::vector<int> log;
  g.register_observer("log", [&](G& gg) { log.push_back(gg.read("a")); });
  int idle = 0;
  g.register_observer("idle", [&](G&) { ++idle; });
  for (int v : {1, 1, 2, 2, 3}) g.set_input("a", v);
  CHECK(log == std::vector<int>{0, 1, 2, 3});
  CHECK(idle == 1);
  CHECK_THROWS_AS(g.read("log"), statbench::Error);
}

TEST_CASE("observers run in registration order") {
  G g;
  g.register_input("a", 0);
  std::string order;
  g.register_observer("second", [&](G& gg) { gg.read("a"), order += "1"; });
  g.register_observer("first", [&](G& gg) { gg.read("a"), order += "2"; });
  order.clear();
  g.set_input("a", 1);
  CHECK(order == "12");
}

TEST_CASE("deferred inputs run as follow-up transactions") {
  G g;
  g.register_input("a", 0);
  g.register_input("b", 0);
  g.register_observer("copy", [](G& gg) { gg.defer_input("b", gg.read("a")); });
  std::vector<int> seen;
  g.register_observer("watch", [&](G& gg) { seen.push_back(gg.read("b")); });
  const auto r = g.set_input("a", 7);
  CHECK(r.transactions == 2);
  CHECK(g.read("b") == 7);
  CHECK(seen.back() == 7);
}

TEST_CASE("errors stay on the failing node") {
  G g;
  g.register_input("a", 1);
  g.register_computed("bad", [](G& gg) -> int {
    if (gg.read("a") > 1) throw statbench::DomainError("too big");
    return 0;
  });
  g.register_computed("down", [](G& gg) { return gg.read("bad") + 1; });
  g.register_computed("fine", [](G& gg) { return gg.read("a"); });
  int ok_runs = 0;
  g.register_observer("o", [&](G& gg) {
    gg.read("fine");
    ++ok_runs;
  });
  CHECK(g.read("down") == 1);
  g.set_input("a", 2);
  CHECK_THROWS_AS(g.read("down"), NodeError);
  CHECK(*g.error("down") == "too big");
  CHECK(g.read("fine") == 2);
  CHECK(ok_runs == 2);
  g.set_input("a", 0);
  CHECK(g.read("down") == 1);
}

TEST_CASE("self and mutual reads are cycles") {
  G g;
  g.register_computed("s", [](G& gg) { return gg.read("s"); });
  try {
    g.read("s");
    FAIL("expected a cycle");
  } catch (const CycleError& e) {
    CHECK(e.path() == std::vector<std::string>{"s", "s"});
  }
  g.register_input("on", 0);
  g.register_computed("p", [](G& gg) { return gg.read("on") ? gg.read("q") : 0; });
  g.register_computed("q", [](G& gg) { return gg.read("p") + 1; });
  CHECK(g.read("q") == 1);
  g.set_input("on", 1);
  try {
    g.read("q");
    FAIL("expected a cycle");
  } catch (const CycleError& e) {
    CHECK(e.path().front() == e.path().back());
    CHECK(e.path().size() == 3);
  }
}

TEST_CASE("random programs agree with full recomputation") {
  gen::Rng rng(2024);
  checks::ReactiveTally tally;
  for (int k = 0; k < 40; ++k) checks::reactive_program(rng, 30, 40, tally);
  for (int k = 0; k < 40; ++k) checks::reactive_cycle(rng, 30, tally);
  CHECK(tally.over_evaluated == 0);
  CHECK(tally.glitches == 0);
  CHECK(tally.wrong_values == 0);
  CHECK(tally.wrong_deps == 0);
  CHECK(tally.noop_effects == 0);
  CHECK(tally.cycles_detected == tally.cycles_injected);
}
