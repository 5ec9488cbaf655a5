#pragma once

// Random programs for the reactive engine, with a reference interpreter that
// recomputes every node from scratch.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "statbench/reactive.hpp"

namespace dag {

using Graph = statbench::reactive::Graph<std::int64_t>;

constexpr std::int64_t kMod = 1000000007;

struct Node {
  std::vector<int> deps;
  std::int64_t mul = 1, add = 0;
  int gate = -1;  // when set, deps after the first are read only while node `gate` is odd
};

struct Program {
  int n_inputs = 0;
  std::vector<Node> nodes;               // inputs first, then computed nodes in topological order
  std::vector<std::vector<int>> observers;
};

inline std::string name(int i) { return "n" + std::to_string(i); }

template <class Read>
std::int64_t compute(const Node& node, Read&& read) {
  std::int64_t s = node.add;
  const bool open = node.gate < 0 || read(node.gate) % 2 != 0;
  for (std::size_t k = 0; k < node.deps.size(); ++k) {
    if (k > 0 && !open) break;
    s = (s * 31 + read(node.deps[k]) * node.mul) % kMod;
  }
  return s;
}

inline Program random_program(gen::Rng& rng, int max_nodes = 50, bool gated = true) {
  Program p;
  const int total = gen::uniform_int(rng, 2, max_nodes);
  p.n_inputs = gen::uniform_int(rng, 1, std::max(1, total / 3));
  p.nodes.resize(static_cast<std::size_t>(total));
  for (int i = p.n_inputs; i < total; ++i) {
    Node& n = p.nodes[static_cast<std::size_t>(i)];
    const int k = gen::uniform_int(rng, 1, std::min(4, i));
    std::set<int> deps;
    while (static_cast<int>(deps.size()) < k) deps.insert(gen::uniform_int(rng, 0, i - 1));
    n.deps.assign(deps.begin(), deps.end());
    n.mul = gen::uniform_int(rng, 1, 97);
    n.add = gen::uniform_int(rng, 0, 1000);
    if (gated && n.deps.size() > 1 && gen::chance(rng, 0.3)) n.gate = gen::uniform_int(rng, 0, i - 1);
  }
  const int n_obs = gen::uniform_int(rng, 1, 5);
  for (int o = 0; o < n_obs; ++o) {
    std::vector<int> reads;
    const int k = gen::uniform_int(rng, 1, 3);
    for (int j = 0; j < k; ++j) reads.push_back(gen::uniform_int(rng, 0, total - 1));
    p.observers.push_back(reads);
  }
  return p;
}

/// Values of every node given the input values.
inline std::vector<std::int64_t> naive(const Program& p, const std::vector<std::int64_t>& inputs) {
  std::vector<std::int64_t> v(p.nodes.size());
  for (int i = 0; i < p.n_inputs; ++i) v[static_cast<std::size_t>(i)] = inputs[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(p.n_inputs); i < p.nodes.size(); ++i) {
    v[i] = compute(p.nodes[i], [&](int d) { return v[static_cast<std::size_t>(d)]; });
  }
  return v;
}

/// An engine instance of a program, instrumented to count evaluations and to
/// record what each closure actually read.
struct Instance {
  const Program* program;
  Graph graph;
  std::vector<std::int64_t> inputs;
  std::vector<int> evals;                    // per node, since the last reset
  std::vector<std::set<std::string>> reads;  // per computed node, from its latest run
  std::size_t observer_runs = 0;
  std::size_t glitches = 0;                  // observer saw a value differing from the reference

  explicit Instance(const Program& p, gen::Rng& rng) : program(&p) {
    const std::size_t n = p.nodes.size();
    evals.assign(n, 0);
    reads.assign(n, {});
    for (int i = 0; i < p.n_inputs; ++i) {
      inputs.push_back(gen::uniform_int(rng, 0, 9));
      graph.register_input(name(i), inputs.back());
    }
    for (std::size_t i = static_cast<std::size_t>(p.n_inputs); i < n; ++i) {
      graph.register_computed(name(static_cast<int>(i)), [this, i](Graph& g) {
        ++evals[i];
        reads[i].clear();
        return compute(program->nodes[i], [&](int d) {
          reads[i].insert(name(d));
          return g.read(name(d));
        });
      });
    }
    for (std::size_t o = 0; o < p.observers.size(); ++o) {
      graph.register_observer("obs" + std::to_string(o), [this, o](Graph& g) {
        ++observer_runs;
        const auto expect = naive(*program, inputs);
        for (int d : program->observers[o]) {
          if (g.read(name(d)) != expect[static_cast<std::size_t>(d)]) ++glitches;
        }
      });
    }
  }

  statbench::reactive::TransactionReport set(int input, std::int64_t value) {
    std::fill(evals.begin(), evals.end(), 0);
    inputs[static_cast<std::size_t>(input)] = value;
    return graph.set_input(name(input), value);
  }
};

}  // namespace dag
