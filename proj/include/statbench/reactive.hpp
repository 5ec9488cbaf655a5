#pragma once

// Transactional dependency graph with dynamic dependency capture.
//
// Inputs hold values set from outside. Computed nodes cache the result of a
// closure and learn their dependencies from the reads made during each
// evaluation. Observers run closures for their effects only. set_input marks
// transitive dependents dirty; dirty computed nodes are re-evaluated on
// demand, pulled by the observers that depend on them, so a node nobody
// observes stays dirty until it is read.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "statbench/errors.hpp"

namespace statbench::reactive {

using NodeId = std::string;

enum class NodeKind { Input, Computed, Observer };

/// A node transitively read itself. path lists the cycle, starting and ending at the same node.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<NodeId> path) : Error(describe(path)), path_(std::move(path)) {}
  const std::vector<NodeId>& path() const { return path_; }

 private:
  static std::string describe(const std::vector<NodeId>& path) {
    std::string s = "dependency cycle: ";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) s += " -> ";
      s += path[i];
    }
    return s;
  }
  std::vector<NodeId> path_;
};

/// Raised when reading a node whose last evaluation failed.
class NodeError : public Error {
 public:
  NodeError(NodeId node, const std::string& message) : Error(message), node_(std::move(node)) {}
  const NodeId& node() const { return node_; }

 private:
  NodeId node_;
};

struct TransactionReport {
  std::vector<NodeId> recomputed;
  std::vector<NodeId> effects_run;
  std::size_t transactions = 0;

  bool empty() const { return transactions == 0; }
};

template <class V, class Equal = std::equal_to<V>>
class Graph {
 public:
  using Compute = std::function<V(Graph&)>;
  using Effect = std::function<void(Graph&)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  NodeId register_input(NodeId id, V initial) {
    auto& node = add(std::move(id), NodeKind::Input);
    node.value = std::move(initial);
    return node.id;
  }

  /// The node starts dirty and evaluates on first read.
  NodeId register_computed(NodeId id, Compute compute) {
    auto& node = add(std::move(id), NodeKind::Computed);
    node.compute = std::move(compute);
    node.dirty = true;
    return node.id;
  }

  /// Runs the effect once immediately.
  NodeId register_observer(NodeId id, Effect effect) {
    auto& node = add(std::move(id), NodeKind::Observer);
    node.effect = std::move(effect);
    const std::size_t index = index_.at(node.id);
    run_observer(index);
    return nodes_[index].id;
  }

  /// One transaction, followed by any input changes deferred by observers
  /// (each of those is its own transaction, folded into the same report).
  TransactionReport set_input(const NodeId& id, V value) {
    if (in_transaction_ || !stack_.empty()) {
      throw Error("set_input called during a transaction; use defer_input");
    }
    TransactionReport report;
    report_ = &report;
    struct Reset {
      Graph* g;
      ~Reset() {
        g->report_ = nullptr;
        g->in_transaction_ = false;
        g->deferred_.clear();
      }
    } reset{this};
    run_transaction(lookup_input(id), std::move(value));
    while (!deferred_.empty()) {
      auto [index, v] = std::move(deferred_.front());
      deferred_.pop_front();
      run_transaction(index, std::move(v));
    }
    return report;
  }

  /// Queues an input change to run after the current transaction settles.
  /// Outside a transaction this is equivalent to set_input.
  void defer_input(const NodeId& id, V value) {
    const std::size_t index = lookup_input(id);
    if (!in_transaction_) {
      set_input(id, std::move(value));
      return;
    }
    deferred_.emplace_back(index, std::move(value));
  }

  /// Returns the current value, evaluating lazily. Inside an evaluation the
  /// read is recorded as a dependency of the evaluating node.
  const V& read(const NodeId& id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw NotFoundError("unknown node '" + id + "'");
    const std::size_t index = it->second;
    if (nodes_[index].kind == NodeKind::Observer) {
      throw Error("observer '" + id + "' has no value to read");
    }
    if (!stack_.empty()) stack_.back().deps.insert(index);
    Node& node = nodes_[index];
    if (node.kind == NodeKind::Computed) {
      if (node.evaluating) throw CycleError(cycle_path(index));
      if (node.dirty) evaluate(index);
    }
    const Node& fresh = nodes_[index];
    if (fresh.error) {
      if (!stack_.empty()) throw Propagated{*fresh.error};
      throw NodeError(fresh.id, *fresh.error);
    }
    return *fresh.value;
  }

  bool contains(const NodeId& id) const { return index_.count(id) != 0; }
  NodeKind kind(const NodeId& id) const { return nodes_[at(id)].kind; }
  bool is_dirty(const NodeId& id) const { return nodes_[at(id)].dirty; }
  std::uint64_t epoch() const { return epoch_; }
  /// Number of times the node's closure has run.
  std::uint64_t evaluations(const NodeId& id) const { return nodes_[at(id)].evaluations; }
  const std::optional<std::string>& error(const NodeId& id) const { return nodes_[at(id)].error; }

  std::set<NodeId> dependencies(const NodeId& id) const {
    std::set<NodeId> out;
    for (std::size_t d : nodes_[at(id)].deps) out.insert(nodes_[d].id);
    return out;
  }

  std::vector<NodeId> ids() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_) out.push_back(n.id);
    return out;
  }

 private:
  struct Node {
    NodeId id;
    NodeKind kind;
    Compute compute;
    Effect effect;
    std::optional<V> value;
    std::optional<std::string> error;
    bool dirty = false;
    bool evaluating = false;
    std::set<std::size_t> deps;
    std::set<std::size_t> dependents;
    std::uint64_t evaluations = 0;
  };

  struct Frame {
    std::size_t node;
    std::set<std::size_t> deps;
  };

  // Failure of a dependency, rethrown through the reading closure.
  struct Propagated {
    std::string message;
  };

  Node& add(NodeId id, NodeKind kind) {
    if (!stack_.empty()) throw Error("nodes cannot be registered during an evaluation");
    if (index_.count(id)) throw ConflictError("node '" + id + "' already exists");
    index_.emplace(id, nodes_.size());
    nodes_.push_back(Node{});
    Node& node = nodes_.back();
    node.id = std::move(id);
    node.kind = kind;
    return node;
  }

  std::size_t at(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw NotFoundError("unknown node '" + id + "'");
    return it->second;
  }

  std::size_t lookup_input(const NodeId& id) const {
    const std::size_t index = at(id);
    if (nodes_[index].kind != NodeKind::Input) throw Error("node '" + id + "' is not an input");
    return index;
  }

  std::vector<NodeId> cycle_path(std::size_t index) const {
    std::vector<NodeId> path;
    bool started = false;
    for (const auto& frame : stack_) {
      if (frame.node == index) started = true;
      if (started) path.push_back(nodes_[frame.node].id);
    }
    path.push_back(nodes_[index].id);
    return path;
  }

  void mark_dependents_dirty(std::size_t index) {
    std::vector<std::size_t> work(nodes_[index].dependents.begin(), nodes_[index].dependents.end());
    while (!work.empty()) {
      const std::size_t d = work.back();
      work.pop_back();
      Node& node = nodes_[d];
      if (node.dirty) continue;
      node.dirty = true;
      work.insert(work.end(), node.dependents.begin(), node.dependents.end());
    }
  }

  void commit_deps(std::size_t index, std::set<std::size_t> deps) {
    Node& node = nodes_[index];
    for (std::size_t d : node.deps) nodes_[d].dependents.erase(index);
    node.deps = std::move(deps);
    for (std::size_t d : node.deps) nodes_[d].dependents.insert(index);
  }

  // Runs a node's closure inside a dependency-capture frame. Closure
  // failures are recorded on the node; cycles abort the whole evaluation.
  template <class Body>
  void capture(std::size_t index, Body&& body) {
    stack_.push_back(Frame{index, {}});
    nodes_[index].evaluating = true;
    std::optional<std::string> failure;
    try {
      body();
    } catch (const CycleError&) {
      nodes_[index].evaluating = false;
      stack_.pop_back();
      throw;
    } catch (const Propagated& p) {
      failure = p.message;
    } catch (const std::exception& e) {
      failure = e.what();
    }
    auto deps = std::move(stack_.back().deps);
    stack_.pop_back();
    Node& node = nodes_[index];
    node.evaluating = false;
    node.dirty = false;
    ++node.evaluations;
    node.error = std::move(failure);
    commit_deps(index, std::move(deps));
  }

  void evaluate(std::size_t index) {
    capture(index, [&] {
      V v = nodes_[index].compute(*this);
      nodes_[index].value = std::move(v);
    });
    if (nodes_[index].error) nodes_[index].value.reset();
    if (report_) report_->recomputed.push_back(nodes_[index].id);
  }

  void run_observer(std::size_t index) {
    capture(index, [&] { nodes_[index].effect(*this); });
    if (report_) report_->effects_run.push_back(nodes_[index].id);
  }

  void run_transaction(std::size_t index, V value) {
    Node& input = nodes_[index];
    if (input.value && Equal{}(*input.value, value)) return;
    ++epoch_;
    ++report_->transactions;
    in_transaction_ = true;
    input.value = std::move(value);
    mark_dependents_dirty(index);

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].kind == NodeKind::Observer && nodes_[i].dirty) pending.push_back(i);
    }
    // Settle every computed node the affected observers read last time, so
    // effects observe only post-update values.
    for (std::size_t o : pending) {
      const auto deps = nodes_[o].deps;
      for (std::size_t d : deps) {
        if (nodes_[d].kind == NodeKind::Computed && nodes_[d].dirty) evaluate_root(d);
      }
    }
    for (std::size_t o : pending) run_observer(o);
    in_transaction_ = false;
  }

  // Evaluation outside any frame: errors stay on the node.
  void evaluate_root(std::size_t index) {
    if (!nodes_[index].dirty) return;
    evaluate(index);
  }

  std::vector<Node> nodes_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<Frame> stack_;
  std::deque<std::pair<std::size_t, V>> deferred_;
  TransactionReport* report_ = nullptr;
  bool in_transaction_ = false;
  std::uint64_t epoch_ = 0;
};

}  // namespace statbench::reactive
