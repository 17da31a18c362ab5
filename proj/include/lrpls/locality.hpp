#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace lrpls {

/// Raised when a prover or SLOCAL step reads a node outside its allowed ball.
struct LocalityViolation : std::runtime_error {
  NodeId center;    // -1 when no scope was open
  NodeId accessed;
  int distance;     // -1 when unreachable from the center

  LocalityViolation(NodeId c, NodeId a, int d)
      : std::runtime_error("locality violation: center " + std::to_string(c) + " accessed node " +
                           std::to_string(a) + " at distance " + std::to_string(d)),
        center(c),
        accessed(a),
        distance(d) {}
};

/// Default radius budget 4 * ceil(log2 n)^c with c = 2.
inline int default_budget(int n, int exponent = 2) {
  int lg = n <= 1 ? 1 : static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
  lg = std::max(lg, 1);
  double b = 4.0 * std::pow(static_cast<double>(lg), exponent);
  return b > 1e9 ? 1000000000 : static_cast<int>(b);
}

/// Mediates every graph read of a prover. Without a budget it is a plain
/// pass-through. With a budget, reads are only allowed inside an open scope
/// and only for nodes within the scope radius of its center.
///
/// Distances are tracked lazily: a node reached through `neighbors` inherits
/// its parent's bound plus one, and an exact BFS is only run for nodes the
/// caller reaches by other means.
class GraphAccess {
 public:
  explicit GraphAccess(const ConfiguredGraph& g, std::optional<int> budget = std::nullopt)
      : g_(g), budget_(budget), radius_by_center_(g.n(), 0) {}

  class Scope {
   public:
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
    Scope(Scope&& other) noexcept : owner_(other.owner_) { other.owner_ = nullptr; }
    ~Scope() {
      if (owner_) owner_->pop();
    }

   private:
    friend class GraphAccess;
    explicit Scope(GraphAccess* owner) : owner_(owner) {}
    GraphAccess* owner_;
  };

  /// Open a scope centered at node index `center`. The effective radius is
  /// the smaller of the global budget and `radius` (if given).
  Scope scope(int center, std::optional<int> radius = std::nullopt) {
    push(center, radius);
    return Scope(this);
  }

  const ConfiguredGraph& graph_unchecked() const { return g_; }
  bool instrumented() const { return budget_.has_value(); }
  std::optional<int> budget() const { return budget_; }
  int n() const { return g_.n(); }
  int index_of(NodeId id) const { return g_.index_of(id); }
  NodeId id(int x) { touch(x); return g_.id(x); }

  const NodeRecord& node(int x) {
    touch(x);
    return g_.node(x);
  }

  std::span<const Adj> neighbors(int x) {
    int bound = touch(x);
    auto list = g_.neighbors(x);
    if (!frames_.empty() && budget_) {
      auto& f = frames_.back();
      for (const auto& a : list) {
        if (f.stamp[a.nbr] != f.generation || f.bound[a.nbr] > bound + 1) {
          f.stamp[a.nbr] = f.generation;
          f.bound[a.nbr] = bound + 1;
        }
      }
    }
    return list;
  }

  const Edge& edge(int e) const { return g_.edge(e); }

  LocalConfig local(int x) {
    touch(x);
    return local_config(g_, x);
  }

  /// Whole-graph access; legal when uninstrumented or when the ball in
  /// force already is all of V.
  const ConfiguredGraph& global() {
    if (!budget_) return g_;
    if (frames_.empty()) {
      if (!small_world_) {
        small_world_ = true;
        for (int x = 0; x < g_.n() && *small_world_; ++x) {
          auto d = bfs_distances(g_, x, *budget_);
          *small_world_ = std::find(d.begin(), d.end(), -1) == d.end();
        }
      }
      if (*small_world_) return g_;
      throw LocalityViolation(-1, -1, -1);
    }
    auto& f = frames_.back();
    for (int x = 0; x < g_.n(); ++x) {
      int d = exact_distance(f, x);
      if (d < 0 || d > f.limit) throw LocalityViolation(g_.id(f.center), g_.id(x), d);
    }
    return g_;
  }

  /// Largest distance witnessed inside any scope.
  int max_radius() const { return max_radius_; }
  const std::vector<int>& radius_by_center() const { return radius_by_center_; }

  /// Checks that x may be read; returns a distance bound from the center.
  int touch(int x) {
    if (!budget_) return 0;
    if (frames_.empty()) throw LocalityViolation(-1, g_.id(x), -1);
    auto& f = frames_.back();
    int d;
    if (f.stamp[x] == f.generation && f.bound[x] <= f.limit) {
      d = f.bound[x];
    } else {
      d = exact_distance(f, x);
      if (d < 0 || d > f.limit) throw LocalityViolation(g_.id(f.center), g_.id(x), d);
      f.stamp[x] = f.generation;
      f.bound[x] = d;
    }
    if (d > max_radius_) max_radius_ = d;
    if (d > radius_by_center_[f.center]) radius_by_center_[f.center] = d;
    return d;
  }

 private:
  struct Frame {
    int center = 0;
    int limit = 0;
    unsigned generation = 0;
    std::vector<unsigned> stamp;
    std::vector<int> bound;
    bool exact_done = false;
    std::vector<int> exact;
  };

  void push(int center, std::optional<int> radius) {
    if (!budget_) {
      ++depth_;
      return;
    }
    if (static_cast<int>(pool_.size()) <= depth_) pool_.emplace_back();
    Frame f = std::move(pool_[depth_]);
    if (f.stamp.size() != static_cast<std::size_t>(g_.n())) {
      f.stamp.assign(g_.n(), 0);
      f.bound.assign(g_.n(), 0);
      f.generation = 0;
    }
    ++f.generation;
    f.center = center;
    f.limit = radius ? std::min(*radius, *budget_) : *budget_;
    f.exact_done = false;
    f.stamp[center] = f.generation;
    f.bound[center] = 0;
    frames_.push_back(std::move(f));
    ++depth_;
  }

  void pop() {
    --depth_;
    if (!budget_) return;
    pool_[depth_] = std::move(frames_.back());
    frames_.pop_back();
  }

  int exact_distance(Frame& f, int x) {
    if (!f.exact_done) {
      f.exact = bfs_distances(g_, f.center, f.limit + 1);
      f.exact_done = true;
    }
    return f.exact[x];
  }

  const ConfiguredGraph& g_;
  std::optional<int> budget_;
  std::vector<Frame> frames_;
  std::vector<Frame> pool_;
  int depth_ = 0;
  int max_radius_ = 0;
  std::vector<int> radius_by_center_;
  std::optional<bool> small_world_;  // every ball of the budget radius is V
};

}  // namespace lrpls
