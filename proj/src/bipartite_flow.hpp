#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace measrep::detail {

/// Dinic max flow on source -> left -> right -> sink networks with real
/// capacities. Left-to-right arcs are uncapacitated.
class BipartiteFlow {
 public:
  BipartiteFlow(std::span<const double> left_supply, std::span<const double> right_demand)
      : left_(left_supply.size()), right_(right_demand.size()), head_(node_count(), -1) {
    for (std::size_t i = 0; i < left_; ++i) add_arc(source(), left_node(i), left_supply[i]);
    for (std::size_t j = 0; j < right_; ++j) add_arc(right_node(j), sink(), right_demand[j]);
  }

  void connect(std::size_t i, std::size_t j) {
    add_arc(left_node(i), right_node(j), std::numeric_limits<double>::infinity());
  }

  double solve() {
    double total = 0.0;
    level_.assign(node_count(), -1);
    cursor_.assign(node_count(), -1);
    while (build_levels()) {
      for (std::size_t v = 0; v < node_count(); ++v) cursor_[v] = head_[v];
      for (;;) {
        const double pushed = augment(source(), std::numeric_limits<double>::infinity());
        if (pushed <= 0.0) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Arc {
    std::size_t to;
    int next;
    double residual;
  };

  // Residuals below this are treated as saturated.
  static constexpr double kResidualEps = 1e-15;

  std::size_t node_count() const { return left_ + right_ + 2; }
  std::size_t source() const { return 0; }
  std::size_t sink() const { return left_ + right_ + 1; }
  std::size_t left_node(std::size_t i) const { return 1 + i; }
  std::size_t right_node(std::size_t j) const { return 1 + left_ + j; }

  void add_arc(std::size_t from, std::size_t to, double cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size() - 1);
    arcs_.push_back({from, head_[to], 0.0});
    head_[to] = static_cast<int>(arcs_.size() - 1);
  }

  bool build_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    queue_.push_back(source());
    level_[source()] = 0;
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      const std::size_t v = queue_[q];
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        const Arc& arc = arcs_[a];
        if (arc.residual > kResidualEps && level_[arc.to] < 0) {
          level_[arc.to] = level_[v] + 1;
          queue_.push_back(arc.to);
        }
      }
    }
    return level_[sink()] >= 0;
  }

  double augment(std::size_t v, double limit) {
    if (v == sink()) return limit;
    for (int& a = cursor_[v]; a >= 0; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.residual <= kResidualEps || level_[arc.to] != level_[v] + 1) continue;
      const double pushed = augment(arc.to, std::min(limit, arc.residual));
      if (pushed > 0.0) {
        arc.residual -= pushed;
        arcs_[a ^ 1].residual += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::size_t left_;
  std::size_t right_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> cursor_;
  std::vector<std::size_t> queue_;
};

}  // namespace measrep::detail
