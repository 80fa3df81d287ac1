#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdyn/graph.hpp"
#include "sdyn/profile.hpp"

namespace sdyn {

/// The social graph extended with one anchor vertex per partially stubborn
/// agent, attached by an edge whose weight is that agent's stubbornness.
///
/// Vertices 0..n-1 are the social nodes; anchors follow at n, n+1, ... in
/// increasing order of their owner. The walk on this graph is absorbed at
/// the anchors and at fully stubborn agents; weighted degrees are
///   w_i = social weighted degree + K_i   for partially stubborn i,
///   w_i = social weighted degree         otherwise,
///   w_anchor(i) = K_i.
class AugmentedGraph {
 public:
  AugmentedGraph(Graph g, StubbornnessProfile profile)
      : base_(std::move(g)), profile_(std::move(profile)) {
    const int n = base_.node_count();
    if (profile_.size() != n) throw std::invalid_argument("augmented: profile size mismatch");
    if (!is_connected(base_)) throw std::domain_error("augmented: social graph must be connected");

    partial_ = profile_.partially_stubborn();
    anchor_of_.assign(n, -1);
    for (int r = 0; r < static_cast<int>(partial_.size()); ++r)
      anchor_of_[partial_[r]] = n + r;

    weights_.assign(n + partial_.size(), 0.0);
    total_weight_ = 0.0;
    for (int i = 0; i < n; ++i) {
      weights_[i] = base_.weighted_degree(i);
      if (profile_.is_partially_stubborn(i)) weights_[i] += profile_.level(i);
    }
    for (int r = 0; r < static_cast<int>(partial_.size()); ++r)
      weights_[n + r] = profile_.level(partial_[r]);
    for (double w : weights_) total_weight_ += w;

    for (int i = 0; i < n; ++i) {
      if (profile_.is_fully_stubborn(i)) {
        absorbing_.push_back(i);
      } else {
        free_index_.emplace_back(i);
      }
    }
    for (int r = 0; r < static_cast<int>(partial_.size()); ++r)
      absorbing_.push_back(n + r);
    std::sort(absorbing_.begin(), absorbing_.end());

    build_adjacency();
  }

  const Graph& base() const { return base_; }
  const StubbornnessProfile& profile() const { return profile_; }

  int base_count() const { return base_.node_count(); }
  int anchor_count() const { return static_cast<int>(partial_.size()); }
  int node_count() const { return base_count() + anchor_count(); }

  bool is_anchor(int v) const { return v >= base_count(); }

  /// Anchor vertex of a partially stubborn agent.
  int anchor(int i) const {
    const int a = anchor_of_.at(i);
    if (a < 0) throw std::invalid_argument("augmented: agent has no anchor");
    return a;
  }

  /// Owning agent of an anchor vertex.
  int anchor_owner(int v) const {
    if (!is_anchor(v)) throw std::invalid_argument("augmented: not an anchor vertex");
    return partial_[v - base_count()];
  }

  bool is_absorbing(int v) const {
    return is_anchor(v) || (v < base_count() && profile_.is_fully_stubborn(v));
  }

  /// Absorbing vertices (fully stubborn agents and all anchors), sorted.
  const std::vector<int>& absorbing() const { return absorbing_; }

  /// Non-fully-stubborn social nodes, sorted; these carry the transient
  /// dynamics and index the reduced operators.
  const std::vector<int>& free_nodes() const { return free_index_; }

  int free_count() const { return static_cast<int>(free_index_.size()); }

  /// Position of a social node within free_nodes(), or -1 if fully stubborn.
  int free_rank(int i) const {
    auto it = std::lower_bound(free_index_.begin(), free_index_.end(), i);
    if (it == free_index_.end() || *it != i) return -1;
    return static_cast<int>(it - free_index_.begin());
  }

  double weight(int v) const { return weights_.at(v); }

  /// Sum of weighted degrees over all vertices including anchors.
  double total_weight() const { return total_weight_; }

  std::span<const std::pair<int, double>> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

 private:
  void build_adjacency() {
    const int m = node_count();
    offsets_.assign(m + 1, 0);
    for (int i = 0; i < base_count(); ++i) offsets_[i + 1] = base_.degree(i);
    for (int i : partial_) {
      ++offsets_[i + 1];
      ++offsets_[anchor_of_[i] + 1];
    }
    for (int v = 0; v < m; ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(offsets_[m]);
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (int i = 0; i < base_count(); ++i)
      for (auto [j, w] : base_.neighbors(i)) adj_[cursor[i]++] = {j, w};
    for (int i : partial_) {
      const double k = profile_.level(i);
      adj_[cursor[i]++] = {anchor_of_[i], k};
      adj_[cursor[anchor_of_[i]]++] = {i, k};
    }
  }

  Graph base_;
  StubbornnessProfile profile_;
  std::vector<int> partial_;
  std::vector<int> anchor_of_;
  std::vector<int> absorbing_;
  std::vector<int> free_index_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
  std::vector<int> offsets_;
  std::vector<std::pair<int, double>> adj_;
};

inline AugmentedGraph build_augmented(const Graph& g, const StubbornnessProfile& profile) {
  return AugmentedGraph(g, profile);
}

/// Stationary weights of the absorbed walk restricted to the free nodes,
/// normalized to sum to 1; the norm in which the stubborn-case decay holds.
inline std::vector<double> stationary_distribution(const AugmentedGraph& ag) {
  if (ag.free_count() == 0)
    throw std::domain_error("stationary_distribution: no free nodes");
  std::vector<double> pi(ag.free_count());
  double z = 0.0;
  for (int r = 0; r < ag.free_count(); ++r) {
    pi[r] = ag.weight(ag.free_nodes()[r]);
    z += pi[r];
  }
  for (double& v : pi) v /= z;
  return pi;
}

}  // namespace sdyn
