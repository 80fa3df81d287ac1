#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdyn/detail/rng.hpp"
#include "sdyn/errors.hpp"

namespace sdyn {

/// Undirected weighted edge; endpoints are stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;
  double weight = 1.0;
};

/// Immutable undirected weighted graph over nodes 0..n-1.
///
/// Node ids are 0-based in the API; file formats and reports use 1-based
/// ids. Weights default to 1 and must be positive; self-loops and
/// parallel edges are rejected.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("graph: need at least one node");
    for (auto& e : edges_) {
      if (e.a > e.b) std::swap(e.a, e.b);
      if (e.a < 0 || e.b >= n_) throw std::invalid_argument("graph: node id out of range");
      if (e.a == e.b) throw std::invalid_argument("graph: self-loop");
      if (!(e.weight > 0.0)) throw std::invalid_argument("graph: edge weight must be positive");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b)
        throw std::invalid_argument("graph: parallel edge");
    }
    build_adjacency();
  }

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of i as (node, weight), sorted by node id.
  std::span<const std::pair<int, double>> neighbors(int i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }

  /// Number of incident edges.
  int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }

  /// Sum of incident edge weights; equals degree on unit-weight graphs.
  double weighted_degree(int i) const { return wdeg_[i]; }

  /// Sum of weighted degrees, i.e. twice the total edge weight.
  double total_weight() const { return total_weight_; }

  bool has_edge(int i, int j) const { return edge_weight(i, j).has_value(); }

  std::optional<double> edge_weight(int i, int j) const {
    auto nb = neighbors(i);
    auto it = std::lower_bound(nb.begin(), nb.end(), j,
                               [](const auto& p, int v) { return p.first < v; });
    if (it != nb.end() && it->first == j) return it->second;
    return std::nullopt;
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.a + 1];
      ++offsets_[e.b + 1];
    }
    for (int i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(2 * edges_.size());
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adj_[cursor[e.a]++] = {e.b, e.weight};
      adj_[cursor[e.b]++] = {e.a, e.weight};
    }
    for (int i = 0; i < n_; ++i)
      std::sort(adj_.begin() + offsets_[i], adj_.begin() + offsets_[i + 1]);
    wdeg_.assign(n_, 0.0);
    total_weight_ = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (auto [j, w] : neighbors(i)) {
        (void)j;
        wdeg_[i] += w;
      }
      total_weight_ += wdeg_[i];
    }
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<std::pair<int, double>> adj_;
  std::vector<double> wdeg_;
  double total_weight_ = 0.0;
};

// ---------------------------------------------------------------------------
// Generators. Randomized kinds take an explicit seed and are reproducible:
// the same seed always yields the identical edge set.

inline Graph make_complete(int n) {
  if (n < 2) throw std::invalid_argument("complete: n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

inline Graph make_ring(int n) {
  if (n < 3) throw std::invalid_argument("ring: n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, std::move(edges));
}

inline Graph make_line(int n) {
  if (n < 2) throw std::invalid_argument("line: n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

/// side x side lattice, nodes numbered row-major, 4-neighborhood.
inline Graph make_grid(int side) {
  if (side < 2) throw std::invalid_argument("grid: side >= 2");
  const int n = side * side;
  std::vector<Edge> edges;
  edges.reserve(2 * side * (side - 1));
  auto id = [side](int r, int c) { return r * side + c; };
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  return Graph(n, std::move(edges));
}

/// Node 0 is the hub, nodes 1..n-1 are leaves.
inline Graph make_star(int n) {
  if (n < 2) throw std::invalid_argument("star: n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 1; i < n; ++i) edges.push_back({0, i, 1.0});
  return Graph(n, std::move(edges));
}

inline Graph make_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("erdos_renyi: n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p in [0,1]");
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::uniform01(rng) < p) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

/// Connectivity-threshold parameterization p = lambda * ln(n) / n.
inline Graph make_erdos_renyi_lambda(int n, double lambda, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("erdos_renyi: n >= 2");
  const double p = std::min(1.0, lambda * std::log(static_cast<double>(n)) / n);
  return make_erdos_renyi(n, p, seed);
}

/// side x side grid plus q random shortcuts per node. The shortcut from i
/// lands on j != i with probability proportional to ||i-j||^-alpha in grid
/// l1 distance (alpha = 0 gives uniform destinations). A shortcut that
/// duplicates an existing edge is dropped; weights stay 1.
inline Graph make_small_world(int side, int q, double alpha, std::uint64_t seed) {
  if (side < 2) throw std::invalid_argument("small_world: side >= 2");
  if (q < 0) throw std::invalid_argument("small_world: q >= 0");
  if (alpha < 0.0) throw std::invalid_argument("small_world: alpha >= 0");
  const int n = side * side;
  std::mt19937_64 rng(detail::splitmix64(seed));

  std::vector<std::pair<int, int>> extra;
  std::vector<double> cdf(n);
  auto dist = [side](int u, int v) {
    return std::abs(u / side - v / side) + std::abs(u % side - v % side);
  };
  for (int i = 0; i < n; ++i) {
    if (alpha == 0.0) {
      for (int s = 0; s < q; ++s) {
        // uniform over the other n-1 nodes
        int j = static_cast<int>(detail::uniform_below(rng, n - 1));
        if (j >= i) ++j;
        extra.emplace_back(std::min(i, j), std::max(i, j));
      }
      continue;
    }
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) {
        const double d = static_cast<double>(dist(i, j));
        if (alpha == 1.0)
          acc += 1.0 / d;
        else if (alpha == 2.0)
          acc += 1.0 / (d * d);
        else
          acc += std::pow(d, -alpha);
      }
      cdf[j] = acc;
    }
    for (int s = 0; s < q; ++s) {
      int j = i;
      while (j == i) {
        const double r = detail::uniform01(rng) * acc;
        j = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
      }
      extra.emplace_back(std::min(i, j), std::max(i, j));
    }
  }

  std::vector<Edge> edges = make_grid(side).edges();
  std::vector<std::pair<int, int>> present;
  present.reserve(edges.size());
  for (const auto& e : edges) present.emplace_back(e.a, e.b);
  std::sort(present.begin(), present.end());
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  for (auto [a, b] : extra)
    if (!std::binary_search(present.begin(), present.end(), std::pair(a, b)))
      edges.push_back({a, b, 1.0});
  return Graph(n, std::move(edges));
}

/// Pairing model: n*d stubs are shuffled and paired; draws with self-loops
/// or parallel edges are rejected and retried, up to 1000 attempts.
inline Graph make_random_regular(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 1 || d >= n) throw std::invalid_argument("random_regular: need 1 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("random_regular: n*d must be even");
  std::mt19937_64 rng(detail::splitmix64(seed));
  const int stubs = n * d;
  std::vector<int> stub(stubs);
  for (int i = 0; i < stubs; ++i) stub[i] = i / d;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int i = stubs - 1; i > 0; --i) {
      const int j = static_cast<int>(detail::uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
      std::swap(stub[i], stub[j]);
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(stubs / 2);
    bool ok = true;
    for (int i = 0; i < stubs; i += 2) {
      int a = stub[i], b = stub[i + 1];
      if (a == b) {
        ok = false;
        break;
      }
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    if (!ok) continue;
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) continue;
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.push_back({a, b, 1.0});
    return Graph(n, std::move(edges));
  }
  throw generation_error("random_regular: no simple pairing found in 1000 attempts");
}

// ---------------------------------------------------------------------------
// Structure predicates.

inline std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (auto [v, w] : g.neighbors(u)) {
      (void)w;
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  const auto dist = bfs_distances(g, 0);
  return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

inline bool is_bipartite(const Graph& g) {
  std::vector<int> color(g.node_count(), -1);
  std::queue<int> q;
  for (int s = 0; s < g.node_count(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Longest shortest path in edge hops. Requires a connected graph.
inline int diameter(const Graph& g) {
  int best = 0;
  for (int s = 0; s < g.node_count(); ++s) {
    const auto dist = bfs_distances(g, s);
    for (int d : dist) {
      if (d < 0) throw std::domain_error("diameter: graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

/// Degree-proportional stationary distribution of the edge-weight random
/// walk: pi_i = weighted_degree(i) / total_weight.
inline std::vector<double> stationary_distribution(const Graph& g) {
  if (!is_connected(g)) throw std::domain_error("stationary_distribution: graph is disconnected");
  std::vector<double> pi(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) pi[i] = g.weighted_degree(i) / g.total_weight();
  return pi;
}

// ---------------------------------------------------------------------------
// Tagged generator spec, used by the CLI and sweep drivers.

enum class GraphKind {
  complete,
  ring,
  line,
  grid,
  star,
  erdos_renyi,
  small_world,
  random_regular
};

struct GeneratorSpec {
  GraphKind kind = GraphKind::complete;
  int n = 0;          // complete, ring, line, star, erdos_renyi, random_regular
  int side = 0;       // grid, small_world
  int q = 1;          // small_world shortcuts per node
  double alpha = 0.0; // small_world shortcut exponent
  double p = -1.0;    // erdos_renyi edge probability; if < 0, lambda is used
  double lambda = 1.5;
  int d = 3;          // random_regular degree
  std::optional<std::uint64_t> seed;
};

inline bool kind_is_randomized(GraphKind k) {
  return k == GraphKind::erdos_renyi || k == GraphKind::small_world ||
         k == GraphKind::random_regular;
}

inline Graph generate(const GeneratorSpec& spec) {
  if (kind_is_randomized(spec.kind) && !spec.seed)
    throw std::invalid_argument("generate: randomized generator requires a seed");
  switch (spec.kind) {
    case GraphKind::complete: return make_complete(spec.n);
    case GraphKind::ring: return make_ring(spec.n);
    case GraphKind::line: return make_line(spec.n);
    case GraphKind::grid: return make_grid(spec.side);
    case GraphKind::star: return make_star(spec.n);
    case GraphKind::erdos_renyi:
      return spec.p >= 0.0 ? make_erdos_renyi(spec.n, spec.p, *spec.seed)
                           : make_erdos_renyi_lambda(spec.n, spec.lambda, *spec.seed);
    case GraphKind::small_world:
      return make_small_world(spec.side, spec.q, spec.alpha, *spec.seed);
    case GraphKind::random_regular:
      return make_random_regular(spec.n, spec.d, *spec.seed);
  }
  throw std::invalid_argument("generate: unknown graph kind");
}

}  // namespace sdyn
