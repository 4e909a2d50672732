#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypercoarsen/detail/parallel.hpp"
#include "hypercoarsen/hypergraph.hpp"

namespace hypercoarsen {

enum class ExpansionKind { star, clique };

/// Weighted simple graph derived from a hypergraph, stored as CSR with rows in
/// ascending neighbor order so every row sum has one fixed evaluation order.
class ExpansionGraph {
 public:
  using NodeId = std::uint32_t;

  ExpansionKind kind() const { return kind_; }
  std::size_t num_nodes() const { return degree_.size(); }
  std::size_t num_original_vertices() const { return num_vertices_; }
  /// Undirected edge count.
  std::size_t num_edges() const { return col_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {col_.data() + row_ptr_[u], col_.data() + row_ptr_[u + 1]};
  }
  std::span<const double> edge_weights(NodeId u) const {
    return {val_.data() + row_ptr_[u], val_.data() + row_ptr_[u + 1]};
  }
  const std::vector<double>& degrees() const { return degree_; }
  double degree(NodeId u) const { return degree_[u]; }

  /// y = D^{-1/2} A D^{-1/2} x with per-row sequential summation; isolated
  /// nodes map to zero.
  void normalized_adjacency_apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != num_nodes() || y.size() != num_nodes())
      throw std::invalid_argument("normalized_adjacency_apply: dimension mismatch");
    detail::parallel_for(num_nodes(), [&](std::size_t u) {
      double acc = 0.0;
      for (std::size_t k = row_ptr_[u]; k < row_ptr_[u + 1]; ++k)
        acc += val_[k] * inv_sqrt_degree_[col_[k]] * x[col_[k]];
      y[u] = inv_sqrt_degree_[u] * acc;
    });
  }

  static ExpansionGraph from_undirected_edges(ExpansionKind kind, std::size_t num_nodes,
                                              std::size_t num_vertices,
                                              std::vector<std::pair<std::pair<NodeId, NodeId>, double>> edges) {
    ExpansionGraph g;
    g.kind_ = kind;
    g.num_vertices_ = num_vertices;
    g.row_ptr_.assign(num_nodes + 1, 0);
    for (const auto& [uv, w] : edges) {
      ++g.row_ptr_[uv.first + 1];
      ++g.row_ptr_[uv.second + 1];
    }
    for (std::size_t i = 1; i <= num_nodes; ++i) g.row_ptr_[i] += g.row_ptr_[i - 1];
    g.col_.resize(g.row_ptr_[num_nodes]);
    g.val_.resize(g.row_ptr_[num_nodes]);
    std::vector<std::size_t> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
    // Requires each pair as (min,max) and the list sorted: then for any row u
    // all smaller neighbors are filled before all larger ones, each group in
    // ascending order, so rows come out sorted without a second pass.
    for (const auto& [uv, w] : edges) {
      g.col_[cursor[uv.first]] = uv.second;
      g.val_[cursor[uv.first]++] = w;
      g.col_[cursor[uv.second]] = uv.first;
      g.val_[cursor[uv.second]++] = w;
    }
    g.degree_.assign(num_nodes, 0.0);
    g.inv_sqrt_degree_.assign(num_nodes, 0.0);
    for (std::size_t u = 0; u < num_nodes; ++u) {
      double d = 0.0;
      for (std::size_t k = g.row_ptr_[u]; k < g.row_ptr_[u + 1]; ++k) d += g.val_[k];
      g.degree_[u] = d;
      if (d > 0.0) g.inv_sqrt_degree_[u] = 1.0 / std::sqrt(d);
    }
    return g;
  }

 private:
  ExpansionKind kind_ = ExpansionKind::star;
  std::size_t num_vertices_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<NodeId> col_;
  std::vector<double> val_;
  std::vector<double> degree_;
  std::vector<double> inv_sqrt_degree_;
};

/// Bipartite star expansion: nodes 0..|V|-1 are vertices, |V|..|V|+|E|-1 are
/// hyperedge nodes; each pin (e,p) becomes an edge of weight w(e)/|e|.
inline ExpansionGraph build_star(const Hypergraph& h) {
  using NodeId = ExpansionGraph::NodeId;
  std::vector<std::pair<std::pair<NodeId, NodeId>, double>> edges;
  edges.reserve(h.num_pins());
  const auto base = static_cast<NodeId>(h.num_vertices());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& he = h.edge(e);
    const double w = he.weight / static_cast<double>(he.pins.size());
    for (VertexId p : he.pins) edges.push_back({{p, base + e}, w});
  }
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return ExpansionGraph::from_undirected_edges(ExpansionKind::star,
                                               h.num_vertices() + h.num_edges(),
                                               h.num_vertices(), std::move(edges));
}

/// Clique expansion: every pair inside a hyperedge receives w(e)/C(|e|,2);
/// parallel contributions are summed. Hyperedges larger than
/// max_clique_cardinality are skipped (the star expansion still covers them).
inline ExpansionGraph build_clique(const Hypergraph& h, std::size_t max_clique_cardinality = 300) {
  if (max_clique_cardinality < 2)
    throw std::invalid_argument("max_clique_cardinality must be at least 2");
  using NodeId = ExpansionGraph::NodeId;
  std::vector<std::pair<std::pair<NodeId, NodeId>, double>> pairs;
  for (const auto& he : h.edges()) {
    const std::size_t k = he.pins.size();
    if (k > max_clique_cardinality) continue;
    const double w = he.weight / (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        pairs.push_back({{he.pins[i], he.pins[j]}, w});
  }
  // Stable sort keeps parallel contributions in ascending hyperedge order, so
  // the merged weight is summed in one fixed order.
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::pair<NodeId, NodeId>, double>> merged;
  merged.reserve(pairs.size());
  for (const auto& pr : pairs) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return ExpansionGraph::from_undirected_edges(ExpansionKind::clique, h.num_vertices(),
                                               h.num_vertices(), std::move(merged));
}

inline std::vector<double> normalized_adjacency_apply(const ExpansionGraph& g,
                                                      std::span<const double> x) {
  std::vector<double> y(g.num_nodes());
  g.normalized_adjacency_apply(x, y);
  return y;
}

}  // namespace hypercoarsen
