#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypercoarsen {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Hyperedge {
  std::vector<VertexId> pins;  // sorted ascending, no duplicates after construction
  double weight = 1.0;
};

/// Immutable vertex/hyperedge incidence structure. Construction sanitizes the
/// input: pins are sorted and deduplicated, hyperedges with fewer than two
/// distinct pins are dropped (counted, not an error). Out-of-range pins,
/// non-positive edge weights, and negative vertex weights throw. Safe for
/// concurrent reads once built.
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(std::size_t num_vertices, std::vector<Hyperedge> edges,
             std::vector<double> vertex_weights = {})
      : num_vertices_(num_vertices) {
    if (vertex_weights.empty()) {
      vertex_weights_.assign(num_vertices_, 1.0);
    } else {
      if (vertex_weights.size() != num_vertices_)
        throw std::invalid_argument("vertex weight count does not match vertex count");
      for (double w : vertex_weights)
        if (!(w >= 0.0)) throw std::invalid_argument("negative vertex weight");
      vertex_weights_ = std::move(vertex_weights);
    }
    edges_.reserve(edges.size());
    for (auto& e : edges) {
      if (!(e.weight > 0.0)) throw std::invalid_argument("non-positive hyperedge weight");
      for (VertexId p : e.pins)
        if (p >= num_vertices_)
          throw std::invalid_argument("vertex index out of range: " + std::to_string(p));
      std::sort(e.pins.begin(), e.pins.end());
      const auto last = std::unique(e.pins.begin(), e.pins.end());
      removed_duplicate_pins_ += static_cast<std::size_t>(e.pins.end() - last);
      e.pins.erase(last, e.pins.end());
      if (e.pins.size() < 2) {
        ++dropped_singleton_edges_;
        continue;
      }
      num_pins_ += e.pins.size();
      edges_.push_back(std::move(e));
    }
  }

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_pins() const { return num_pins_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const Hyperedge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<double>& vertex_weights() const { return vertex_weights_; }

  // Sanitation counters from construction.
  std::size_t dropped_singleton_edges() const { return dropped_singleton_edges_; }
  std::size_t removed_duplicate_pins() const { return removed_duplicate_pins_; }

 private:
  std::size_t num_vertices_ = 0;
  std::vector<Hyperedge> edges_;
  std::vector<double> vertex_weights_;
  std::size_t num_pins_ = 0;
  std::size_t dropped_singleton_edges_ = 0;
  std::size_t removed_duplicate_pins_ = 0;
};

/// d_v = sum of w(e) over hyperedges incident to v.
inline std::vector<double> vertex_degrees(const Hypergraph& h) {
  std::vector<double> deg(h.num_vertices(), 0.0);
  for (const auto& e : h.edges())
    for (VertexId p : e.pins) deg[p] += e.weight;
  return deg;
}

/// Dense 0-based vertex-to-cluster map.
struct ClusterAssignment {
  std::vector<VertexId> cluster_of;
  std::size_t num_clusters = 0;
};

/// Checks that cluster ids cover [0, num_clusters) with no gaps and that the
/// map covers exactly num_vertices vertices. Throws on violation.
inline void validate_assignment(const ClusterAssignment& a, std::size_t num_vertices) {
  if (a.cluster_of.size() != num_vertices)
    throw std::invalid_argument("cluster assignment length does not match vertex count");
  std::vector<std::uint8_t> seen(a.num_clusters, 0);
  for (VertexId c : a.cluster_of) {
    if (c >= a.num_clusters) throw std::invalid_argument("cluster id out of range");
    seen[c] = 1;
  }
  for (std::size_t c = 0; c < a.num_clusters; ++c)
    if (!seen[c]) throw std::invalid_argument("cluster ids not contiguous");
}

/// Relabels an arbitrary label vector into dense ids in first-touch order
/// (vertex 0's label becomes cluster 0, and so on).
inline ClusterAssignment normalize_assignment(std::span<const VertexId> labels) {
  ClusterAssignment out;
  out.cluster_of.resize(labels.size());
  VertexId next = 0;
  const VertexId unset = static_cast<VertexId>(-1);
  VertexId max_label = 0;
  for (VertexId l : labels) max_label = std::max(max_label, l);
  std::vector<VertexId> remap(static_cast<std::size_t>(max_label) + 1, unset);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    VertexId& slot = remap[labels[v]];
    if (slot == unset) slot = next++;
    out.cluster_of[v] = slot;
  }
  out.num_clusters = next;
  return out;
}

}  // namespace hypercoarsen
