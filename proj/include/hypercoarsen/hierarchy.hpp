#pragma once

#include <algorithm>
#include <span>
#include <unordered_map>
#include <vector>

#include "hypercoarsen/hypergraph.hpp"

namespace hypercoarsen {

/// Local-clustering pass summary for one level.
struct MergeReport {
  std::size_t seeds_found = 0;
  std::size_t seeds_merged = 0;
  std::size_t seeds_left_singleton = 0;
};

/// One coarsening level: the hypergraph it consumed, the hypergraph it
/// produced, the fine-to-coarse map, and resistance provenance. `eta` is the
/// per-fine-vertex accumulated weight this level was given (all zeros at level
/// 0); `coarse_eta` is what it hands to the next level.
struct LevelState {
  Hypergraph fine;
  Hypergraph coarse;
  std::vector<VertexId> cluster_of;
  std::vector<double> eta;
  std::vector<double> coarse_eta;
  std::vector<EdgeId> contracted_edges;
  MergeReport merge;
};

struct CoarseningHierarchy {
  std::vector<LevelState> levels;
  ClusterAssignment composed_clusters;  // original vertex -> final cluster
};

namespace detail {

struct PinVectorHash {
  std::size_t operator()(const std::vector<VertexId>& pins) const {
    std::size_t h = pins.size();
    for (VertexId p : pins) h = h * 0x9e3779b97f4a7c15ULL + p + 1;
    return h;
  }
};

/// Collapses each fine hyperedge through cluster_of: pins are mapped and
/// deduplicated, edges left with fewer than two pins disappear, and identical
/// coarse hyperedges merge by summing weights (kept in first-appearance
/// order). Coarse vertex weights are the sums of their members' weights.
inline Hypergraph rebuild_coarse(const Hypergraph& fine, std::span<const VertexId> cluster_of,
                                 std::size_t num_coarse) {
  std::vector<Hyperedge> coarse_edges;
  std::unordered_map<std::vector<VertexId>, std::size_t, PinVectorHash> dedup;
  std::vector<VertexId> mapped;
  for (const auto& e : fine.edges()) {
    mapped.clear();
    for (VertexId p : e.pins) mapped.push_back(cluster_of[p]);
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    if (mapped.size() < 2) continue;
    auto [it, inserted] = dedup.try_emplace(mapped, coarse_edges.size());
    if (inserted)
      coarse_edges.push_back({mapped, e.weight});
    else
      coarse_edges[it->second].weight += e.weight;
  }
  std::vector<double> weights(num_coarse, 0.0);
  for (std::size_t v = 0; v < fine.num_vertices(); ++v)
    weights[cluster_of[v]] += fine.vertex_weights()[v];
  return Hypergraph(num_coarse, std::move(coarse_edges), std::move(weights));
}

}  // namespace detail
}  // namespace hypercoarsen
