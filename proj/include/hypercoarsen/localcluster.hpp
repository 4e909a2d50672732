#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypercoarsen/embedding.hpp"
#include "hypercoarsen/hierarchy.hpp"
#include "hypercoarsen/hypergraph.hpp"

namespace hypercoarsen {

/// Seed-centered neighborhood on a coarse hypergraph: the clusters that share
/// a hyperedge with the seed, plus the hyperedges fully contained in the seed
/// and its neighbors.
struct LocalNeighborhood {
  VertexId seed = 0;
  std::vector<VertexId> neighbor_clusters;  // ascending, excludes seed
  std::vector<EdgeId> sub_edges;            // ascending
};

/// Coarse vertices formed from exactly one fine vertex, ascending.
inline std::vector<VertexId> identify_isolated(const LevelState& level) {
  std::vector<std::uint32_t> members(level.coarse.num_vertices(), 0);
  for (VertexId c : level.cluster_of) ++members[c];
  std::vector<VertexId> out;
  for (std::size_t c = 0; c < members.size(); ++c)
    if (members[c] == 1) out.push_back(static_cast<VertexId>(c));
  return out;
}

inline LocalNeighborhood build_neighborhood(const Hypergraph& hc, VertexId seed) {
  if (seed >= hc.num_vertices())
    throw std::invalid_argument("build_neighborhood: seed out of range");
  LocalNeighborhood nb;
  nb.seed = seed;
  std::vector<std::uint8_t> in_local(hc.num_vertices(), 0);
  in_local[seed] = 1;
  for (const auto& e : hc.edges()) {
    if (!std::binary_search(e.pins.begin(), e.pins.end(), seed)) continue;
    for (VertexId p : e.pins)
      if (p != seed && !in_local[p]) {
        in_local[p] = 1;
        nb.neighbor_clusters.push_back(p);
      }
  }
  std::sort(nb.neighbor_clusters.begin(), nb.neighbor_clusters.end());
  for (EdgeId e = 0; e < hc.num_edges(); ++e) {
    const auto& pins = hc.edge(e).pins;
    if (std::all_of(pins.begin(), pins.end(), [&](VertexId p) { return in_local[p]; }))
      nb.sub_edges.push_back(e);
  }
  return nb;
}

/// Per-pool-vector mean embedding of a fine-vertex set.
inline std::vector<double> cluster_centroid(const EmbeddingPool& pool,
                                            std::span<const VertexId> members) {
  if (members.empty()) throw std::invalid_argument("cluster_centroid: empty member set");
  std::vector<double> c(pool.size(), 0.0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double acc = 0.0;
    for (VertexId m : members) acc += pool.vectors[i][m];
    c[i] = acc / static_cast<double>(members.size());
  }
  return c;
}

/// Merges each isolated supernode into the neighboring cluster nearest in the
/// embedding (squared Euclidean distance over the pool, seed vs. precomputed
/// cluster centroid; ties go to the lower cluster id). Seeds are visited in
/// ascending id order and merges take effect immediately, but centroids stay
/// fixed for the whole pass. Each merge folds the seed's eta and the merge
/// distance into the absorbing cluster's eta. The coarse hypergraph is rebuilt
/// once at the end; seeds with no neighbors stay singletons.
inline LevelState merge_isolated(LevelState level, const EmbeddingPool& pool) {
  const Hypergraph& hc = level.coarse;
  const std::size_t k = hc.num_vertices();
  if (!pool.empty() && pool.vectors[0].size() != level.fine.num_vertices())
    throw std::invalid_argument("merge_isolated: pool was not built on this level's fine hypergraph");

  std::vector<std::vector<VertexId>> members(k);
  for (std::size_t v = 0; v < level.cluster_of.size(); ++v)
    members[level.cluster_of[v]].push_back(static_cast<VertexId>(v));
  std::vector<std::vector<double>> centroid(k);
  for (std::size_t c = 0; c < k; ++c) centroid[c] = cluster_centroid(pool, members[c]);

  std::vector<std::vector<EdgeId>> incident(k);
  for (EdgeId e = 0; e < hc.num_edges(); ++e)
    for (VertexId p : hc.edge(e).pins) incident[p].push_back(e);

  std::vector<VertexId> parent(k);
  for (std::size_t c = 0; c < k; ++c) parent[c] = static_cast<VertexId>(c);
  auto find = [&parent](VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  const std::vector<VertexId> seeds = identify_isolated(level);
  std::vector<double> eta = level.coarse_eta;
  std::size_t merged = 0;
  std::vector<VertexId> candidates;
  for (VertexId s : seeds) {
    const VertexId sroot = find(s);
    candidates.clear();
    for (EdgeId e : incident[s])
      for (VertexId p : hc.edge(e).pins)
        if (p != s) candidates.push_back(find(p));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::erase(candidates, sroot);
    if (candidates.empty()) continue;

    VertexId best = candidates.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (VertexId c : candidates) {  // ascending: ties resolve to the lower id
      double d = 0.0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const double diff = centroid[s][i] - centroid[c][i];
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    parent[sroot] = best;
    eta[best] += eta[sroot] + best_d;
    ++merged;
  }

  level.merge = {seeds.size(), merged, seeds.size() - merged};
  if (merged == 0) return level;

  std::vector<VertexId> root_label(level.fine.num_vertices());
  for (std::size_t v = 0; v < root_label.size(); ++v) root_label[v] = find(level.cluster_of[v]);
  ClusterAssignment dense = normalize_assignment(root_label);
  std::vector<double> new_eta(dense.num_clusters, 0.0);
  std::vector<std::uint8_t> eta_set(dense.num_clusters, 0);
  for (std::size_t v = 0; v < root_label.size(); ++v) {
    const VertexId nid = dense.cluster_of[v];
    if (!eta_set[nid]) {
      new_eta[nid] = eta[root_label[v]];
      eta_set[nid] = 1;
    }
  }
  level.coarse = detail::rebuild_coarse(level.fine, dense.cluster_of, dense.num_clusters);
  level.cluster_of = std::move(dense.cluster_of);
  level.coarse_eta = std::move(new_eta);
  return level;
}

}  // namespace hypercoarsen
