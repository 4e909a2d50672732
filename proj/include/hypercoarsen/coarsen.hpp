#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypercoarsen/embedding.hpp"
#include "hypercoarsen/hierarchy.hpp"
#include "hypercoarsen/hypergraph.hpp"
#include "hypercoarsen/localcluster.hpp"
#include "hypercoarsen/resistance.hpp"

namespace hypercoarsen {

/// Contraction threshold: either a fixed resistance value or a per-level
/// quantile of the accumulated resistance distribution.
struct ContractionPolicy {
  enum class Kind { absolute, quantile };
  Kind kind = Kind::quantile;
  double value = 0.5;

  static ContractionPolicy absolute(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("absolute threshold must be non-negative");
    return {Kind::absolute, x};
  }
  static ContractionPolicy quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile must lie in (0,1)");
    return {Kind::quantile, q};
  }

  /// Resolves delta for one level. The quantile form picks the resistance at
  /// rank floor(q*m); only edges strictly below it contract, so the largest-r
  /// edge never contracts under any quantile.
  double threshold(const ResistanceVector& rv) const {
    if (kind == Kind::absolute) return value;
    if (rv.r.empty()) return 0.0;
    const auto m = rv.r.size();
    auto idx = static_cast<std::size_t>(value * static_cast<double>(m));
    if (idx >= m) idx = m - 1;
    return rv.r[rv.order[idx]];
  }
};

struct CoarsenConfig {
  std::size_t levels = 3;
  std::size_t rho = 3;
  std::uint64_t seed = 42;
  ContractionPolicy policy = {};
  bool local_clustering = true;
  std::size_t max_clique_cardinality = 300;
};

/// r'[e] = r[e] + sum of eta over e's pins (cross-level propagation); the
/// order is recomputed. Never decreases any entry since eta >= 0.
inline ResistanceVector accumulate_resistance(const Hypergraph& h, const ResistanceVector& rv,
                                              std::span<const double> eta) {
  if (eta.size() != h.num_vertices())
    throw std::invalid_argument("accumulate_resistance: eta length mismatch");
  if (rv.r.size() != h.num_edges())
    throw std::invalid_argument("accumulate_resistance: resistance length mismatch");
  ResistanceVector out;
  out.qh = rv.qh;
  out.r.resize(rv.r.size());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    double acc = rv.r[e];
    for (VertexId v : h.edge(e).pins) acc += eta[v];
    out.r[e] = acc;
  }
  detail::sort_by_resistance(out);
  return out;
}

/// Walks hyperedges by ascending accumulated resistance and contracts each one
/// whose resistance is below delta and whose pins are all still unassigned at
/// this level. Everything else becomes a singleton supernode. A supernode
/// formed from hyperedge e starts with eta equal to r[e]; singletons inherit
/// their fine vertex's eta. Coarse ids are dense, in first-touch order by fine
/// vertex id.
inline LevelState contract_level(const Hypergraph& h, const ResistanceVector& rv,
                                 std::span<const double> eta, const ContractionPolicy& policy) {
  if (eta.size() != h.num_vertices())
    throw std::invalid_argument("contract_level: eta length mismatch");
  if (rv.r.size() != h.num_edges())
    throw std::invalid_argument("contract_level: resistance length mismatch");

  const double delta = policy.threshold(rv);
  constexpr VertexId kUnassigned = static_cast<VertexId>(-1);
  std::vector<VertexId> label(h.num_vertices(), kUnassigned);
  std::vector<double> group_eta;
  LevelState level;
  level.fine = h;
  level.eta.assign(eta.begin(), eta.end());

  VertexId next = 0;
  for (EdgeId e : rv.order) {
    if (!(rv.r[e] < delta)) break;  // order is ascending
    const auto& pins = h.edge(e).pins;
    bool free = true;
    for (VertexId p : pins)
      if (label[p] != kUnassigned) {
        free = false;
        break;
      }
    if (!free) continue;
    for (VertexId p : pins) label[p] = next;
    group_eta.push_back(rv.r[e]);
    level.contracted_edges.push_back(e);
    ++next;
  }
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    if (label[v] == kUnassigned) {
      label[v] = next;
      group_eta.push_back(eta[v]);
      ++next;
    }
  }

  ClusterAssignment dense = normalize_assignment(label);
  level.coarse_eta.assign(dense.num_clusters, 0.0);
  for (std::size_t v = 0; v < h.num_vertices(); ++v)
    level.coarse_eta[dense.cluster_of[v]] = group_eta[label[v]];
  level.cluster_of = std::move(dense.cluster_of);
  level.coarse = detail::rebuild_coarse(h, level.cluster_of, dense.num_clusters);
  return level;
}

namespace detail {

inline ClusterAssignment compose_clusters(std::size_t num_original,
                                          const std::vector<LevelState>& levels) {
  ClusterAssignment out;
  out.cluster_of.resize(num_original);
  for (std::size_t v = 0; v < num_original; ++v) {
    VertexId c = static_cast<VertexId>(v);
    for (const auto& level : levels) c = level.cluster_of[c];
    out.cluster_of[v] = c;
  }
  out.num_clusters = levels.empty() ? num_original : levels.back().coarse.num_vertices();
  return out;
}

}  // namespace detail

/// Full multilevel pipeline: per level, build the embedding pool on the
/// current hypergraph, estimate and accumulate resistances, contract, then
/// optionally repair isolated supernodes by local clustering. Stops early at a
/// level that contracts nothing (that level is discarded) or when the
/// hypergraph runs out of edges. Fixed config gives a bit-identical hierarchy.
inline CoarseningHierarchy coarsen_multilevel(const Hypergraph& h, const CoarsenConfig& cfg) {
  if (cfg.levels < 1) throw std::invalid_argument("coarsen_multilevel: levels must be >= 1");
  if (cfg.rho < 1) throw std::invalid_argument("coarsen_multilevel: rho must be >= 1");

  std::mt19937_64 seeder(cfg.seed);
  CoarseningHierarchy out;
  Hypergraph cur = h;
  std::vector<double> cur_eta(h.num_vertices(), 0.0);
  const EmbeddingConfig ecfg{cfg.max_clique_cardinality};

  for (std::size_t l = 0; l < cfg.levels; ++l) {
    const std::uint64_t level_seed = seeder();
    if (cur.num_edges() == 0) break;
    EmbeddingPool pool = build_embedding_pool(cur, cfg.rho, level_seed, ecfg);
    if (pool.empty()) break;  // degenerate level; nothing to rank edges by
    ResistanceVector rv = estimate_resistances(cur, pool);
    rv = accumulate_resistance(cur, rv, cur_eta);
    LevelState level = contract_level(cur, rv, cur_eta, cfg.policy);
    if (level.contracted_edges.empty()) break;
    if (cfg.local_clustering) level = merge_isolated(std::move(level), pool);
    cur = level.coarse;
    cur_eta = level.coarse_eta;
    out.levels.push_back(std::move(level));
  }
  out.composed_clusters = detail::compose_clusters(h.num_vertices(), out.levels);
  return out;
}

}  // namespace hypercoarsen
