#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hypercoarsen/expansion.hpp"
#include "hypercoarsen/hypergraph.hpp"

namespace hypercoarsen {

/// Up to 2*rho mutually orthogonal, unit-norm, mean-free vertex embeddings.
struct EmbeddingPool {
  std::vector<std::vector<double>> vectors;  // each of length |V|
  std::size_t rho = 0;
  std::uint64_t seed = 0;
  std::vector<ExpansionKind> source_tags;  // provenance of each retained vector

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }
};

struct EmbeddingConfig {
  std::size_t max_clique_cardinality = 300;
  double drop_tolerance = 1e-10;  // residual-to-original norm cutoff in Gram-Schmidt
};

namespace detail {

/// Seeded i.i.d. uniform[-1,1) entries; the generator-to-double mapping is
/// spelled out so the bytes never depend on the standard library.
inline std::vector<double> uniform_signed_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = static_cast<double>(rng() >> 11) * 0x1p-52 - 1.0;
  return x;
}

/// Full-length normalized-adjacency iterates A^1 x ... A^rho x (no restriction).
inline std::vector<std::vector<double>> krylov_iterate(const ExpansionGraph& g, std::size_t rho,
                                                       std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.reserve(rho);
  std::vector<double> cur = uniform_signed_vector(g.num_nodes(), seed);
  std::vector<double> next(g.num_nodes());
  for (std::size_t k = 0; k < rho; ++k) {
    g.normalized_adjacency_apply(cur, next);
    out.push_back(next);
    cur.swap(next);
  }
  return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void deflate_constant(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

}  // namespace detail

/// Krylov vector pool of an expansion graph: A^1 x, ..., A^rho x for a seeded
/// random x (the raw x itself is unsmoothed noise and excluded). Star-sourced
/// vectors are restricted to the original vertex entries after the full-length
/// iteration completes.
inline std::vector<std::vector<double>> krylov_pool(const ExpansionGraph& g, std::size_t rho,
                                                    std::uint64_t seed) {
  auto vecs = detail::krylov_iterate(g, rho, seed);
  if (g.kind() == ExpansionKind::star)
    for (auto& v : vecs) v.resize(g.num_original_vertices());
  return vecs;
}

/// Combined star+clique Krylov pool, constant-deflated and orthonormalized by
/// modified Gram-Schmidt in fixed order (star vectors first, ascending power,
/// then clique). Near-dependent candidates are dropped, so the pool may hold
/// fewer than 2*rho vectors; an empty pool signals a degenerate hypergraph and
/// is left to the caller to report.
inline EmbeddingPool build_embedding_pool(const Hypergraph& h, std::size_t rho, std::uint64_t seed,
                                          const EmbeddingConfig& cfg = {}) {
  EmbeddingPool pool;
  pool.rho = rho;
  pool.seed = seed;
  if (h.num_vertices() == 0) return pool;

  std::mt19937_64 split(seed);
  const std::uint64_t star_seed = split();
  const std::uint64_t clique_seed = split();

  const ExpansionGraph star = build_star(h);
  const ExpansionGraph clique = build_clique(h, cfg.max_clique_cardinality);

  std::vector<std::vector<double>> candidates = krylov_pool(star, rho, star_seed);
  std::vector<ExpansionKind> tags(candidates.size(), ExpansionKind::star);
  for (auto& v : krylov_pool(clique, rho, clique_seed)) {
    candidates.push_back(std::move(v));
    tags.push_back(ExpansionKind::clique);
  }

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    auto& v = candidates[c];
    detail::deflate_constant(v);
    const double n0 = detail::norm(v);
    if (!(n0 > 0.0)) continue;
    for (const auto& q : pool.vectors) {
      const double proj = detail::dot(q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * q[i];
    }
    double n1 = detail::norm(v);
    if (n1 < 0.5 * n0) {  // re-orthogonalize once when cancellation was heavy
      for (const auto& q : pool.vectors) {
        const double proj = detail::dot(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * q[i];
      }
      n1 = detail::norm(v);
    }
    if (n1 < cfg.drop_tolerance * n0) continue;
    for (double& x : v) x /= n1;
    pool.vectors.push_back(std::move(v));
    pool.source_tags.push_back(tags[c]);
  }
  return pool;
}

}  // namespace hypercoarsen
