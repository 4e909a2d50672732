#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypercoarsen/detail/parallel.hpp"
#include "hypercoarsen/embedding.hpp"
#include "hypercoarsen/hypergraph.hpp"

namespace hypercoarsen {

/// Per-hyperedge effective-resistance estimates.
struct ResistanceVector {
  std::vector<double> r;      // R_e, non-negative and finite
  std::vector<EdgeId> order;  // hyperedge ids ascending by (r, id)
  std::vector<double> qh;     // cached Q_H per pool vector
};

namespace detail {

inline void sort_by_resistance(ResistanceVector& rv) {
  rv.order.resize(rv.r.size());
  std::iota(rv.order.begin(), rv.order.end(), EdgeId{0});
  std::sort(rv.order.begin(), rv.order.end(), [&](EdgeId a, EdgeId b) {
    if (rv.r[a] != rv.r[b]) return rv.r[a] < rv.r[b];
    return a < b;
  });
}

}  // namespace detail

/// Q_H(chi) = sum_e w_e * (max spread of chi inside e)^2.
inline double nonlinear_quadratic_form(const Hypergraph& h, std::span<const double> chi) {
  if (chi.size() != h.num_vertices())
    throw std::invalid_argument("nonlinear_quadratic_form: dimension mismatch");
  double q = 0.0;
  for (const auto& e : h.edges()) {
    double lo = chi[e.pins[0]], hi = lo;
    for (std::size_t i = 1; i < e.pins.size(); ++i) {
      const double x = chi[e.pins[i]];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    q += e.weight * (hi - lo) * (hi - lo);
  }
  return q;
}

/// Single-vector resistance ratio of hyperedge e: spread between the extreme
/// pins of chi within e, squared, over the cached Q_H. Ties in the extremes go
/// to the lowest vertex id; a degenerate qh of zero yields zero.
inline double resistance_ratio(const Hypergraph& h, EdgeId e, std::span<const double> chi,
                               double qh) {
  if (qh <= 0.0) return 0.0;
  const auto& pins = h.edge(e).pins;
  double lo = chi[pins[0]], hi = lo;
  for (std::size_t i = 1; i < pins.size(); ++i) {
    const double x = chi[pins[i]];
    if (x > hi) hi = x;       // strict comparisons keep the lowest-id extreme
    else if (x < lo) lo = x;
  }
  return (hi - lo) * (hi - lo) / qh;
}

/// R_e as the maximum resistance ratio over all pool vectors, with Q_H
/// computed once per vector; order is ascending by (r, id).
inline ResistanceVector estimate_resistances(const Hypergraph& h, const EmbeddingPool& pool) {
  if (pool.empty()) throw std::invalid_argument("estimate_resistances: empty embedding pool");
  ResistanceVector rv;
  rv.qh.reserve(pool.size());
  for (const auto& chi : pool.vectors) rv.qh.push_back(nonlinear_quadratic_form(h, chi));
  rv.r.assign(h.num_edges(), 0.0);
  detail::parallel_for(h.num_edges(), [&](std::size_t e) {
    double best = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i)
      best = std::max(best, resistance_ratio(h, static_cast<EdgeId>(e), pool.vectors[i], rv.qh[i]));
    rv.r[e] = best;
  });
  detail::sort_by_resistance(rv);
  return rv;
}

}  // namespace hypercoarsen
