#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypercoarsen/detail/text.hpp"
#include "hypercoarsen/hypergraph.hpp"
#include "hypercoarsen/resistance.hpp"

namespace hypercoarsen {

struct CutVolume {
  double cut = 0.0;
  double vol_s = 0.0;
  double vol_complement = 0.0;
};

/// Weight of hyperedges split by S, plus the volumes of both sides.
inline CutVolume cut_and_volume(const Hypergraph& h, std::span<const VertexId> s) {
  std::vector<std::uint8_t> in_s(h.num_vertices(), 0);
  for (VertexId v : s) {
    if (v >= h.num_vertices()) throw std::invalid_argument("cut_and_volume: vertex out of range");
    in_s[v] = 1;
  }
  CutVolume out;
  double vol_total = 0.0;
  for (const auto& e : h.edges()) {
    bool inside = false, outside = false;
    for (VertexId p : e.pins) (in_s[p] ? inside : outside) = true;
    if (inside && outside) out.cut += e.weight;
    vol_total += e.weight * static_cast<double>(e.pins.size());
    for (VertexId p : e.pins)
      if (in_s[p]) out.vol_s += e.weight;
  }
  out.vol_complement = vol_total - out.vol_s;
  return out;
}

/// Phi(S) = cut / min(vol(S), vol(complement)), clamped to [0,1]. Throws for
/// empty or full S and for a zero minimum volume.
inline double conductance(const Hypergraph& h, std::span<const VertexId> s) {
  std::vector<std::uint8_t> in_s(h.num_vertices(), 0);
  std::size_t count = 0;
  for (VertexId v : s) {
    if (v >= h.num_vertices()) throw std::invalid_argument("conductance: vertex out of range");
    if (!in_s[v]) {
      in_s[v] = 1;
      ++count;
    }
  }
  if (count == 0 || count == h.num_vertices())
    throw std::invalid_argument("conductance: S must be a non-empty proper subset");
  const CutVolume cv = cut_and_volume(h, s);
  const double mv = std::min(cv.vol_s, cv.vol_complement);
  if (!(mv > 0.0)) throw std::invalid_argument("conductance: zero minimum volume");
  return std::min(1.0, cv.cut / mv);
}

struct EvaluationReport {
  double phi_avg = 0.0;
  std::vector<double> per_cluster_phi;
  double cut_size = 0.0;
  double nr = 0.0;        // 1 - num_clusters / num_original_vertices
  double balance = 0.0;   // max cluster weight / ideal weight
  std::size_t num_clusters = 0;
  std::size_t zero_volume_clusters = 0;  // contributed phi = 1, flagged
};

/// Per-cluster conductance, unweighted mean, weight-summed cut size over split
/// hyperedges, node-reduction ratio, and vertex-weight balance.
inline EvaluationReport evaluate_clustering(const Hypergraph& h, const ClusterAssignment& a) {
  validate_assignment(a, h.num_vertices());
  EvaluationReport rep;
  rep.num_clusters = a.num_clusters;
  const std::size_t n = h.num_vertices();
  const std::size_t k = a.num_clusters;
  if (n == 0 || k == 0) return rep;

  std::vector<double> vol(k, 0.0), cut(k, 0.0), weight(k, 0.0);
  double vol_total = 0.0, weight_total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    weight[a.cluster_of[v]] += h.vertex_weights()[v];
    weight_total += h.vertex_weights()[v];
  }
  std::vector<VertexId> touched;
  for (const auto& e : h.edges()) {
    touched.clear();
    for (VertexId p : e.pins) {
      vol[a.cluster_of[p]] += e.weight;
      touched.push_back(a.cluster_of[p]);
    }
    vol_total += e.weight * static_cast<double>(e.pins.size());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    if (touched.size() > 1) {
      rep.cut_size += e.weight;
      for (VertexId c : touched) cut[c] += e.weight;
    }
  }

  rep.per_cluster_phi.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const double mv = std::min(vol[c], vol_total - vol[c]);
    if (mv > 0.0) {
      rep.per_cluster_phi[c] = std::min(1.0, cut[c] / mv);
    } else {
      rep.per_cluster_phi[c] = 1.0;
      ++rep.zero_volume_clusters;
    }
    rep.phi_avg += rep.per_cluster_phi[c];
  }
  rep.phi_avg /= static_cast<double>(k);
  rep.nr = 1.0 - static_cast<double>(k) / static_cast<double>(n);
  const double ideal = weight_total / static_cast<double>(k);
  rep.balance = ideal > 0.0 ? *std::max_element(weight.begin(), weight.end()) / ideal : 1.0;
  return rep;
}

constexpr double kRatingDenominatorGuard = 1e-6;

/// r(p,q) = sum over hyperedges containing both p and q of w(e)/(R_e - 1);
/// denominators within 1e-12 of zero are replaced by the guard value.
inline double rating(const Hypergraph& h, const ResistanceVector& rv, VertexId p, VertexId q) {
  if (p == q) throw std::invalid_argument("rating: p and q must differ");
  if (p >= h.num_vertices() || q >= h.num_vertices())
    throw std::invalid_argument("rating: vertex out of range");
  double acc = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& pins = h.edge(e).pins;
    if (!std::binary_search(pins.begin(), pins.end(), p)) continue;
    if (!std::binary_search(pins.begin(), pins.end(), q)) continue;
    const double denom = rv.r[e] - 1.0;
    acc += h.edge(e).weight / (std::abs(denom) > 1e-12 ? denom : kRatingDenominatorGuard);
  }
  return acc;
}

struct RatingRow {
  EdgeId edge = 0;
  double weight = 0.0;
  double resistance = 0.0;
  double denominator = 0.0;
  bool guarded = false;
};

/// Per-hyperedge rating ingredients for an external partitioner: weight,
/// estimated resistance, and the (guarded) denominator of the rating function.
inline std::vector<RatingRow> rating_export(const Hypergraph& h, const ResistanceVector& rv) {
  if (rv.r.size() != h.num_edges())
    throw std::invalid_argument("rating_export: resistance length mismatch");
  std::vector<RatingRow> rows(h.num_edges());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const double denom = rv.r[e] - 1.0;
    const bool guarded = !(std::abs(denom) > 1e-12);
    rows[e] = {e, h.edge(e).weight, rv.r[e], guarded ? kRatingDenominatorGuard : denom, guarded};
  }
  return rows;
}

inline void write_report_tsv(const EvaluationReport& rep, std::ostream& out) {
  out << "phi_avg\tcut_size\tnr\tbalance\tnum_clusters\tzero_volume_clusters\n";
  out << detail::format_double(rep.phi_avg) << '\t' << detail::format_double(rep.cut_size) << '\t'
      << detail::format_double(rep.nr) << '\t' << detail::format_double(rep.balance) << '\t'
      << rep.num_clusters << '\t' << rep.zero_volume_clusters << '\n';
}

inline void print_report(const EvaluationReport& rep, std::ostream& out) {
  out << "clusters:             " << rep.num_clusters << '\n'
      << "average conductance:  " << detail::format_double(rep.phi_avg) << '\n'
      << "cut size:             " << detail::format_double(rep.cut_size) << '\n'
      << "node reduction:       " << detail::format_double(rep.nr) << '\n'
      << "balance:              " << detail::format_double(rep.balance) << '\n'
      << "zero-volume clusters: " << rep.zero_volume_clusters << '\n';
}

}  // namespace hypercoarsen
