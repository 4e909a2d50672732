#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hypercoarsen/detail/text.hpp"
#include "hypercoarsen/hypergraph.hpp"

namespace hypercoarsen {

class HgrFormatError : public std::runtime_error {
 public:
  explicit HgrFormatError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool is_comment_or_blank(std::string_view line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '%';
  }
  return true;  // blank
}

// Pulls the next content line, skipping '%' comments and blanks.
inline bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!is_comment_or_blank(line)) return true;
  }
  return false;
}

}  // namespace detail

/// Parses the hMETIS .hgr format. Header is "|E| |V| [fmt]" with fmt one of
/// 1 (edge weights), 10 (vertex weights), 11 (both); then |E| hyperedge lines
/// of 1-based pins (preceded by a weight for fmt 1/11), then |V| vertex weight
/// lines for fmt 10/11. '%' lines are comments. Vertices come out 0-based;
/// hyperedges with fewer than two distinct pins are dropped and counted on the
/// resulting Hypergraph.
inline Hypergraph parse_hgr(std::istream& in) {
  std::string line;
  std::vector<std::string_view> tok;

  if (!detail::next_content_line(in, line)) throw HgrFormatError("malformed header: empty input");
  detail::split_tokens(line, tok);
  if (tok.size() < 2 || tok.size() > 3)
    throw HgrFormatError("malformed header: expected '|E| |V| [fmt]'");
  std::int64_t decl_edges = 0, decl_vertices = 0;
  if (!detail::parse_i64(tok[0], decl_edges) || !detail::parse_i64(tok[1], decl_vertices))
    throw HgrFormatError("malformed header: non-integer counts");
  if (decl_edges <= 0 || decl_vertices <= 0)
    throw HgrFormatError("non-positive declared counts");
  bool edge_weights = false, vertex_weights = false;
  if (tok.size() == 3) {
    if (tok[2] == "1") {
      edge_weights = true;
    } else if (tok[2] == "10") {
      vertex_weights = true;
    } else if (tok[2] == "11") {
      edge_weights = vertex_weights = true;
    } else {
      throw HgrFormatError("malformed header: unknown fmt '" + std::string(tok[2]) + "'");
    }
  }

  const auto num_vertices = static_cast<std::size_t>(decl_vertices);
  std::vector<Hyperedge> edges;
  edges.reserve(static_cast<std::size_t>(decl_edges));
  for (std::int64_t e = 0; e < decl_edges; ++e) {
    if (!detail::next_content_line(in, line))
      throw HgrFormatError("unexpected end of input: expected " + std::to_string(decl_edges) +
                           " hyperedge lines");
    detail::split_tokens(line, tok);
    Hyperedge edge;
    std::size_t first_pin = 0;
    if (edge_weights) {
      if (tok.empty() || !detail::parse_double(tok[0], edge.weight))
        throw HgrFormatError("malformed hyperedge line " + std::to_string(e + 1));
      if (!(edge.weight > 0.0))
        throw HgrFormatError("non-positive edge weight on hyperedge line " + std::to_string(e + 1));
      first_pin = 1;
    }
    edge.pins.reserve(tok.size() - first_pin);
    for (std::size_t i = first_pin; i < tok.size(); ++i) {
      std::uint64_t pin = 0;
      if (!detail::parse_u64(tok[i], pin))
        throw HgrFormatError("malformed hyperedge line " + std::to_string(e + 1));
      if (pin < 1 || pin > num_vertices)
        throw HgrFormatError("vertex index out of range on hyperedge line " + std::to_string(e + 1));
      edge.pins.push_back(static_cast<VertexId>(pin - 1));
    }
    edges.push_back(std::move(edge));
  }

  std::vector<double> weights;
  if (vertex_weights) {
    weights.resize(num_vertices);
    for (std::size_t v = 0; v < num_vertices; ++v) {
      if (!detail::next_content_line(in, line))
        throw HgrFormatError("unexpected end of input: expected " + std::to_string(num_vertices) +
                             " vertex weight lines");
      detail::split_tokens(line, tok);
      if (tok.size() != 1 || !detail::parse_double(tok[0], weights[v]))
        throw HgrFormatError("malformed vertex weight line " + std::to_string(v + 1));
      if (!(weights[v] >= 0.0))
        throw HgrFormatError("negative vertex weight line " + std::to_string(v + 1));
    }
  }
  if (detail::next_content_line(in, line)) throw HgrFormatError("unexpected trailing content");

  return Hypergraph(num_vertices, std::move(edges), std::move(weights));
}

inline Hypergraph parse_hgr(const std::string& text) {
  std::istringstream in(text);
  return parse_hgr(in);
}

/// Writes .hgr; with include_weights the fmt-11 form is used and both edge and
/// vertex weights are serialized at full precision. Pins go out 1-based.
inline void write_hgr(const Hypergraph& h, std::ostream& out, bool include_weights = false) {
  out << h.num_edges() << ' ' << h.num_vertices();
  if (include_weights) out << " 11";
  out << '\n';
  for (const auto& e : h.edges()) {
    if (include_weights) out << detail::format_double(e.weight) << ' ';
    for (std::size_t i = 0; i < e.pins.size(); ++i) {
      if (i > 0) out << ' ';
      out << e.pins[i] + 1;
    }
    out << '\n';
  }
  if (include_weights)
    for (double w : h.vertex_weights()) out << detail::format_double(w) << '\n';
}

inline std::string write_hgr(const Hypergraph& h, bool include_weights = false) {
  std::ostringstream out;
  write_hgr(h, out, include_weights);
  return out.str();
}

/// One cluster id per line, vertex order. '%' comment lines are skipped on read.
inline void write_clusters(const ClusterAssignment& a, std::ostream& out) {
  for (VertexId c : a.cluster_of) out << c << '\n';
}

inline ClusterAssignment read_clusters(std::istream& in, std::size_t num_vertices) {
  ClusterAssignment a;
  a.cluster_of.reserve(num_vertices);
  std::string line;
  std::vector<std::string_view> tok;
  while (detail::next_content_line(in, line)) {
    detail::split_tokens(line, tok);
    std::int64_t c = 0;
    if (tok.size() != 1 || !detail::parse_i64(tok[0], c))
      throw std::runtime_error("non-integer cluster line " + std::to_string(a.cluster_of.size() + 1));
    if (c < 0) throw std::runtime_error("negative cluster id");
    a.cluster_of.push_back(static_cast<VertexId>(c));
    a.num_clusters = std::max(a.num_clusters, static_cast<std::size_t>(c) + 1);
  }
  if (a.cluster_of.size() != num_vertices)
    throw std::runtime_error("line count mismatch: expected " + std::to_string(num_vertices) +
                             " cluster lines, got " + std::to_string(a.cluster_of.size()));
  validate_assignment(a, num_vertices);
  return a;
}

}  // namespace hypercoarsen
