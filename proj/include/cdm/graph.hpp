#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdm {

// A finite simple graph with string-labeled vertices. Vertices are kept
// sorted and edges are stored as (min,max) label pairs sorted likewise,
// so equal graphs compare equal structurally.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  // Validates and normalizes: unique labels, endpoints exist, no self-loops,
  // no duplicate edges. Throws ParseError on violation.
  static Graph make(std::vector<std::string> vertices,
                    std::vector<std::pair<std::string, std::string>> edges);

  bool has_vertex(std::string_view v) const;
  bool has_edge(std::string_view a, std::string_view b) const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// A parsed graph file: the graph plus the number K of extra C2 factors
// requested by an optional `c2 K` line (or "c2" JSON key).
struct GraphSpec {
  Graph graph;
  std::uint32_t extra_c2 = 0;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

// Accepts both concrete syntaxes, sniffed by the first non-space byte:
//   text:  lines `vertex NAME`, `edge NAME NAME`, optional `c2 K`, `#` comments
//   json:  {"vertices":["a","b"],"edges":[["a","b"]],"c2":1}
GraphSpec parse_graph(std::string_view text);

std::string graph_to_json(const Graph& g, std::uint32_t extra_c2);
std::string graph_to_text(const Graph& g, std::uint32_t extra_c2);

// Exact backtracking isomorphism test; intended for small graphs (the
// implementation refuses more than 8 vertices on either side).
bool graph_isomorphic(const Graph& a, const Graph& b);

}  // namespace cdm
