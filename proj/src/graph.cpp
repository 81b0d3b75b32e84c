#include "cdm/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cdm/error.hpp"

namespace cdm {

Graph Graph::make(std::vector<std::string> vertices,
                  std::vector<std::pair<std::string, std::string>> edges) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw ParseError("duplicate vertex label");
  std::set<std::pair<std::string, std::string>> canon;
  for (auto& [a, b] : edges) {
    if (!std::binary_search(vertices.begin(), vertices.end(), a) ||
        !std::binary_search(vertices.begin(), vertices.end(), b))
      throw ParseError("edge endpoint is not a declared vertex: " + a + " " + b);
    if (a == b) throw ParseError("self-loop at " + a);
    auto pr = std::minmax(a, b);
    if (!canon.insert(pr).second) throw ParseError("duplicate edge " + a + " " + b);
  }
  Graph g;
  g.vertices = std::move(vertices);
  g.edges.assign(canon.begin(), canon.end());
  return g;
}

bool Graph::has_vertex(std::string_view v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Graph::has_edge(std::string_view a, std::string_view b) const {
  std::pair<std::string, std::string> pr{std::string(a), std::string(b)};
  if (pr.second < pr.first) std::swap(pr.first, pr.second);
  return std::binary_search(edges.begin(), edges.end(), pr);
}

namespace {

GraphSpec parse_graph_text(std::string_view text) {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::uint32_t c2 = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "vertex") {
      std::string name;
      if (!(ls >> name)) fail("vertex needs a name");
      vertices.push_back(name);
    } else if (head == "edge") {
      std::string a, b;
      if (!(ls >> a >> b)) fail("edge needs two endpoints");
      edges.emplace_back(a, b);
    } else if (head == "c2") {
      long k = -1;
      if (!(ls >> k) || k < 0) fail("c2 needs a nonnegative count");
      c2 = static_cast<std::uint32_t>(k);
    } else {
      fail("unknown directive '" + head + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing tokens after '" + head + "'");
  }
  try {
    return {Graph::make(std::move(vertices), std::move(edges)), c2};
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()));
  }
}

GraphSpec parse_graph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices"))
    throw ParseError("graph JSON needs a \"vertices\" array");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("vertex labels must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("edges must be two-element string arrays");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  std::uint32_t c2 = 0;
  if (j.contains("c2")) {
    if (!j["c2"].is_number_unsigned()) throw ParseError("\"c2\" must be a nonnegative integer");
    c2 = j["c2"].get<std::uint32_t>();
  }
  return {Graph::make(std::move(vertices), std::move(edges)), c2};
}

}  // namespace

GraphSpec parse_graph(std::string_view text) {
  auto it = std::find_if(text.begin(), text.end(),
                         [](unsigned char c) { return !std::isspace(c); });
  if (it != text.end() && *it == '{') return parse_graph_json(text);
  return parse_graph_text(text);
}

std::string graph_to_json(const Graph& g, std::uint32_t extra_c2) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) j["edges"].push_back({a, b});
  j["c2"] = extra_c2;
  return j.dump();
}

std::string graph_to_text(const Graph& g, std::uint32_t extra_c2) {
  std::ostringstream out;
  for (const auto& v : g.vertices) out << "vertex " << v << "\n";
  for (const auto& [a, b] : g.edges) out << "edge " << a << " " << b << "\n";
  if (extra_c2) out << "c2 " << extra_c2 << "\n";
  return out.str();
}

bool graph_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size())
    return false;
  const std::size_t n = a.vertices.size();
  if (n > 8) throw BudgetError("graph isomorphism limited to 8 vertices");
  if (n == 0) return true;

  auto adjacency = [](const Graph& g) {
    std::vector<std::uint8_t> adj(g.vertices.size() * g.vertices.size(), 0);
    for (const auto& [x, y] : g.edges) {
      auto ix = std::lower_bound(g.vertices.begin(), g.vertices.end(), x) - g.vertices.begin();
      auto iy = std::lower_bound(g.vertices.begin(), g.vertices.end(), y) - g.vertices.begin();
      adj[ix * g.vertices.size() + iy] = adj[iy * g.vertices.size() + ix] = 1;
    }
    return adj;
  };
  auto adj_a = adjacency(a), adj_b = adjacency(b);
  auto degree = [n](const std::vector<std::uint8_t>& adj, std::size_t v) {
    int d = 0;
    for (std::size_t u = 0; u < n; ++u) d += adj[v * n + u];
    return d;
  };

  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || degree(adj_a, v) != degree(adj_b, w)) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = adj_a[v * n + u] == adj_b[w * n + image[u]];
      if (!ok) continue;
      image[v] = static_cast<int>(w);
      used[w] = true;
      if (self(self, v + 1)) return true;
      used[w] = false;
      image[v] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace cdm
