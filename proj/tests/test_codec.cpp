#include <doctest.h>

#include "cdm/codec.hpp"
#include "cdm/quotient.hpp"
#include "cdm/subgroup.hpp"

using namespace cdm;

TEST_CASE("graph text parsing") {
  auto spec = parse_graph("vertex a\n");
  CHECK(spec.graph.vertices == std::vector<std::string>{"a"});
  CHECK(spec.graph.edges.empty());
  CHECK(spec.extra_c2 == 0);

  spec = parse_graph("vertex a\nvertex b\nedge a b\nc2 2\n# comment\n");
  CHECK(spec.graph.vertices == std::vector<std::string>{"a", "b"});
  CHECK(spec.graph.has_edge("b", "a"));
  CHECK(spec.extra_c2 == 2);

  CHECK_THROWS_AS(parse_graph("edge a a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nedge a b\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex a\nvertex b\nedge a b\nedge b a\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("frobnicate x\n"), ParseError);
  // parse errors carry the line number
  try {
    parse_graph("vertex a\nbogus\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("graph JSON parsing and sniffing") {
  auto spec = parse_graph(R"({"vertices":["a","b"],"edges":[["a","b"]],"c2":1})");
  CHECK(spec.graph.vertices.size() == 2);
  CHECK(spec.graph.edges.size() == 1);
  CHECK(spec.extra_c2 == 1);
  CHECK_THROWS_AS(parse_graph("{\"edges\":[]}"), ParseError);
  CHECK_THROWS_AS(parse_graph("{not json"), ParseError);
  // round trip through the JSON writer
  auto again = parse_graph(graph_to_json(spec.graph, spec.extra_c2));
  CHECK(again == spec);
}

TEST_CASE("encoded group orders and tags") {
  CHECK(encode(Graph::make({}, {}), 0, 3, 5)->order() == 1);
  auto d3 = encode(Graph::make({"a"}, {}), 0, 3, 5);
  CHECK(d3->order() == 6);
  CHECK(iso_tag(*d3, 3, 5) == IsoTag{IsoKind::Dp, 0});
  auto w = encode(Graph::make({"a", "b"}, {{"a", "b"}}), 0, 3, 5);
  CHECK(w->order() == 180);
  CHECK(iso_tag(*w, 3, 5) == IsoTag{IsoKind::W, 0});
  auto d3d3 = encode(Graph::make({"a", "b"}, {}), 0, 3, 5);
  CHECK(d3d3->order() == 36);
  CHECK(iso_tag(*d3d3, 3, 5) == IsoTag{IsoKind::DpXDp, 0});
  // extra factors scale by powers of two
  CHECK(encode(Graph::make({"a"}, {}), 2, 3, 5)->order() == 24);
}

TEST_CASE("structured decoding round trips") {
  for (const char* name : {"v1", "v2", "edge"}) {
    Graph g = name == std::string("v1")   ? Graph::make({"a"}, {})
              : name == std::string("v2") ? Graph::make({"a", "b"}, {})
                                          : Graph::make({"a", "b"}, {{"a", "b"}});
    for (std::uint32_t k : {0u, 2u}) CHECK(decode_structured(*encode(g, k, 3, 5)) == g);
  }
}

TEST_CASE("oracle decoding through the system") {
  auto build = [](const Graph& g) {
    auto group = encode(g, 0, 3, 5);
    return System(group, enumerate_normal(group, 10000), 3, 5);
  };
  // one vertex: a single D_p class, no edge
  CHECK(decode(build(Graph::make({"a"}, {}))) == Graph::make({"a"}, {}));
  // two vertices without an edge: no W quotient exists (order 36 < 180)
  CHECK(decode(build(Graph::make({"a", "b"}, {}))) == Graph::make({"a", "b"}, {}));
  // the edge survives
  CHECK(decode(build(Graph::make({"a", "b"}, {{"a", "b"}}))) ==
        Graph::make({"a", "b"}, {{"a", "b"}}));
}

TEST_CASE("graph isomorphism backtracking") {
  auto p3 = Graph::make({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  auto p3b = Graph::make({"a", "b", "c"}, {{"b", "c"}, {"a", "b"}});
  CHECK(graph_isomorphic(p3, p3b));
  auto tri = Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK_FALSE(graph_isomorphic(p3, tri));
  CHECK(graph_isomorphic(Graph::make({}, {}), Graph::make({}, {})));
  CHECK_FALSE(graph_isomorphic(Graph::make({"a"}, {}), Graph::make({}, {})));

  std::vector<std::string> big;
  for (int i = 0; i < 9; ++i) big.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(graph_isomorphic(Graph::make(big, {}), Graph::make(big, {})),
                  BudgetError);
}

TEST_CASE("oracle decoding ignores extra factors") {
  auto g = encode(Graph::make({"a", "b"}, {{"a", "b"}}), 1, 3, 5);
  System s(g, enumerate_normal(g, 10000), 3, 5);
  CHECK(decode(s) == Graph::make({"a", "b"}, {{"a", "b"}}));
  CHECK(decode_structured(*g) == Graph::make({"a", "b"}, {{"a", "b"}}));
}

TEST_CASE("other prime pairs work throughout") {
  auto d5 = encode(Graph::make({"a"}, {}), 0, 5, 3);
  CHECK(d5->order() == 10);
  CHECK(iso_tag(*d5, 5, 3) == IsoTag{IsoKind::Dp, 0});

  auto w53 = encode(Graph::make({"a", "b"}, {{"a", "b"}}), 0, 5, 3);
  CHECK(w53->order() == 300);
  CHECK(iso_tag(*w53, 5, 3) == IsoTag{IsoKind::W, 0});
  CHECK(decode_structured(*w53) == Graph::make({"a", "b"}, {{"a", "b"}}));

  System s(w53, enumerate_normal(w53, 10000), 5, 3);
  CHECK(decode(s) == Graph::make({"a", "b"}, {{"a", "b"}}));
}
