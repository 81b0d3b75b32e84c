#include <doctest.h>

#include "cdm/codec.hpp"
#include "cdm/jsonio.hpp"
#include "cdm/width.hpp"

using namespace cdm;

TEST_CASE("width report JSON schema") {
  WidthReport finite;
  finite.class_id = 3;
  finite.width = 2;
  finite.witnesses = {"a", "b"};
  CHECK(width_report_to_json(finite) ==
        R"({"class":3,"width":2,"witnesses":["a","b"]})");

  WidthReport infinite;
  infinite.class_id = 7;
  CHECK(width_report_to_json(infinite) == R"({"class":7,"width":"inf","witnesses":[]})");
}

TEST_CASE("lemma report JSON is deterministic and timing-free") {
  LemmaReport r;
  r.lemma_id = "modular-law";
  r.instance = "edge";
  r.pass = true;
  r.checked = 1305;
  r.elapsed = std::chrono::milliseconds(123);
  auto text = lemma_report_to_json(r);
  CHECK(text == R"({"checked":1305,"instance":"edge","lemma":"modular-law","status":"PASS"})");
  CHECK(text.find("elapsed") == std::string::npos);

  r.pass = false;
  r.counterexample = "gens=[5]";
  CHECK(lemma_report_to_json(r).find("counterexample") != std::string::npos);
}

TEST_CASE("graph JSON schema") {
  auto g = Graph::make({"a", "b"}, {{"a", "b"}});
  CHECK(graph_to_json(g, 1) == R"({"c2":1,"edges":[["a","b"]],"vertices":["a","b"]})");
  CHECK(graph_to_text(g, 0) == "vertex a\nvertex b\nedge a b\n");
}
