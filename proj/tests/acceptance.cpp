// Acceptance suite: one line per criterion, PASS/FAIL with elapsed time,
// nonzero exit on any failure. Each criterion enforces its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cdm/autos.hpp"
#include "cdm/codec.hpp"
#include "cdm/eval.hpp"
#include "cdm/lattice.hpp"
#include "cdm/lemmas.hpp"
#include "cdm/width.hpp"

using namespace cdm;

namespace {

int failures = 0;

void run(int number, const std::string& what, double budget_seconds,
         const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over budget");
  }
  if (!ok) ++failures;
  std::printf("criterion %2d: %s (%.2fs/%.0fs) %s%s%s\n", number, ok ? "PASS" : "FAIL",
              elapsed, budget_seconds, what.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
}

// All isomorphism types of graphs on at most `max_n` vertices, via labeled
// enumeration deduplicated by the backtracking isomorphism test.
std::vector<Graph> graph_catalogue(std::size_t max_n) {
  std::vector<Graph> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    for (std::uint32_t bits = 0; bits < (1u << slots.size()); ++bits) {
      std::vector<std::pair<std::string, std::string>> edges;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (bits & (1u << s))
          edges.emplace_back(labels[slots[s].first], labels[slots[s].second]);
      Graph g = Graph::make(labels, std::move(edges));
      bool fresh = true;
      for (const auto& seen : out)
        if (seen.vertices.size() == n && graph_isomorphic(seen, g)) {
          fresh = false;
          break;
        }
      if (fresh) out.push_back(std::move(g));
    }
  }
  return out;
}

NormalSubgroup make_m(const std::shared_ptr<StructuredGroup>& g) {
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < g->order(); ++e) {
    auto d = g->decode(e);
    if (d.z[0] == 0 && d.x[0] == d.x[1]) elements.push_back(e);
  }
  return subgroup_from_elements(g, std::move(elements));
}

bool lemma_pass(const char* id, const std::vector<const char*>& instances,
                std::string& detail) {
  RunConfig cfg;
  for (auto name : instances) {
    auto report = verify(id, named_instance(name), cfg);
    if (!report.pass) {
      detail = std::string(id) + "[" + name + "]: " + report.counterexample;
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  RunConfig cfg;

  run(1, "structured round trip, all graphs on <= 4 vertices, K in {0,1,2}", 10,
      [&](std::string& detail) {
        auto graphs = graph_catalogue(4);
        if (graphs.size() != 19) {  // 1+1+2+4+11 isomorphism types
          detail = "catalogue size " + std::to_string(graphs.size());
          return false;
        }
        for (const auto& g : graphs)
          for (std::uint32_t k : {0u, 1u, 2u}) {
            if (!(decode_structured(*encode(g, k, cfg.p, cfg.q)) == g)) {
              detail = "round trip failed on " + graph_to_json(g, k);
              return false;
            }
          }
        return true;
      });

  run(2, "oracle decode agrees with structured decode up to order 5400", 300,
      [&](std::string& detail) {
        for (const char* name : {"empty", "v1", "v2", "edge", "path3"}) {
          auto inst = named_instance(name);
          auto group = encode(inst.graph, 0, cfg.p, cfg.q);
          System s(group, enumerate_normal(group, cfg.max_order), cfg.p, cfg.q);
          Graph via_oracle = decode(s);
          Graph fast = decode_structured(*group);
          if (!(via_oracle == fast) || !(fast == inst.graph)) {
            detail = std::string("decode mismatch on ") + name;
            return false;
          }
        }
        return true;
      });

  run(3, "no unexpected quotients on D3^V x C2^I, |V|<=2, |I|<=2", 60,
      [&](std::string& detail) {
        return lemma_pass("no-unexpected",
                          {"v1", "v2", "v1+c1", "v1+c2", "v2+c1", "v2+c2"}, detail);
      });

  run(4, "Frattini subgroup trivial for 1- and 2-vertex graphs", 60,
      [&](std::string& detail) {
        return lemma_pass("frattini-trivial", {"v1", "v2", "edge"}, detail);
      });

  run(5, "W/M is dihedral of order 2q and the bounding data matches", 5,
      [&](std::string& detail) {
        auto w = encode(Graph::make({"a", "b"}, {{"a", "b"}}), 0, cfg.p, cfg.q);
        auto subs = enumerate_normal(w, cfg.max_order);
        auto m = make_m(w);
        bool found = false;
        for (const auto& n : subs) found = found || n == m;
        if (!found || m.index() != 10) {
          detail = "M missing from the enumeration";
          return false;
        }
        if (!(iso_tag(*make_quotient(w, m), cfg.p, cfg.q) == IsoTag{IsoKind::Dq, 0})) {
          detail = "W/M is not tagged Dq";
          return false;
        }
        auto rep = check_bounding(w, m);
        if (rep.v3 != std::vector<std::string>{"a", "b"} || rep.m != 1 ||
            rep.v3.size() > 2 * rep.m || !rep.pass()) {
          detail = "bounding data for (W, M) is off";
          return false;
        }
        return true;
      });

  run(6, "bounding claims for every normal subgroup of W and W x C2", 120,
      [&](std::string& detail) {
        return lemma_pass("bounding", {"edge", "edge+c1"}, detail);
      });

  run(7, "Sylow intersection identities over all normal pairs", 120,
      [&](std::string& detail) {
        return lemma_pass("sylow-intersect", {"edge", "v2+c1"}, detail);
      });

  run(8, "modular law and fiber-product identity over S(W)", 120,
      [&](std::string& detail) {
        return lemma_pass("modular-law", {"edge"}, detail) &&
               lemma_pass("fiber-iso", {"edge"}, detail);
      });

  run(9, "width dictionary: linear = semantic, independence = rank", 120,
      [&](std::string& detail) {
        return lemma_pass("dictionary", {"v1", "v2", "edge", "path3"}, detail);
      });

  run(10, "exchange and C2-generation on small systems with extras", 120,
      [&](std::string& detail) {
        const std::vector<const char*> insts = {"v1",    "v2",    "edge",
                                                "v1+c1", "v2+c1", "edge+c1"};
        return lemma_pass("exchange", insts, detail) &&
               lemma_pass("c2-generation", insts, detail);
      });

  run(11, "width formulas phi_n match the width computation, psi monotone", 300,
      [&](std::string& detail) {
        return lemma_pass("width-definability",
                          {"v1", "v2", "edge", "v1+c1", "v2+c1", "edge+c1"}, detail);
      });

  run(12, "automorphism extension and assembly", 30, [&](std::string& detail) {
    return lemma_pass("extend-auts", {"edge"}, detail) &&
           lemma_pass("assemble-aut", {"edge"}, detail);
  });

  run(13, "group axioms: exhaustive to order 1000, seeded random at 27000", 60,
      [&](std::string& detail) {
        for (const char* name : {"v1", "v2", "edge", "v1+c1", "v2+c2", "edge+c1", "v3"}) {
          auto inst = named_instance(name);
          auto g = encode(inst.graph, inst.extra_c2, cfg.p, cfg.q);
          if (g->order() > 1000) {
            detail = std::string("instance over 1000: ") + name;
            return false;
          }
          for (std::uint64_t a = 0; a < g->order(); ++a) {
            if (g->mul(a, g->inv(a)) != 0 || g->mul(g->inv(a), a) != 0) {
              detail = "inverse law fails";
              return false;
            }
            for (std::uint64_t b = 0; b < g->order(); ++b)
              for (std::uint64_t c = 0; c < g->order(); ++c)
                if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c))) {
                  detail = "associativity fails";
                  return false;
                }
          }
        }
        auto tri = encode(named_instance("triangle").graph, 0, cfg.p, cfg.q);
        if (tri->order() != 27000) {
          detail = "triangle group order off";
          return false;
        }
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, tri->order() - 1);
        for (int i = 0; i < 100000; ++i) {
          std::uint64_t a = pick(rng), b = pick(rng), c = pick(rng);
          if (tri->mul(tri->mul(a, b), c) != tri->mul(a, tri->mul(b, c))) {
            detail = "triangle associativity fails";
            return false;
          }
          if (tri->mul(a, tri->inv(a)) != 0) {
            detail = "triangle inverse fails";
            return false;
          }
        }
        return true;
      });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures;
}
