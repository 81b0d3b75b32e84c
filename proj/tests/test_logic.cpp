#include <doctest.h>

#include <random>

#include "cdm/codec.hpp"
#include "cdm/eval.hpp"
#include "cdm/width.hpp"

using namespace cdm;

namespace {

System build(const Graph& g, std::uint32_t c2 = 0) {
  auto group = encode(g, c2, 3, 5);
  return System(group, enumerate_normal(group, 10000), 3, 5);
}

// Random well-formed formulas for the round-trip property.
FormulaPtr random_formula(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> vars = {"x", "y", "z", "u"};
  auto var = [&] { return vars[rng() % vars.size()]; };
  if (depth <= 0) {
    switch (rng() % 5) {
      case 0: return Formula::atom(FormulaKind::Leq, {var(), var()});
      case 1: return Formula::atom(FormulaKind::CRel, {var(), var()});
      case 2: return Formula::atom(FormulaKind::PRel, {var(), var(), var()});
      case 3: return Formula::in_sort(var(), 1 + rng() % 200);
      default: return Formula::iso_of(var(), static_cast<IsoName>(rng() % 4));
    }
  }
  switch (rng() % 6) {
    case 0: return Formula::negation(random_formula(rng, depth - 1));
    case 1:
      return Formula::conjunction(random_formula(rng, depth - 1),
                                  random_formula(rng, depth - 1));
    case 2:
      return Formula::disjunction(random_formula(rng, depth - 1),
                                  random_formula(rng, depth - 1));
    case 3:
      return Formula::implication(random_formula(rng, depth - 1),
                                  random_formula(rng, depth - 1));
    case 4:
      return Formula::quantifier(FormulaKind::Exists, var(), 1 + rng() % 200,
                                 random_formula(rng, depth - 1));
    default:
      return Formula::quantifier(FormulaKind::Forall, var(), 1 + rng() % 200,
                                 random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parsing the grammar") {
  auto f = parse_formula("exists b:X[180]. iso(b, W) & leq(b, a)");
  CHECK(f->kind == FormulaKind::Exists);
  CHECK(f->var == "b");
  CHECK(f->sort == 180);
  CHECK(free_variables(f) == std::vector<std::string>{"a"});

  CHECK_THROWS_AS(parse_formula("p(x,y)"), ParseError);   // arity
  CHECK_THROWS_AS(parse_formula("leq(x)"), ParseError);   // arity
  CHECK_THROWS_AS(parse_formula("exists x. leq(x,x)"), ParseError);  // missing sort
  CHECK_THROWS_AS(parse_formula("iso(x, Zp)"), ParseError);
  CHECK_THROWS_AS(parse_formula("leq(x,x) leq(x,x)"), ParseError);  // trailing
  CHECK_THROWS_AS(parse_formula("in(x, X[0])"), ParseError);

  // keywords can still name variables in term positions
  auto eq = parse_formula("c = p");
  CHECK(eq->kind == FormulaKind::Eq);

  // connective precedence: -> binds loosest, ! tightest
  auto prec = parse_formula("!leq(x,y) & c(x,y) | x = y -> p(x,y,z)");
  CHECK(prec->kind == FormulaKind::Implies);
  CHECK(prec->children[0]->kind == FormulaKind::Or);
  CHECK(prec->children[0]->children[0]->kind == FormulaKind::And);
  CHECK(prec->children[0]->children[0]->children[0]->kind == FormulaKind::Not);
}

TEST_CASE("printer round trip on random formulas") {
  std::mt19937_64 rng(20240901);
  for (int i = 0; i < 300; ++i) {
    auto f = random_formula(rng, 4);
    auto printed = print_formula(f);
    CAPTURE(printed);
    auto back = parse_formula(printed);
    CHECK(equal(f, back));
  }
}

TEST_CASE("builtins print and reparse") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    auto psi = builtin_formula("psi", n, 3, 5);
    CHECK(equal(psi, parse_formula(print_formula(psi))));
    auto phi = builtin_formula("phi", n, 3, 5);
    CHECK(equal(phi, parse_formula(print_formula(phi))));
  }
  CHECK(equal(builtin_formula("vertex", 0, 3, 5),
              parse_formula(print_formula(builtin_formula("vertex", 0, 3, 5)))));
  CHECK(equal(builtin_formula("edge", 0, 3, 5),
              parse_formula(print_formula(builtin_formula("edge", 0, 3, 5)))));
  CHECK_THROWS_AS(builtin_formula("nope", 1, 3, 5), ContractError);
  CHECK_THROWS_AS(builtin_formula("psi", 0, 3, 5), ContractError);
}

TEST_CASE("evaluation basics") {
  System s = build(Graph::make({"a", "b"}, {{"a", "b"}}));
  CHECK(evaluate(s, parse_formula("forall x:X[2]. leq(x,x)")));
  CHECK(evaluate(s, parse_formula("forall x:X[180]. leq(x,x)")));
  CHECK_FALSE(evaluate(s, parse_formula("forall x:X[4]. in(x, X[1])")));
  CHECK(evaluate(s, parse_formula("exists x:X[1]. in(x, X[1])")));

  // free variables need an assignment
  auto open_formula = parse_formula("leq(x, y)");
  CHECK_THROWS_AS(evaluate(s, open_formula), ContractError);
  Assignment env{{"x", s.identity_coset(1)}, {"y", s.identity_coset(0)}};
  CHECK(evaluate(s, open_formula, env));

  // a variable of sort X[m] ranges over the lower sorts too
  CHECK(evaluate(s, parse_formula("exists x:X[180]. in(x, X[1])")));
}

TEST_CASE("vertex and edge formulas interpret the graph") {
  System w = build(Graph::make({"a", "b"}, {{"a", "b"}}));
  auto vertex = builtin_formula("vertex", 0, 3, 5);
  auto sols = solutions(w, vertex);
  REQUIRE(sols.size() == 2);
  for (const auto& tuple : sols) {
    CHECK(w.tag(tuple[0].subgroup_id).kind == IsoKind::Dp);
    CHECK(tuple[0].rep == 0);  // identity cosets only
  }

  auto edge = builtin_formula("edge", 0, 3, 5);
  CHECK(solutions(w, edge).size() == 2);  // the two orderings of the one edge

  System d3d3 = build(Graph::make({"a", "b"}, {}));
  CHECK(solutions(d3d3, vertex).size() == 2);
  CHECK(solutions(d3d3, edge).empty());
}

TEST_CASE("width formulas agree with the width computation") {
  System s = build(Graph::make({"a"}, {}), 1);  // D3 x C2
  auto phi1 = builtin_formula("phi", 1, 3, 5);
  auto sols = solutions(s, phi1);
  // exactly the two cosets of the e_a class; e_i and e_a+e_i stay out
  REQUIRE(sols.size() == 2);
  for (const auto& tuple : sols) {
    auto report = vertex_width(s, tuple[0]);
    CHECK(report.finite());
    CHECK(*report.width == 1);
    CHECK(report.witnesses == std::vector<std::string>{"a"});
  }

  System v2 = build(Graph::make({"a", "b"}, {}));
  auto phi2 = builtin_formula("phi", 2, 3, 5);
  auto parity_sols = solutions(v2, phi2);
  REQUIRE(parity_sols.size() == 2);
  for (const auto& tuple : parity_sols)
    CHECK(*vertex_width(v2, tuple[0]).width == 2);

  // psi is monotone
  auto count = [&](const System& sys, std::uint32_t n) {
    return solutions(sys, builtin_formula("psi", n, 3, 5)).size();
  };
  CHECK(count(v2, 1) <= count(v2, 2));
  CHECK(count(v2, 2) <= count(v2, 3));
}

TEST_CASE("embeddings dual to quotients preserve evaluation of positive formulas") {
  // S(D3) embeds into S(W) dual to the vertex projection of the one-edge
  // group; the embedding preserves the relations and sorts, so satisfaction
  // of existential-positive formulas transfers along it.
  auto d3 = encode(Graph::make({"a"}, {}), 0, 3, 5);
  auto w = encode(Graph::make({"a", "b"}, {{"a", "b"}}), 0, 3, 5);
  System sd(d3, enumerate_normal(d3, 10000), 3, 5);
  System sw(w, enumerate_normal(w, 10000), 3, 5);

  // group homomorphism: project the edge group onto its first vertex
  auto project = [&](std::uint64_t e) {
    return d3->inject_vertex(w->project_vertex(e, 0), 0);
  };
  auto lift = [&](std::uint64_t e) {
    return w->inject_vertex(d3->project_vertex(e, 0), 0);
  };

  // subgroup map: preimages under the projection
  std::vector<std::uint32_t> sub_image(sd.subgroup_count());
  for (std::uint32_t k = 0; k < sd.subgroup_count(); ++k) {
    std::vector<std::uint64_t> pre;
    for (std::uint64_t e = 0; e < w->order(); ++e)
      if (sd.subgroup(k).contains(project(e))) pre.push_back(e);
    auto found = sw.find_subgroup(pre);
    REQUIRE(found);
    CHECK(sw.subgroup(*found).index() == sd.subgroup(k).index());
    sub_image[k] = *found;
  }
  auto embed = [&](SystemElement e) {
    return sw.coset_of(sub_image[e.subgroup_id], lift(e.rep));
  };

  // the embedding preserves leq, C, P and sort membership
  for (std::uint32_t a = 0; a < sd.size(); ++a)
    for (std::uint32_t b = 0; b < sd.size(); ++b) {
      SystemElement ea = sd.element(a), eb = sd.element(b);
      CHECK(sd.leq(ea, eb) == sw.leq(embed(ea), embed(eb)));
      CHECK(sd.crel(ea, eb) == sw.crel(embed(ea), embed(eb)));
      for (std::uint64_t n : {1, 2, 6}) CHECK(sd.in_sort(ea, n) == sw.in_sort(embed(ea), n));
      if (!sd.equivalent(ea, eb)) continue;
      for (std::uint32_t c = 0; c < sd.size(); ++c) {
        SystemElement ec = sd.element(c);
        if (!sd.equivalent(eb, ec)) continue;
        CHECK(sd.prel(ea, eb, ec) == sw.prel(embed(ea), embed(eb), embed(ec)));
      }
    }

  // existential-positive sentences transfer from the substructure
  for (const char* text : {
           "exists x:X[6]. iso(x, Dp) & p(x,x,x)",
           "exists x:X[2]. p(x,x,x) & in(x, X[1])",
           "exists x:X[2]. exists y:X[6]. leq(y, x) & iso(y, Dp)",
       }) {
    auto f = parse_formula(text);
    CHECK(evaluate(sd, f));
    CHECK(evaluate(sw, f));
  }
}
