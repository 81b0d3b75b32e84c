#include "cdm/eval.hpp"

#include <algorithm>

#include "cdm/error.hpp"

namespace cdm {

namespace {

struct Evaluator {
  const System& s;
  Assignment env;

  SystemElement lookup(const std::string& v) const {
    auto it = env.find(v);
    if (it == env.end()) throw ContractError("unbound variable '" + v + "'");
    return it->second;
  }

  bool eval(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::Leq:
        return s.leq(lookup(f->args[0]), lookup(f->args[1]));
      case FormulaKind::CRel:
        return s.crel(lookup(f->args[0]), lookup(f->args[1]));
      case FormulaKind::PRel:
        return s.prel(lookup(f->args[0]), lookup(f->args[1]), lookup(f->args[2]));
      case FormulaKind::Eq:
        return lookup(f->args[0]) == lookup(f->args[1]);
      case FormulaKind::InSort:
        return s.in_sort(lookup(f->args[0]), f->sort);
      case FormulaKind::Iso: {
        auto e = lookup(f->args[0]);
        IsoTag t = s.tag(e.subgroup_id);
        switch (f->iso) {
          case IsoName::Dp: return t.kind == IsoKind::Dp;
          case IsoName::W: return t.kind == IsoKind::W;
          case IsoName::C2: return t.kind == IsoKind::C2;
          case IsoName::Dq: return t.kind == IsoKind::Dq;
        }
        return false;
      }
      case FormulaKind::Not:
        return !eval(f->children[0]);
      case FormulaKind::And:
        return eval(f->children[0]) && eval(f->children[1]);
      case FormulaKind::Or:
        return eval(f->children[0]) || eval(f->children[1]);
      case FormulaKind::Implies:
        return !eval(f->children[0]) || eval(f->children[1]);
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool exists = f->kind == FormulaKind::Exists;
        const std::uint32_t extent = s.sort_extent(f->sort);
        auto saved = env.find(f->var) != env.end()
                         ? std::optional<SystemElement>(env[f->var])
                         : std::nullopt;
        bool result = !exists;
        for (std::uint32_t id = 0; id < extent; ++id) {
          env[f->var] = s.element(id);
          if (eval(f->children[0]) == exists) {
            result = exists;
            break;
          }
        }
        if (saved)
          env[f->var] = *saved;
        else
          env.erase(f->var);
        return result;
      }
    }
    return false;
  }
};

}  // namespace

bool evaluate(const System& s, const FormulaPtr& f, const Assignment& env) {
  for (const auto& v : free_variables(f))
    if (!env.count(v)) throw ContractError("assignment misses free variable '" + v + "'");
  Evaluator ev{s, env};
  return ev.eval(f);
}

std::vector<std::vector<SystemElement>> solutions(const System& s, const FormulaPtr& f) {
  auto vars = free_variables(f);
  std::vector<std::vector<SystemElement>> out;
  std::vector<SystemElement> tuple(vars.size());
  Assignment env;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == vars.size()) {
      Evaluator ev{s, env};
      if (ev.eval(f)) out.push_back(tuple);
      return;
    }
    for (std::uint32_t id = 0; id < s.size(); ++id) {
      tuple[k] = s.element(id);
      env[vars[k]] = tuple[k];
      self(self, k + 1);
    }
    env.erase(vars[k]);
  };
  rec(rec, 0);
  return out;
}

namespace {

// Exact-k block: k pairwise-inequivalent D_p elements whose meet lies below
// x. The meet is named by an existential witness m: any m of sort (2p)^k
// below k inequivalent D_p classes must be their meet, because the meet has
// index exactly (2p)^k and m's subgroup sits inside it with index at most
// (2p)^k.
FormulaPtr width_block(std::uint32_t k, std::uint32_t p) {
  const std::uint64_t dp_sort = 2ull * p;
  std::uint64_t meet_sort = 1;
  for (std::uint32_t i = 0; i < k; ++i) meet_sort *= dp_sort;

  std::vector<std::string> vs;
  for (std::uint32_t i = 0; i < k; ++i) vs.push_back("v" + std::to_string(i));

  FormulaPtr body;
  auto add = [&](FormulaPtr f) {
    body = body ? Formula::conjunction(std::move(body), std::move(f)) : std::move(f);
  };
  for (std::uint32_t i = 0; i < k; ++i) add(Formula::iso_of(vs[i], IsoName::Dp));
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = i + 1; j < k; ++j)
      add(Formula::negation(
          Formula::conjunction(Formula::atom(FormulaKind::Leq, {vs[i], vs[j]}),
                               Formula::atom(FormulaKind::Leq, {vs[j], vs[i]}))));

  FormulaPtr meet_part;
  auto madd = [&](FormulaPtr f) {
    meet_part =
        meet_part ? Formula::conjunction(std::move(meet_part), std::move(f)) : std::move(f);
  };
  for (std::uint32_t i = 0; i < k; ++i)
    madd(Formula::atom(FormulaKind::Leq, {"m", vs[i]}));
  madd(Formula::atom(FormulaKind::Leq, {"m", "x"}));
  add(Formula::quantifier(FormulaKind::Exists, "m", meet_sort, std::move(meet_part)));

  for (std::uint32_t i = k; i-- > 0;)
    body = Formula::quantifier(FormulaKind::Exists, vs[i], dp_sort, std::move(body));
  return body;
}

FormulaPtr psi_formula(std::uint32_t n, std::uint32_t p) {
  // x is a C2-sort element that is not the trivial class, of width <= n:
  // the disjunction over exact-k witness blocks.
  FormulaPtr blocks;
  for (std::uint32_t k = 1; k <= n; ++k) {
    auto b = width_block(k, p);
    blocks = blocks ? Formula::disjunction(std::move(blocks), std::move(b)) : std::move(b);
  }
  auto guard = Formula::conjunction(Formula::in_sort("x", 2),
                                    Formula::negation(Formula::in_sort("x", 1)));
  return Formula::conjunction(std::move(guard), std::move(blocks));
}

FormulaPtr vertex_formula(std::uint32_t p) {
  auto f = Formula::conjunction(
      Formula::in_sort("x", 2ull * p),
      Formula::conjunction(Formula::atom(FormulaKind::PRel, {"x", "x", "x"}),
                           Formula::iso_of("x", IsoName::Dp)));
  return f;
}

FormulaPtr edge_formula(std::uint32_t p, std::uint32_t q) {
  const std::uint64_t w_sort = 4ull * p * p * q;
  auto vertex_at = [&](const std::string& v) {
    return Formula::conjunction(
        Formula::in_sort(v, 2ull * p),
        Formula::conjunction(Formula::atom(FormulaKind::PRel, {v, v, v}),
                             Formula::iso_of(v, IsoName::Dp)));
  };
  auto below = Formula::conjunction(
      Formula::conjunction(Formula::atom(FormulaKind::Leq, {"w", "a"}),
                           Formula::atom(FormulaKind::Leq, {"w", "b"})),
      Formula::iso_of("w", IsoName::W));
  auto f = Formula::conjunction(
      Formula::conjunction(vertex_at("a"), vertex_at("b")),
      Formula::conjunction(
          Formula::negation(Formula::atom(FormulaKind::Eq, {"a", "b"})),
          Formula::quantifier(FormulaKind::Exists, "w", w_sort, std::move(below))));
  return f;
}

}  // namespace

FormulaPtr builtin_formula(const std::string& name, std::uint32_t n, std::uint32_t p,
                           std::uint32_t q) {
  if (name == "psi") {
    if (n < 1) throw ContractError("psi(n) needs n >= 1");
    return psi_formula(n, p);
  }
  if (name == "phi") {
    if (n < 1) throw ContractError("phi(n) needs n >= 1");
    if (n == 1) return psi_formula(1, p);
    return Formula::conjunction(psi_formula(n, p),
                                Formula::negation(psi_formula(n - 1, p)));
  }
  if (name == "vertex") return vertex_formula(p);
  if (name == "edge") return edge_formula(p, q);
  throw ContractError("unknown builtin formula '" + name + "'");
}

}  // namespace cdm
