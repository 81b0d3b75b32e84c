#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cdm {

// AST of the inverse-system language: atoms leq/c/p, equality, sort
// membership, the iso abbreviation, propositional connectives and
// sort-bounded quantifiers. Terms are variables only.
enum class FormulaKind {
  Leq,      // leq(s, t)
  CRel,     // c(s, t)
  PRel,     // p(s, t, u)
  Eq,       // s = t
  InSort,   // in(s, X[n])
  Iso,      // iso(s, Dp|W|C2|Dq)
  Not,
  And,
  Or,
  Implies,
  Exists,   // exists x:X[n]. body
  Forall,
};

enum class IsoName { Dp, W, C2, Dq };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::vector<std::string> args;    // atom argument variables
  std::uint64_t sort = 0;           // InSort / quantifier bound
  IsoName iso = IsoName::Dp;
  std::string var;                  // quantified variable
  std::vector<FormulaPtr> children;
  int pos = -1;                     // byte offset in the source, -1 if built

  static FormulaPtr atom(FormulaKind k, std::vector<std::string> args, int pos = -1);
  static FormulaPtr in_sort(std::string v, std::uint64_t n, int pos = -1);
  static FormulaPtr iso_of(std::string v, IsoName tag, int pos = -1);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conjunction(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disjunction(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implication(FormulaPtr a, FormulaPtr b);
  static FormulaPtr quantifier(FormulaKind k, std::string v, std::uint64_t sort, FormulaPtr body);
};

// Structural equality, ignoring source positions.
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Free variables, sorted by name.
std::vector<std::string> free_variables(const FormulaPtr& f);

// Concrete syntax. Throws ParseError with position information on bad
// input, unknown arity, or other syntax errors.
FormulaPtr parse_formula(std::string_view text);

// Canonical printing; parse_formula(print_formula(f)) is `equal` to f.
std::string print_formula(const FormulaPtr& f);

const char* iso_name_str(IsoName n);

}  // namespace cdm
