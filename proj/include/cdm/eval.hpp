#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cdm/formula.hpp"
#include "cdm/system.hpp"

namespace cdm {

using Assignment = std::map<std::string, SystemElement>;

// Brute-force evaluation over the sort extents, with short-circuiting.
// Every free variable must be covered by the assignment (ContractError).
bool evaluate(const System& s, const FormulaPtr& f, const Assignment& env = {});

// All satisfying tuples over the free variables (sorted by name); a free
// variable ranges over the whole system. For a sentence this returns one
// empty tuple when true and nothing when false.
std::vector<std::vector<SystemElement>> solutions(const System& s, const FormulaPtr& f);

// The built-in formula library.
//   psi(n):  free x; vertex width at most n (disjunction over exact-k
//            witness blocks, k = 1..n, each with the sort-bounded meet
//            witness encoding)
//   phi(n):  free x; vertex width exactly n
//   vertex:  free x; x is the identity coset of a D_p class
//   edge:    free a,b; distinct vertex classes with a W class below their meet
// Sort bounds are instantiated from (p,q). Throws ContractError for unknown
// names or n < 1.
FormulaPtr builtin_formula(const std::string& name, std::uint32_t n, std::uint32_t p,
                           std::uint32_t q);

}  // namespace cdm
