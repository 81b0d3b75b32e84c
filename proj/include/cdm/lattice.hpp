#pragma once

#include <cstdint>
#include <vector>

#include "cdm/quotient.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

// Every subgroup of g (normal or not), as element masks: cyclic subgroups
// closed under pairwise join. Throws BudgetError if |g| > guard.
std::vector<Bitset> all_subgroups(const FiniteGroup& g, std::uint64_t guard);

// Maximal proper subgroups, from the full lattice.
std::vector<Bitset> maximal_subgroups(const FiniteGroup& g, std::uint64_t guard);

// The Frattini subgroup: intersection of all maximal subgroups (the whole
// group when there are none, i.e. for the trivial group).
NormalSubgroup frattini(GroupPtr g, std::uint64_t guard = 500);

// True iff no proper subgroup of the domain maps onto the codomain;
// equivalently ker f lies inside the Frattini subgroup of the domain.
// Both routes are computed and must agree. Throws ContractError if f is
// not surjective.
bool is_frattini_cover(const Homomorphism& f, std::uint64_t guard = 500);

}  // namespace cdm
