#include "cdm/lattice.hpp"

#include <algorithm>
#include <map>

#include "cdm/error.hpp"

namespace cdm {

namespace {

struct Node {
  Bitset mask;
  std::vector<std::uint64_t> gens;
};

Bitset closure(const FiniteGroup& g, const std::vector<std::uint64_t>& gens) {
  Bitset out(g.order());
  out.set(0);
  std::vector<std::uint64_t> queue = {0};
  while (!queue.empty()) {
    std::uint64_t x = queue.back();
    queue.pop_back();
    for (auto s : gens) {
      std::uint64_t y = g.mul(x, s);
      if (!out.test(y)) {
        out.set(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

// Cyclic subgroups closed under pairwise join; every subgroup is such a
// join. Runs over a table copy of g so the inner loops are lookups.
std::vector<Node> lattice_nodes(const FiniteGroup& g_in, std::uint64_t guard) {
  const std::uint64_t n = g_in.order();
  if (n > guard) throw BudgetError("subgroup lattice: group exceeds guard");
  auto table = TableGroup::from_group(g_in);
  const FiniteGroup& g = *table;

  std::vector<Node> family;
  std::map<std::uint64_t, std::vector<std::size_t>> by_hash;
  auto try_add = [&](Node node) -> bool {
    std::uint64_t h = node.mask.hash();
    for (auto idx : by_hash[h])
      if (family[idx].mask == node.mask) return false;
    by_hash[h].push_back(family.size());
    family.push_back(std::move(node));
    return true;
  };

  for (std::uint64_t e = 0; e < n; ++e) {
    Node node{Bitset(n), {e}};
    std::uint64_t x = 0;
    do {
      node.mask.set(x);
      x = g.mul(x, e);
    } while (x != 0);
    try_add(std::move(node));
  }

  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (family[i].mask.count() == n || family[j].mask.count() == n) continue;
      if (family[i].mask.subset_of(family[j].mask) ||
          family[j].mask.subset_of(family[i].mask))
        continue;
      std::vector<std::uint64_t> gens = family[i].gens;
      for (auto s : family[j].gens)
        if (std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
      Node node{closure(g, gens), std::move(gens)};
      try_add(std::move(node));
    }
  }
  return family;
}

}  // namespace

std::vector<Bitset> all_subgroups(const FiniteGroup& g, std::uint64_t guard) {
  std::vector<Bitset> out;
  for (auto& node : lattice_nodes(g, guard)) out.push_back(std::move(node.mask));
  return out;
}

std::vector<Bitset> maximal_subgroups(const FiniteGroup& g, std::uint64_t guard) {
  auto family = all_subgroups(g, guard);
  const std::uint64_t n = g.order();
  std::vector<Bitset> maximal;
  for (const auto& h : family) {
    if (h.count() == n) continue;
    bool is_max = true;
    for (const auto& k : family) {
      if (k.count() == n || k.count() <= h.count()) continue;
      if (h.subset_of(k)) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(h);
  }
  return maximal;
}

NormalSubgroup frattini(GroupPtr g, std::uint64_t guard) {
  const std::uint64_t n = g->order();
  auto maximal = maximal_subgroups(*g, guard);
  Bitset phi(n);
  if (maximal.empty()) {
    for (std::uint64_t e = 0; e < n; ++e) phi.set(e);  // trivial group
  } else {
    phi = maximal.front();
    for (std::size_t i = 1; i < maximal.size(); ++i) phi &= maximal[i];
  }
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < n; ++e)
    if (phi.test(e)) elements.push_back(e);
  auto out = subgroup_from_elements(std::move(g), std::move(elements));
  if (!is_normal(*out.parent, out.mask))
    throw ContractError("frattini subgroup not normal (internal error)");
  return out;
}

bool is_frattini_cover(const Homomorphism& f, std::uint64_t guard) {
  if (!f.surjective()) throw ContractError("is_frattini_cover: map is not surjective");

  // Route 1: no proper subgroup of the domain maps onto the codomain.
  bool no_proper_onto = true;
  const std::uint64_t target = f.codomain->order();
  for (const auto& h : all_subgroups(*f.domain, guard)) {
    if (h.count() == f.domain->order()) continue;
    Bitset image(target);
    std::uint64_t hit = 0;
    for (std::uint64_t e = 0; e < h.size(); ++e)
      if (h.test(e) && !image.test(f.map[e])) {
        image.set(f.map[e]);
        ++hit;
      }
    if (hit == target) {
      no_proper_onto = false;
      break;
    }
  }

  // Route 2: the kernel lies inside the Frattini subgroup. Both routes are
  // required to agree.
  auto phi = frattini(f.domain, guard);
  bool kernel_in_phi = f.kernel_subgroup().mask.subset_of(phi.mask);

  if (no_proper_onto != kernel_in_phi)
    throw ContractError("frattini cover routes disagree (internal error)");
  return no_proper_onto;
}

}  // namespace cdm
