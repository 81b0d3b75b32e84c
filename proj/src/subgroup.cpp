#include "cdm/subgroup.hpp"

#include <algorithm>
#include <map>

#include "cdm/error.hpp"

namespace cdm {

namespace {

std::uint64_t vector_hash(const std::vector<std::uint64_t>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= x + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

NormalSubgroup from_mask(GroupPtr parent, const Bitset& mask) {
  NormalSubgroup n;
  n.parent = std::move(parent);
  n.mask = mask;
  n.elements.reserve(mask.count());
  for (std::uint64_t e = 0; e < mask.size(); ++e)
    if (mask.test(e)) n.elements.push_back(e);
  return n;
}

// BFS closure of `seed` under right multiplication by elements of `gens`.
// In a finite group positive words already give the generated subgroup.
void close_under(const FiniteGroup& g, Bitset& mask, std::vector<std::uint64_t>& queue,
                 const std::vector<std::uint64_t>& gens, std::uint64_t guard,
                 std::uint64_t& count) {
  while (!queue.empty()) {
    std::uint64_t x = queue.back();
    queue.pop_back();
    for (auto s : gens) {
      std::uint64_t y = g.mul(x, s);
      if (!mask.test(y)) {
        mask.set(y);
        if (++count > guard) throw BudgetError("subgroup closure exceeds guard");
        queue.push_back(y);
      }
    }
  }
}

}  // namespace

NormalSubgroup subgroup_from_elements(GroupPtr parent, std::vector<std::uint64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  NormalSubgroup n;
  n.mask = Bitset(parent->order());
  for (auto e : elements) {
    if (e >= parent->order()) throw ContractError("element handle out of range");
    n.mask.set(e);
  }
  n.parent = std::move(parent);
  n.elements = std::move(elements);
  return n;
}

bool is_subgroup(const FiniteGroup& g, const Bitset& mask) {
  if (!mask.test(0)) return false;
  for (std::uint64_t a = 0; a < mask.size(); ++a) {
    if (!mask.test(a)) continue;
    if (!mask.test(g.inv(a))) return false;
    for (std::uint64_t b = a; b < mask.size(); ++b)
      if (mask.test(b) && !mask.test(g.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const FiniteGroup& g, const Bitset& mask) {
  for (std::uint64_t x = 0; x < mask.size(); ++x) {
    if (!mask.test(x)) continue;
    for (auto s : g.generators())
      if (!mask.test(g.conjugate(s, x))) return false;
  }
  return true;
}

NormalSubgroup generated_subgroup(GroupPtr parent, std::span<const std::uint64_t> gens,
                                  std::uint64_t guard) {
  Bitset mask(parent->order());
  mask.set(0);
  std::uint64_t count = 1;
  std::vector<std::uint64_t> genlist;
  for (auto s : gens)
    if (s != 0 && std::find(genlist.begin(), genlist.end(), s) == genlist.end())
      genlist.push_back(s);
  std::vector<std::uint64_t> queue = {0};
  close_under(*parent, mask, queue, genlist, guard, count);
  return from_mask(std::move(parent), mask);
}

NormalSubgroup normal_closure(GroupPtr parent, std::span<const std::uint64_t> gens,
                              std::uint64_t guard) {
  const FiniteGroup& g = *parent;
  // Conjugacy orbit of the seeds, then the subgroup they generate.
  Bitset orbit(g.order());
  std::vector<std::uint64_t> conj;
  for (auto s : gens)
    if (!orbit.test(s)) {
      orbit.set(s);
      conj.push_back(s);
    }
  for (std::size_t i = 0; i < conj.size(); ++i) {
    for (auto c : g.generators()) {
      std::uint64_t y = g.conjugate(c, conj[i]);
      if (!orbit.test(y)) {
        orbit.set(y);
        if (conj.size() + 1 > guard) throw BudgetError("normal closure exceeds guard");
        conj.push_back(y);
      }
    }
  }

  Bitset mask(g.order());
  mask.set(0);
  std::uint64_t count = 1;
  std::vector<std::uint64_t> genlist, queue;
  for (auto c : conj) {
    if (c == 0 || mask.test(c)) continue;
    genlist.push_back(c);
    mask.set(c);
    if (++count > guard) throw BudgetError("normal closure exceeds guard");
    // Re-close the whole current set under the enlarged generator list.
    queue.clear();
    for (std::uint64_t e = 0; e < mask.size(); ++e)
      if (mask.test(e)) queue.push_back(e);
    close_under(g, mask, queue, genlist, guard, count);
  }
  return from_mask(std::move(parent), mask);
}

NormalSubgroup combine(const NormalSubgroup& n, const NormalSubgroup& m, CombineMode mode) {
  if (n.parent.get() != m.parent.get())
    throw ContractError("combine: subgroups of different parents");
  const FiniteGroup& g = *n.parent;
  if (mode == CombineMode::Intersection) {
    Bitset mask = n.mask;
    mask &= m.mask;
    return from_mask(n.parent, mask);
  }
  // NM as a union of cosets xM over x in N.
  if (n.mask.subset_of(m.mask)) return m;
  if (m.mask.subset_of(n.mask)) return n;
  Bitset mask(g.order());
  for (auto x : n.elements) {
    if (mask.test(x)) continue;
    for (auto y : m.elements) mask.set(g.mul(x, y));
  }
  return from_mask(n.parent, mask);
}

std::vector<NormalSubgroup> enumerate_normal(GroupPtr parent, std::uint64_t max_order_guard) {
  const FiniteGroup& g = *parent;
  const std::uint64_t n = g.order();
  if (n > max_order_guard) throw BudgetError("enumerate_normal: group exceeds guard");

  // One representative per conjugacy class; conjugate singletons close to
  // the same normal subgroup.
  Bitset seen(n);
  std::vector<std::uint64_t> reps;
  for (std::uint64_t e = 0; e < n; ++e) {
    if (seen.test(e)) continue;
    reps.push_back(e);
    std::vector<std::uint64_t> orbit = {e};
    seen.set(e);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (auto c : g.generators()) {
        std::uint64_t y = g.conjugate(c, orbit[i]);
        if (!seen.test(y)) {
          seen.set(y);
          orbit.push_back(y);
        }
      }
  }

  std::vector<NormalSubgroup> family;
  std::map<std::uint64_t, std::vector<std::size_t>> by_hash;
  auto try_add = [&](NormalSubgroup cand) -> bool {
    std::uint64_t h = vector_hash(cand.elements);
    for (auto idx : by_hash[h])
      if (family[idx].elements == cand.elements) return false;
    by_hash[h].push_back(family.size());
    family.push_back(std::move(cand));
    return true;
  };

  for (auto r : reps) {
    std::uint64_t one[1] = {r};
    try_add(normal_closure(parent, one, max_order_guard));
  }

  // Close under pairwise products: joins of singleton closures reach every
  // normal subgroup.
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      try_add(combine(family[i], family[j], CombineMode::Product));

  std::sort(family.begin(), family.end(), [](const NormalSubgroup& a, const NormalSubgroup& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    return a.elements < b.elements;
  });
  return family;
}

NormalSubgroup sylow_product(const std::shared_ptr<const StructuredGroup>& g) {
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < g->order(); ++e)
    if (g->xi(e).zero()) elements.push_back(e);
  auto s = subgroup_from_elements(g, std::move(elements));
  if (!is_normal(*g, s.mask)) throw ContractError("sylow product not normal");
  return s;
}

NormalSubgroup sylow_part(const std::shared_ptr<const StructuredGroup>& g, std::uint32_t ell) {
  if (ell != g->params().p() && ell != g->params().q())
    throw ContractError("sylow_part: ell must be p or q");
  const bool p_part = ell == g->params().p();
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < g->order(); ++e) {
    auto d = g->decode(e);
    bool ok = g->xi(e).zero();
    if (p_part) {
      for (auto z : d.z) ok = ok && z == 0;
    } else {
      for (auto y : d.y) ok = ok && y == 0;
    }
    if (ok) elements.push_back(e);
  }
  return subgroup_from_elements(g, std::move(elements));
}

NormalSubgroup image_subgroup(GroupPtr codomain, const NormalSubgroup& n,
                              const std::vector<std::uint64_t>& map) {
  std::vector<std::uint64_t> elements;
  elements.reserve(n.elements.size());
  for (auto e : n.elements) elements.push_back(map[e]);
  return subgroup_from_elements(std::move(codomain), std::move(elements));
}

std::vector<std::uint64_t> minimal_generators(const NormalSubgroup& n) {
  const FiniteGroup& g = *n.parent;
  std::vector<std::uint64_t> gens;
  Bitset span(g.order());
  span.set(0);
  std::uint64_t covered = 1;
  for (auto e : n.elements) {
    if (span.test(e)) continue;
    gens.push_back(e);
    std::vector<std::uint64_t> queue;
    for (auto x : n.elements)
      if (span.test(x)) queue.push_back(x);
    close_under(g, span, queue, gens, g.order(), covered);
  }
  return gens;
}

NormalSubgroup vertex_kernel(const std::shared_ptr<const StructuredGroup>& g, std::uint32_t v) {
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < g->order(); ++e)
    if (g->project_vertex(e, v) == DpElement{}) elements.push_back(e);
  return subgroup_from_elements(g, std::move(elements));
}

NormalSubgroup edge_kernel(const std::shared_ptr<const StructuredGroup>& g, std::uint32_t r) {
  const WElement id{};
  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < g->order(); ++e)
    if (g->project_edge(e, r) == id) elements.push_back(e);
  return subgroup_from_elements(g, std::move(elements));
}

}  // namespace cdm
