#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdm/bitset.hpp"
#include "cdm/group.hpp"
#include "cdm/structured.hpp"

namespace cdm {

// An explicit normal subgroup of a parent group: the sorted element list is
// the canonical identity used for deduplication and golden files.
struct NormalSubgroup {
  GroupPtr parent;
  std::vector<std::uint64_t> elements;  // sorted ascending, starts with 0
  Bitset mask;                          // size = parent order

  std::uint64_t order() const { return elements.size(); }
  std::uint64_t index() const { return parent->order() / elements.size(); }
  bool contains(std::uint64_t e) const { return mask.test(e); }

  friend bool operator==(const NormalSubgroup& a, const NormalSubgroup& b) {
    return a.elements == b.elements;
  }
};

NormalSubgroup subgroup_from_elements(GroupPtr parent, std::vector<std::uint64_t> elements);

bool is_subgroup(const FiniteGroup& g, const Bitset& mask);
bool is_normal(const FiniteGroup& g, const Bitset& mask);

// Plain subgroup generated by `gens` (no normality). BFS closure; throws
// BudgetError if the closure would exceed `guard` elements.
NormalSubgroup generated_subgroup(GroupPtr parent, std::span<const std::uint64_t> gens,
                                  std::uint64_t guard);

// Smallest normal subgroup containing `gens`: closure under products,
// inverses and conjugation by the parent's generators.
NormalSubgroup normal_closure(GroupPtr parent, std::span<const std::uint64_t> gens,
                              std::uint64_t guard);

enum class CombineMode { Product, Intersection };

// NM (setwise product, normal) or N intersect M.
NormalSubgroup combine(const NormalSubgroup& n, const NormalSubgroup& m, CombineMode mode);

// The complete normal subgroup list of `parent`, computed as all normal
// closures of single elements closed under pairwise products, deduplicated
// by canonical element list, sorted by (index, element list). This is the
// brute-force oracle the lemma verifiers consume.
std::vector<NormalSubgroup> enumerate_normal(GroupPtr parent,
                                             std::uint64_t max_order_guard = 10000);

// S_pq: the (normal) product of the p- and q-Sylow subgroups. For a
// structured group these are the elements with zero C2 block.
NormalSubgroup sylow_product(const std::shared_ptr<const StructuredGroup>& g);

// Sylow-ell subgroup of a structured group, ell in {p, q}.
NormalSubgroup sylow_part(const std::shared_ptr<const StructuredGroup>& g, std::uint32_t ell);

// Image of a normal subgroup under a projection map element->element.
// Used for quotient-side Sylow products.
NormalSubgroup image_subgroup(GroupPtr codomain, const NormalSubgroup& n,
                              const std::vector<std::uint64_t>& map);

// Greedy minimal generating sequence: repeatedly adjoin the smallest element
// outside the subgroup generated so far. Deterministic; used by golden files.
std::vector<std::uint64_t> minimal_generators(const NormalSubgroup& n);

// The kernel of the projection to the coordinates of a vertex/edge/extra,
// as an explicit subgroup (parent must fit the guard).
NormalSubgroup vertex_kernel(const std::shared_ptr<const StructuredGroup>& g, std::uint32_t v);
NormalSubgroup edge_kernel(const std::shared_ptr<const StructuredGroup>& g, std::uint32_t r);

}  // namespace cdm
