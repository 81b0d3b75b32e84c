#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cdm/quotient.hpp"
#include "cdm/structured.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

// A coset gN, addressed by the id of N in the system's subgroup list and
// the minimal element encoding of the coset.
struct SystemElement {
  std::uint32_t subgroup_id = 0;
  std::uint64_t rep = 0;

  friend bool operator==(const SystemElement&, const SystemElement&) = default;
  friend auto operator<=>(const SystemElement&, const SystemElement&) = default;
};

// The complete system of a finite group over a declared family of normal
// subgroups (the full oracle list by default): all cosets, the relations
// leq / C / P, overlapping sorts X_n, and the class lattice. Immutable
// after construction; all queries are pure.
class System {
 public:
  // `family` must consist of normal subgroups of `parent` and be closed
  // under intersection and product for the lattice operations to be total;
  // normality is checked here (ContractError), closure misses surface as
  // ClosureError at use. (p,q) drive the iso tagging.
  System(GroupPtr parent, std::vector<NormalSubgroup> family, std::uint32_t p,
         std::uint32_t q);

  const FiniteGroup& parent() const { return *parent_; }
  GroupPtr parent_ptr() const { return parent_; }
  // Set when the parent is a structured group; width machinery needs it.
  std::shared_ptr<const StructuredGroup> structured_parent() const { return structured_; }

  std::uint32_t p() const { return p_; }
  std::uint32_t q() const { return q_; }

  std::size_t subgroup_count() const { return subs_.size(); }
  const NormalSubgroup& subgroup(std::uint32_t id) const { return subs_[id]; }
  std::uint64_t class_size(std::uint32_t id) const { return subs_[id].index(); }

  // Total element count and dense element ids, ordered by (index, subgroup
  // id, coset rep) so every sort extent is a prefix.
  std::size_t size() const { return elements_.size(); }
  SystemElement element(std::uint32_t eid) const { return elements_[eid]; }
  std::uint32_t id_of(SystemElement e) const;  // ContractError if foreign
  // Elements of sort X_n are exactly the ids below this bound.
  std::uint32_t sort_extent(std::uint64_t n) const;

  SystemElement identity_coset(std::uint32_t subgroup_id) const {
    return {subgroup_id, 0};
  }
  SystemElement coset_of(std::uint32_t subgroup_id, std::uint64_t parent_elem) const;

  // Relations of the language.
  bool leq(SystemElement a, SystemElement b) const;
  bool crel(SystemElement a, SystemElement b) const;
  bool prel(SystemElement a, SystemElement b, SystemElement c) const;
  bool in_sort(SystemElement a, std::uint64_t n) const;
  bool equivalent(SystemElement a, SystemElement b) const {
    return a.subgroup_id == b.subgroup_id;
  }

  // Class lattice over subgroup ids (ClosureError if the result subgroup is
  // outside the declared family).
  std::uint32_t meet_id(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t join_id(std::uint32_t a, std::uint32_t b) const;

  enum class LatticeMode { Meet, Join };
  // Identity coset of the meet/join class of the classes of a and b.
  SystemElement class_lattice(SystemElement a, SystemElement b, LatticeMode mode) const;

  std::optional<std::uint32_t> find_subgroup(const std::vector<std::uint64_t>& elements) const;

  // Quotient group and iso tag of a class, cached.
  std::shared_ptr<const QuotientGroup> quotient_of(std::uint32_t subgroup_id) const;
  IsoTag tag(std::uint32_t subgroup_id) const;

  // Subgroup ids whose class carries the given tag.
  std::vector<std::uint32_t> classes_tagged(IsoKind kind) const;

 private:
  GroupPtr parent_;
  std::shared_ptr<const StructuredGroup> structured_;
  std::uint32_t p_, q_;
  std::vector<NormalSubgroup> subs_;
  std::vector<std::vector<std::uint64_t>> reps_;      // per subgroup: coset reps, ascending
  std::vector<std::vector<std::uint32_t>> proj_;      // per subgroup: element -> coset idx
  std::vector<SystemElement> elements_;
  std::vector<std::uint32_t> offset_;                 // per subgroup: first element id
  std::vector<Bitset> incl_;                          // incl_[i].test(j): subs_[i] subset of subs_[j]
  std::map<std::uint64_t, std::vector<std::uint32_t>> by_hash_;
  mutable std::vector<std::shared_ptr<const QuotientGroup>> quotients_;
  mutable std::vector<std::optional<IsoTag>> tags_;
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> meet_memo_;
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> join_memo_;
};

// Subsystem: an upward-closed, intersection-closed set of classes, stored
// as sorted subgroup ids.
struct Subsystem {
  std::vector<std::uint32_t> members;

  bool contains(std::uint32_t id) const;
  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

// Least subsystem containing A: close under meet, then upward.
Subsystem generate_subsystem(const System& s, std::span<const SystemElement> a);
Subsystem generate_subsystem_ids(const System& s, std::vector<std::uint32_t> ids);

// Join and meet of subsystems (generated by pairwise joins/meets).
Subsystem subsystem_join(const System& s, const Subsystem& a, const Subsystem& b);
Subsystem subsystem_meet(const System& s, const Subsystem& a, const Subsystem& b);

bool is_subsystem(const System& s, const Subsystem& candidate);

// The distinguished subsystems: S_minus generated by the D_p and W classes,
// S_plus additionally by the C2 classes.
std::pair<Subsystem, Subsystem> minus_plus(const System& s);

}  // namespace cdm
