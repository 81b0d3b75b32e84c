#include "cdm/system.hpp"

#include <algorithm>

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

}  // namespace

System::System(GroupPtr parent, std::vector<NormalSubgroup> family, std::uint32_t p,
               std::uint32_t q)
    : parent_(std::move(parent)),
      structured_(std::dynamic_pointer_cast<const StructuredGroup>(parent_)),
      p_(p),
      q_(q),
      subs_(std::move(family)) {
  for (const auto& s : subs_) {
    if (s.parent.get() != parent_.get())
      throw ContractError("system: subgroup of a different parent");
    if (!is_normal(*parent_, s.mask)) throw ContractError("system: member is not normal");
  }
  std::sort(subs_.begin(), subs_.end(), [](const NormalSubgroup& a, const NormalSubgroup& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    return a.elements < b.elements;
  });
  subs_.erase(std::unique(subs_.begin(), subs_.end()), subs_.end());

  const std::uint64_t n = parent_->order();
  reps_.resize(subs_.size());
  proj_.resize(subs_.size());
  offset_.resize(subs_.size());
  for (std::uint32_t id = 0; id < subs_.size(); ++id) {
    by_hash_[vector_hash(subs_[id].elements)].push_back(id);
    auto& proj = proj_[id];
    proj.assign(n, UINT32_MAX);
    auto& reps = reps_[id];
    for (std::uint64_t e = 0; e < n; ++e) {
      if (proj[e] != UINT32_MAX) continue;
      auto coset = static_cast<std::uint32_t>(reps.size());
      reps.push_back(e);
      for (auto k : subs_[id].elements) proj[parent_->mul(e, k)] = coset;
    }
    offset_[id] = static_cast<std::uint32_t>(elements_.size());
    for (auto r : reps) elements_.push_back({id, r});
  }

  incl_.assign(subs_.size(), Bitset(subs_.size()));
  for (std::uint32_t i = 0; i < subs_.size(); ++i)
    for (std::uint32_t j = 0; j < subs_.size(); ++j)
      if (subs_[i].mask.subset_of(subs_[j].mask)) incl_[i].set(j);

  quotients_.resize(subs_.size());
  tags_.resize(subs_.size());
}

std::uint32_t System::id_of(SystemElement e) const {
  if (e.subgroup_id >= subs_.size()) throw ContractError("foreign system element");
  const auto& reps = reps_[e.subgroup_id];
  auto it = std::lower_bound(reps.begin(), reps.end(), e.rep);
  if (it == reps.end() || *it != e.rep)
    throw ContractError("system element rep is not a coset representative");
  return offset_[e.subgroup_id] + static_cast<std::uint32_t>(it - reps.begin());
}

std::uint32_t System::sort_extent(std::uint64_t n) const {
  // Elements are ordered by subgroup index; find the first id whose class
  // index exceeds n.
  std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(elements_.size());
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (subs_[elements_[mid].subgroup_id].index() <= n)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

SystemElement System::coset_of(std::uint32_t subgroup_id, std::uint64_t parent_elem) const {
  if (subgroup_id >= subs_.size()) throw ContractError("subgroup id out of range");
  if (parent_elem >= parent_->order()) throw ContractError("element handle out of range");
  return {subgroup_id, reps_[subgroup_id][proj_[subgroup_id][parent_elem]]};
}

bool System::leq(SystemElement a, SystemElement b) const {
  (void)id_of(a);
  (void)id_of(b);
  return incl_[a.subgroup_id].test(b.subgroup_id);
}

bool System::crel(SystemElement a, SystemElement b) const {
  (void)id_of(a);
  (void)id_of(b);
  if (!incl_[a.subgroup_id].test(b.subgroup_id)) return false;
  return coset_of(b.subgroup_id, a.rep).rep == b.rep;
}

bool System::prel(SystemElement a, SystemElement b, SystemElement c) const {
  (void)id_of(a);
  (void)id_of(b);
  (void)id_of(c);
  if (a.subgroup_id != b.subgroup_id || b.subgroup_id != c.subgroup_id) return false;
  return coset_of(a.subgroup_id, parent_->mul(a.rep, b.rep)).rep == c.rep;
}

bool System::in_sort(SystemElement a, std::uint64_t n) const {
  (void)id_of(a);
  return subs_[a.subgroup_id].index() <= n;
}

std::optional<std::uint32_t> System::find_subgroup(
    const std::vector<std::uint64_t>& elements) const {
  auto it = by_hash_.find(vector_hash(elements));
  if (it == by_hash_.end()) return std::nullopt;
  for (auto id : it->second)
    if (subs_[id].elements == elements) return id;
  return std::nullopt;
}

std::uint32_t System::meet_id(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return a;
  auto key = std::minmax(a, b);
  auto hit = meet_memo_.find({key.first, key.second});
  if (hit != meet_memo_.end()) return hit->second;
  auto meet = combine(subs_[a], subs_[b], CombineMode::Intersection);
  auto id = find_subgroup(meet.elements);
  if (!id) throw ClosureError("meet leaves the declared subgroup family");
  meet_memo_[{key.first, key.second}] = *id;
  return *id;
}

std::uint32_t System::join_id(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return a;
  auto key = std::minmax(a, b);
  auto hit = join_memo_.find({key.first, key.second});
  if (hit != join_memo_.end()) return hit->second;
  auto join = combine(subs_[a], subs_[b], CombineMode::Product);
  auto id = find_subgroup(join.elements);
  if (!id) throw ClosureError("join leaves the declared subgroup family");
  join_memo_[{key.first, key.second}] = *id;
  return *id;
}

SystemElement System::class_lattice(SystemElement a, SystemElement b, LatticeMode mode) const {
  (void)id_of(a);
  (void)id_of(b);
  std::uint32_t id = mode == LatticeMode::Meet ? meet_id(a.subgroup_id, b.subgroup_id)
                                               : join_id(a.subgroup_id, b.subgroup_id);
  return identity_coset(id);
}

std::shared_ptr<const QuotientGroup> System::quotient_of(std::uint32_t subgroup_id) const {
  if (subgroup_id >= subs_.size()) throw ContractError("subgroup id out of range");
  if (!quotients_[subgroup_id])
    quotients_[subgroup_id] = make_quotient(parent_, subs_[subgroup_id]);
  return quotients_[subgroup_id];
}

IsoTag System::tag(std::uint32_t subgroup_id) const {
  if (subgroup_id >= subs_.size()) throw ContractError("subgroup id out of range");
  if (!tags_[subgroup_id]) tags_[subgroup_id] = iso_tag(*quotient_of(subgroup_id), p_, q_);
  return *tags_[subgroup_id];
}

std::vector<std::uint32_t> System::classes_tagged(IsoKind kind) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t id = 0; id < subs_.size(); ++id)
    if (tag(id).kind == kind) out.push_back(id);
  return out;
}

bool Subsystem::contains(std::uint32_t id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

Subsystem generate_subsystem_ids(const System& s, std::vector<std::uint32_t> ids) {
  if (ids.empty()) {
    // The least subsystem: generated by the class of the largest declared
    // subgroup (the whole group, for the oracle family).
    ids.push_back(0);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  // Close under meets, then upward; meets of upper bounds are already
  // present, so one meet pass before the upward pass suffices, but we
  // iterate to a fixpoint anyway for clarity.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> add;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        auto m = s.meet_id(ids[i], ids[j]);
        if (!std::binary_search(ids.begin(), ids.end(), m)) add.push_back(m);
      }
    for (std::uint32_t id : ids)
      for (std::uint32_t up = 0; up < s.subgroup_count(); ++up)
        if (s.subgroup(id).mask.subset_of(s.subgroup(up).mask) &&
            !std::binary_search(ids.begin(), ids.end(), up))
          add.push_back(up);
    if (!add.empty()) {
      grew = true;
      ids.insert(ids.end(), add.begin(), add.end());
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
  }
  return Subsystem{std::move(ids)};
}

Subsystem generate_subsystem(const System& s, std::span<const SystemElement> a) {
  std::vector<std::uint32_t> ids;
  for (auto e : a) {
    (void)s.id_of(e);
    ids.push_back(e.subgroup_id);
  }
  return generate_subsystem_ids(s, std::move(ids));
}

Subsystem subsystem_join(const System& s, const Subsystem& a, const Subsystem& b) {
  std::vector<std::uint32_t> ids;
  for (auto i : a.members)
    for (auto j : b.members) ids.push_back(s.join_id(i, j));
  return generate_subsystem_ids(s, std::move(ids));
}

Subsystem subsystem_meet(const System& s, const Subsystem& a, const Subsystem& b) {
  std::vector<std::uint32_t> ids;
  for (auto i : a.members)
    for (auto j : b.members) ids.push_back(s.meet_id(i, j));
  return generate_subsystem_ids(s, std::move(ids));
}

bool is_subsystem(const System& s, const Subsystem& candidate) {
  if (candidate.members.empty()) return false;
  for (auto i : candidate.members) {
    for (std::uint32_t up = 0; up < s.subgroup_count(); ++up)
      if (s.subgroup(i).mask.subset_of(s.subgroup(up).mask) && !candidate.contains(up))
        return false;
    for (auto j : candidate.members)
      if (!candidate.contains(s.meet_id(i, j))) return false;
  }
  return true;
}

std::pair<Subsystem, Subsystem> minus_plus(const System& s) {
  std::vector<std::uint32_t> minus_ids = s.classes_tagged(IsoKind::Dp);
  for (auto id : s.classes_tagged(IsoKind::W)) minus_ids.push_back(id);
  auto plus_ids = minus_ids;
  for (auto id : s.classes_tagged(IsoKind::C2)) plus_ids.push_back(id);
  return {generate_subsystem_ids(s, std::move(minus_ids)),
          generate_subsystem_ids(s, std::move(plus_ids))};
}

}  // namespace cdm
