#include "cdm/width.hpp"

#include <algorithm>

#include "cdm/error.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

std::uint32_t f2_rank(std::span<const F2Vector> vectors) {
  std::vector<std::uint64_t> basis;
  for (const auto& v : vectors) {
    std::uint64_t x = v.bits;
    for (auto b : basis) x = std::min(x, x ^ b);
    if (x) basis.push_back(x);
  }
  return static_cast<std::uint32_t>(basis.size());
}

namespace {

std::shared_ptr<const StructuredGroup> structured_or_throw(const System& s) {
  auto sg = s.structured_parent();
  if (!sg) throw ContractError("operation needs a structured parent group");
  return sg;
}

void require_c2(const System& s, SystemElement alpha) {
  (void)s.id_of(alpha);
  if (s.tag(alpha.subgroup_id).kind != IsoKind::C2)
    throw ContractError("element is not in a C2 class");
}

}  // namespace

F2Vector dual_vector(const System& s, SystemElement alpha) {
  auto sg = structured_or_throw(s);
  require_c2(s, alpha);
  const auto& sub = s.subgroup(alpha.subgroup_id);
  const Params& prm = sg->params();
  F2Vector out;
  out.dim = static_cast<std::uint32_t>(prm.x_count());
  // The functional with kernel U, evaluated on the unit generators: slot j
  // is 1 exactly when the generator with a single sign bit at j is outside U.
  for (std::uint32_t v = 0; v < prm.vertex_count(); ++v)
    if (!sub.contains(sg->inject_vertex(sg->dp().reflection(), v))) out.set(v);
  for (std::uint32_t i = 0; i < prm.extra_count(); ++i)
    if (!sub.contains(sg->inject_extra(1, i))) out.set(prm.vertex_count() + i);
  if (out.zero()) throw ContractError("dual vector is zero (index-2 kernel expected)");
  return out;
}

WidthReport vertex_width(const System& s, SystemElement alpha) {
  auto sg = structured_or_throw(s);
  F2Vector d = dual_vector(s, alpha);
  const Params& prm = sg->params();
  WidthReport report;
  report.class_id = alpha.subgroup_id;
  bool touches_extra = false;
  for (std::size_t i = 0; i < prm.extra_count(); ++i)
    touches_extra = touches_extra || d.get(prm.vertex_count() + i);
  if (touches_extra) return report;  // infinite width
  report.width = static_cast<std::uint32_t>(d.support_size());
  for (std::uint32_t v = 0; v < prm.vertex_count(); ++v)
    if (d.get(v)) report.witnesses.push_back(prm.vertex_label(v));
  return report;
}

WidthReport vertex_width_oracle(const System& s, SystemElement alpha) {
  require_c2(s, alpha);
  WidthReport report;
  report.class_id = alpha.subgroup_id;

  auto dp_classes = s.classes_tagged(IsoKind::Dp);
  const auto& alpha_mask = s.subgroup(alpha.subgroup_id).mask;

  // Search vertex-class subsets in size-then-lex order; the first subset
  // whose meet lies below alpha gives the width.
  const std::size_t m = dp_classes.size();
  std::vector<std::uint32_t> pick;
  auto search = [&](auto&& self, std::size_t start, std::size_t need,
                    const Bitset& meet) -> bool {
    if (need == 0) return meet.subset_of(alpha_mask);
    for (std::size_t i = start; i + need <= m; ++i) {
      Bitset next = meet;
      next &= s.subgroup(dp_classes[i]).mask;
      pick.push_back(dp_classes[i]);
      if (self(self, i + 1, need - 1, next)) return true;
      pick.pop_back();
    }
    return false;
  };

  Bitset whole(s.parent().order());
  for (std::uint64_t e = 0; e < s.parent().order(); ++e) whole.set(e);
  for (std::size_t n = 1; n <= m; ++n) {
    pick.clear();
    if (search(search, 0, n, whole)) {
      report.width = static_cast<std::uint32_t>(n);
      break;
    }
  }
  if (!report.width) return report;  // infinite

  // Witness labels, via the structured kernels when available.
  if (auto sg = s.structured_parent()) {
    for (auto id : pick) {
      std::string name = "n" + std::to_string(id);
      for (std::uint32_t v = 0; v < sg->params().vertex_count(); ++v)
        if (vertex_kernel(sg, v).elements == s.subgroup(id).elements) {
          name = sg->params().vertex_label(v);
          break;
        }
      report.witnesses.push_back(name);
    }
  } else {
    for (auto id : pick) report.witnesses.push_back("n" + std::to_string(id));
  }
  std::sort(report.witnesses.begin(), report.witnesses.end());
  return report;
}

bool independent(const System& s, std::span<const SystemElement> classes) {
  std::vector<F2Vector> vecs;
  for (auto e : classes) vecs.push_back(dual_vector(s, e));
  bool linear = f2_rank(vecs) == vecs.size();

  // Lattice route: gamma_i must not lie above the meet of its predecessors.
  bool lattice = true;
  Bitset meet(s.parent().order());
  for (std::uint64_t e = 0; e < s.parent().order(); ++e) meet.set(e);
  for (auto e : classes) {
    const auto& mask = s.subgroup(e.subgroup_id).mask;
    if (meet.subset_of(mask)) {
      lattice = false;
      break;
    }
    meet &= mask;
  }
  if (linear != lattice)
    throw ContractError("independence routes disagree (internal error)");
  return linear;
}

SystemElement parity_element(const System& s, std::span<const std::string> v0) {
  auto sg = structured_or_throw(s);
  if (v0.empty()) throw ContractError("parity_element: empty vertex set");
  const Params& prm = sg->params();
  std::vector<std::uint32_t> vs;
  for (const auto& label : v0) vs.push_back(prm.vertex_index(label));

  std::vector<std::uint64_t> elements;
  for (std::uint64_t e = 0; e < sg->order(); ++e) {
    auto x = sg->xi(e);
    unsigned parity = 0;
    for (auto v : vs) parity ^= x.get(v) ? 1u : 0u;
    if (parity == 0) elements.push_back(e);
  }
  auto id = s.find_subgroup(elements);
  if (!id) throw ClosureError("parity kernel is outside the declared family");
  return s.identity_coset(*id);
}

Subsystem gcl_ids(const System& s, const std::vector<std::uint32_t>& ids) {
  Subsystem current = generate_subsystem_ids(s, ids);
  for (;;) {
    std::vector<std::uint32_t> add;
    // (1) witnesses of every finite-width C2 member
    for (auto id : current.members) {
      if (s.tag(id).kind != IsoKind::C2) continue;
      auto report = vertex_width_oracle(s, s.identity_coset(id));
      if (!report.finite()) continue;
      if (auto sg = s.structured_parent()) {
        for (const auto& label : report.witnesses) {
          auto kern = vertex_kernel(sg, sg->params().vertex_index(label));
          auto kid = s.find_subgroup(kern.elements);
          if (!kid) throw ClosureError("witness kernel outside the declared family");
          if (!current.contains(*kid)) add.push_back(*kid);
        }
      }
    }
    // (2) every W class below the meet of two distinct member Dp classes
    std::vector<std::uint32_t> member_dp;
    for (auto id : current.members)
      if (s.tag(id).kind == IsoKind::Dp) member_dp.push_back(id);
    auto w_classes = s.classes_tagged(IsoKind::W);
    for (std::size_t i = 0; i < member_dp.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        std::uint32_t meet = s.meet_id(member_dp[i], member_dp[j]);
        for (auto w : w_classes)
          if (s.subgroup(w).mask.subset_of(s.subgroup(meet).mask) && !current.contains(w))
            add.push_back(w);
      }
    if (add.empty()) return current;
    auto next = current.members;
    next.insert(next.end(), add.begin(), add.end());
    current = generate_subsystem_ids(s, std::move(next));
  }
}

Subsystem gcl(const System& s, std::span<const SystemElement> a) {
  std::vector<std::uint32_t> ids;
  for (auto e : a) {
    (void)s.id_of(e);
    ids.push_back(e.subgroup_id);
  }
  return gcl_ids(s, ids);
}

}  // namespace cdm
