#include "cdm/quotient.hpp"

#include <algorithm>
#include <map>

#include "cdm/error.hpp"

namespace cdm {

QuotientGroup::QuotientGroup(GroupPtr parent, NormalSubgroup kernel)
    : parent_(std::move(parent)), kernel_(std::move(kernel)) {
  if (kernel_.parent.get() != parent_.get())
    throw ContractError("quotient: kernel belongs to a different parent");
  if (!is_normal(*parent_, kernel_.mask))
    throw ContractError("quotient: kernel is not normal");
  const std::uint64_t n = parent_->order();
  proj_.assign(n, UINT32_MAX);
  for (std::uint64_t e = 0; e < n; ++e) {
    if (proj_[e] != UINT32_MAX) continue;
    // e is the minimal element of a fresh coset.
    auto id = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(e);
    for (auto k : kernel_.elements) proj_[parent_->mul(e, k)] = id;
  }
  for (auto g : parent_->generators()) {
    std::uint64_t img = proj_[g];
    if (img != 0 && std::find(gens_.begin(), gens_.end(), img) == gens_.end())
      gens_.push_back(img);
  }
  if (gens_.empty()) gens_.push_back(0);
}

std::shared_ptr<QuotientGroup> make_quotient(GroupPtr parent, NormalSubgroup kernel) {
  return std::make_shared<QuotientGroup>(std::move(parent), std::move(kernel));
}

bool Homomorphism::surjective() const {
  Bitset hit(codomain->order());
  std::uint64_t count = 0;
  for (auto y : map)
    if (!hit.test(y)) {
      hit.set(y);
      ++count;
    }
  return count == codomain->order();
}

NormalSubgroup Homomorphism::kernel_subgroup() const {
  std::vector<std::uint64_t> elements;
  for (std::uint64_t x = 0; x < map.size(); ++x)
    if (map[x] == 0) elements.push_back(x);
  return subgroup_from_elements(domain, std::move(elements));
}

bool Homomorphism::validate() const {
  if (map.size() != domain->order() || map[0] != 0) return false;
  for (std::uint64_t a = 0; a < map.size(); ++a)
    for (std::uint64_t b = 0; b < map.size(); ++b)
      if (map[domain->mul(a, b)] != codomain->mul(map[a], map[b])) return false;
  return true;
}

Homomorphism Homomorphism::from_generator_images(GroupPtr domain, GroupPtr codomain,
                                                 const std::vector<std::uint64_t>& images) {
  const auto& gens = domain->generators();
  if (images.size() != gens.size())
    throw ContractError("one image per domain generator expected");
  // Grow the map over the subgroup generated by the generators (all of the
  // domain); conflicting definitions mean the images violate a relation.
  std::vector<std::uint64_t> map(domain->order(), UINT64_MAX);
  map[0] = 0;
  std::vector<std::uint64_t> queue = {0};
  while (!queue.empty()) {
    std::uint64_t x = queue.back();
    queue.pop_back();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::uint64_t y = domain->mul(x, gens[i]);
      std::uint64_t fy = codomain->mul(map[x], images[i]);
      if (map[y] == UINT64_MAX) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        throw ContractError("generator images do not respect the relations");
      }
    }
  }
  Homomorphism h{std::move(domain), std::move(codomain), std::move(map)};
  if (!h.validate()) throw ContractError("generator images do not define a homomorphism");
  return h;
}

Homomorphism Homomorphism::projection(GroupPtr parent, std::shared_ptr<const QuotientGroup> q) {
  std::vector<std::uint64_t> map(parent->order());
  for (std::uint64_t e = 0; e < parent->order(); ++e) map[e] = q->project(e);
  return {std::move(parent), std::move(q), std::move(map)};
}

FiberProduct::FiberProduct(Homomorphism f, Homomorphism g)
    : f_(std::move(f)), g_(std::move(g)) {
  if (f_.codomain->order() != g_.codomain->order())
    throw ContractError("fiber product: targets differ");
  if (!f_.surjective() || !g_.surjective())
    throw ContractError("fiber product: maps must be surjective");
  if (!f_.validate() || !g_.validate())
    throw ContractError("fiber product: maps must be homomorphisms");
  for (std::uint64_t a = 0; a < f_.domain->order(); ++a)
    for (std::uint64_t b = 0; b < g_.domain->order(); ++b)
      if (f_.map[a] == g_.map[b]) pairs_.emplace_back(a, b);
  // (0,0) sorts first, preserving the handle-0 identity convention.
  std::sort(pairs_.begin(), pairs_.end());
  // Greedy generating set over the pair handles.
  Bitset span(pairs_.size());
  span.set(0);
  std::uint64_t covered = 1;
  for (std::uint64_t id = 1; id < pairs_.size() && covered < pairs_.size(); ++id) {
    if (span.test(id)) continue;
    gens_.push_back(id);
    std::vector<std::uint64_t> queue;
    for (std::uint64_t x = 0; x < pairs_.size(); ++x)
      if (span.test(x)) queue.push_back(x);
    while (!queue.empty()) {
      std::uint64_t x = queue.back();
      queue.pop_back();
      for (auto s : gens_) {
        std::uint64_t y = mul(x, s);
        if (!span.test(y)) {
          span.set(y);
          ++covered;
          queue.push_back(y);
        }
      }
    }
  }
  if (gens_.empty()) gens_.push_back(0);
}

std::optional<std::uint64_t> FiberProduct::id_of(std::uint64_t a, std::uint64_t b) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{a, b});
  if (it == pairs_.end() || *it != std::pair{a, b}) return std::nullopt;
  return static_cast<std::uint64_t>(it - pairs_.begin());
}

std::uint64_t FiberProduct::mul(std::uint64_t a, std::uint64_t b) const {
  auto [a1, a2] = pairs_[a];
  auto [b1, b2] = pairs_[b];
  auto id = id_of(f_.domain->mul(a1, b1), g_.domain->mul(a2, b2));
  return *id;
}

std::uint64_t FiberProduct::inv(std::uint64_t a) const {
  auto [a1, a2] = pairs_[a];
  return *id_of(f_.domain->inv(a1), g_.domain->inv(a2));
}

std::string IsoTag::str() const {
  switch (kind) {
    case IsoKind::Trivial: return "1";
    case IsoKind::C2: return "C2";
    case IsoKind::C2k: return "C2^" + std::to_string(rank);
    case IsoKind::Cp: return "Cp";
    case IsoKind::Cq: return "Cq";
    case IsoKind::Dp: return "Dp";
    case IsoKind::Dq: return "Dq";
    case IsoKind::DpXDp: return "DpxDp";
    case IsoKind::W: return "W";
    case IsoKind::Other: return "Other";
  }
  return "Other";
}

IsoTag parse_iso_tag(std::string_view s) {
  if (s == "1") return {IsoKind::Trivial, 0};
  if (s == "C2") return {IsoKind::C2, 0};
  if (s == "Cp") return {IsoKind::Cp, 0};
  if (s == "Cq") return {IsoKind::Cq, 0};
  if (s == "Dp") return {IsoKind::Dp, 0};
  if (s == "Dq") return {IsoKind::Dq, 0};
  if (s == "DpxDp") return {IsoKind::DpXDp, 0};
  if (s == "W") return {IsoKind::W, 0};
  if (s.rfind("C2^", 0) == 0)
    return {IsoKind::C2k, static_cast<std::uint32_t>(std::stoul(std::string(s.substr(3))))};
  if (s == "Other") return {IsoKind::Other, 0};
  throw ContractError("unknown iso tag: " + std::string(s));
}

namespace {

// Multiset of element orders; cheap invariant for pruning.
std::map<std::uint64_t, std::uint64_t> order_profile(const FiniteGroup& g) {
  std::map<std::uint64_t, std::uint64_t> prof;
  for (std::uint64_t x = 0; x < g.order(); ++x) ++prof[g.element_order(x)];
  return prof;
}

struct IsoSearch {
  const FiniteGroup& a;
  const FiniteGroup& b;
  std::vector<std::uint64_t> gens;       // generating sequence of a
  std::vector<std::uint64_t> gen_order;  // element orders of gens
  std::vector<std::uint64_t> map;        // a -> b, UINT64_MAX = unknown
  std::vector<std::uint64_t> known;      // domain elements with images

  bool extend(std::uint64_t gen, std::uint64_t image) {
    // Propagate products of known elements; detect conflicts.
    std::size_t start = known.size();
    if (!assign(gen, image)) return false;
    for (std::size_t i = 0; i < known.size(); ++i) {
      for (std::size_t j = 0; j < known.size(); ++j) {
        std::uint64_t x = known[i], y = known[j];
        if (i < start && j < start) continue;  // already consistent
        std::uint64_t xy = a.mul(x, y);
        std::uint64_t fxfy = b.mul(map[x], map[y]);
        if (map[xy] == UINT64_MAX) {
          if (!assign(xy, fxfy)) return false;
        } else if (map[xy] != fxfy) {
          return false;
        }
      }
    }
    return true;
  }

  bool assign(std::uint64_t x, std::uint64_t fx) {
    if (map[x] != UINT64_MAX) return map[x] == fx;
    // keep it injective
    for (auto k : known)
      if (map[k] == fx) return false;
    map[x] = fx;
    known.push_back(x);
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == gens.size()) return known.size() == a.order();
    for (std::uint64_t cand = 0; cand < b.order(); ++cand) {
      if (b.element_order(cand) != gen_order[depth]) continue;
      auto saved_map = map;
      auto saved_known = known;
      if (extend(gens[depth], cand) && search(depth + 1)) return true;
      map = std::move(saved_map);
      known = std::move(saved_known);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::uint64_t>> find_isomorphism(const FiniteGroup& a,
                                                           const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (order_profile(a) != order_profile(b)) return std::nullopt;

  // Greedy small generating sequence of a.
  std::vector<std::uint64_t> gens;
  {
    Bitset span(a.order());
    span.set(0);
    std::uint64_t covered = 1;
    while (covered < a.order()) {
      std::uint64_t fresh = 1;
      while (span.test(fresh)) ++fresh;
      gens.push_back(fresh);
      std::vector<std::uint64_t> queue;
      for (std::uint64_t x = 0; x < a.order(); ++x)
        if (span.test(x)) queue.push_back(x);
      while (!queue.empty()) {
        std::uint64_t x = queue.back();
        queue.pop_back();
        for (auto s : gens) {
          std::uint64_t y = a.mul(x, s);
          if (!span.test(y)) {
            span.set(y);
            ++covered;
            queue.push_back(y);
          }
        }
      }
    }
  }

  IsoSearch s{a, b, gens, {}, std::vector<std::uint64_t>(a.order(), UINT64_MAX), {}};
  for (auto g : gens) s.gen_order.push_back(a.element_order(g));
  s.map[0] = 0;
  s.known.push_back(0);
  if (!s.search(0)) return std::nullopt;
  return s.map;
}

namespace {

bool verified_iso(const FiniteGroup& g, const FiniteGroup& target) {
  return find_isomorphism(g, target).has_value();
}

}  // namespace

IsoTag iso_tag(const FiniteGroup& g, std::uint32_t p, std::uint32_t q,
               std::uint64_t search_limit) {
  const std::uint64_t n = g.order();
  if (n == 1) return {IsoKind::Trivial, 0};
  if (n == 2) return {IsoKind::C2, 0};
  if (n == p) return {IsoKind::Cp, 0};
  if (n == q) return {IsoKind::Cq, 0};
  // Elementary abelian 2-groups are recognized directly; the witness is the
  // bijection by any F2 basis, which the exponent-2 check certifies.
  if ((n & (n - 1)) == 0 && g.has_exponent_two() && g.is_abelian()) {
    std::uint32_t rank = 0;
    for (std::uint64_t m = n; m > 1; m >>= 1) ++rank;
    return {IsoKind::C2k, rank};
  }
  struct Candidate {
    std::uint64_t order;
    IsoKind kind;
  };
  const Candidate named[] = {
      {2ull * p, IsoKind::Dp},
      {2ull * q, IsoKind::Dq},
      {4ull * p * p, IsoKind::DpXDp},
      {4ull * p * p * q, IsoKind::W},
  };
  for (auto c : named) {
    if (n != c.order) continue;
    std::shared_ptr<TableGroup> target;
    switch (c.kind) {
      case IsoKind::Dp: target = TableGroup::dihedral(p); break;
      case IsoKind::Dq: target = TableGroup::dihedral(q); break;
      case IsoKind::DpXDp: {
        auto d = TableGroup::dihedral(p);
        target = TableGroup::direct_product(*d, *d);
        break;
      }
      case IsoKind::W: target = TableGroup::w_group(p, q); break;
      default: break;
    }
    if (target && verified_iso(g, *target)) return {c.kind, 0};
    return {IsoKind::Other, 0};  // right order, wrong structure
  }
  (void)search_limit;
  return {IsoKind::Other, 0};
}

}  // namespace cdm
