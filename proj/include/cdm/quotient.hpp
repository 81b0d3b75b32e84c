#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdm/group.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

// G/N with cosets labeled 0..index-1 in ascending order of their minimal
// element encoding; coset 0 is N itself, so the identity convention of
// FiniteGroup is preserved.
class QuotientGroup final : public FiniteGroup {
 public:
  QuotientGroup(GroupPtr parent, NormalSubgroup kernel);

  std::uint64_t order() const override { return reps_.size(); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    return proj_[parent_->mul(reps_[a], reps_[b])];
  }
  std::uint64_t inv(std::uint64_t a) const override { return proj_[parent_->inv(reps_[a])]; }
  const std::vector<std::uint64_t>& generators() const override { return gens_; }

  const FiniteGroup& parent() const { return *parent_; }
  GroupPtr parent_ptr() const { return parent_; }
  const NormalSubgroup& kernel() const { return kernel_; }

  // Coset id of a parent element / minimal representative of a coset.
  std::uint64_t project(std::uint64_t parent_elem) const { return proj_[parent_elem]; }
  std::uint64_t rep(std::uint64_t coset) const { return reps_[coset]; }
  const std::vector<std::uint64_t>& reps() const { return reps_; }

 private:
  GroupPtr parent_;
  NormalSubgroup kernel_;
  std::vector<std::uint64_t> reps_;
  std::vector<std::uint32_t> proj_;
  std::vector<std::uint64_t> gens_;
};

std::shared_ptr<QuotientGroup> make_quotient(GroupPtr parent, NormalSubgroup kernel);

// Extensional homomorphism: the full element map, built from generator
// images and validated multiplicatively on construction.
struct Homomorphism {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<std::uint64_t> map;

  std::uint64_t operator()(std::uint64_t x) const { return map[x]; }
  bool surjective() const;
  NormalSubgroup kernel_subgroup() const;

  // Defines f on all of `domain` from images of domain->generators().
  // Throws ContractError if the images do not extend to a homomorphism.
  static Homomorphism from_generator_images(GroupPtr domain, GroupPtr codomain,
                                            const std::vector<std::uint64_t>& images);

  // The canonical projection onto a quotient.
  static Homomorphism projection(GroupPtr parent, std::shared_ptr<const QuotientGroup> q);

  // Full multiplicativity check, O(n^2).
  bool validate() const;
};

// The subgroup of Q1 x Q2 of pairs agreeing in Q0, for surjections
// f : Q1 -> Q0 and g : Q2 -> Q0. Order |Q1||Q2|/|Q0|.
class FiberProduct final : public FiniteGroup {
 public:
  FiberProduct(Homomorphism f, Homomorphism g);

  std::uint64_t order() const override { return pairs_.size(); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t inv(std::uint64_t a) const override;
  const std::vector<std::uint64_t>& generators() const override { return gens_; }

  std::pair<std::uint64_t, std::uint64_t> pair(std::uint64_t id) const { return pairs_[id]; }
  std::optional<std::uint64_t> id_of(std::uint64_t a, std::uint64_t b) const;

 private:
  Homomorphism f_, g_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;  // sorted
  std::vector<std::uint64_t> gens_;
};

enum class IsoKind { Trivial, C2, C2k, Cp, Cq, Dp, Dq, DpXDp, W, Other };

struct IsoTag {
  IsoKind kind = IsoKind::Other;
  std::uint32_t rank = 0;  // k for C2k

  std::string str() const;
  friend bool operator==(const IsoTag&, const IsoTag&) = default;
};

IsoTag parse_iso_tag(std::string_view s);

// Backtracking generator-image isomorphism search with order-profile
// pruning. Returns the element map A -> B if the groups are isomorphic.
// Intended for |A| <= 512.
std::optional<std::vector<std::uint64_t>> find_isomorphism(const FiniteGroup& a,
                                                           const FiniteGroup& b);

// Matches `g` against the named targets for primes (p,q). Structure tests
// narrow the candidates; any non-Other answer is backed by a verified
// isomorphism witness. Groups above `search_limit` that fail every named
// test come back Other.
IsoTag iso_tag(const FiniteGroup& g, std::uint32_t p, std::uint32_t q,
               std::uint64_t search_limit = 512);

}  // namespace cdm
