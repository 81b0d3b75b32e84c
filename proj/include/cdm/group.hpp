#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cdm/error.hpp"

namespace cdm {

// A finite group whose elements are dense handles 0..order()-1 with the
// identity at handle 0. Implementations are immutable after construction;
// all operations are pure.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;

  virtual std::uint64_t order() const = 0;
  virtual std::uint64_t mul(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::uint64_t inv(std::uint64_t a) const = 0;
  virtual const std::vector<std::uint64_t>& generators() const = 0;

  // g x g^-1
  std::uint64_t conjugate(std::uint64_t g, std::uint64_t x) const {
    return mul(mul(g, x), inv(g));
  }

  std::uint64_t power(std::uint64_t x, std::uint64_t e) const;
  std::uint64_t element_order(std::uint64_t x) const;

  bool is_abelian() const;
  bool has_exponent_two() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Group given by an explicit multiplication table. Used for small reference
// groups (cyclic, dihedral, direct products) and for local copies in the
// isomorphism search.
class TableGroup final : public FiniteGroup {
 public:
  TableGroup(std::uint64_t n, std::function<std::uint64_t(std::uint64_t, std::uint64_t)> mulfn);

  std::uint64_t order() const override { return n_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    return table_[a * n_ + b];
  }
  std::uint64_t inv(std::uint64_t a) const override { return inverse_[a]; }
  const std::vector<std::uint64_t>& generators() const override { return gens_; }

  static std::shared_ptr<TableGroup> cyclic(std::uint64_t n);
  static std::shared_ptr<TableGroup> dihedral(std::uint32_t p);
  static std::shared_ptr<TableGroup> w_group(std::uint32_t p, std::uint32_t q);
  static std::shared_ptr<TableGroup> direct_product(const FiniteGroup& a, const FiniteGroup& b);
  static std::shared_ptr<TableGroup> elementary_abelian_2(std::uint32_t rank);

  // Copies any implementation into table form (order must stay desk-scale).
  static std::shared_ptr<TableGroup> from_group(const FiniteGroup& g);

 private:
  std::uint64_t n_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint64_t> gens_;

  void finish();  // inverses + a small generating set
};

}  // namespace cdm
