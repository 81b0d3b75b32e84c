#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cdm/dihedral.hpp"
#include "cdm/group.hpp"
#include "cdm/params.hpp"
#include "cdm/wgroup.hpp"

namespace cdm {

// Element of a structured group in residue form: z over the edges mod q,
// y over the vertices mod p, x over vertices-then-extras mod 2.
struct StructuredElement {
  std::vector<std::uint32_t> z;
  std::vector<std::uint32_t> y;
  std::vector<std::uint32_t> x;

  friend bool operator==(const StructuredElement&, const StructuredElement&) = default;
};

// The image of an element in the product D_p^V x W^R x C2^I. The edge
// components always satisfy lambda(b_r) = (a_u, a_v) for r = (u,v).
struct ProductForm {
  std::vector<DpElement> a;   // per vertex
  std::vector<WElement> b;    // per edge
  std::vector<std::uint8_t> c;  // per extra
};

// F2 coordinate vector indexed by the C2 slots (vertices then extras) of a
// fixed Params. Slots beyond 64 are rejected at Params construction.
struct F2Vector {
  std::uint64_t bits = 0;
  std::uint32_t dim = 0;

  bool get(std::size_t j) const { return (bits >> j) & 1u; }
  void set(std::size_t j) { bits |= std::uint64_t{1} << j; }
  F2Vector operator+(F2Vector o) const { return {bits ^ o.bits, dim}; }
  std::size_t support_size() const {
    return static_cast<std::size_t>(__builtin_popcountll(bits));
  }
  bool zero() const { return bits == 0; }

  friend bool operator==(const F2Vector&, const F2Vector&) = default;
};

// The group C_q^R x| (C_p^V x| C2^(V u I)) of a graph with |I| extra C2
// factors. Elements are handled through their canonical mixed-radix
// encodings, a bijection onto [0, q^|R| p^|V| 2^(|V|+|I|)) with the
// identity at 0. Multiplication twists each edge residue by the signs of
// the two endpoints and each vertex residue by the vertex sign.
class StructuredGroup final : public FiniteGroup,
                              public std::enable_shared_from_this<StructuredGroup> {
 public:
  explicit StructuredGroup(Params params);

  const Params& params() const { return params_; }
  Dihedral dp() const { return Dihedral(params_.p()); }
  WGroup w() const { return WGroup(params_.p(), params_.q()); }

  std::uint64_t order() const override { return params_.group_order(); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t inv(std::uint64_t a) const override;
  const std::vector<std::uint64_t>& generators() const override { return gens_; }

  std::uint64_t encode(const StructuredElement& e) const;
  StructuredElement decode(std::uint64_t h) const;

  // Projections; each is a homomorphism.
  DpElement project_vertex(std::uint64_t g, std::uint32_t v) const;
  WElement project_edge(std::uint64_t g, std::uint32_t r) const;
  std::uint8_t project_extra(std::uint64_t g, std::uint32_t i) const;

  // Sections: (g)_v and (g)_r, identity away from the named coordinate.
  std::uint64_t inject_vertex(DpElement g, std::uint32_t v) const;
  std::uint64_t inject_edge(WElement g, std::uint32_t r) const;
  std::uint64_t inject_extra(std::uint8_t bit, std::uint32_t i) const;

  // The quotient onto the C2 block (kernel = product of the p- and q-Sylows).
  F2Vector xi(std::uint64_t g) const;

  ProductForm to_product_form(std::uint64_t g) const;

  // Convenience generators by label.
  std::uint64_t rotation_at(std::string_view v) const;    // (gamma)_v
  std::uint64_t reflection_at(std::string_view v) const;  // (beta)_v
  std::uint64_t cq_at(std::string_view a, std::string_view b) const;  // (delta)_r
  std::uint64_t unit_extra(std::string_view i) const;

 private:
  Params params_;
  std::vector<std::uint64_t> gens_;

  std::size_t digit_count_;  // |R| + |V| + |V| + |I|
  // Radix and place value per digit, layout [z digits][y digits][x digits].
  std::vector<std::uint32_t> radix_;
  std::vector<std::uint64_t> place_;

  void decode_digits(std::uint64_t h, std::uint32_t* d) const;
  std::uint64_t encode_digits(const std::uint32_t* d) const;
};

std::shared_ptr<StructuredGroup> make_structured(Params params);

}  // namespace cdm
