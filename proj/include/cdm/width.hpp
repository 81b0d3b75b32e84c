#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdm/structured.hpp"
#include "cdm/system.hpp"

namespace cdm {

// Vertex width of a C2 class: the width itself (absent = infinite) and the
// witness vertex labels, sorted. The witness set is canonical; only its
// presentation order is a choice.
struct WidthReport {
  std::uint32_t class_id = 0;
  std::optional<std::uint32_t> width;
  std::vector<std::string> witnesses;

  bool finite() const { return width.has_value(); }
  friend bool operator==(const WidthReport&, const WidthReport&) = default;
};

// The nonzero F2 functional on the C2 block whose kernel is alpha's
// subgroup, read off on the unit generators. Requires a structured parent
// and a C2-tagged class (ContractError otherwise).
F2Vector dual_vector(const System& s, SystemElement alpha);

// Linear route: width = support size of the dual vector if the support
// avoids the extra slots, infinite otherwise.
WidthReport vertex_width(const System& s, SystemElement alpha);

// Semantic route: smallest n such that alpha lies above the meet of n
// distinct D_p classes, searched over vertex subsets in size-then-lex
// order. Must agree with the linear route (verified by the lemma lab).
WidthReport vertex_width_oracle(const System& s, SystemElement alpha);

// GF(2) linear independence of the dual vectors; cross-checked internally
// against the lattice condition gamma_i not >= meet of the previous ones.
bool independent(const System& s, std::span<const SystemElement> classes);

// Identity coset of the index-2 subgroup cutting out even sign patterns on
// a nonempty vertex subset. ClosureError if that kernel is outside the
// declared family.
SystemElement parity_element(const System& s, std::span<const std::string> v0);

// Graph closure: staged fixpoint adding, per stage, the width witnesses of
// every finite-width C2 member and every W class below the meet of two
// distinct member D_p classes, then regenerating the subsystem.
Subsystem gcl(const System& s, std::span<const SystemElement> a);
Subsystem gcl_ids(const System& s, const std::vector<std::uint32_t>& ids);

// Rank of a list of F2 vectors (Gaussian elimination on bit masks).
std::uint32_t f2_rank(std::span<const F2Vector> vectors);

}  // namespace cdm
