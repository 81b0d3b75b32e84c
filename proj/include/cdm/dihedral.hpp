#pragma once

#include <cstdint>
#include <vector>

#include "cdm/error.hpp"

namespace cdm {

// Element of the dihedral group of order 2p, written additively: a rotation
// exponent y mod p and a sign bit x. (y,x) stands for rotation^y reflection^x;
// conjugating a rotation by a reflection inverts it.
struct DpElement {
  std::uint32_t y = 0;
  std::uint8_t x = 0;

  friend bool operator==(const DpElement&, const DpElement&) = default;
};

// Arithmetic context for D_p at a fixed odd prime p.
class Dihedral {
 public:
  explicit Dihedral(std::uint32_t p) : p_(p) {}

  std::uint32_t p() const { return p_; }
  std::uint64_t order() const { return 2ull * p_; }

  DpElement identity() const { return {}; }
  DpElement rotation() const { return {1, 0}; }    // generator of C_p
  DpElement reflection() const { return {0, 1}; }  // an involution outside C_p

  DpElement mul(DpElement a, DpElement b) const {
    std::uint32_t y = a.x ? (a.y + p_ - b.y) % p_ : (a.y + b.y) % p_;
    return {y, static_cast<std::uint8_t>(a.x ^ b.x)};
  }

  DpElement inv(DpElement a) const {
    return {a.x ? a.y : (p_ - a.y) % p_, a.x};
  }

  // The sign epimorphism onto C2 (kernel C_p).
  std::uint8_t sign(DpElement a) const { return a.x; }

  bool valid(DpElement a) const { return a.y < p_ && a.x < 2; }

  // Dense encoding onto [0, 2p); identity encodes to 0.
  std::uint64_t encode(DpElement a) const { return a.y + std::uint64_t{p_} * a.x; }
  DpElement decode(std::uint64_t e) const {
    return {static_cast<std::uint32_t>(e % p_), static_cast<std::uint8_t>(e / p_)};
  }

  std::vector<DpElement> elements() const {
    std::vector<DpElement> out;
    for (std::uint64_t e = 0; e < order(); ++e) out.push_back(decode(e));
    return out;
  }

 private:
  std::uint32_t p_;
};

}  // namespace cdm
