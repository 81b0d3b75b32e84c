#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cdm/dihedral.hpp"

namespace cdm {

// Element of W = C_q x| (D_p x D_p): a residue z mod q and two dihedral
// components. The pair (b,c) acts on z through the signs: it inverts z
// exactly when sign(b) != sign(c).
struct WElement {
  std::uint32_t z = 0;
  DpElement b, c;

  friend bool operator==(const WElement&, const WElement&) = default;
};

// Arithmetic context for W at fixed odd primes p != q. Order 4 p^2 q.
class WGroup {
 public:
  WGroup(std::uint32_t p, std::uint32_t q) : dp_(p), q_(q) {}

  const Dihedral& dp() const { return dp_; }
  std::uint32_t q() const { return q_; }
  std::uint64_t order() const { return dp_.order() * dp_.order() * q_; }

  WElement identity() const { return {}; }
  // Generator of the C_q part.
  WElement cq_generator() const { return {1, {}, {}}; }

  WElement mul(WElement u, WElement v) const {
    bool invert = dp_.sign(u.b) != dp_.sign(u.c);
    std::uint32_t z = invert ? (u.z + q_ - v.z) % q_ : (u.z + v.z) % q_;
    return {z, dp_.mul(u.b, v.b), dp_.mul(u.c, v.c)};
  }

  WElement inv(WElement u) const {
    bool invert = dp_.sign(u.b) != dp_.sign(u.c);
    std::uint32_t z = invert ? u.z : (q_ - u.z) % q_;
    return {z, dp_.inv(u.b), dp_.inv(u.c)};
  }

  // The quotient onto D_p x D_p.
  std::pair<DpElement, DpElement> lambda(WElement u) const { return {u.b, u.c}; }

  bool valid(WElement u) const { return u.z < q_ && dp_.valid(u.b) && dp_.valid(u.c); }

  // Dense encoding onto [0, 4p^2 q); identity encodes to 0.
  std::uint64_t encode(WElement u) const {
    return u.z + q_ * (dp_.encode(u.b) + dp_.order() * dp_.encode(u.c));
  }
  WElement decode(std::uint64_t e) const {
    std::uint32_t z = static_cast<std::uint32_t>(e % q_);
    e /= q_;
    return {z, dp_.decode(e % dp_.order()), dp_.decode(e / dp_.order())};
  }

 private:
  Dihedral dp_;
  std::uint32_t q_;
};

}  // namespace cdm
