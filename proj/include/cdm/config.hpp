#pragma once

#include <cstdint>

#include "cdm/error.hpp"

namespace cdm {

// Run-wide knobs shared by the CLI and the verifier registry.
struct RunConfig {
  std::uint32_t p = 3;
  std::uint32_t q = 5;
  std::uint64_t max_order = 10000;     // enumeration guard
  std::uint64_t frattini_guard = 500;  // subgroup-lattice guard
  std::uint64_t seed = 20240901;       // randomized property tests
  bool json = false;

  void validate() const;
};

}  // namespace cdm
