#include "cdm/config.hpp"

#include "cdm/params.hpp"

namespace cdm {

void RunConfig::validate() const {
  if (!is_odd_prime(p) || !is_odd_prime(q) || p == q)
    throw ParameterError("p and q must be distinct odd primes");
  if (max_order == 0 || frattini_guard == 0)
    throw ParameterError("guards must be positive");
}

}  // namespace cdm
