#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cdm/config.hpp"
#include "cdm/graph.hpp"
#include "cdm/structured.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

// One verifier run. FAIL always carries a counterexample replayable through
// the public API; budget problems throw BudgetError instead of failing.
struct LemmaReport {
  std::string lemma_id;
  std::string instance;
  bool pass = false;
  std::string counterexample;  // empty when pass
  std::uint64_t checked = 0;
  std::chrono::milliseconds elapsed{0};
};

// A named instance: a graph plus the number of extra C2 factors.
struct Instance {
  std::string name;
  Graph graph;
  std::uint32_t extra_c2 = 0;
};

// The built-in instance catalogue (empty, v1, v2, edge, path3, triangle,
// optionally with +cK suffixes). Throws ContractError for unknown names.
Instance named_instance(const std::string& spec);

// All registered lemma ids, in the order `verify all` runs them.
const std::vector<std::string>& lemma_registry();

// The documented default instances of one lemma.
std::vector<Instance> default_instances(const std::string& lemma_id);

// Exhaustively re-checks one lemma on one instance over the oracle
// enumeration. The verifiers never consult the structured fast paths they
// exist to validate.
LemmaReport verify(const std::string& lemma_id, const Instance& instance,
                   const RunConfig& cfg);

// `verify all` over each lemma's default instances (or the given ones).
std::vector<LemmaReport> verify_all(const RunConfig& cfg,
                                    const std::vector<Instance>* instances = nullptr);

// The quantities of the bounding lemma for one normal subgroup N of a
// structured group, with all four claims evaluated.
struct BoundingReport {
  std::vector<std::string> v0, v1, v2, v3;  // vertex labels
  std::vector<std::string> r_prime;         // edge labels u-v
  std::uint32_t k = 0, n = 0, m = 0;        // |A| = 2^k p^n q^m
  std::uint64_t quotient_order = 0;
  std::uint64_t gamma0_order = 0;
  std::uint32_t ell = 0;        // exact complementary C2 rank, per Claim 4
  double ell_bound = 0;         // log2(|A| |G_Gamma0|)
  bool claim1 = false, claim2 = false, claim3 = false, claim4 = false;
  bool containment = false;     // N really contains the pruned coordinates

  bool pass() const { return claim1 && claim2 && claim3 && claim4 && containment; }
};

BoundingReport check_bounding(const std::shared_ptr<const StructuredGroup>& g,
                              const NormalSubgroup& n);

}  // namespace cdm
