#pragma once

#include <cstdint>
#include <memory>

#include "cdm/graph.hpp"
#include "cdm/structured.hpp"
#include "cdm/system.hpp"

namespace cdm {

// Graph -> structured group of order q^|R| p^|V| 2^(|V|+K); the K extra C2
// labels are i0..i(K-1). The empty graph encodes to the trivial group.
std::shared_ptr<StructuredGroup> encode(const Graph& g, std::uint32_t extra_c2,
                                        std::uint32_t p, std::uint32_t q);

// Fast decoding straight from the coordinates: one vertex per vertex label,
// one edge per edge coordinate. No enumeration.
Graph decode_structured(const StructuredGroup& g);

// Decoding through the system: vertices are the D_p classes, with an edge
// between two distinct D_p classes exactly when some class below their meet
// is a W class. When the system's parent is structured, decoded vertices are
// named by the vertex label of the matching projection kernel.
Graph decode(const System& s);

}  // namespace cdm
