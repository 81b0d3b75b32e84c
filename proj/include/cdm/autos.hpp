#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cdm/dihedral.hpp"
#include "cdm/system.hpp"
#include "cdm/wgroup.hpp"

namespace cdm {

// Automorphisms are extensional maps over the dense encodings of the group
// they act on (D_p, W, a structured group, or a whole system).
using DpAut = std::vector<std::uint64_t>;  // over Dihedral encodings
using WAut = std::vector<std::uint64_t>;   // over WGroup encodings

bool is_dp_automorphism(const Dihedral& dp, const DpAut& f);
bool is_w_automorphism(const WGroup& w, const WAut& f);

// All automorphisms of D_p by brute force on generator images; |Aut| = p(p-1).
std::vector<DpAut> dp_automorphisms(const Dihedral& dp);

// Every automorphism of D_p fixes the sign map.
bool preserves_sign(const Dihedral& dp, const DpAut& f);

// id_{C_q} x sigma1 x sigma2, an automorphism of W covering sigma1 x sigma2
// through lambda. ContractError if an input is not an automorphism.
WAut extend_w_automorphism(const WGroup& w, const DpAut& sigma1, const DpAut& sigma2);

// lambda(nu(u)) == (sigma1 x sigma2)(lambda(u)) for all u.
bool commuting_square_holds(const WGroup& w, const WAut& nu, const DpAut& sigma1,
                            const DpAut& sigma2);

// A group automorphism of a structured group, as an element map.
using GroupAut = std::vector<std::uint64_t>;

// Coordinate permutation induced by a graph automorphism f (map of vertex
// labels). ContractError if f is not an automorphism of the decoded graph.
GroupAut coordinate_change(const StructuredGroup& g,
                           const std::map<std::string, std::string>& f);

// Coordinatewise automorphism from per-vertex D_p maps and per-edge W maps;
// each sigma_r must cover (sigma_u, sigma_v) through lambda (the commuting
// squares of the per-class data). ContractError on incompatibility.
GroupAut coordinatewise_automorphism(const StructuredGroup& g,
                                     const std::vector<DpAut>& sigma_v,
                                     const std::vector<WAut>& sigma_r);

// An automorphism of the system, as a map over element ids.
struct SystemAutomorphism {
  std::vector<std::uint32_t> elem_map;

  friend bool operator==(const SystemAutomorphism&, const SystemAutomorphism&) = default;
};

// Induced action of a group automorphism on the system: gN -> phi(g)phi(N).
// Requires the family to be closed under phi (ClosureError otherwise; the
// full oracle family always is).
SystemAutomorphism induced_system_automorphism(const System& s, const GroupAut& phi);

bool is_system_automorphism(const System& s, const SystemAutomorphism& f);

// The unique system automorphism restricting to the given per-class maps on
// the vertex and edge classes (identified with D_p and W through the
// projections). Uniqueness holds because an element of the structured group
// is determined by its images in all the vertex and edge quotients; the
// verifier re-extracts the restrictions as the reconstruction check.
SystemAutomorphism assemble_automorphism(const System& s, const std::vector<DpAut>& sigma_v,
                                         const std::vector<WAut>& sigma_r);

// Restriction of a system automorphism to a vertex class, read back as a
// D_p map through the projection (for the reconstruction check).
DpAut restrict_to_vertex_class(const System& s, const SystemAutomorphism& f, std::uint32_t v);
WAut restrict_to_edge_class(const System& s, const SystemAutomorphism& f, std::uint32_t r);

// Factor phi = sigma o phi_f: extract the graph automorphism f from the
// permutation of the vertex kernels, then the coordinatewise part.
struct FactoredAutomorphism {
  std::map<std::string, std::string> graph_map;
  std::vector<DpAut> sigma_v;
  std::vector<WAut> sigma_r;
};

FactoredAutomorphism factor_automorphism(const StructuredGroup& g, const GroupAut& phi);

// Projection onto the group of an induced subgraph: keeps the coordinates of
// the retained vertices and of the edges between them. Returns the subgraph
// group and the element map (a surjective homomorphism).
struct SubgraphProjection {
  std::shared_ptr<StructuredGroup> subgroup;
  std::vector<std::uint64_t> map;
};

SubgraphProjection subgraph_projection(const StructuredGroup& g,
                                       const std::vector<std::string>& vertices);

// An isomorphism between the groups of two isomorphic graphs, as the element
// map `from` -> `to`.
using GroupIso = std::vector<std::uint64_t>;

// Coordinate relabeling along a graph isomorphism f : graph(from) -> graph(to).
GroupIso coordinate_change_between(const StructuredGroup& from, const StructuredGroup& to,
                                   const std::map<std::string, std::string>& f);

// Lift an isomorphism of induced-subgraph groups along a graph isomorphism.
// Given f : graph(from) -> graph(to), a vertex set carving the subgraph on
// the `from` side, and phi0 between the two subgraph groups such that f
// restricts to the graph map of phi0, produces phi : from -> to with
// subgraph projections commuting: proj_to(phi(x)) = phi0(proj_from(x)).
// The extension puts the identity on the new vertices and a compatible
// extension on each new edge.
GroupIso lift_isomorphism(const StructuredGroup& from, const StructuredGroup& to,
                          const std::map<std::string, std::string>& f,
                          const std::vector<std::string>& subgraph_vertices,
                          const GroupIso& phi0);

}  // namespace cdm
