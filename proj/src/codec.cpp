#include "cdm/codec.hpp"

#include <algorithm>

#include "cdm/error.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

std::shared_ptr<StructuredGroup> encode(const Graph& g, std::uint32_t extra_c2,
                                        std::uint32_t p, std::uint32_t q) {
  std::vector<std::string> extras;
  for (std::uint32_t i = 0; i < extra_c2; ++i) extras.push_back("i" + std::to_string(i));
  return make_structured(Params(p, q, g.vertices, g.edges, std::move(extras)));
}

Graph decode_structured(const StructuredGroup& g) {
  const Params& prm = g.params();
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [u, v] : prm.edges()) edges.emplace_back(prm.vertex_label(u), prm.vertex_label(v));
  return Graph::make(prm.vertices(), std::move(edges));
}

Graph decode(const System& s) {
  auto dp_classes = s.classes_tagged(IsoKind::Dp);

  // Vertex names: the label of the matching projection kernel when the
  // parent is structured, a synthetic class name otherwise.
  std::vector<std::string> names(dp_classes.size());
  if (auto sg = s.structured_parent()) {
    for (std::size_t i = 0; i < dp_classes.size(); ++i) {
      names[i] = "n" + std::to_string(dp_classes[i]);
      for (std::uint32_t v = 0; v < sg->params().vertex_count(); ++v) {
        if (vertex_kernel(sg, v).elements == s.subgroup(dp_classes[i]).elements) {
          names[i] = sg->params().vertex_label(v);
          break;
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < dp_classes.size(); ++i)
      names[i] = "n" + std::to_string(dp_classes[i]);
  }

  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < dp_classes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::uint32_t meet = s.meet_id(dp_classes[i], dp_classes[j]);
      bool edge = false;
      for (std::uint32_t id = 0; id < s.subgroup_count() && !edge; ++id)
        if (s.subgroup(id).mask.subset_of(s.subgroup(meet).mask) &&
            s.tag(id).kind == IsoKind::W)
          edge = true;
      if (edge) edges.emplace_back(names[i], names[j]);
    }
  }
  return Graph::make(std::move(names), std::move(edges));
}

}  // namespace cdm
