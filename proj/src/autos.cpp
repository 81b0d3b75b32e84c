#include "cdm/autos.hpp"

#include <algorithm>

#include "cdm/error.hpp"
#include "cdm/subgroup.hpp"

namespace cdm {

namespace {

bool is_bijection(const std::vector<std::uint64_t>& f, std::uint64_t n) {
  if (f.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto y : f) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

}  // namespace

bool is_dp_automorphism(const Dihedral& dp, const DpAut& f) {
  if (!is_bijection(f, dp.order()) || f[0] != 0) return false;
  for (std::uint64_t a = 0; a < dp.order(); ++a)
    for (std::uint64_t b = 0; b < dp.order(); ++b) {
      auto lhs = f[dp.encode(dp.mul(dp.decode(a), dp.decode(b)))];
      auto rhs = dp.encode(dp.mul(dp.decode(f[a]), dp.decode(f[b])));
      if (lhs != rhs) return false;
    }
  return true;
}

bool is_w_automorphism(const WGroup& w, const WAut& f) {
  if (!is_bijection(f, w.order()) || f[0] != 0) return false;
  for (std::uint64_t a = 0; a < w.order(); ++a)
    for (std::uint64_t b = 0; b < w.order(); ++b) {
      auto lhs = f[w.encode(w.mul(w.decode(a), w.decode(b)))];
      auto rhs = w.encode(w.mul(w.decode(f[a]), w.decode(f[b])));
      if (lhs != rhs) return false;
    }
  return true;
}

std::vector<DpAut> dp_automorphisms(const Dihedral& dp) {
  // Images of (rotation, reflection) determine the map; keep the valid ones.
  std::vector<DpAut> out;
  const std::uint64_t n = dp.order();
  for (std::uint64_t ir = 0; ir < n; ++ir) {
    DpElement r = dp.decode(ir);
    if (r == dp.identity() || dp.sign(r) != 0) continue;  // rotation image: order p
    for (std::uint64_t if_ = 0; if_ < n; ++if_) {
      DpElement s = dp.decode(if_);
      if (dp.sign(s) != 1) continue;  // reflection image: an involution off C_p
      DpAut f(n);
      DpElement rpow = dp.identity();
      for (std::uint32_t y = 0; y < dp.p(); ++y) {
        f[dp.encode(DpElement{y, 0})] = dp.encode(rpow);
        f[dp.encode(DpElement{y, 1})] = dp.encode(dp.mul(rpow, s));
        rpow = dp.mul(rpow, r);
      }
      if (is_dp_automorphism(dp, f)) out.push_back(std::move(f));
    }
  }
  return out;
}

bool preserves_sign(const Dihedral& dp, const DpAut& f) {
  for (std::uint64_t a = 0; a < dp.order(); ++a)
    if (dp.sign(dp.decode(f[a])) != dp.sign(dp.decode(a))) return false;
  return true;
}

WAut extend_w_automorphism(const WGroup& w, const DpAut& sigma1, const DpAut& sigma2) {
  const Dihedral& dp = w.dp();
  if (!is_dp_automorphism(dp, sigma1) || !is_dp_automorphism(dp, sigma2))
    throw ContractError("extend_w_automorphism: input is not an automorphism");
  WAut nu(w.order());
  for (std::uint64_t e = 0; e < w.order(); ++e) {
    WElement u = w.decode(e);
    WElement img{u.z, dp.decode(sigma1[dp.encode(u.b)]), dp.decode(sigma2[dp.encode(u.c)])};
    nu[e] = w.encode(img);
  }
  if (!is_w_automorphism(w, nu))
    throw ContractError("extend_w_automorphism: extension failed (internal error)");
  return nu;
}

bool commuting_square_holds(const WGroup& w, const WAut& nu, const DpAut& sigma1,
                            const DpAut& sigma2) {
  const Dihedral& dp = w.dp();
  for (std::uint64_t e = 0; e < w.order(); ++e) {
    auto [b, c] = w.lambda(w.decode(e));
    auto [nb, nc] = w.lambda(w.decode(nu[e]));
    if (dp.encode(nb) != sigma1[dp.encode(b)]) return false;
    if (dp.encode(nc) != sigma2[dp.encode(c)]) return false;
  }
  return true;
}

GroupAut coordinate_change(const StructuredGroup& g,
                           const std::map<std::string, std::string>& f) {
  const Params& prm = g.params();
  const std::size_t nv = prm.vertex_count();
  std::vector<std::uint32_t> fwd(nv), bwd(nv, UINT32_MAX);
  if (f.size() != nv) throw ContractError("coordinate_change: map must cover all vertices");
  for (const auto& [from, to] : f) {
    std::uint32_t a = prm.vertex_index(from), b = prm.vertex_index(to);
    fwd[a] = b;
    if (bwd[b] != UINT32_MAX) throw ContractError("coordinate_change: map is not injective");
    bwd[b] = a;
  }
  // f must respect the edge relation.
  std::vector<std::uint32_t> edge_bwd(prm.edge_count(), UINT32_MAX);
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
    auto [u, v] = prm.edges()[r];
    auto iu = fwd[u], iv = fwd[v];
    std::uint32_t img;
    try {
      img = prm.edge_index(prm.vertex_label(iu), prm.vertex_label(iv));
    } catch (const LabelError&) {
      throw ContractError("coordinate_change: map is not a graph automorphism");
    }
    edge_bwd[img] = r;
  }

  GroupAut phi(g.order());
  for (std::uint64_t e = 0; e < g.order(); ++e) {
    StructuredElement d = g.decode(e);
    StructuredElement out = d;
    for (std::uint32_t w = 0; w < nv; ++w) {
      out.y[w] = d.y[bwd[w]];
      out.x[w] = d.x[bwd[w]];
    }
    // The edge swap (z,b,c) -> (z,c,b) is an automorphism of W, so the z
    // residue carries over unchanged even when f reverses the stored
    // endpoint order.
    for (std::uint32_t r = 0; r < prm.edge_count(); ++r) out.z[r] = d.z[edge_bwd[r]];
    phi[e] = g.encode(out);
  }
  return phi;
}

GroupAut coordinatewise_automorphism(const StructuredGroup& g,
                                     const std::vector<DpAut>& sigma_v,
                                     const std::vector<WAut>& sigma_r) {
  const Params& prm = g.params();
  const Dihedral dp = g.dp();
  const WGroup w = g.w();
  if (sigma_v.size() != prm.vertex_count() || sigma_r.size() != prm.edge_count())
    throw ContractError("coordinatewise_automorphism: one map per vertex and edge");
  for (const auto& s : sigma_v)
    if (!is_dp_automorphism(dp, s))
      throw ContractError("coordinatewise_automorphism: bad vertex map");
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
    if (!is_w_automorphism(w, sigma_r[r]))
      throw ContractError("coordinatewise_automorphism: bad edge map");
    auto [u, v] = prm.edges()[r];
    if (!commuting_square_holds(w, sigma_r[r], sigma_v[u], sigma_v[v]))
      throw ContractError("coordinatewise_automorphism: edge map incompatible with its endpoints");
  }

  GroupAut phi(g.order());
  for (std::uint64_t e = 0; e < g.order(); ++e) {
    StructuredElement d = g.decode(e);
    StructuredElement out = d;
    for (std::uint32_t v = 0; v < prm.vertex_count(); ++v) {
      DpElement img = dp.decode(sigma_v[v][dp.encode(DpElement{
          d.y[v], static_cast<std::uint8_t>(d.x[v])})]);
      out.y[v] = img.y;
      out.x[v] = img.x;
    }
    for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
      WElement b = g.project_edge(e, r);
      out.z[r] = w.decode(sigma_r[r][w.encode(b)]).z;
    }
    phi[e] = g.encode(out);
  }
  return phi;
}

SystemAutomorphism induced_system_automorphism(const System& s, const GroupAut& phi) {
  if (!is_bijection(phi, s.parent().order()) || phi[0] != 0)
    throw ContractError("induced_system_automorphism: not a bijection fixing identity");
  std::vector<std::uint32_t> sub_image(s.subgroup_count());
  for (std::uint32_t id = 0; id < s.subgroup_count(); ++id) {
    std::vector<std::uint64_t> img;
    img.reserve(s.subgroup(id).elements.size());
    for (auto e : s.subgroup(id).elements) img.push_back(phi[e]);
    std::sort(img.begin(), img.end());
    auto found = s.find_subgroup(img);
    if (!found) throw ClosureError("automorphism image leaves the declared family");
    sub_image[id] = *found;
  }
  SystemAutomorphism out;
  out.elem_map.resize(s.size());
  for (std::uint32_t eid = 0; eid < s.size(); ++eid) {
    SystemElement e = s.element(eid);
    SystemElement img = s.coset_of(sub_image[e.subgroup_id], phi[e.rep]);
    out.elem_map[eid] = s.id_of(img);
  }
  return out;
}

bool is_system_automorphism(const System& s, const SystemAutomorphism& f) {
  const auto& m = f.elem_map;
  std::vector<std::uint64_t> as64(m.begin(), m.end());
  if (!is_bijection(as64, s.size())) return false;
  for (std::uint32_t a = 0; a < s.size(); ++a)
    for (std::uint32_t b = 0; b < s.size(); ++b) {
      SystemElement ea = s.element(a), eb = s.element(b);
      SystemElement fa = s.element(m[a]), fb = s.element(m[b]);
      if (s.leq(ea, eb) != s.leq(fa, fb)) return false;
      if (s.crel(ea, eb) != s.crel(fa, fb)) return false;
      if (!s.equivalent(ea, eb)) continue;
      SystemElement prod = s.coset_of(ea.subgroup_id, s.parent().mul(ea.rep, eb.rep));
      SystemElement fprod = s.element(m[s.id_of(prod)]);
      if (s.coset_of(fa.subgroup_id, s.parent().mul(fa.rep, fb.rep)) != fprod) return false;
    }
  return true;
}

namespace {

std::uint32_t class_of_kernel(const System& s, const std::vector<std::uint64_t>& kernel) {
  auto id = s.find_subgroup(kernel);
  if (!id) throw ClosureError("projection kernel is outside the declared family");
  return *id;
}

}  // namespace

SystemAutomorphism assemble_automorphism(const System& s, const std::vector<DpAut>& sigma_v,
                                         const std::vector<WAut>& sigma_r) {
  auto sg = s.structured_parent();
  if (!sg) throw ContractError("assemble_automorphism: structured parent required");
  GroupAut phi = coordinatewise_automorphism(*sg, sigma_v, sigma_r);
  return induced_system_automorphism(s, phi);
}

DpAut restrict_to_vertex_class(const System& s, const SystemAutomorphism& f, std::uint32_t v) {
  auto sg = s.structured_parent();
  if (!sg) throw ContractError("structured parent required");
  const Dihedral dp = sg->dp();
  std::uint32_t cls = class_of_kernel(s, vertex_kernel(sg, v).elements);
  DpAut out(dp.order());
  for (std::uint64_t d = 0; d < dp.order(); ++d) {
    SystemElement coset = s.coset_of(cls, sg->inject_vertex(dp.decode(d), v));
    SystemElement img = s.element(f.elem_map[s.id_of(coset)]);
    if (img.subgroup_id != cls)
      throw ContractError("automorphism does not preserve the vertex class");
    out[d] = dp.encode(sg->project_vertex(img.rep, v));
  }
  return out;
}

WAut restrict_to_edge_class(const System& s, const SystemAutomorphism& f, std::uint32_t r) {
  auto sg = s.structured_parent();
  if (!sg) throw ContractError("structured parent required");
  const WGroup w = sg->w();
  std::uint32_t cls = class_of_kernel(s, edge_kernel(sg, r).elements);
  WAut out(w.order());
  for (std::uint64_t d = 0; d < w.order(); ++d) {
    SystemElement coset = s.coset_of(cls, sg->inject_edge(w.decode(d), r));
    SystemElement img = s.element(f.elem_map[s.id_of(coset)]);
    if (img.subgroup_id != cls)
      throw ContractError("automorphism does not preserve the edge class");
    out[d] = w.encode(sg->project_edge(img.rep, r));
  }
  return out;
}

SubgraphProjection subgraph_projection(const StructuredGroup& g,
                                       const std::vector<std::string>& vertices) {
  const Params& prm = g.params();
  std::vector<std::string> keep = vertices;
  std::sort(keep.begin(), keep.end());
  std::vector<std::uint32_t> vidx;
  for (const auto& label : keep) vidx.push_back(prm.vertex_index(label));
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::uint32_t> ridx;
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
    auto [u, v] = prm.edges()[r];
    if (std::binary_search(vidx.begin(), vidx.end(), u) &&
        std::binary_search(vidx.begin(), vidx.end(), v)) {
      edges.emplace_back(prm.vertex_label(u), prm.vertex_label(v));
      ridx.push_back(r);
    }
  }
  SubgraphProjection out;
  out.subgroup = make_structured(
      Params(prm.p(), prm.q(), keep, std::move(edges),
             std::vector<std::string>(prm.extras().begin(), prm.extras().end())));
  out.map.resize(g.order());
  for (std::uint64_t e = 0; e < g.order(); ++e) {
    auto d = g.decode(e);
    StructuredElement sub;
    for (auto r : ridx) sub.z.push_back(d.z[r]);
    for (auto v : vidx) sub.y.push_back(d.y[v]);
    for (auto v : vidx) sub.x.push_back(d.x[v]);
    for (std::uint32_t i = 0; i < prm.extra_count(); ++i)
      sub.x.push_back(d.x[prm.vertex_count() + i]);
    out.map[e] = out.subgroup->encode(sub);
  }
  return out;
}

GroupIso coordinate_change_between(const StructuredGroup& from, const StructuredGroup& to,
                                   const std::map<std::string, std::string>& f) {
  const Params& pf = from.params();
  const Params& pt = to.params();
  if (pf.p() != pt.p() || pf.q() != pt.q() || pf.vertex_count() != pt.vertex_count() ||
      pf.edge_count() != pt.edge_count() || pf.extra_count() != pt.extra_count())
    throw ContractError("coordinate_change_between: incompatible shapes");
  if (f.size() != pf.vertex_count())
    throw ContractError("coordinate_change_between: map must cover all vertices");
  std::vector<std::uint32_t> bwd(pt.vertex_count(), UINT32_MAX);
  for (const auto& [a, b] : f) {
    std::uint32_t ia = pf.vertex_index(a), ib = pt.vertex_index(b);
    if (bwd[ib] != UINT32_MAX)
      throw ContractError("coordinate_change_between: map is not injective");
    bwd[ib] = ia;
  }
  std::vector<std::uint32_t> edge_bwd(pt.edge_count(), UINT32_MAX);
  for (std::uint32_t r = 0; r < pf.edge_count(); ++r) {
    auto [u, v] = pf.edges()[r];
    std::uint32_t img;
    try {
      img = pt.edge_index(f.at(pf.vertex_label(u)), f.at(pf.vertex_label(v)));
    } catch (const LabelError&) {
      throw ContractError("coordinate_change_between: not a graph isomorphism");
    }
    edge_bwd[img] = r;
  }
  GroupIso phi(from.order());
  for (std::uint64_t e = 0; e < from.order(); ++e) {
    auto d = from.decode(e);
    StructuredElement out;
    out.z.resize(pt.edge_count());
    out.y.resize(pt.vertex_count());
    out.x.resize(pt.x_count());
    for (std::uint32_t w = 0; w < pt.vertex_count(); ++w) {
      out.y[w] = d.y[bwd[w]];
      out.x[w] = d.x[bwd[w]];
    }
    for (std::uint32_t i = 0; i < pt.extra_count(); ++i)
      out.x[pt.vertex_count() + i] = d.x[pf.vertex_count() + i];
    for (std::uint32_t r = 0; r < pt.edge_count(); ++r) out.z[r] = d.z[edge_bwd[r]];
    phi[e] = to.encode(out);
  }
  return phi;
}

GroupIso lift_isomorphism(const StructuredGroup& from, const StructuredGroup& to,
                          const std::map<std::string, std::string>& f,
                          const std::vector<std::string>& subgraph_vertices,
                          const GroupIso& phi0) {
  if (from.params().extra_count() != 0 || to.params().extra_count() != 0)
    throw ContractError("lift_isomorphism: no extra factors allowed");
  auto sub_from = subgraph_projection(from, subgraph_vertices);
  std::vector<std::string> image_vertices;
  for (const auto& label : subgraph_vertices) image_vertices.push_back(f.at(label));
  auto sub_to = subgraph_projection(to, image_vertices);

  const StructuredGroup& sf = *sub_from.subgroup;
  const StructuredGroup& st = *sub_to.subgroup;
  if (phi0.size() != sf.order() || st.order() != sf.order() || phi0[0] != 0)
    throw ContractError("lift_isomorphism: phi0 has the wrong shape");
  for (std::uint64_t a = 0; a < sf.order(); ++a)
    for (std::uint64_t b = 0; b < sf.order(); ++b)
      if (phi0[sf.mul(a, b)] != st.mul(phi0[a], phi0[b]))
        throw ContractError("lift_isomorphism: phi0 is not multiplicative");

  const Dihedral dp = to.dp();
  const WGroup w = to.w();

  // Factor the pure relabeling out of phi0. The residual rho is an
  // automorphism of the image subgraph group whose graph action must be the
  // identity; extracting it per coordinate checks exactly that, which is the
  // compatibility hypothesis "f restricts to the graph map of phi0".
  std::map<std::string, std::string> f0;
  for (const auto& label : subgraph_vertices) f0[label] = f.at(label);
  GroupIso relabel = coordinate_change_between(sf, st, f0);
  GroupIso relabel_inv(st.order());
  for (std::uint64_t e = 0; e < st.order(); ++e) relabel_inv[relabel[e]] = e;
  GroupAut rho(st.order());
  for (std::uint64_t e = 0; e < st.order(); ++e) rho[e] = phi0[relabel_inv[e]];

  std::vector<DpAut> sigma_v;
  for (std::uint32_t tv = 0; tv < to.params().vertex_count(); ++tv) {
    const std::string& label = to.params().vertex_label(tv);
    bool retained = std::find(image_vertices.begin(), image_vertices.end(), label) !=
                    image_vertices.end();
    DpAut sigma(dp.order());
    if (!retained) {
      for (std::uint64_t i = 0; i < dp.order(); ++i) sigma[i] = i;
    } else {
      std::uint32_t v_in_sub = st.params().vertex_index(label);
      for (std::uint64_t i = 0; i < dp.order(); ++i) {
        std::uint64_t x = st.inject_vertex(dp.decode(i), v_in_sub);
        sigma[i] = dp.encode(st.project_vertex(rho[x], v_in_sub));
      }
      if (!is_dp_automorphism(dp, sigma))
        throw ContractError("lift_isomorphism: f does not restrict to the graph map of phi0");
    }
    sigma_v.push_back(std::move(sigma));
  }

  std::vector<WAut> sigma_r;
  for (std::uint32_t tr = 0; tr < to.params().edge_count(); ++tr) {
    auto [u, v] = to.params().edges()[tr];
    bool retained = true;
    std::uint32_t r_in_sub = 0;
    try {
      r_in_sub = st.params().edge_index(to.params().vertex_label(u),
                                        to.params().vertex_label(v));
    } catch (const LabelError&) {
      retained = false;
    }
    if (retained) {
      WAut sigma(w.order());
      for (std::uint64_t i = 0; i < w.order(); ++i) {
        std::uint64_t x = st.inject_edge(w.decode(i), r_in_sub);
        sigma[i] = w.encode(st.project_edge(rho[x], r_in_sub));
      }
      if (!is_w_automorphism(w, sigma))
        throw ContractError("lift_isomorphism: phi0 edge action is not an automorphism");
      sigma_r.push_back(std::move(sigma));
    } else {
      sigma_r.push_back(extend_w_automorphism(w, sigma_v[u], sigma_v[v]));
    }
  }

  GroupIso phi_f = coordinate_change_between(from, to, f);
  GroupAut sigma_bar = coordinatewise_automorphism(to, sigma_v, sigma_r);
  GroupIso out(from.order());
  for (std::uint64_t e = 0; e < from.order(); ++e) out[e] = sigma_bar[phi_f[e]];

  // Enforce the conclusion before handing the map out: the lift commutes
  // with the two subgraph projections.
  for (std::uint64_t e = 0; e < from.order(); ++e)
    if (sub_to.map[out[e]] != phi0[sub_from.map[e]])
      throw ContractError("lift_isomorphism: lifted map does not commute with projections");
  return out;
}

FactoredAutomorphism factor_automorphism(const StructuredGroup& g, const GroupAut& phi) {
  const Params& prm = g.params();
  if (!is_bijection(phi, g.order()) || phi[0] != 0)
    throw ContractError("factor_automorphism: not a bijection fixing identity");
  auto self = g.shared_from_this();

  // The permutation of the vertex kernels is the graph automorphism.
  FactoredAutomorphism out;
  const std::size_t nv = prm.vertex_count();
  std::vector<std::vector<std::uint64_t>> kernels(nv);
  for (std::uint32_t v = 0; v < nv; ++v) kernels[v] = vertex_kernel(self, v).elements;
  std::vector<std::uint32_t> fwd(nv, UINT32_MAX);
  for (std::uint32_t v = 0; v < nv; ++v) {
    std::vector<std::uint64_t> img;
    for (auto e : kernels[v]) img.push_back(phi[e]);
    std::sort(img.begin(), img.end());
    for (std::uint32_t w = 0; w < nv; ++w)
      if (img == kernels[w]) {
        fwd[v] = w;
        break;
      }
    if (fwd[v] == UINT32_MAX)
      throw ContractError("factor_automorphism: a vertex kernel maps to no vertex kernel");
    out.graph_map[prm.vertex_label(v)] = prm.vertex_label(fwd[v]);
  }

  GroupAut phi_f = coordinate_change(g, out.graph_map);
  // sigma = phi o phi_f^{-1}, read coordinatewise.
  GroupAut phi_f_inv(g.order());
  for (std::uint64_t e = 0; e < g.order(); ++e) phi_f_inv[phi_f[e]] = e;
  const Dihedral dp = g.dp();
  const WGroup w = g.w();
  for (std::uint32_t v = 0; v < nv; ++v) {
    DpAut sv(dp.order());
    for (std::uint64_t d = 0; d < dp.order(); ++d)
      sv[d] = dp.encode(g.project_vertex(phi[phi_f_inv[g.inject_vertex(dp.decode(d), v)]], v));
    if (!is_dp_automorphism(dp, sv))
      throw ContractError("factor_automorphism: residual vertex map is not an automorphism");
    out.sigma_v.push_back(std::move(sv));
  }
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
    WAut sr(w.order());
    for (std::uint64_t d = 0; d < w.order(); ++d)
      sr[d] = w.encode(g.project_edge(phi[phi_f_inv[g.inject_edge(w.decode(d), r)]], r));
    if (!is_w_automorphism(w, sr))
      throw ContractError("factor_automorphism: residual edge map is not an automorphism");
    out.sigma_r.push_back(std::move(sr));
  }
  return out;
}

}  // namespace cdm
