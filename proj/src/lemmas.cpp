#include "cdm/lemmas.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "cdm/autos.hpp"
#include "cdm/codec.hpp"
#include "cdm/eval.hpp"
#include "cdm/lattice.hpp"
#include "cdm/quotient.hpp"
#include "cdm/system.hpp"
#include "cdm/width.hpp"

namespace cdm {

namespace {

struct Check {
  bool pass = true;
  std::string counterexample;
  std::uint64_t checked = 0;

  void count() { ++checked; }
  bool fail(const std::string& why) {
    if (pass) {
      pass = false;
      counterexample = why;
    }
    return false;
  }
  bool expect(bool ok, const std::function<std::string()>& why) {
    count();
    if (!ok) fail(why());
    return ok;
  }
};

std::string gens_str(const NormalSubgroup& n) {
  std::ostringstream out;
  out << "gens=[";
  auto gens = minimal_generators(n);
  for (std::size_t i = 0; i < gens.size(); ++i) out << (i ? "," : "") << gens[i];
  out << "]";
  return out.str();
}

// Shared per-instance state, built lazily.
struct Workbench {
  const Instance& inst;
  const RunConfig& cfg;
  std::shared_ptr<StructuredGroup> group;
  std::optional<std::vector<NormalSubgroup>> subs;
  std::optional<System> system;

  Workbench(const Instance& i, const RunConfig& c) : inst(i), cfg(c) {
    group = encode(i.graph, i.extra_c2, c.p, c.q);
  }

  const std::vector<NormalSubgroup>& oracle() {
    if (!subs) subs = enumerate_normal(group, cfg.max_order);
    return *subs;
  }

  System& sys() {
    if (!system) system.emplace(group, oracle(), cfg.p, cfg.q);
    return *system;
  }
};

// ---------------------------------------------------------------------------
// Individual verifiers. Every quantifier runs over the oracle enumeration.

void verify_easy_1_or_2(Workbench& wb, Check& ck) {
  const auto& g = *wb.group;
  const Params& prm = g.params();
  for (const auto& n : wb.oracle()) {
    for (std::uint32_t v = 0; v < prm.vertex_count(); ++v) {
      bool image_has_rotation = false;
      for (auto e : n.elements) {
        DpElement d = g.project_vertex(e, v);
        if (d.x == 0 && d.y != 0) {
          image_has_rotation = true;
          break;
        }
      }
      if (!image_has_rotation) {
        ck.count();
        continue;
      }
      ck.expect(n.contains(g.inject_vertex(g.dp().rotation(), v)), [&] {
        return "C_p image without (C_p)_v containment: " + gens_str(n) + " vertex=" +
               prm.vertex_label(v);
      });
    }
  }
}

void verify_easy_3(Workbench& wb, Check& ck) {
  const auto& g = *wb.group;
  const Params& prm = g.params();
  for (const auto& n : wb.oracle()) {
    for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
      // C_q lies in the image iff a pure C_q element of every exponent shows
      // up; a single nontrivial one generates, so scan for any.
      bool image_has_cq = false;
      for (auto e : n.elements) {
        WElement u = g.project_edge(e, r);
        if (u.z != 0 && u.b == DpElement{} && u.c == DpElement{}) {
          image_has_cq = true;
          break;
        }
      }
      if (!image_has_cq) {
        ck.count();
        continue;
      }
      ck.expect(n.contains(g.inject_edge(g.w().cq_generator(), r)), [&] {
        return "C_q image without (C_q)_r containment: " + gens_str(n) + " edge=" +
               prm.edge_label(r);
      });
    }
  }
}

void verify_easy_4(Workbench& wb, Check& ck) {
  const auto& g = *wb.group;
  const Params& prm = g.params();
  for (const auto& n : wb.oracle()) {
    // N n C_q^R = 1?
    bool trivial_cq_part = true;
    for (auto e : n.elements) {
      if (e == 0) continue;
      auto d = g.decode(e);
      bool pure_z = std::all_of(d.y.begin(), d.y.end(), [](auto y) { return y == 0; }) &&
                    std::all_of(d.x.begin(), d.x.end(), [](auto x) { return x == 0; });
      if (pure_z) {
        trivial_cq_part = false;
        break;
      }
    }
    if (!trivial_cq_part) {
      ck.count();
      continue;
    }
    for (auto e : n.elements) {
      auto d = g.decode(e);
      for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
        auto [u, v] = prm.edges()[r];
        bool ok = d.x[u] == d.x[v] && d.z[r] == 0;
        ck.expect(ok, [&] {
          return "edge coordinate (z,a_u,a_v) violates the sign/triviality form: " +
                 gens_str(n) + " elem=" + std::to_string(e) + " edge=" + prm.edge_label(r);
        });
      }
    }
  }
}

void verify_still_proper(Workbench& wb, Check& ck) {
  auto s = sylow_product(wb.group);
  for (const auto& n : wb.oracle()) {
    if (n.index() == 1) continue;  // proper subgroups only
    auto ns = combine(n, s, CombineMode::Product);
    ck.expect(ns.order() < wb.group->order(),
              [&] { return "NS is the whole group for proper " + gens_str(n); });
  }
}

void verify_no_unexpected(Workbench& wb, Check& ck) {
  const auto& g = wb.group;
  const Params& prm = g->params();
  const std::size_t nv = prm.vertex_count();
  std::vector<NormalSubgroup> kernels;
  for (std::uint32_t v = 0; v < nv; ++v) kernels.push_back(vertex_kernel(g, v));

  auto dp_ref = TableGroup::dihedral(prm.p());
  std::vector<std::shared_ptr<TableGroup>> dp_power = {nullptr, dp_ref};
  for (std::size_t k = 2; k <= nv; ++k)
    dp_power.push_back(TableGroup::direct_product(*dp_power[k - 1], *dp_ref));

  for (const auto& n : wb.oracle()) {
    auto quotient = make_quotient(g, n);
    // (1) every D_p quotient kernel is a coordinate projection kernel
    if (quotient->order() == 2ull * prm.p() &&
        find_isomorphism(*quotient, *dp_ref).has_value()) {
      bool matched = false;
      for (const auto& k : kernels) matched = matched || k.elements == n.elements;
      ck.expect(matched,
                [&] { return "unexpected D_p quotient kernel: " + gens_str(n); });
    }
    // (2) every D_p^k quotient kernel is an intersection of exactly k of them
    for (std::size_t k = 2; k <= nv; ++k) {
      if (quotient->order() != dp_power[k]->order()) continue;
      if (!find_isomorphism(*quotient, *dp_power[k]).has_value()) continue;
      bool matched = false;
      std::vector<std::uint32_t> pick;
      auto subsets = [&](auto&& self, std::uint32_t start, std::size_t need) -> void {
        if (matched) return;
        if (need == 0) {
          Bitset meet = kernels[pick[0]].mask;
          for (std::size_t i = 1; i < pick.size(); ++i) meet &= kernels[pick[i]].mask;
          matched = meet == n.mask;
          return;
        }
        for (std::uint32_t i = start; i + need <= nv; ++i) {
          pick.push_back(i);
          self(self, i + 1, need - 1);
          pick.pop_back();
        }
      };
      subsets(subsets, 0, k);
      ck.expect(matched, [&] {
        return "D_p^" + std::to_string(k) +
               " quotient kernel is not a k-fold projection-kernel intersection: " +
               gens_str(n);
      });
    }
  }
}

void verify_frattini_trivial(Workbench& wb, Check& ck) {
  auto phi = frattini(wb.group, wb.cfg.frattini_guard);
  ck.expect(phi.order() == 1,
            [&] { return "Frattini subgroup has order " + std::to_string(phi.order()); });
}

void verify_sylow_intersect(Workbench& wb, Check& ck) {
  std::vector<NormalSubgroup> sylows = {sylow_part(wb.group, wb.cfg.p),
                                        sylow_part(wb.group, wb.cfg.q),
                                        sylow_product(wb.group)};
  const auto& subs = wb.oracle();
  for (const auto& s : sylows) {
    for (const auto& a : subs) {
      auto sa = combine(s, a, CombineMode::Product);
      for (const auto& b : subs) {
        auto sb = combine(s, b, CombineMode::Product);
        auto lhs = combine(sa, sb, CombineMode::Intersection);
        auto rhs = combine(s, combine(a, b, CombineMode::Intersection), CombineMode::Product);
        ck.expect(lhs.elements == rhs.elements, [&] {
          return "S A n S B != S(A n B) for |S|=" + std::to_string(s.order()) + " A=" +
                 gens_str(a) + " B=" + gens_str(b);
        });
      }
    }
  }
}

void verify_modular_law(Workbench& wb, Check& ck) {
  const auto& subs = wb.oracle();
  for (const auto& a : subs)
    for (const auto& b : subs) {
      if (!a.mask.subset_of(b.mask)) continue;  // alpha <= beta
      for (const auto& e : subs) {
        auto lhs = combine(a, combine(b, e, CombineMode::Intersection), CombineMode::Product);
        auto rhs = combine(b, combine(a, e, CombineMode::Product), CombineMode::Intersection);
        ck.expect(lhs.elements == rhs.elements, [&] {
          return "modular law fails at A=" + gens_str(a) + " B=" + gens_str(b) + " E=" +
                 gens_str(e);
        });
      }
    }
}

void verify_fiber_iso(Workbench& wb, Check& ck) {
  System& s = wb.sys();
  for (std::uint32_t a = 0; a < s.subgroup_count(); ++a) {
    for (std::uint32_t b = 0; b <= a; ++b) {
      std::uint32_t delta = s.join_id(a, b);
      std::uint32_t mu = s.meet_id(a, b);
      auto qa = s.quotient_of(a), qb = s.quotient_of(b), qd = s.quotient_of(delta);
      auto qm = s.quotient_of(mu);

      auto proj_onto = [&](const std::shared_ptr<const QuotientGroup>& from,
                           const std::shared_ptr<const QuotientGroup>& to) {
        std::vector<std::uint64_t> map(from->order());
        for (std::uint64_t i = 0; i < from->order(); ++i) map[i] = to->project(from->rep(i));
        return Homomorphism{from, to, std::move(map)};
      };
      FiberProduct fp(proj_onto(qa, qd), proj_onto(qb, qd));

      bool ok = fp.order() == qm->order();
      // canonical map g(N n M) -> (gN, gM) must be a bijective homomorphism
      std::vector<std::uint64_t> can(qm->order(), UINT64_MAX);
      if (ok) {
        Bitset hit(fp.order());
        for (std::uint64_t i = 0; i < qm->order() && ok; ++i) {
          auto id = fp.id_of(qa->project(qm->rep(i)), qb->project(qm->rep(i)));
          ok = id.has_value() && !hit.test(*id);
          if (ok) {
            hit.set(*id);
            can[i] = *id;
          }
        }
      }
      if (ok)
        for (std::uint64_t i = 0; i < qm->order() && ok; ++i)
          for (std::uint64_t j = 0; j < qm->order() && ok; ++j)
            ok = can[qm->mul(i, j)] == fp.mul(can[i], can[j]);
      ck.expect(ok, [&] {
        return "fiber-product identity fails for classes " + std::to_string(a) + "," +
               std::to_string(b);
      });
    }
  }
}

void verify_graph_recovery(Workbench& wb, Check& ck) {
  Graph decoded = decode(wb.sys());
  ck.expect(decoded == wb.inst.graph, [&] {
    return "decoded graph differs: got " + graph_to_json(decoded, 0) + " want " +
           graph_to_json(wb.inst.graph, 0);
  });
}

void verify_dictionary(Workbench& wb, Check& ck) {
  System& s = wb.sys();
  auto c2 = s.classes_tagged(IsoKind::C2);
  const std::size_t dim = wb.group->params().x_count();

  // d is a bijection onto the nonzero functionals.
  std::uint64_t expected = dim >= 1 ? (std::uint64_t{1} << dim) - 1 : 0;
  ck.expect(c2.size() == expected, [&] {
    return "C2 class count " + std::to_string(c2.size()) + " != " + std::to_string(expected);
  });
  std::vector<F2Vector> vecs;
  for (auto id : c2) vecs.push_back(dual_vector(s, s.identity_coset(id)));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    ck.expect(!vecs[i].zero(), [&] { return "zero dual vector"; });
    for (std::size_t j = 0; j < i; ++j)
      ck.expect(!(vecs[i] == vecs[j]),
                [&] { return "dual vectors collide on classes " + std::to_string(c2[i]) +
                             "," + std::to_string(c2[j]); });
  }

  // Linear and semantic width agree, witnesses included.
  for (auto id : c2) {
    auto lin = vertex_width(s, s.identity_coset(id));
    auto sem = vertex_width_oracle(s, s.identity_coset(id));
    ck.expect(lin.width == sem.width && lin.witnesses == sem.witnesses, [&] {
      return "width routes disagree on class " + std::to_string(id);
    });
  }

  // Independence: GF(2) rank equals the subset rank, all subsets of size <= 4.
  std::vector<std::uint32_t> pick;
  auto subsets = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() >= 1) {
      std::vector<SystemElement> elems;
      std::vector<F2Vector> sub;
      for (auto i : pick) {
        elems.push_back(s.identity_coset(c2[i]));
        sub.push_back(vecs[i]);
      }
      bool lin = f2_rank(sub) == sub.size();
      ck.expect(independent(s, elems) == lin,
                [&] { return "independence mismatch on a subset of size " +
                             std::to_string(pick.size()); });
    }
    if (pick.size() == 4) return;
    for (std::size_t i = start; i < c2.size(); ++i) {
      pick.push_back(static_cast<std::uint32_t>(i));
      self(self, i + 1);
      pick.pop_back();
    }
  };
  subsets(subsets, 0);
}

void verify_exchange(Workbench& wb, Check& ck) {
  System& s = wb.sys();
  auto c2 = s.classes_tagged(IsoKind::C2);
  const std::uint64_t n = s.parent().order();

  Bitset whole(n);
  for (std::uint64_t e = 0; e < n; ++e) whole.set(e);

  std::vector<std::uint32_t> pick;
  auto tuples = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty() && pick.size() <= 3) {
      std::vector<SystemElement> gammas;
      for (auto i : pick) gammas.push_back(s.identity_coset(c2[i]));
      if (independent(s, gammas)) {
        Bitset meet = whole;
        for (auto i : pick) meet &= s.subgroup(c2[i]).mask;
        for (auto aid : c2) {
          if (!meet.subset_of(s.subgroup(aid).mask)) continue;  // alpha >= meet required
          for (std::size_t drop = 0; drop < pick.size(); ++drop) {
            // Steinitz premise: alpha must not already lie above the meet of
            // the remaining gammas, otherwise gamma_drop cannot be recovered.
            Bitset others = whole;
            for (std::size_t j = 0; j < pick.size(); ++j)
              if (j != drop) others &= s.subgroup(c2[pick[j]]).mask;
            if (others.subset_of(s.subgroup(aid).mask)) continue;
            Bitset rest = s.subgroup(aid).mask;
            rest &= others;
            ck.expect(rest.subset_of(s.subgroup(c2[pick[drop]]).mask), [&] {
              return "exchange fails: gamma_" + std::to_string(drop) +
                     " not above alpha ^ rest (alpha class " + std::to_string(aid) + ")";
            });
          }
        }
      }
    }
    if (pick.size() == 3) return;
    for (std::size_t i = start; i < c2.size(); ++i) {
      pick.push_back(static_cast<std::uint32_t>(i));
      self(self, i + 1);
      pick.pop_back();
    }
  };
  tuples(tuples, 0);
}

void verify_parity(Workbench& wb, Check& ck) {
  System& s = wb.sys();
  const auto& labels = wb.group->params().vertices();
  std::vector<std::string> pick;
  auto subsets = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty()) {
      auto alpha = parity_element(s, pick);
      auto report = vertex_width(s, alpha);
      bool ok = report.finite() && *report.width == pick.size() && report.witnesses == pick;
      ck.expect(ok, [&] {
        std::string v0;
        for (const auto& l : pick) v0 += l + " ";
        return "parity element over {" + v0 + "} has wrong width or witnesses";
      });
    }
    for (std::size_t i = start; i < labels.size(); ++i) {
      pick.push_back(labels[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  subsets(subsets, 0);
}

void verify_c2_generation(Workbench& wb, Check& ck) {
  System& s = wb.sys();
  for (std::uint32_t id = 0; id < s.subgroup_count(); ++id) {
    if (s.subgroup(id).index() == 1) continue;  // delta must be nontrivial
    std::vector<std::uint32_t> above;
    for (auto c : s.classes_tagged(IsoKind::C2))
      if (s.subgroup(id).mask.subset_of(s.subgroup(c).mask)) above.push_back(c);
    auto closure = gcl_ids(s, above);
    ck.expect(closure.contains(id), [&] {
      return "class " + std::to_string(id) + " escapes gcl of its C2 upper set";
    });
  }
}

void verify_gcl_idempotent(Workbench& wb, Check& ck) {
  System& s = wb.sys();

  auto check_one = [&](std::vector<std::uint32_t> seed) {
    auto once = gcl_ids(s, seed);
    auto twice = gcl_ids(s, once.members);
    ck.expect(once == twice, [&] { return "gcl not idempotent"; });

    // The graph of the closure is an induced subgraph of the decoded graph.
    std::vector<std::uint32_t> dp_in;
    for (auto id : once.members)
      if (s.tag(id).kind == IsoKind::Dp) dp_in.push_back(id);
    auto w_classes = s.classes_tagged(IsoKind::W);
    for (std::size_t i = 0; i < dp_in.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        std::uint32_t meet = s.meet_id(dp_in[i], dp_in[j]);
        bool closure_edge = false;
        for (auto w : w_classes)
          if (s.subgroup(w).mask.subset_of(s.subgroup(meet).mask))
            closure_edge = closure_edge || once.contains(w);
        bool full_edge = false;
        for (auto w : w_classes)
          full_edge = full_edge ||
                      s.subgroup(w).mask.subset_of(s.subgroup(meet).mask);
        ck.expect(closure_edge == full_edge,
                  [&] { return "gcl graph is not an induced subgraph"; });
      }
  };

  for (std::uint32_t id = 0; id < s.subgroup_count(); ++id) check_one({id});
  for (std::uint32_t a = 0; a < s.subgroup_count(); ++a)
    for (std::uint32_t b = 0; b < a; ++b) check_one({a, b});
}

void verify_width_definability(Workbench& wb, Check& ck) {
  System& s = wb.sys();
  auto c2 = s.classes_tagged(IsoKind::C2);

  std::vector<std::vector<std::uint32_t>> psi_sets;  // element ids per n
  for (std::uint32_t n = 1; n <= 3; ++n) {
    auto psi = builtin_formula("psi", n, wb.cfg.p, wb.cfg.q);
    std::vector<std::uint32_t> sols;
    for (const auto& tuple : solutions(s, psi)) sols.push_back(s.id_of(tuple[0]));
    std::sort(sols.begin(), sols.end());
    psi_sets.push_back(sols);

    auto phi = builtin_formula("phi", n, wb.cfg.p, wb.cfg.q);
    std::vector<std::uint32_t> phi_sols;
    for (const auto& tuple : solutions(s, phi)) phi_sols.push_back(s.id_of(tuple[0]));
    std::sort(phi_sols.begin(), phi_sols.end());

    std::vector<std::uint32_t> want;
    for (auto id : c2) {
      auto report = vertex_width(s, s.identity_coset(id));
      if (report.finite() && *report.width == n)
        for (std::uint64_t rep_i = 0; rep_i < s.class_size(id); ++rep_i)
          want.push_back(s.id_of(
              {id, s.quotient_of(id)->rep(rep_i)}));
    }
    std::sort(want.begin(), want.end());
    ck.expect(phi_sols == want, [&] {
      return "phi_" + std::to_string(n) + " solution set differs from the width-" +
             std::to_string(n) + " classes";
    });
  }
  for (std::size_t n = 0; n + 1 < psi_sets.size(); ++n)
    ck.expect(std::includes(psi_sets[n + 1].begin(), psi_sets[n + 1].end(),
                            psi_sets[n].begin(), psi_sets[n].end()),
              [&] { return "psi_" + std::to_string(n + 1) + " not included in psi_" +
                           std::to_string(n + 2); });
}

void verify_bounding(Workbench& wb, Check& ck) {
  for (const auto& n : wb.oracle()) {
    auto report = check_bounding(wb.group, n);
    ck.expect(report.pass(), [&] { return "bounding claims fail for " + gens_str(n); });
  }
}

void verify_extend_auts(Workbench& wb, Check& ck) {
  Dihedral dp(wb.cfg.p);
  WGroup w(wb.cfg.p, wb.cfg.q);
  auto auts = dp_automorphisms(dp);
  ck.expect(auts.size() == std::size_t{dp.p()} * (dp.p() - 1),
            [&] { return "Aut(D_p) has unexpected size " + std::to_string(auts.size()); });
  for (const auto& s : auts)
    ck.expect(preserves_sign(dp, s), [&] { return "an automorphism moves the sign map"; });
  for (const auto& s1 : auts)
    for (const auto& s2 : auts) {
      auto nu = extend_w_automorphism(w, s1, s2);
      ck.expect(is_w_automorphism(w, nu) && commuting_square_holds(w, nu, s1, s2),
                [&] { return "extension fails the commuting square"; });
    }
}

void verify_lifting(Workbench& wb, Check& ck) {
  // Lift isomorphisms of the a-b edge subgroup of the 3-path along graph
  // isomorphisms, and confirm the lift commutes with the projections.
  RunConfig cfg = wb.cfg;
  Instance p3 = named_instance("path3");
  auto from = encode(p3.graph, 0, cfg.p, cfg.q);
  auto to = encode(p3.graph, 0, cfg.p, cfg.q);

  const std::vector<std::string> base{"a", "b"};
  const std::map<std::string, std::string> ident{{"a", "a"}, {"b", "b"}, {"c", "c"}};
  const std::map<std::string, std::string> swap_ac{{"a", "c"}, {"b", "b"}, {"c", "a"}};

  Dihedral dp = to->dp();
  WGroup w = to->w();
  auto auts = dp_automorphisms(dp);

  auto check_lift = [&](const std::map<std::string, std::string>& f, const GroupIso& phi0,
                        const SubgraphProjection& pf, const SubgraphProjection& pt) {
    GroupIso phi = lift_isomorphism(*from, *to, f, base, phi0);

    // multiplicative on generator columns (enough for a full homomorphism),
    // bijective, and commuting with the two subgraph projections
    bool ok = phi[0] == 0;
    std::vector<bool> hit(to->order(), false);
    for (std::uint64_t e = 0; e < from->order() && ok; ++e) {
      ok = !hit[phi[e]];
      hit[phi[e]] = true;
    }
    for (std::uint64_t e = 0; e < from->order() && ok; ++e)
      for (auto g : from->generators())
        ok = ok && phi[from->mul(e, g)] == to->mul(phi[e], phi[g]);
    for (std::uint64_t e = 0; e < from->order() && ok; ++e)
      ok = ok && pt.map[phi[e]] == phi0[pf.map[e]];

    // the lifted map realizes f on the vertex kernels
    for (std::uint32_t v = 0; v < from->params().vertex_count() && ok; ++v) {
      auto kern = vertex_kernel(from, v).elements;
      std::vector<std::uint64_t> img;
      for (auto e : kern) img.push_back(phi[e]);
      std::sort(img.begin(), img.end());
      auto want = vertex_kernel(to, to->params().vertex_index(
                                        f.at(from->params().vertex_label(v))))
                      .elements;
      ok = ok && img == want;
    }
    ck.expect(ok, [&] { return "lifted isomorphism fails its commuting square"; });
  };

  {
    auto pf = subgraph_projection(*from, base);
    auto pt = subgraph_projection(*to, base);
    GroupIso id0(pf.subgroup->order());
    for (std::uint64_t i = 0; i < id0.size(); ++i) id0[i] = i;
    check_lift(ident, id0, pf, pt);
  }
  {
    auto pf = subgraph_projection(*from, base);
    std::vector<std::string> image{"c", "b"};
    auto pt = subgraph_projection(*to, image);
    std::map<std::string, std::string> f0{{"a", "c"}, {"b", "b"}};
    GroupIso relabel = coordinate_change_between(*pf.subgroup, *pt.subgroup, f0);
    check_lift(swap_ac, relabel, pf, pt);

    // compose with a coordinatewise twist of the image edge group
    std::vector<DpAut> sv{auts[1], auts[2]};
    GroupAut twist = coordinatewise_automorphism(
        *pt.subgroup, sv, {extend_w_automorphism(w, sv[0], sv[1])});
    GroupIso composed(relabel.size());
    for (std::uint64_t i = 0; i < relabel.size(); ++i) composed[i] = twist[relabel[i]];
    check_lift(swap_ac, composed, pf, pt);
  }

  // incompatible data is rejected: a phi0 whose graph action disagrees with f
  {
    auto pf = subgraph_projection(*from, base);
    std::vector<std::string> image{"c", "b"};
    auto pt = subgraph_projection(*to, image);
    GroupIso relabel = coordinate_change_between(
        *pf.subgroup, *pt.subgroup,
        std::map<std::string, std::string>{{"a", "b"}, {"b", "c"}});
    bool threw = false;
    try {
      check_lift(swap_ac, relabel, pf, pt);
    } catch (const ContractError&) {
      threw = true;
    }
    ck.expect(threw, [&] { return "incompatible phi0 was accepted"; });
  }
}

void verify_assemble_aut(Workbench& wb, Check& ck) {
  // Runs on the one-edge graph regardless of the requested instance.
  RunConfig cfg = wb.cfg;
  Instance edge = named_instance("edge");
  Workbench local(edge, cfg);
  System& s = local.sys();
  auto g = local.group;
  Dihedral dp = g->dp();
  WGroup w = g->w();

  // Identity data assembles to the identity.
  DpAut iddp(dp.order());
  for (std::uint64_t i = 0; i < dp.order(); ++i) iddp[i] = i;
  WAut idw(w.order());
  for (std::uint64_t i = 0; i < w.order(); ++i) idw[i] = i;
  auto ident = assemble_automorphism(s, {iddp, iddp}, {idw});
  bool is_id = true;
  for (std::uint32_t i = 0; i < s.size(); ++i) is_id = is_id && ident.elem_map[i] == i;
  ck.expect(is_id, [&] { return "identity data does not assemble to the identity"; });

  // Every compatible pair assembles; restrictions reproduce the inputs.
  auto auts = dp_automorphisms(dp);
  for (const auto& s1 : auts)
    for (const auto& s2 : auts) {
      auto nu = extend_w_automorphism(w, s1, s2);
      auto sys_aut = assemble_automorphism(s, {s1, s2}, {nu});
      bool ok = is_system_automorphism(s, sys_aut);
      ok = ok && restrict_to_vertex_class(s, sys_aut, 0) == s1;
      ok = ok && restrict_to_vertex_class(s, sys_aut, 1) == s2;
      ok = ok && restrict_to_edge_class(s, sys_aut, 0) == nu;
      ck.expect(ok, [&] { return "assembled automorphism fails reconstruction"; });
    }

  // Uniqueness via the injection into the vertex/edge quotients: the
  // kernels of all projections intersect trivially, so the restrictions
  // pin the automorphism.
  Bitset meet = vertex_kernel(g, 0).mask;
  meet &= vertex_kernel(g, 1).mask;
  meet &= edge_kernel(g, 0).mask;
  ck.expect(meet.count() == 1,
            [&] { return "projection kernels do not intersect trivially"; });

  // The swap graph automorphism induces the coordinate-change map that
  // exchanges the two D_p classes, and factoring recovers it.
  std::map<std::string, std::string> swap{{"a", "b"}, {"b", "a"}};
  auto phi_f = coordinate_change(*g, swap);
  auto swapped = induced_system_automorphism(s, phi_f);
  ck.expect(is_system_automorphism(s, swapped),
            [&] { return "swap coordinate change is not a system automorphism"; });
  auto ka = s.find_subgroup(vertex_kernel(g, 0).elements);
  auto kb = s.find_subgroup(vertex_kernel(g, 1).elements);
  bool swaps = ka && kb &&
               s.element(swapped.elem_map[s.id_of(s.identity_coset(*ka))]).subgroup_id == *kb &&
               s.element(swapped.elem_map[s.id_of(s.identity_coset(*kb))]).subgroup_id == *ka;
  ck.expect(swaps, [&] { return "coordinate change does not swap the vertex classes"; });
  auto factored = factor_automorphism(*g, phi_f);
  ck.expect(factored.graph_map == swap,
            [&] { return "factoring does not recover the swap"; });

  // phi = sigma o phi_f factoring for a composite automorphism.
  auto nu = extend_w_automorphism(w, auts[1], iddp);
  auto sigma = coordinatewise_automorphism(*g, {auts[1], iddp}, {nu});
  GroupAut composite(g->order());
  for (std::uint64_t e = 0; e < g->order(); ++e) composite[e] = sigma[phi_f[e]];
  auto fact2 = factor_automorphism(*g, composite);
  GroupAut rebuilt_f = coordinate_change(*g, fact2.graph_map);
  auto rebuilt_sigma = coordinatewise_automorphism(*g, fact2.sigma_v, fact2.sigma_r);
  bool recompose = true;
  for (std::uint64_t e = 0; e < g->order(); ++e)
    recompose = recompose && composite[e] == rebuilt_sigma[rebuilt_f[e]];
  ck.expect(recompose, [&] { return "factorization does not recompose"; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Bounding-lemma computation

BoundingReport check_bounding(const std::shared_ptr<const StructuredGroup>& g,
                              const NormalSubgroup& n) {
  const Params& prm = g->params();
  BoundingReport rep;
  rep.quotient_order = n.index();

  // |A| = 2^k p^n q^m
  std::uint64_t a = rep.quotient_order;
  while (a % 2 == 0) {
    a /= 2;
    ++rep.k;
  }
  while (a % prm.p() == 0) {
    a /= prm.p();
    ++rep.n;
  }
  while (a % prm.q() == 0) {
    a /= prm.q();
    ++rep.m;
  }
  if (a != 1) throw ContractError("quotient order is not of the form 2^k p^n q^m");

  // Vertex images and the edge condition.
  const std::size_t nv = prm.vertex_count();
  std::vector<int> image_kind(nv);  // 0: trivial, 1: C_p, 2: D_p
  for (std::uint32_t v = 0; v < nv; ++v) {
    bool has_rot = false, has_ref = false;
    for (auto e : n.elements) {
      DpElement d = g->project_vertex(e, v);
      has_rot = has_rot || (d.x == 0 && d.y != 0);
      has_ref = has_ref || d.x == 1;
    }
    image_kind[v] = has_ref ? 2 : (has_rot ? 1 : 0);
  }
  std::vector<bool> edge_prime(prm.edge_count());  // r in R'
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
    bool cq_hit = false;
    for (auto e : n.elements) {
      WElement u = g->project_edge(e, r);
      if (u.z != 0 && u.b == DpElement{} && u.c == DpElement{}) {
        cq_hit = true;
        break;
      }
    }
    edge_prime[r] = !cq_hit;
    if (edge_prime[r]) rep.r_prime.push_back(prm.edge_label(r));
  }

  std::vector<bool> in_v0(nv, false);
  for (std::uint32_t v = 0; v < nv; ++v) {
    bool edge_cond = false;
    for (auto r : prm.incident_edges(v)) edge_cond = edge_cond || edge_prime[r];
    in_v0[v] = image_kind[v] != 2 || edge_cond;
    if (in_v0[v]) {
      rep.v0.push_back(prm.vertex_label(v));
      (image_kind[v] == 0 ? rep.v1 : image_kind[v] == 1 ? rep.v2 : rep.v3)
          .push_back(prm.vertex_label(v));
    }
  }

  // Gamma_0 is the induced subgraph on V0.
  std::vector<bool> edge_in_gamma0(prm.edge_count());
  rep.gamma0_order = 1;
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r) {
    auto [u, v] = prm.edges()[r];
    edge_in_gamma0[r] = in_v0[u] && in_v0[v];
    if (edge_in_gamma0[r]) rep.gamma0_order *= prm.q();
  }
  for (std::uint32_t v = 0; v < nv; ++v)
    if (in_v0[v]) rep.gamma0_order *= 2ull * prm.p();

  // Containment: the coordinates outside Gamma_0 really lie in N.
  rep.containment = true;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (!in_v0[v])
      rep.containment =
          rep.containment && n.contains(g->inject_vertex(g->dp().rotation(), v));
  for (std::uint32_t r = 0; r < prm.edge_count(); ++r)
    if (!edge_in_gamma0[r])
      rep.containment = rep.containment && n.contains(g->inject_edge(g->w().cq_generator(), r));

  // Exact complementary C2 rank: the x-patterns over (V - V0) u I of the
  // members of N whose Gamma_0 coordinates vanish.
  std::vector<std::size_t> free_slots;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (!in_v0[v]) free_slots.push_back(v);
  for (std::uint32_t i = 0; i < prm.extra_count(); ++i) free_slots.push_back(nv + i);
  std::vector<F2Vector> patterns;
  for (auto e : n.elements) {
    auto d = g->decode(e);
    bool gamma0_trivial = true;
    for (std::uint32_t r = 0; r < prm.edge_count(); ++r)
      gamma0_trivial = gamma0_trivial && (!edge_in_gamma0[r] || d.z[r] == 0);
    for (std::uint32_t v = 0; v < nv; ++v)
      gamma0_trivial = gamma0_trivial && (!in_v0[v] || (d.y[v] == 0 && d.x[v] == 0));
    if (!gamma0_trivial) continue;
    F2Vector pat;
    pat.dim = static_cast<std::uint32_t>(free_slots.size());
    for (std::size_t j = 0; j < free_slots.size(); ++j)
      if (d.x[free_slots[j]]) pat.set(j);
    patterns.push_back(pat);
  }
  std::uint32_t mrank = f2_rank(patterns);
  rep.ell = static_cast<std::uint32_t>(free_slots.size()) - mrank;

  rep.ell_bound = std::log2(static_cast<double>(rep.quotient_order) *
                            static_cast<double>(rep.gamma0_order));
  rep.claim1 = rep.v1.size() <= std::min(rep.k, rep.n);
  rep.claim2 = rep.v2.size() <= rep.k;
  rep.claim3 = rep.v3.size() <= 2ull * rep.m;
  rep.claim4 = static_cast<double>(rep.ell) <= rep.ell_bound + 1e-9;
  return rep;
}

// ---------------------------------------------------------------------------
// Instances and the registry

Instance named_instance(const std::string& spec) {
  std::string name = spec;
  std::uint32_t c2 = 0;
  if (auto plus = spec.find("+c"); plus != std::string::npos) {
    name = spec.substr(0, plus);
    try {
      c2 = static_cast<std::uint32_t>(std::stoul(spec.substr(plus + 2)));
    } catch (...) {
      throw ContractError("bad instance suffix in '" + spec + "'");
    }
  }
  Graph g;
  if (name == "empty")
    g = Graph::make({}, {});
  else if (name == "v1")
    g = Graph::make({"a"}, {});
  else if (name == "v2")
    g = Graph::make({"a", "b"}, {});
  else if (name == "v3")
    g = Graph::make({"a", "b", "c"}, {});
  else if (name == "edge")
    g = Graph::make({"a", "b"}, {{"a", "b"}});
  else if (name == "path3")
    g = Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  else if (name == "triangle")
    g = Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  else
    throw ContractError("unknown instance '" + spec + "'");
  return {spec, std::move(g), c2};
}

namespace {

std::vector<Instance> insts(std::initializer_list<const char*> names) {
  std::vector<Instance> out;
  for (auto n : names) out.push_back(named_instance(n));
  return out;
}

struct LemmaEntry {
  const char* id;
  void (*run)(Workbench&, Check&);
  std::vector<Instance> (*defaults)();
};

const LemmaEntry kLemmas[] = {
    {"easy-1", verify_easy_1_or_2, [] { return insts({"v1", "v2"}); }},
    {"easy-2", verify_easy_1_or_2,
     [] { return insts({"v2+c1", "edge", "edge+c1"}); }},
    {"easy-3", verify_easy_3, [] { return insts({"edge", "edge+c1", "path3"}); }},
    {"easy-4", verify_easy_4, [] { return insts({"edge", "edge+c1", "path3"}); }},
    {"still-proper", verify_still_proper,
     [] { return insts({"v1", "v2", "edge", "edge+c1"}); }},
    {"no-unexpected", verify_no_unexpected,
     [] { return insts({"v1", "v2", "v1+c1", "v1+c2", "v2+c1", "v2+c2"}); }},
    {"frattini-trivial", verify_frattini_trivial,
     [] { return insts({"v1", "v2", "edge"}); }},
    {"sylow-intersect", verify_sylow_intersect, [] { return insts({"edge", "v2+c1"}); }},
    {"modular-law", verify_modular_law, [] { return insts({"edge"}); }},
    {"fiber-iso", verify_fiber_iso, [] { return insts({"edge"}); }},
    {"graph-recovery", verify_graph_recovery,
     [] { return insts({"v1", "v2", "edge"}); }},
    {"dictionary", verify_dictionary,
     [] { return insts({"v1", "v2", "edge", "v1+c1", "v2+c1", "edge+c1"}); }},
    {"exchange", verify_exchange,
     [] { return insts({"v1", "v2", "edge", "v1+c1", "v2+c1", "edge+c1"}); }},
    {"parity", verify_parity, [] { return insts({"v2", "v2+c1", "v3", "edge"}); }},
    {"c2-generation", verify_c2_generation,
     [] { return insts({"v1", "v2", "edge", "v1+c1", "v2+c1", "edge+c1"}); }},
    {"gcl-idempotent", verify_gcl_idempotent, [] { return insts({"v2", "edge", "edge+c1"}); }},
    {"width-definability", verify_width_definability,
     [] { return insts({"v1", "v2", "edge", "v1+c1", "v2+c1", "edge+c1"}); }},
    {"bounding", verify_bounding, [] { return insts({"edge", "edge+c1"}); }},
    {"extend-auts", verify_extend_auts, [] { return insts({"edge"}); }},
    {"lifting", verify_lifting, [] { return insts({"path3"}); }},
    {"assemble-aut", verify_assemble_aut, [] { return insts({"edge"}); }},
};

const LemmaEntry* find_lemma(const std::string& id) {
  for (const auto& entry : kLemmas)
    if (id == entry.id) return &entry;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& lemma_registry() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& entry : kLemmas) out.emplace_back(entry.id);
    return out;
  }();
  return ids;
}

std::vector<Instance> default_instances(const std::string& lemma_id) {
  const LemmaEntry* entry = find_lemma(lemma_id);
  if (!entry) throw ContractError("unknown lemma id '" + lemma_id + "'");
  return entry->defaults();
}

LemmaReport verify(const std::string& lemma_id, const Instance& instance,
                   const RunConfig& cfg) {
  const LemmaEntry* entry = find_lemma(lemma_id);
  if (!entry) throw ContractError("unknown lemma id '" + lemma_id + "'");
  auto start = std::chrono::steady_clock::now();
  Workbench wb(instance, cfg);
  Check ck;
  entry->run(wb, ck);
  LemmaReport report;
  report.lemma_id = lemma_id;
  report.instance = instance.name;
  report.pass = ck.pass;
  report.counterexample = ck.counterexample;
  report.checked = ck.checked;
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

std::vector<LemmaReport> verify_all(const RunConfig& cfg,
                                    const std::vector<Instance>* instances) {
  std::vector<LemmaReport> out;
  for (const auto& entry : kLemmas) {
    std::vector<Instance> todo = instances ? *instances : entry.defaults();
    for (const auto& inst : todo) out.push_back(verify(entry.id, inst, cfg));
  }
  return out;
}

}  // namespace cdm
