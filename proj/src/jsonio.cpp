#include "cdm/jsonio.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "cdm/error.hpp"

namespace cdm {

using nlohmann::json;

std::string system_to_json(const System& s, bool include_relations) {
  json j;
  if (auto sg = s.structured_parent()) {
    const Params& prm = sg->params();
    json edges = json::array();
    for (auto [u, v] : prm.edges())
      edges.push_back({prm.vertex_label(u), prm.vertex_label(v)});
    j["params"] = {{"p", prm.p()},
                   {"q", prm.q()},
                   {"vertices", prm.vertices()},
                   {"edges", edges},
                   {"extras", prm.extras()}};
  }
  j["order"] = s.parent().order();
  json subs = json::array();
  for (std::uint32_t id = 0; id < s.subgroup_count(); ++id) {
    const auto& sub = s.subgroup(id);
    subs.push_back({{"id", id},
                    {"order", sub.order()},
                    {"index", sub.index()},
                    {"gens", minimal_generators(sub)},
                    {"tag", s.tag(id).str()}});
  }
  j["subgroups"] = std::move(subs);
  json elems = json::array();
  for (std::uint32_t eid = 0; eid < s.size(); ++eid) {
    auto e = s.element(eid);
    elems.push_back({{"id", eid}, {"subgroup", e.subgroup_id}, {"rep", e.rep}});
  }
  j["elements"] = std::move(elems);
  if (include_relations) {
    json leq = json::array(), crel = json::array();
    for (std::uint32_t a = 0; a < s.size(); ++a)
      for (std::uint32_t b = 0; b < s.size(); ++b) {
        if (s.leq(s.element(a), s.element(b))) leq.push_back({a, b});
        if (s.crel(s.element(a), s.element(b))) crel.push_back({a, b});
      }
    j["leq"] = std::move(leq);
    j["c"] = std::move(crel);
  }
  return j.dump(2);
}

System system_from_json(const std::string& text, std::uint64_t guard) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad system JSON: ") + e.what());
  }
  if (!j.contains("params")) throw ParseError("system JSON needs \"params\"");
  const auto& p = j["params"];
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : p.at("edges")) edges.emplace_back(e.at(0), e.at(1));
  Params prm(p.at("p").get<std::uint32_t>(), p.at("q").get<std::uint32_t>(),
             p.at("vertices").get<std::vector<std::string>>(), std::move(edges),
             p.at("extras").get<std::vector<std::string>>());
  auto group = make_structured(std::move(prm));
  if (group->order() > guard) throw BudgetError("system JSON group exceeds guard");

  std::vector<NormalSubgroup> family;
  for (const auto& sub : j.at("subgroups")) {
    auto gens = sub.at("gens").get<std::vector<std::uint64_t>>();
    auto n = generated_subgroup(group, gens, guard);
    if (sub.contains("order") && n.order() != sub.at("order").get<std::uint64_t>())
      throw ParseError("subgroup order mismatch in system JSON");
    if (sub.contains("index") && n.index() != sub.at("index").get<std::uint64_t>())
      throw ParseError("subgroup index mismatch in system JSON");
    family.push_back(std::move(n));
  }
  return System(group, std::move(family), group->params().p(), group->params().q());
}

std::string system_to_dot(const System& s) {
  // Hasse diagram of the class poset: an arc i -> j when subgroup i sits
  // directly below subgroup j.
  std::ostringstream out;
  out << "digraph classes {\n  rankdir=BT;\n";
  for (std::uint32_t id = 0; id < s.subgroup_count(); ++id)
    out << "  n" << id << " [label=\"" << id << ": idx " << s.subgroup(id).index() << " "
        << s.tag(id).str() << "\"];\n";
  for (std::uint32_t i = 0; i < s.subgroup_count(); ++i)
    for (std::uint32_t j = 0; j < s.subgroup_count(); ++j) {
      if (i == j || !s.subgroup(i).mask.subset_of(s.subgroup(j).mask)) continue;
      bool covering = true;
      for (std::uint32_t k = 0; k < s.subgroup_count() && covering; ++k)
        if (k != i && k != j && s.subgroup(i).mask.subset_of(s.subgroup(k).mask) &&
            s.subgroup(k).mask.subset_of(s.subgroup(j).mask) &&
            s.subgroup(k).order() != s.subgroup(i).order() &&
            s.subgroup(k).order() != s.subgroup(j).order())
          covering = false;
      if (covering) out << "  n" << i << " -> n" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

std::string width_report_to_json(const WidthReport& r) {
  json j;
  j["class"] = r.class_id;
  if (r.finite())
    j["width"] = *r.width;
  else
    j["width"] = "inf";
  j["witnesses"] = r.witnesses;
  return j.dump();
}

std::string lemma_report_to_json(const LemmaReport& r) {
  // elapsed is deliberately omitted: identical inputs must give
  // byte-identical JSON.
  json j;
  j["lemma"] = r.lemma_id;
  j["instance"] = r.instance;
  j["status"] = r.pass ? "PASS" : "FAIL";
  j["checked"] = r.checked;
  if (!r.pass) j["counterexample"] = r.counterexample;
  return j.dump();
}

}  // namespace cdm
