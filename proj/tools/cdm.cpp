#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdm/autos.hpp"
#include "cdm/codec.hpp"
#include "cdm/config.hpp"
#include "cdm/eval.hpp"
#include "cdm/jsonio.hpp"
#include "cdm/lattice.hpp"
#include "cdm/lemmas.hpp"
#include "cdm/width.hpp"

namespace {

using namespace cdm;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphSpec load_graph(const std::string& path) { return parse_graph(slurp(path)); }

System build_system(const GraphSpec& spec, const RunConfig& cfg) {
  auto group = encode(spec.graph, spec.extra_c2, cfg.p, cfg.q);
  auto subs = enumerate_normal(group, cfg.max_order);
  return System(group, std::move(subs), cfg.p, cfg.q);
}

int cmd_encode(const std::string& path, std::uint32_t c2_override, bool has_c2,
               const RunConfig& cfg) {
  auto spec = load_graph(path);
  if (has_c2) spec.extra_c2 = c2_override;
  auto group = encode(spec.graph, spec.extra_c2, cfg.p, cfg.q);
  IsoTag tag = iso_tag(*group, cfg.p, cfg.q);
  if (cfg.json) {
    std::cout << "{\"order\":" << group->order() << ",\"tag\":\"" << tag.str() << "\"}\n";
  } else {
    std::cout << "order " << group->order() << "\n";
    std::cout << "tag " << tag.str() << "\n";
  }
  return 0;
}

int cmd_decode(const std::string& path, bool oracle, const RunConfig& cfg) {
  std::string text = slurp(path);
  Graph out;
  // A system export carries a "subgroups" key; plain graph JSON does not.
  if (text.find("\"subgroups\"") != std::string::npos) {
    System s = system_from_json(text, cfg.max_order);
    out = decode(s);
  } else {
    auto spec = parse_graph(text);
    if (oracle) {
      System s = build_system(spec, cfg);
      out = decode(s);
    } else {
      out = decode_structured(*encode(spec.graph, spec.extra_c2, cfg.p, cfg.q));
    }
  }
  if (cfg.json)
    std::cout << graph_to_json(out, 0) << "\n";
  else
    std::cout << graph_to_text(out, 0);
  return 0;
}

int cmd_nsubs(const std::string& path, const RunConfig& cfg) {
  auto spec = load_graph(path);
  auto group = encode(spec.graph, spec.extra_c2, cfg.p, cfg.q);
  auto subs = enumerate_normal(group, cfg.max_order);
  for (const auto& n : subs) {
    std::cout << "index=" << n.index() << " order=" << n.order() << " gens=";
    auto gens = minimal_generators(n);
    for (std::size_t i = 0; i < gens.size(); ++i) std::cout << (i ? "," : "") << gens[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_width(const std::string& path, bool cross_check, const RunConfig& cfg) {
  auto spec = load_graph(path);
  System s = build_system(spec, cfg);
  for (auto id : s.classes_tagged(IsoKind::C2)) {
    auto report = vertex_width(s, s.identity_coset(id));
    if (cross_check) {
      auto sem = vertex_width_oracle(s, s.identity_coset(id));
      if (report.width != sem.width || report.witnesses != sem.witnesses)
        throw ContractError("width routes disagree on class " + std::to_string(id));
    }
    if (cfg.json) {
      std::cout << width_report_to_json(report) << "\n";
    } else {
      std::cout << "class " << id << " width ";
      if (report.finite())
        std::cout << *report.width;
      else
        std::cout << "inf";
      std::cout << " witnesses";
      for (const auto& w : report.witnesses) std::cout << " " << w;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_gcl(const std::string& path, const std::string& ids_arg, const RunConfig& cfg) {
  auto spec = load_graph(path);
  System s = build_system(spec, cfg);
  std::vector<SystemElement> seed;
  std::stringstream ss(ids_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::uint32_t eid = static_cast<std::uint32_t>(std::stoul(tok));
    if (eid >= s.size()) throw ContractError("element id out of range: " + tok);
    seed.push_back(s.element(eid));
  }
  auto closure = gcl(s, seed);
  for (auto id : closure.members) {
    if (cfg.json)
      std::cout << "{\"class\":" << id << ",\"index\":" << s.subgroup(id).index()
                << ",\"tag\":\"" << s.tag(id).str() << "\"}\n";
    else
      std::cout << "class " << id << " index " << s.subgroup(id).index() << " tag "
                << s.tag(id).str() << "\n";
  }
  return 0;
}

int cmd_frattini(const std::string& path, const RunConfig& cfg) {
  auto spec = load_graph(path);
  auto group = encode(spec.graph, spec.extra_c2, cfg.p, cfg.q);
  auto phi = frattini(group, cfg.frattini_guard);
  if (cfg.json) {
    std::cout << "{\"order\":" << phi.order() << "}\n";
  } else {
    std::cout << "frattini order " << phi.order() << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& path, const std::string& formula_file,
             const std::string& builtin, const RunConfig& cfg) {
  auto spec = load_graph(path);
  System s = build_system(spec, cfg);
  FormulaPtr f;
  if (!formula_file.empty()) {
    f = parse_formula(slurp(formula_file));
  } else if (!builtin.empty()) {
    auto colon = builtin.find(':');
    std::string name = builtin.substr(0, colon);
    std::uint32_t n = colon == std::string::npos
                          ? 1
                          : static_cast<std::uint32_t>(std::stoul(builtin.substr(colon + 1)));
    f = builtin_formula(name, n, cfg.p, cfg.q);
  } else {
    throw Error("eval needs -f <formula-file> or --builtin <name[:n]>");
  }
  auto vars = free_variables(f);
  if (vars.empty()) {
    bool value = evaluate(s, f);
    std::cout << (value ? "true" : "false") << "\n";
    return 0;
  }
  auto sols = solutions(s, f);
  if (cfg.json) {
    std::cout << "[";
    for (std::size_t i = 0; i < sols.size(); ++i) {
      std::cout << (i ? "," : "") << "[";
      for (std::size_t k = 0; k < sols[i].size(); ++k)
        std::cout << (k ? "," : "") << s.id_of(sols[i][k]);
      std::cout << "]";
    }
    std::cout << "]\n";
  } else {
    std::cout << "free:";
    for (const auto& v : vars) std::cout << " " << v;
    std::cout << "\n";
    for (const auto& tuple : sols) {
      for (std::size_t k = 0; k < tuple.size(); ++k)
        std::cout << (k ? " " : "") << "id=" << s.id_of(tuple[k]) << "(sub=" << tuple[k].subgroup_id
                  << ",rep=" << tuple[k].rep << ")";
      std::cout << "\n";
    }
    std::cout << sols.size() << " solution(s)\n";
  }
  return 0;
}

int cmd_verify(const std::string& lemma, const std::vector<std::string>& instance_specs,
               const RunConfig& cfg) {
  std::vector<Instance> given;
  for (const auto& spec : instance_specs)
    if (spec != "small") given.push_back(named_instance(spec));
  const std::vector<Instance>* override_insts = given.empty() ? nullptr : &given;

  std::vector<LemmaReport> reports;
  if (lemma == "all") {
    reports = verify_all(cfg, override_insts);
  } else {
    std::vector<Instance> todo =
        override_insts ? *override_insts : default_instances(lemma);
    for (const auto& inst : todo) reports.push_back(verify(lemma, inst, cfg));
  }
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    if (cfg.json) {
      std::cout << lemma_report_to_json(r) << "\n";
    } else {
      std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.lemma_id << " [" << r.instance
                << "] checked=" << r.checked << " (" << r.elapsed.count() << " ms)";
      if (!r.pass) std::cout << " counterexample: " << r.counterexample;
      std::cout << "\n";
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_export(const std::string& path, bool dot, bool with_relations, const RunConfig& cfg) {
  auto spec = load_graph(path);
  System s = build_system(spec, cfg);
  if (dot)
    std::cout << system_to_dot(s);
  else
    std::cout << system_to_json(s, with_relations) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite graph-coded groups, their inverse systems, and lemma verifiers"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  app.add_option("--p", cfg.p, "odd prime p (default 3)");
  app.add_option("--q", cfg.q, "odd prime q (default 5)");
  app.add_option("--max-order", cfg.max_order, "enumeration guard (default 10000)");
  app.add_option("--frattini-guard", cfg.frattini_guard, "lattice guard (default 500)");
  app.add_option("--seed", cfg.seed, "seed for randomized property checks");
  app.add_flag("--json", cfg.json, "machine-readable output");

  std::string graph_path, formula_file, builtin, lemma, ids_arg;
  std::uint32_t c2 = 0;
  bool oracle = false, all_flag = false, dot = false, json_fmt = false, relations = false;
  std::vector<std::string> instance_specs;

  auto* enc = app.add_subcommand("encode", "encode a graph and report order and iso tag");
  enc->add_option("graph", graph_path)->required();
  auto* c2_opt = enc->add_option("--c2", c2, "extra C2 factor count (overrides the file)");

  auto* dec = app.add_subcommand("decode", "decode a graph or system export back to a graph");
  dec->add_option("input", graph_path)->required();
  dec->add_flag("--oracle", oracle, "decode through the full enumeration");

  auto* nsb = app.add_subcommand("nsubs", "enumerate the normal subgroups");
  nsb->add_option("graph", graph_path)->required();

  auto* wid = app.add_subcommand("width", "vertex width of every C2 class");
  wid->add_option("graph", graph_path)->required();
  wid->add_flag("--all", all_flag, "cross-check against the semantic oracle");

  auto* gclc = app.add_subcommand("gcl", "graph closure of a set of system elements");
  gclc->add_option("graph", graph_path)->required();
  gclc->add_option("--elements", ids_arg, "comma-separated element ids")->required();

  auto* fra = app.add_subcommand("frattini", "Frattini subgroup via the full lattice");
  fra->add_option("graph", graph_path)->required();

  auto* ev = app.add_subcommand("eval", "evaluate a formula over the system");
  ev->add_option("graph", graph_path)->required();
  ev->add_option("-f,--formula", formula_file, "formula file");
  ev->add_option("--builtin", builtin, "builtin formula name[:n]");

  auto* ver = app.add_subcommand("verify", "re-check the finite lemmas exhaustively");
  ver->add_option("lemma", lemma, "lemma id or 'all'")->required();
  ver->add_option("--instances", instance_specs, "instance specs (default: per-lemma set)");

  auto* exp = app.add_subcommand("export", "export the system as JSON or DOT");
  exp->add_option("graph", graph_path)->required();
  exp->add_flag("--dot", dot, "DOT class poset");
  exp->add_flag("--json", json_fmt, "JSON system export (default)");
  exp->add_flag("--relations", relations, "include relation dumps in JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    cfg.validate();
    if (enc->parsed()) return cmd_encode(graph_path, c2, c2_opt->count() > 0, cfg);
    if (dec->parsed()) return cmd_decode(graph_path, oracle, cfg);
    if (nsb->parsed()) return cmd_nsubs(graph_path, cfg);
    if (wid->parsed()) return cmd_width(graph_path, all_flag, cfg);
    if (gclc->parsed()) return cmd_gcl(graph_path, ids_arg, cfg);
    if (fra->parsed()) return cmd_frattini(graph_path, cfg);
    if (ev->parsed()) return cmd_eval(graph_path, formula_file, builtin, cfg);
    if (ver->parsed()) return cmd_verify(lemma, instance_specs, cfg);
    if (exp->parsed()) return cmd_export(graph_path, dot, relations, cfg);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
