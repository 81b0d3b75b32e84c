#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cdm/lemmas.hpp"
#include "cdm/system.hpp"
#include "cdm/width.hpp"

namespace cdm {

// System export: params, subgroup table (id, order, index, generators),
// element table, optional relation dumps. Deterministic (sorted keys, no
// timing data), so identical inputs give byte-identical output.
std::string system_to_json(const System& s, bool include_relations = false);

// Rebuilds a system from its JSON export: parameters give the structured
// parent, subgroups are regenerated from their generator encodings and
// validated against the recorded order/index.
System system_from_json(const std::string& text, std::uint64_t guard);

// DOT rendering of the class poset (Hasse diagram of subgroup inclusion),
// nodes labeled with class id, index and iso tag.
std::string system_to_dot(const System& s);

std::string width_report_to_json(const WidthReport& r);
std::string lemma_report_to_json(const LemmaReport& r);

}  // namespace cdm
