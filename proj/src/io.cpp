#include "mll/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mll/error.hpp"

namespace mll {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("write to '" + path.string() + "' failed");
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

namespace {

template <typename T>
T field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + " lacks \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + " field \"" + key + "\" has the wrong type");
  }
}

}  // namespace

StructureSpec structure_spec_from_json(const Json& j) {
  StructureSpec spec;
  spec.universe = field<std::vector<std::string>>(j, "universe", "structure");
  if (j.contains("relations")) {
    const Json& rels = j.at("relations");
    if (!rels.is_object()) throw InputError("structure field \"relations\" must be an object");
    for (const auto& [name, r] : rels.items()) {
      StructureSpec::Relation rel;
      rel.arity = field<std::size_t>(r, "arity", "relation");
      if (r.contains("tuples")) rel.tuples = field<std::vector<std::vector<std::string>>>(r, "tuples", "relation");
      spec.relations[name] = std::move(rel);
    }
  }
  if (j.contains("constants")) spec.constants = field<std::map<std::string, std::string>>(j, "constants", "structure");
  return spec;
}

FinStructure structure_from_json(const Json& j) { return FinStructure(structure_spec_from_json(j)); }

Json to_json(const StructureSpec& spec) {
  Json j;
  j["universe"] = spec.universe;
  j["relations"] = Json::object();
  for (const auto& [name, rel] : spec.relations) j["relations"][name] = {{"arity", rel.arity}, {"tuples", rel.tuples}};
  j["constants"] = Json::object();
  for (const auto& [c, v] : spec.constants) j["constants"][c] = v;
  return j;
}

Json to_json(const FinStructure& m) { return to_json(m.describe()); }

FinPoset poset_from_json(const Json& j) {
  auto elements = field<std::vector<std::string>>(j, "elements", "poset");
  std::vector<std::pair<std::string, std::string>> leq;
  if (j.contains("leq")) {
    for (const auto& pair : field<std::vector<std::vector<std::string>>>(j, "leq", "poset")) {
      if (pair.size() != 2) throw InputError("poset order entries must be pairs");
      leq.emplace_back(pair[0], pair[1]);
    }
  }
  return FinPoset(std::move(elements), leq);
}

Json to_json(const FinPoset& p) {
  Json j;
  j["elements"] = p.labels();
  j["leq"] = Json::array();
  for (auto [lo, hi] : hasse(p)) j["leq"].push_back({p.label(lo), p.label(hi)});
  return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
  auto vertices = field<std::vector<std::string>>(j, "vertices", "hypergraph");
  auto edges = j.contains("edges") ? field<std::vector<std::vector<std::string>>>(j, "edges", "hypergraph")
                                   : std::vector<std::vector<std::string>>{};
  return Hypergraph(std::move(vertices), edges);
}

Json to_json(const Hypergraph& h) {
  Json j;
  j["vertices"] = h.vertices();
  j["edges"] = h.edge_labels();
  return j;
}

Json to_json(const PosetProfile& profile) {
  Json j;
  j["size"] = profile.size;
  j["lattice"] = profile.is_lattice;
  j["meet_semilattice"] = profile.is_meet_semilattice;
  j["join_semilattice"] = profile.is_join_semilattice;
  j["distributive"] = profile.is_distributive;
  j["modular"] = profile.is_modular;
  j["boolean"] = profile.is_boolean;
  j["linear"] = profile.is_linear;
  j["atomic"] = profile.is_atomic;
  if (profile.failure_witness) {
    j["failure_witness"] = {{"law", profile.failure_witness->law}, {"elements", profile.failure_witness->elements}};
  } else {
    j["failure_witness"] = nullptr;
  }
  return j;
}

std::vector<std::string> constants_of(const Formula& f) {
  std::vector<std::string> out;
  for (const auto& g : subformulas(f)) {
    if (!g.is_atomic()) continue;
    for (const auto& t : g.terms())
      if (t.is_constant && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  }
  return out;
}

Json verdict_to_json(const FinStructure& m, const TvVerdict& verdict) {
  Json j;
  if (verdict.passed()) {
    j["outcome"] = "pass";
    j["candidate"] = m.labels(verdict.candidate);
    return j;
  }
  const auto& fail = *verdict.failure;
  j["outcome"] = "fail";
  j["formula"] = to_string(fail.formula);
  j["params"] = Json::array();
  for (auto e : fail.params) j["params"].push_back(m.label(e));
  j["witnesses"] = m.labels(fail.witnesses);
  j["witness_variable"] = fail.reading.witness_variable;
  j["parameter_variables"] = fail.reading.parameters;
  j["constants"] = Json::object();
  for (const auto& c : constants_of(fail.reading.matrix)) j["constants"][c] = m.label(m.constant(c));
  j["candidate"] = m.labels(verdict.candidate);
  return j;
}

}  // namespace mll
