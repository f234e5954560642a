#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mll/formula.hpp"
#include "mll/hypergraph.hpp"
#include "mll/poset.hpp"
#include "mll/structure.hpp"
#include "mll/tv.hpp"

namespace mll {

using Json = nlohmann::ordered_json;

// Whole file as text. Throws InputError when it cannot be read.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Throws InputError on malformed JSON text.
Json parse_json(std::string_view text, std::string_view what);

// {"universe":[...],"relations":{"R":{"arity":2,"tuples":[[...]]}},"constants":{"c":"a"}}
StructureSpec structure_spec_from_json(const Json& j);
FinStructure structure_from_json(const Json& j);
Json to_json(const StructureSpec& spec);
Json to_json(const FinStructure& m);

// {"elements":[...],"leq":[[lo,hi],...]}; leq is closed on load. Written
// with the cover pairs only.
FinPoset poset_from_json(const Json& j);
Json to_json(const FinPoset& p);

// {"vertices":[...],"edges":[[...],...]}; extra keys are ignored on load.
Hypergraph hypergraph_from_json(const Json& j);
Json to_json(const Hypergraph& h);

Json to_json(const PosetProfile& profile);

// The verdict in structure labels. Constant symbols of the formula are
// listed with their interpretations under "constants".
Json verdict_to_json(const FinStructure& m, const TvVerdict& verdict);

// Constant symbols occurring in f, in order of first occurrence.
std::vector<std::string> constants_of(const Formula& f);

}  // namespace mll
