#include "mll/structure.hpp"

#include <algorithm>
#include <cctype>

#include "mll/error.hpp"

namespace mll {

namespace {

constexpr std::size_t kMaxTableCells = std::size_t{1} << 26;

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || s == "exists" || s == "forall") return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

void Signature::add_relation(const std::string& name, std::size_t arity) {
  if (!is_identifier(name)) throw SymbolError("invalid relation name '" + name + "'");
  if (arity == 0) throw SymbolError("relation '" + name + "' must have arity >= 1");
  if (has_constant(name) || has_relation(name)) throw SymbolError("duplicate symbol '" + name + "'");
  relations_.emplace(name, arity);
}

void Signature::add_constant(const std::string& name) {
  if (!is_identifier(name)) throw SymbolError("invalid constant name '" + name + "'");
  if (has_constant(name) || has_relation(name)) throw SymbolError("duplicate symbol '" + name + "'");
  constants_.insert(name);
}

std::optional<std::size_t> Signature::arity(std::string_view relation) const {
  auto it = relations_.find(relation);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

FinStructure::FinStructure(const StructureSpec& spec) : universe_(spec.universe) {
  if (universe_.empty()) throw InputError("universe must be nonempty");
  if (universe_.size() > kMaxCarrier) {
    throw BoundError("universe has " + std::to_string(universe_.size()) + " elements; at most " +
                     std::to_string(kMaxCarrier) + " are supported");
  }
  {
    auto sorted = universe_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("universe labels must be pairwise distinct");
    }
  }
  for (const auto& [name, rel] : spec.relations) {
    signature_.add_relation(name, rel.arity);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < rel.arity; ++i) {
      cells *= universe_.size();
      if (cells > kMaxTableCells) throw BoundError("relation '" + name + "' is too large to tabulate");
    }
    Table table{rel.arity, std::vector<bool>(cells, false)};
    for (const auto& tuple : rel.tuples) {
      if (tuple.size() != rel.arity) {
        throw InputError("tuple of length " + std::to_string(tuple.size()) + " in relation '" + name + "' of arity " +
                         std::to_string(rel.arity));
      }
      std::size_t off = 0;
      for (const auto& lab : tuple) off = off * universe_.size() + element(lab);
      table.bits[off] = true;
    }
    tables_.emplace(name, std::move(table));
  }
  for (const auto& [name, lab] : spec.constants) {
    signature_.add_constant(name);
    constants_.emplace(name, element(lab));
  }
  for (const auto& name : signature_.constants()) constant_values_.push_back(constants_.at(name));
}

std::optional<ElementId> FinStructure::find(std::string_view label) const {
  auto it = std::find(universe_.begin(), universe_.end(), label);
  if (it == universe_.end()) return std::nullopt;
  return static_cast<ElementId>(it - universe_.begin());
}

ElementId FinStructure::element(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw SymbolError("unknown element '" + std::string(label) + "'");
}

const FinStructure::Table& FinStructure::table(std::string_view relation) const {
  auto it = tables_.find(relation);
  if (it == tables_.end()) throw SymbolError("relation '" + std::string(relation) + "' is not in the signature");
  return it->second;
}

std::size_t FinStructure::offset(std::span<const ElementId> args) const {
  std::size_t off = 0;
  for (ElementId e : args) off = off * universe_.size() + e;
  return off;
}

bool FinStructure::holds(std::string_view relation, std::span<const ElementId> args) const {
  const auto& t = table(relation);
  if (args.size() != t.arity) {
    throw SymbolError("relation '" + std::string(relation) + "' has arity " + std::to_string(t.arity) + ", got " +
                      std::to_string(args.size()) + " arguments");
  }
  return t.bits[offset(args)];
}

ElementId FinStructure::constant(std::string_view name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw SymbolError("constant '" + std::string(name) + "' is not in the signature");
  return it->second;
}

Subset FinStructure::constant_set() const {
  Subset s;
  for (ElementId e : constant_values_) s.insert(e);
  return s;
}

Subset FinStructure::subset(std::span<const std::string> labels) const {
  Subset s;
  for (const auto& lab : labels) s.insert(element(lab));
  return s;
}

std::vector<std::string> FinStructure::labels(Subset s) const {
  std::vector<std::string> out;
  for (auto i : s.indices()) out.push_back(label(i));
  return out;
}

FinStructure FinStructure::induced(Subset s) const {
  if (s.empty()) throw PreconditionError("induced substructure needs a nonempty subset");
  if (!s.subset_of(everything())) throw PreconditionError("subset is not contained in the universe");
  if (!constant_set().subset_of(s)) throw PreconditionError("subset must contain every constant interpretation");
  StructureSpec full = describe();
  StructureSpec out;
  out.universe = labels(s);
  out.constants = full.constants;
  for (auto& [name, rel] : full.relations) {
    StructureSpec::Relation r{rel.arity, {}};
    for (auto& tuple : rel.tuples) {
      bool inside = std::all_of(tuple.begin(), tuple.end(), [&](const std::string& lab) { return s.contains(element(lab)); });
      if (inside) r.tuples.push_back(std::move(tuple));
    }
    out.relations.emplace(name, std::move(r));
  }
  return FinStructure(out);
}

StructureSpec FinStructure::describe() const {
  StructureSpec out;
  out.universe = universe_;
  const std::size_t n = universe_.size();
  for (const auto& [name, t] : tables_) {
    StructureSpec::Relation rel{t.arity, {}};
    for (std::size_t off = 0; off < t.bits.size(); ++off) {
      if (!t.bits[off]) continue;
      std::vector<std::string> tuple(t.arity);
      std::size_t rest = off;
      for (std::size_t i = t.arity; i-- > 0;) {
        tuple[i] = universe_[rest % n];
        rest /= n;
      }
      rel.tuples.push_back(std::move(tuple));
    }
    out.relations.emplace(name, std::move(rel));
  }
  for (const auto& [name, e] : constants_) out.constants.emplace(name, universe_[e]);
  return out;
}

bool operator==(const FinStructure& a, const FinStructure& b) {
  if (a.signature_ != b.signature_ || a.universe_ != b.universe_ || a.constants_ != b.constants_) return false;
  for (const auto& [name, t] : a.tables_) {
    const auto& u = b.tables_.at(name);
    if (t.arity != u.arity || t.bits != u.bits) return false;
  }
  return true;
}

}  // namespace mll
