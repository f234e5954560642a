#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mll/subset.hpp"

namespace mll {

using ElementId = std::size_t;
using Tuple = std::vector<ElementId>;

// [A-Za-z_][A-Za-z0-9_]*, excluding the quantifier keywords.
bool is_identifier(std::string_view s);

// Relational signature with constants. Relation and constant names are disjoint.
class Signature {
 public:
  void add_relation(const std::string& name, std::size_t arity);
  void add_constant(const std::string& name);

  std::optional<std::size_t> arity(std::string_view relation) const;
  bool has_relation(std::string_view name) const { return relations_.find(name) != relations_.end(); }
  bool has_constant(std::string_view name) const { return constants_.find(name) != constants_.end(); }

  const std::map<std::string, std::size_t, std::less<>>& relations() const { return relations_; }
  const std::set<std::string, std::less<>>& constants() const { return constants_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, std::size_t, std::less<>> relations_;
  std::set<std::string, std::less<>> constants_;
};

// Label-level description of a structure; the shape of the structure JSON file.
struct StructureSpec {
  struct Relation {
    std::size_t arity = 0;
    std::vector<std::vector<std::string>> tuples;
  };
  std::vector<std::string> universe;
  std::map<std::string, Relation> relations;
  std::map<std::string, std::string> constants;
};

// Finite structure over a relational signature with constants. Elements are
// addressed by their position in the universe; labels are kept for I/O.
// Immutable once constructed.
class FinStructure {
  struct Table {
    std::size_t arity = 0;
    std::vector<bool> bits;  // row-major over universe^arity
  };

 public:
  explicit FinStructure(const StructureSpec& spec);

  // A relation resolved once by name, for repeated lookups. Valid while the
  // structure lives; arguments are not checked.
  class RelationRef {
   public:
    std::size_t arity() const { return table_->arity; }
    bool holds(std::span<const ElementId> args) const {
      std::size_t off = 0;
      for (ElementId e : args) off = off * n_ + e;
      return table_->bits[off];
    }

   private:
    friend class FinStructure;
    RelationRef(const Table* table, std::size_t n) : table_(table), n_(n) {}
    const Table* table_;
    std::size_t n_;
  };

  const Signature& signature() const { return signature_; }
  std::size_t size() const { return universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::string& label(ElementId e) const { return universe_.at(e); }

  std::optional<ElementId> find(std::string_view label) const;
  // Throws SymbolError for an unknown label.
  ElementId element(std::string_view label) const;

  // Throws SymbolError if the relation is absent or the arity differs.
  bool holds(std::string_view relation, std::span<const ElementId> args) const;
  // Throws SymbolError if the relation is absent.
  RelationRef relation(std::string_view name) const { return RelationRef(&table(name), size()); }
  ElementId constant(std::string_view name) const;
  // Interpretations of all constants, in signature order.
  const std::vector<ElementId>& constant_values() const { return constant_values_; }
  Subset constant_set() const;

  Subset subset(std::span<const std::string> labels) const;
  std::vector<std::string> labels(Subset s) const;
  Subset everything() const { return Subset::full(size()); }

  // Universe S; each relation restricted to tuples inside S; constants kept.
  // Throws PreconditionError if S is empty or misses a constant.
  FinStructure induced(Subset s) const;

  StructureSpec describe() const;

  friend bool operator==(const FinStructure& a, const FinStructure& b);

 private:
  const Table& table(std::string_view relation) const;
  std::size_t offset(std::span<const ElementId> args) const;

  Signature signature_;
  std::vector<std::string> universe_;
  std::map<std::string, Table, std::less<>> tables_;
  std::map<std::string, ElementId, std::less<>> constants_;
  std::vector<ElementId> constant_values_;
};

}  // namespace mll
