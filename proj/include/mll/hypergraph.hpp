#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mll/subset.hpp"

namespace mll {

// Vertex set paired with a family of vertex subsets. Vertices are kept sorted
// by label and indexed in that order, so the edge family sorted by lex_less is
// the lexicographic order on sorted label lists.
class Hypergraph {
 public:
  // The empty hypergraph: no vertices, no edges.
  Hypergraph() = default;
  // Throws InputError on duplicate vertices, more than 64 of them, or an
  // edge mentioning an unknown vertex. Duplicate edges collapse.
  Hypergraph(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& edges);
  // `vertices` must already be sorted and distinct.
  static Hypergraph from_masks(std::vector<std::string> vertices, std::vector<Subset> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Subset>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Subset all() const { return Subset::full(vertices_.size()); }
  bool has_edge(Subset e) const;

  // Throws SymbolError for an unknown label.
  Subset subset(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels(Subset s) const;
  std::vector<std::vector<std::string>> edge_labels() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Subset> edges_;
};

// Full powerset of the given vertices.
Hypergraph powerset_hypergraph(std::vector<std::string> vertices);

// Edges are the unions of one edge from each input. An empty sequence gives
// the identity ({}, {{}}).
Hypergraph complete_union(const std::vector<Hypergraph>& hs);

enum class UnionKind { Disjoint, Chain, General };
std::string to_string(UnionKind k);
// Disjoint wins when both descriptions apply. Throws PreconditionError for an
// empty sequence.
UnionKind union_kind(const std::vector<Hypergraph>& hs);

// ({A}, {A & Z : Z an edge}). Throws PreconditionError unless A is inside the
// vertex set.
Hypergraph restrict(const Hypergraph& h, Subset a);

// Every A' of A with |A'| >= tau is A & Z for some edge Z. Tau must be at
// least 1 (PreconditionError otherwise).
bool is_h_free(const Hypergraph& h, Subset a, std::size_t tau);

// Every pair A' of A, B' of B with both sizes >= tau is cut out by one edge:
// A' = A & Z and B' = B & Z.
bool are_h_independent(const Hypergraph& h, Subset a, Subset b, std::size_t tau);

// Restriction to A | B is the disjoint complete union of the restrictions to
// A and to B, up to parts smaller than tau: every edge splits into edges of
// the two restrictions, and every pair of large parts occurs. Throws
// PreconditionError if A, B intersect or are not independent.
bool check_decomposition(const Hypergraph& h, Subset a, Subset b, std::size_t tau);

struct FamilyDecomposition {
  bool holds = false;
  // Independence is only checked pair by pair; set for families of three or
  // more sets, where joint independence is not established.
  bool pairwise_only = false;
};
// check_decomposition on every pair of the family.
FamilyDecomposition check_family_decomposition(const Hypergraph& h, const std::vector<Subset>& sets, std::size_t tau);

struct RestrictionProfile {
  std::size_t count = 0;
  boost::multiprecision::cpp_int predicted;  // 2^|A \ acl0|
  std::optional<std::size_t> power_of_two;   // n when count = 2^n
};
RestrictionProfile restriction_profile(const Hypergraph& h, Subset a, Subset acl0);

}  // namespace mll
