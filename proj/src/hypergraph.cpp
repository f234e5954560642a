#include "mll/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "mll/error.hpp"

namespace mll {

using boost::multiprecision::cpp_int;

namespace {

void canonicalize(std::vector<Subset>& edges) {
  std::sort(edges.begin(), edges.end(), lex_less);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void require_tau(std::size_t tau) {
  if (tau == 0) throw PreconditionError("threshold must be at least 1");
}

void require_inside(const Hypergraph& h, Subset s, const char* what) {
  if (!s.subset_of(h.all())) throw PreconditionError(std::string(what) + " is not contained in the vertex set");
}

// Number of subsets of an m-element set with at least tau elements.
cpp_int large_subsets(std::size_t m, std::size_t tau) {
  cpp_int total = 0, binom = 1;
  for (std::size_t j = 0; j <= m; ++j) {
    if (j >= tau) total += binom;
    binom = binom * (m - j) / (j + 1);
  }
  return total;
}

}  // namespace

Hypergraph::Hypergraph(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& edges)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InputError("hypergraph vertices must be pairwise distinct");
  }
  if (vertices_.size() > kMaxCarrier) throw BoundError("hypergraph has more than 64 vertices");
  for (const auto& e : edges) {
    try {
      edges_.push_back(subset(e));
    } catch (const SymbolError& err) {
      throw InputError(std::string("edge ") + err.what());
    }
  }
  canonicalize(edges_);
}

Hypergraph Hypergraph::from_masks(std::vector<std::string> vertices, std::vector<Subset> edges) {
  Hypergraph h;
  h.vertices_ = std::move(vertices);
  h.edges_ = std::move(edges);
  canonicalize(h.edges_);
  return h;
}

bool Hypergraph::has_edge(Subset e) const { return std::binary_search(edges_.begin(), edges_.end(), e, lex_less); }

Subset Hypergraph::subset(const std::vector<std::string>& labels) const {
  Subset s;
  for (const auto& l : labels) {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), l);
    if (it == vertices_.end() || *it != l) throw SymbolError("unknown vertex '" + l + "'");
    s.insert(static_cast<std::size_t>(it - vertices_.begin()));
  }
  return s;
}

std::vector<std::string> Hypergraph::labels(Subset s) const {
  std::vector<std::string> out;
  for (auto i : s.indices()) out.push_back(vertices_.at(i));
  return out;
}

std::vector<std::vector<std::string>> Hypergraph::edge_labels() const {
  std::vector<std::vector<std::string>> out;
  for (auto e : edges_) out.push_back(labels(e));
  return out;
}

Hypergraph powerset_hypergraph(std::vector<std::string> vertices) {
  Hypergraph base(std::move(vertices), {});
  std::vector<Subset> edges;
  for_each_submask(base.all(), [&](Subset s) { edges.push_back(s); });
  return Hypergraph::from_masks(base.vertices(), std::move(edges));
}

Hypergraph complete_union(const std::vector<Hypergraph>& hs) {
  std::vector<std::string> vertices;
  for (const auto& h : hs) vertices.insert(vertices.end(), h.vertices().begin(), h.vertices().end());
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() > kMaxCarrier) throw BoundError("complete union has more than 64 vertices");
  const Hypergraph frame = Hypergraph::from_masks(vertices, {});

  std::set<std::uint64_t> acc{0};
  for (const auto& h : hs) {
    std::vector<Subset> mapped;
    for (const auto& e : h.edge_labels()) mapped.push_back(frame.subset(e));
    std::set<std::uint64_t> next;
    for (auto u : acc)
      for (auto z : mapped) next.insert(u | z.bits());
    acc = std::move(next);
  }
  std::vector<Subset> edges;
  for (auto e : acc) edges.emplace_back(e);
  return Hypergraph::from_masks(std::move(vertices), std::move(edges));
}

std::string to_string(UnionKind k) {
  switch (k) {
    case UnionKind::Disjoint:
      return "disjoint";
    case UnionKind::Chain:
      return "chain";
    case UnionKind::General:
      return "general";
  }
  return "general";
}

UnionKind union_kind(const std::vector<Hypergraph>& hs) {
  if (hs.empty()) throw PreconditionError("union kind needs at least one hypergraph");
  std::vector<std::set<std::string>> sets;
  for (const auto& h : hs) sets.emplace_back(h.vertices().begin(), h.vertices().end());
  auto included = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  bool disjoint = true, chain = true;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<std::string> common;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                            std::back_inserter(common));
      if (!common.empty()) disjoint = false;
      if (!included(sets[i], sets[j]) && !included(sets[j], sets[i])) chain = false;
    }
  }
  if (disjoint) return UnionKind::Disjoint;
  return chain ? UnionKind::Chain : UnionKind::General;
}

Hypergraph restrict(const Hypergraph& h, Subset a) {
  require_inside(h, a, "restriction set");
  std::vector<Subset> edges;
  for (auto z : h.edges()) edges.push_back(a & z);
  canonicalize(edges);
  // Reindex onto the vertices of A, which keeps their relative order.
  const auto idx = a.indices();
  std::vector<Subset> local;
  for (auto e : edges) {
    Subset s;
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (e.contains(idx[j])) s.insert(j);
    local.push_back(s);
  }
  return Hypergraph::from_masks(h.labels(a), std::move(local));
}

// Traces of the edges on A are subsets of A, so all large subsets occur iff
// the number of distinct large traces equals the number of large subsets.
bool is_h_free(const Hypergraph& h, Subset a, std::size_t tau) {
  require_tau(tau);
  require_inside(h, a, "set");
  std::unordered_set<std::uint64_t> traces;
  for (auto z : h.edges())
    if ((a & z).size() >= tau) traces.insert((a & z).bits());
  return cpp_int(traces.size()) == large_subsets(a.size(), tau);
}

bool are_h_independent(const Hypergraph& h, Subset a, Subset b, std::size_t tau) {
  require_tau(tau);
  require_inside(h, a, "first set");
  require_inside(h, b, "second set");
  std::set<std::pair<std::uint64_t, std::uint64_t>> traces;
  for (auto z : h.edges()) {
    if ((a & z).size() >= tau && (b & z).size() >= tau) traces.emplace((a & z).bits(), (b & z).bits());
  }
  return cpp_int(traces.size()) == large_subsets(a.size(), tau) * large_subsets(b.size(), tau);
}

bool check_decomposition(const Hypergraph& h, Subset a, Subset b, std::size_t tau) {
  require_tau(tau);
  require_inside(h, a, "first set");
  require_inside(h, b, "second set");
  if (a.intersects(b)) throw PreconditionError("decomposition needs disjoint sets");
  if (!are_h_independent(h, a, b, tau)) throw PreconditionError("decomposition needs independent sets");

  std::set<std::uint64_t> parts_a, parts_b;
  for (auto z : h.edges()) {
    parts_a.insert((a & z).bits());
    parts_b.insert((b & z).bits());
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> realized;
  for (auto z : h.edges()) {
    const Subset e = (a | b) & z;
    const Subset ea = e & a, eb = e & b;
    if ((ea | eb) != e || !parts_a.count(ea.bits()) || !parts_b.count(eb.bits())) return false;
    realized.emplace(ea.bits(), eb.bits());
  }
  for (auto pa : parts_a) {
    if (Subset(pa).size() < tau) continue;
    for (auto pb : parts_b)
      if (Subset(pb).size() >= tau && !realized.count({pa, pb})) return false;
  }
  return true;
}

FamilyDecomposition check_family_decomposition(const Hypergraph& h, const std::vector<Subset>& sets, std::size_t tau) {
  FamilyDecomposition out{true, sets.size() >= 3};
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!check_decomposition(h, sets[i], sets[j], tau)) out.holds = false;
  return out;
}

RestrictionProfile restriction_profile(const Hypergraph& h, Subset a, Subset acl0) {
  require_inside(h, a, "restriction set");
  require_inside(h, acl0, "algebraic closure set");
  RestrictionProfile p;
  p.count = restrict(h, a).edge_count();
  p.predicted = cpp_int(1) << static_cast<unsigned>((a - acl0).size());
  if (p.count != 0 && (p.count & (p.count - 1)) == 0) p.power_of_two = static_cast<std::size_t>(std::countr_zero(p.count));
  return p;
}

}  // namespace mll
