#include <doctest.h>

#include <random>
#include <set>

#include "mll/error.hpp"
#include "mll/fixtures.hpp"
#include "mll/hypergraph.hpp"
#include "mll/tv.hpp"

using namespace mll;

namespace {

using Edges = std::vector<std::vector<std::string>>;

Hypergraph hg(std::vector<std::string> v, const Edges& e) { return Hypergraph(std::move(v), e); }

std::vector<std::string> range(int lo, int hi) {
  std::vector<std::string> out;
  for (int i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
  return out;
}

// Direct reading of the definitions, over explicit subset enumeration.
bool free_oracle(const Hypergraph& h, Subset a, std::size_t tau) {
  bool ok = true;
  for_each_submask(a, [&](Subset sub) {
    if (sub.size() < tau) return;
    bool found = false;
    for (auto z : h.edges()) found = found || (a & z) == sub;
    ok = ok && found;
  });
  return ok;
}

bool independent_oracle(const Hypergraph& h, Subset a, Subset b, std::size_t tau) {
  bool ok = true;
  for_each_submask(a, [&](Subset sa) {
    if (sa.size() < tau) return;
    for_each_submask(b, [&](Subset sb) {
      if (sb.size() < tau) return;
      bool found = false;
      for (auto z : h.edges()) found = found || ((a & z) == sa && (b & z) == sb);
      ok = ok && found;
    });
  });
  return ok;
}

Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n) {
  std::vector<Subset> edges;
  const std::size_t count = rng() % (std::size_t{1} << n) + 1;
  for (std::size_t i = 0; i < count; ++i) edges.emplace_back(rng() & Subset::full(n).bits());
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
  return Hypergraph::from_masks(v, edges);
}

}  // namespace

TEST_CASE("canonical form") {
  const Hypergraph h = hg({"2", "1"}, {{"2", "1"}, {"1"}, {"1", "2"}});
  CHECK(h.vertices() == std::vector<std::string>{"1", "2"});
  CHECK(h.edge_labels() == Edges{{"1"}, {"1", "2"}});
  CHECK_THROWS_AS(hg({"1", "1"}, {}), InputError);
  CHECK_THROWS_AS(hg({"1"}, {{"3"}}), InputError);
}

TEST_CASE("complete union") {
  const Hypergraph h = hg({"1", "2"}, {{"1"}, {"2"}});
  CHECK(complete_union({h}) == h);

  const auto u = complete_union({hg({"1"}, {{"1"}}), hg({"2"}, {{"2"}, {}})});
  CHECK(u.edge_labels() == Edges{{"1"}, {"1", "2"}});

  CHECK(complete_union({h, h}).edge_labels() == Edges{{"1"}, {"1", "2"}, {"2"}});

  const Hypergraph identity = complete_union({});
  CHECK(identity.vertices().empty());
  CHECK(identity.edge_labels() == Edges{{}});
  CHECK(complete_union({identity, h}) == h);
}

TEST_CASE("complete union is associative") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    auto a = hg({"1", "2"}, {}), b = a, c = a;
    auto fill = [&](Hypergraph& x, std::vector<std::string> v) {
      std::vector<Subset> e;
      for (int k = 0; k < 3; ++k) e.emplace_back(rng() & Subset::full(v.size()).bits());
      x = Hypergraph::from_masks(v, e);
    };
    fill(a, {"1", "2", "3"});
    fill(b, {"3", "4"});
    fill(c, {"1", "5"});
    CHECK(complete_union({complete_union({a, b}), c}) == complete_union({a, complete_union({b, c})}));
    CHECK(complete_union({a, b, c}) == complete_union({a, complete_union({b, c})}));
  }
}

TEST_CASE("union kinds") {
  const Hypergraph one = hg({"1"}, {}), two = hg({"2"}, {}), onetwo = hg({"1", "2"}, {}), twothree = hg({"2", "3"}, {});
  CHECK(union_kind({one, two}) == UnionKind::Disjoint);
  CHECK(union_kind({one, onetwo}) == UnionKind::Chain);
  CHECK(union_kind({onetwo, twothree}) == UnionKind::General);
  CHECK(union_kind({one}) == UnionKind::Disjoint);
  CHECK(union_kind({Hypergraph(), one}) == UnionKind::Disjoint);
  CHECK_THROWS_AS(union_kind({}), PreconditionError);
}

TEST_CASE("restriction") {
  const Hypergraph h = hg(range(1, 4), {{"1", "2", "3"}, {"1", "4"}});
  CHECK(restrict(h, h.all()) == h);
  const auto r = restrict(h, h.subset({"1", "2"}));
  CHECK(r.vertices() == std::vector<std::string>{"1", "2"});
  CHECK(r.edge_labels() == Edges{{"1"}, {"1", "2"}});
  CHECK(restrict(h, Subset{}).edge_labels() == Edges{{}});
  CHECK_THROWS_AS(restrict(h, Subset::single(9)), PreconditionError);
}

TEST_CASE("restriction composes and never adds edges") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Hypergraph h = random_hypergraph(rng, 1 + rng() % 6);
    const Subset a(rng() & h.all().bits());
    const Hypergraph ra = restrict(h, a);
    const Subset b_local(rng() & ra.all().bits());
    const Subset b_global = h.subset(ra.labels(b_local));
    CHECK(restrict(ra, b_local) == restrict(h, a & b_global));
    CHECK(ra.edge_count() <= h.edge_count());
  }
}

TEST_CASE("h-free") {
  const Hypergraph full = powerset_hypergraph(range(1, 4));
  CHECK(is_h_free(full, full.subset({"1", "2", "3"}), 1));
  CHECK(is_h_free(full, full.all(), 2));
  const Hypergraph single = hg(range(1, 4), {{"1", "2", "3", "4"}});
  CHECK_FALSE(is_h_free(single, single.subset({"1", "2", "3"}), 2));
  CHECK(is_h_free(single, single.subset({"1"}), 2));
  CHECK_THROWS_AS(is_h_free(single, single.all(), 0), PreconditionError);
}

TEST_CASE("h-independence") {
  const Hypergraph full = powerset_hypergraph(range(1, 6));
  CHECK(are_h_independent(full, full.subset({"1", "2"}), full.subset({"3", "4", "5"}), 1));
  const Subset a = full.subset({"1", "2", "3"});
  CHECK_FALSE(are_h_independent(full, a, a, 2));

  const Hypergraph u = complete_union({powerset_hypergraph(range(1, 4)), powerset_hypergraph(range(5, 8))});
  CHECK(are_h_independent(u, u.subset(range(1, 4)), u.subset(range(5, 8)), 2));
}

TEST_CASE("counting shortcuts agree with direct enumeration") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const Hypergraph h = random_hypergraph(rng, 1 + rng() % 6);
    const Subset a(rng() & h.all().bits()), b(rng() & h.all().bits());
    const std::size_t tau = 1 + rng() % 3;
    CHECK(is_h_free(h, a, tau) == free_oracle(h, a, tau));
    CHECK(are_h_independent(h, a, b, tau) == independent_oracle(h, a, b, tau));
  }
}

TEST_CASE("independence forces disjointness") {
  std::mt19937_64 rng(5);
  int independent = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 2 + rng() % 7;
    // Mostly dense families so that independence actually occurs.
    std::vector<Subset> edges;
    for_each_submask(Subset::full(n), [&](Subset s) {
      if (rng() % 8 != 0) edges.push_back(s);
    });
    std::vector<std::string> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back("v" + std::to_string(k));
    const Hypergraph h = Hypergraph::from_masks(v, edges);
    const Subset a(rng() & h.all().bits()), b(rng() & h.all().bits());
    if (!are_h_independent(h, a, b, 2)) continue;
    ++independent;
    if (a.size() >= 2 && b.size() >= 3) CHECK_FALSE(a.intersects(b));
  }
  CHECK(independent > 50);
}

TEST_CASE("decomposition") {
  const Hypergraph u = complete_union({powerset_hypergraph(range(1, 4)), powerset_hypergraph(range(5, 8))});
  CHECK(check_decomposition(u, u.subset(range(1, 4)), u.subset(range(5, 8)), 2));
  CHECK(check_decomposition(u, Subset{}, u.subset(range(5, 8)), 2));

  const Hypergraph bad = hg(range(1, 4), {{"1", "3"}, {"2", "4"}});
  CHECK_THROWS_AS(check_decomposition(bad, bad.subset({"1", "2"}), bad.subset({"3", "4"}), 1), PreconditionError);
  CHECK_THROWS_AS(check_decomposition(u, u.subset({"1", "2"}), u.subset({"2", "3"}), 2), PreconditionError);
}

TEST_CASE("decomposition of constructed disjoint unions") {
  for (int k = 2; k <= 3; ++k) {
    for (int size = 1; size <= 4; ++size) {
      std::vector<Hypergraph> parts;
      std::vector<std::vector<std::string>> vertex_sets;
      for (int c = 0; c < k; ++c) {
        vertex_sets.push_back(range(c * 10 + 1, c * 10 + size));
        parts.push_back(powerset_hypergraph(vertex_sets.back()));
      }
      const Hypergraph u = complete_union(parts);
      CHECK(union_kind(parts) == UnionKind::Disjoint);
      std::vector<Subset> sets;
      for (const auto& vs : vertex_sets) sets.push_back(u.subset(vs));
      const auto d = check_family_decomposition(u, sets, 2);
      CHECK(d.holds);
      CHECK(d.pairwise_only == (k >= 3));
    }
  }
}

TEST_CASE("restriction profile") {
  const FinStructure m(fixtures::example1_surrogate(2));
  const auto sets = enumerate_substructural(m, FormulaFamily::closure(fixtures::rank1_family(m.signature())));
  std::vector<std::vector<std::string>> edges;
  for (auto s : sets) edges.push_back(m.labels(s));
  const Hypergraph h(m.universe(), edges);
  const auto p = restriction_profile(h, h.all(), h.subset(m.labels(m.constant_set())));
  CHECK(p.count == 4);
  CHECK(p.predicted == 4);
  REQUIRE(p.power_of_two);
  CHECK(*p.power_of_two == 2);

  const Hypergraph one = hg(range(1, 3), {range(1, 3)});
  CHECK(restriction_profile(one, one.subset({"1", "2"}), Subset{}).count == 1);
  CHECK(*restriction_profile(one, one.subset({"1", "2"}), Subset{}).power_of_two == 0);

  const Hypergraph chainy = hg(range(1, 3), {{"1"}, {"1", "2"}, {"1", "2", "3"}});
  const auto q = restriction_profile(chainy, chainy.all(), Subset{});
  CHECK(q.count == 3);
  CHECK(q.predicted == 8);
  CHECK_FALSE(q.power_of_two);
}
