#include <doctest.h>

#include <algorithm>

#include "mll/error.hpp"
#include "mll/fixtures.hpp"
#include "mll/structure.hpp"
#include "support.hpp"

using namespace mll;

namespace {

std::vector<std::vector<std::string>> sorted_tuples(const FinStructure& m, const std::string& rel) {
  auto t = m.describe().relations.at(rel).tuples;
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("signature rejects bad names and arities") {
  Signature sig;
  sig.add_relation("R", 2);
  sig.add_constant("c");
  CHECK_THROWS_AS(sig.add_relation("R", 1), SymbolError);
  CHECK_THROWS_AS(sig.add_constant("R"), SymbolError);
  CHECK_THROWS_AS(sig.add_relation("c", 1), SymbolError);
  CHECK_THROWS_AS(sig.add_relation("S", 0), SymbolError);
  CHECK_THROWS_AS(sig.add_relation("2x", 1), SymbolError);
  CHECK_THROWS_AS(sig.add_constant("exists"), SymbolError);
  CHECK(sig.arity("R") == 2u);
  CHECK_FALSE(sig.arity("S").has_value());
}

TEST_CASE("structure validation") {
  StructureSpec s;
  CHECK_THROWS_AS(FinStructure{s}, InputError);

  s.universe = {"a", "a"};
  CHECK_THROWS_AS(FinStructure{s}, InputError);

  s.universe = {"a", "b"};
  s.relations["R"] = {2, {{"a", "z"}}};
  CHECK_THROWS_AS(FinStructure{s}, SymbolError);

  s.relations["R"] = {2, {{"a"}}};
  CHECK_THROWS_AS(FinStructure{s}, InputError);

  s.relations["R"] = {2, {{"a", "b"}}};
  s.constants["c"] = "q";
  CHECK_THROWS_AS(FinStructure{s}, SymbolError);

  s.constants["c"] = "b";
  FinStructure m(s);
  CHECK(m.size() == 2);
  CHECK(m.constant("c") == 1);
  const ElementId ab[] = {0, 1}, ba[] = {1, 0};
  CHECK(m.holds("R", ab));
  CHECK_FALSE(m.holds("R", ba));
  const ElementId one[] = {0};
  CHECK_THROWS_AS(m.holds("R", one), SymbolError);
  CHECK_THROWS_AS(m.holds("S", ab), SymbolError);

  StructureSpec big;
  big.universe = testing::labels(65);
  CHECK_THROWS_AS(FinStructure{big}, BoundError);
}

TEST_CASE("example 3 and 4 fixtures store both orientations") {
  const FinStructure m3(fixtures::example3());
  CHECK(sorted_tuples(m3, "R").size() == 8);
  const FinStructure m4(fixtures::example4());
  CHECK(sorted_tuples(m4, "R") ==
        std::vector<std::vector<std::string>>{{"a1", "a3"}, {"a2", "a3"}, {"a3", "a1"}, {"a3", "a2"}});
  CHECK(m4.labels(m4.constant_set()) == std::vector<std::string>{"a1", "a2"});
}

TEST_CASE("induced substructure") {
  const FinStructure m4(fixtures::example4());
  const std::string ab[] = {"a1", "a2"};
  const FinStructure sub = m4.induced(m4.subset(ab));
  CHECK(sub.universe() == std::vector<std::string>{"a1", "a2"});
  CHECK(sorted_tuples(sub, "R").empty());
  CHECK(sub.label(sub.constant("c2")) == "a2");

  CHECK(m4.induced(m4.everything()) == m4);

  const FinStructure m3(fixtures::example3());
  const std::string abc[] = {"a1", "a2", "a3"};
  CHECK(sorted_tuples(m3.induced(m3.subset(abc)), "R") ==
        std::vector<std::vector<std::string>>{{"a1", "a3"}, {"a2", "a3"}, {"a3", "a1"}, {"a3", "a2"}});

  CHECK_THROWS_AS(m4.induced(Subset{}), PreconditionError);
  const std::string a3[] = {"a1", "a3"};
  CHECK_THROWS_AS(m4.induced(m4.subset(a3)), PreconditionError);
  CHECK_THROWS_AS(m4.induced(Subset::single(7)), PreconditionError);
}

TEST_CASE("describe round-trips") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const FinStructure m(testing::random_structure(rng, 1 + rng() % 6, rng() % 3));
    CHECK(FinStructure(m.describe()) == m);
  }
}
