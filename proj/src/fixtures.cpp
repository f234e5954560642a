#include "mll/fixtures.hpp"

#include <algorithm>
#include <utility>

#include "mll/error.hpp"
#include "mll/io.hpp"

namespace mll::fixtures {

namespace {

void add_edge(StructureSpec::Relation& r, const std::string& a, const std::string& b) {
  r.tuples.push_back({a, b});
  r.tuples.push_back({b, a});
}

constexpr std::pair<std::size_t, std::size_t> kFigures[] = {{1, 0}, {0, 1}, {2, 0}, {3, 0}, {0, 2},
                                                           {0, 3}, {1, 1}, {2, 1}, {1, 2}};

}  // namespace

StructureSpec example3() {
  StructureSpec s;
  s.universe = {"a1", "a2", "a3", "a4"};
  auto& r = s.relations["R"];
  r.arity = 2;
  add_edge(r, "a1", "a3");
  add_edge(r, "a1", "a4");
  add_edge(r, "a2", "a3");
  add_edge(r, "a2", "a4");
  s.constants = {{"c1", "a1"}, {"c2", "a2"}};
  return s;
}

StructureSpec example4() {
  StructureSpec s;
  s.universe = {"a1", "a2", "a3"};
  auto& r = s.relations["R"];
  r.arity = 2;
  add_edge(r, "a1", "a3");
  add_edge(r, "a2", "a3");
  s.constants = {{"c1", "a1"}, {"c2", "a2"}};
  return s;
}

StructureSpec example1_surrogate(std::size_t unnamed) {
  StructureSpec s;
  auto& p = s.relations["P"];
  p.arity = 1;
  for (int i = 1; i <= 3; ++i) {
    s.universe.push_back("k" + std::to_string(i));
    s.constants["c" + std::to_string(i)] = "k" + std::to_string(i);
  }
  for (std::size_t i = 1; i <= unnamed; ++i) s.universe.push_back("b" + std::to_string(i));
  for (const auto& e : s.universe) p.tuples.push_back({e});
  return s;
}

std::vector<Formula> rank1_family(const Signature& sig) {
  std::vector<Term> terms{Term::var("x"), Term::var("y")};
  for (const auto& c : sig.constants()) terms.push_back(Term::constant(c));
  std::vector<Formula> atoms;
  for (const auto& [rel, arity] : sig.relations()) {
    if (arity != 1) continue;
    for (const auto& t : terms) atoms.push_back(Formula::atom(rel, {t}));
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) atoms.push_back(Formula::equality(terms[i], terms[j]));

  std::vector<Formula> out;
  for (const auto& a : atoms) {
    for (const auto& lit : {a, Formula::negation(a)}) {
      out.push_back(lit);
      const auto free = free_variables(lit);
      if (std::find(free.begin(), free.end(), "x") != free.end()) out.push_back(Formula::exists("x", lit));
    }
  }
  return out;
}

FinPoset pentagon() {
  return FinPoset({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}});
}

TypeSpectrum figure_spectrum(int n) {
  if (n < 1 || n > 9) throw InputError("figures are numbered 1 to 9");
  return TypeSpectrum{kFigures[n - 1].first, kFigures[n - 1].second};
}

std::vector<std::string> names() {
  std::vector<std::string> out{"example1-surrogate", "example3", "example4", "pentagon", "phi"};
  for (int i = 1; i <= 9; ++i) out.push_back("fig" + std::to_string(i));
  return out;
}

std::map<std::string, std::string> render(const std::string& name) {
  std::map<std::string, std::string> files;
  auto dump = [](const Json& j) { return j.dump(2) + "\n"; };
  const bool all = name == "all";
  bool known = all;
  if (all || name == "example1-surrogate") {
    files["example1-surrogate.json"] = dump(to_json(example1_surrogate(2)));
    known = true;
  }
  if (all || name == "example3") {
    files["example3.json"] = dump(to_json(example3()));
    known = true;
  }
  if (all || name == "example4") {
    files["example4.json"] = dump(to_json(example4()));
    known = true;
  }
  if (all || name == "pentagon") {
    files["pentagon.json"] = dump(to_json(pentagon()));
    known = true;
  }
  if (all || name == "phi") {
    files["phi.fml"] = std::string("# witnesses common to both named vertices\n") + kPhi + "\n";
    known = true;
  }
  for (int i = 1; i <= 9; ++i) {
    const std::string fig = "fig" + std::to_string(i);
    if (all || name == fig) {
      files[fig + ".json"] = dump(to_json(lrk_lattice(figure_spectrum(i))));
      known = true;
    }
  }
  if (!known) throw InputError("unknown fixture '" + name + "'");
  return files;
}

}  // namespace mll::fixtures
