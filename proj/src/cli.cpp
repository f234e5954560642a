#include "mll/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>

#include "mll/ef.hpp"
#include "mll/error.hpp"
#include "mll/eval.hpp"
#include "mll/fixtures.hpp"
#include "mll/hypergraph.hpp"
#include "mll/io.hpp"
#include "mll/lrk.hpp"
#include "mll/poset.hpp"
#include "mll/tv.hpp"

namespace mll::cli {

namespace {

using boost::multiprecision::cpp_int;

// Thrown for bad flag values found after parsing (exit status 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

Json exact(const cpp_int& x) {
  if (x <= std::numeric_limits<std::uint64_t>::max()) return Json(x.convert_to<std::uint64_t>());
  return Json(x.str());
}

Json load_json(const std::string& path) { return parse_json(read_text_file(path), path); }
FinStructure load_structure(const std::string& path) { return structure_from_json(load_json(path)); }
FinPoset load_poset(const std::string& path) { return poset_from_json(load_json(path)); }
Hypergraph load_hypergraph(const std::string& path) { return hypergraph_from_json(load_json(path)); }

std::size_t max_universe() {
  const char* env = std::getenv("MLL_MAX_UNIVERSE");
  if (env == nullptr || *env == '\0') return kDefaultMaxUniverse;
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(env, &pos);
    if (pos != std::string(env).size() || v == 0 || v > kMaxCarrier) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError("MLL_MAX_UNIVERSE must be an integer between 1 and 64");
  }
}

struct FamilyArgs {
  std::vector<std::string> files;
  std::vector<std::string> texts;
  bool closure = false;

  void attach(CLI::App* app) {
    app->add_option("--formulas", files, "Formula file (.fml), one formula per line");
    app->add_option("--formula", texts, "A single formula");
    app->add_flag("--closure", closure, "Add every subformula of the given formulas");
  }

  FormulaFamily load(const Signature& sig) const {
    std::vector<Formula> fs;
    for (const auto& f : files) {
      auto more = parse_formula_lines(read_text_file(f), sig);
      fs.insert(fs.end(), more.begin(), more.end());
    }
    for (const auto& t : texts) fs.push_back(parse_formula(t, sig));
    return closure ? FormulaFamily::closure(fs) : FormulaFamily(fs);
  }
};

void write_dot(const std::string& path, const FinPoset& p) {
  if (!path.empty()) write_text_file(path, to_dot(p));
}

Json sets_json(const FinStructure& m, const std::vector<Subset>& sets) {
  Json j = Json::array();
  for (auto s : sets) j.push_back(m.labels(s));
  return j;
}

Json pair_json(const FinStructure& m, const std::optional<std::pair<Subset, Subset>>& w) {
  if (!w) return nullptr;
  return Json::array({m.labels(w->first), m.labels(w->second)});
}

Json forbidden_json(const FinPoset& p, const std::optional<ForbiddenSublattice>& f) {
  if (!f) return nullptr;
  Json j;
  j["shape"] = f->shape == ForbiddenSublattice::Shape::N5 ? "N5" : "M3";
  j["bottom"] = p.label(f->bottom);
  j["top"] = p.label(f->top);
  j["middle"] = Json::array();
  for (auto x : f->middle) j["middle"].push_back(p.label(x));
  return j;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Finite model theory and lattice workbench", "mll"};
    app.require_subcommand(1);
    build_lrk(app);
    build_lattice(app);
    build_tv(app);
    build_hyper(app);
    build_ef(app);
    build_eval(app);
    build_fixtures(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "mll: " << e.what() << "\n";
      return kUsage;
    }
    try {
      return action_();
    } catch (const UsageError& e) {
      err_ << "mll: " << e.what() << "\n";
      return kUsage;
    } catch (const InputError& e) {
      err_ << "mll: " << e.what() << "\n";
      return kBadInput;
    } catch (const std::exception& e) {
      err_ << "mll: " << e.what() << "\n";
      return kBadInput;
    }
  }

 private:
  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  template <typename Fn>
  void on(CLI::App* sub, Fn fn) {
    sub->callback([this, fn] { action_ = fn; });
  }

  // lrk ------------------------------------------------------------------

  void build_lrk(CLI::App& app) {
    auto* lrk = app.add_subcommand("lrk", "Rudin-Keisler lattices LRK(k,s)");
    lrk->require_subcommand(1);

    auto* gen = lrk->add_subcommand("gen", "Emit the lattice as poset JSON");
    gen->add_option("--k", k_, "Number of p-types")->required();
    gen->add_option("--s", s_, "Number of q-types")->required();
    gen->add_option("--dot", dot_, "Also write the Hasse diagram to PATH");
    on(gen, [this] {
      const TypeSpectrum spec{k_, s_};
      const FinPoset p = lrk_lattice(spec);
      write_dot(dot_, p);
      const auto profile = classify(p);
      err_ << "LRK(" << k_ << "," << s_ << "): " << p.size() << " elements, "
           << (profile.is_lattice ? "lattice" : "not a lattice") << "\n";
      emit(to_json(p));
      return kOk;
    });

    auto* cls = lrk->add_subcommand("classify", "Closed-form classification, checked against the built lattice");
    cls->add_option("--k", k_, "Number of p-types")->required();
    cls->add_option("--s", s_, "Number of q-types")->required();
    on(cls, [this] {
      const TypeSpectrum spec{k_, s_};
      const LrkClass c = classify_lrk(spec);
      Json j;
      j["k"] = k_;
      j["s"] = s_;
      j["size"] = exact(c.size);
      j["lattice"] = c.is_lattice;
      j["distributive"] = c.is_distributive;
      j["boolean"] = c.is_boolean;
      j["linear"] = c.is_linear;
      bool agrees = true;
      if (c.size <= kDefaultPosetBound) {
        const auto p = classify(lrk_lattice(spec));
        agrees = p.is_lattice == c.is_lattice && p.is_distributive == c.is_distributive &&
                 p.is_boolean == c.is_boolean && p.is_linear == c.is_linear && p.size == c.size;
        j["verified"] = agrees;
      } else {
        j["verified"] = nullptr;
      }
      emit(j);
      return agrees ? kOk : kPropertyFails;
    });

    auto* count = lrk->add_subcommand("count", "Number of countable models, 3^k * 6^s");
    count->add_option("--k", k_, "Number of p-types")->required();
    count->add_option("--s", s_, "Number of q-types")->required();
    on(count, [this] {
      const TypeSpectrum spec{k_, s_};
      Json j;
      j["k"] = k_;
      j["s"] = s_;
      j["count"] = exact(count_countable_models(spec));
      j["types"] = Json::array();
      for (const auto& [name, label] : type_spectrum_labels(spec)) j["types"].push_back({{"type", name}, {"spectrum", label}});
      emit(j);
      return kOk;
    });

    auto* uni = lrk->add_subcommand("union", "Disjoint union of two spectra versus the lattice product");
    uni->add_option("--k1", k1_)->required();
    uni->add_option("--s1", s1_)->required();
    uni->add_option("--k2", k2_)->required();
    uni->add_option("--s2", s2_)->required();
    on(uni, [this] {
      const auto u = disjoint_union(TypeSpectrum{k1_, s1_}, TypeSpectrum{k2_, s2_});
      Json j;
      j["k"] = u.combined.k;
      j["s"] = u.combined.s;
      j["product_isomorphic"] = u.product_isomorphic;
      j["linear"] = u.linear;
      j["linear_by_factors"] = u.linear_by_factors;
      emit(j);
      return u.product_isomorphic ? kOk : kPropertyFails;
    });
  }

  // lattice --------------------------------------------------------------

  void build_lattice(CLI::App& app) {
    auto* lat = app.add_subcommand("lattice", "Finite posets and lattices");
    lat->require_subcommand(1);

    auto* cls = lat->add_subcommand("classify", "Lattice laws of a poset file");
    cls->add_option("file", file1_, "Poset JSON")->required();
    cls->add_option("--dot", dot_, "Also write the Hasse diagram to PATH");
    on(cls, [this] {
      const FinPoset p = load_poset(file1_);
      write_dot(dot_, p);
      const auto profile = classify(p);
      Json j = to_json(profile);
      if (profile.is_lattice) j["forbidden_sublattice"] = forbidden_json(p, find_forbidden_sublattice(p));
      emit(j);
      return profile.is_lattice ? kOk : kPropertyFails;
    });

    auto* prod = lat->add_subcommand("product", "Componentwise product of two posets");
    prod->add_option("first", file1_, "Poset JSON")->required();
    prod->add_option("second", file2_, "Poset JSON")->required();
    prod->add_option("--dot", dot_, "Also write the Hasse diagram to PATH");
    on(prod, [this] {
      const FinPoset p = product(load_poset(file1_), load_poset(file2_));
      write_dot(dot_, p);
      emit(to_json(p));
      return kOk;
    });

    auto* iso = lat->add_subcommand("iso", "Order isomorphism search");
    iso->add_option("first", file1_, "Poset JSON")->required();
    iso->add_option("second", file2_, "Poset JSON")->required();
    on(iso, [this] {
      const FinPoset a = load_poset(file1_), b = load_poset(file2_);
      const auto map = find_isomorphism(a, b);
      Json j;
      j["isomorphic"] = map.has_value();
      if (map) {
        j["map"] = Json::object();
        for (std::size_t i = 0; i < a.size(); ++i) j["map"][a.label(i)] = b.label((*map)[i]);
      } else {
        j["map"] = nullptr;
      }
      emit(j);
      return map ? kOk : kPropertyFails;
    });

    auto* dot = lat->add_subcommand("dot", "Hasse diagram in DOT");
    dot->add_option("file", file1_, "Poset JSON")->required();
    dot->add_option("--dot", dot_, "Write to PATH instead of standard output");
    on(dot, [this] {
      const FinPoset p = load_poset(file1_);
      if (dot_.empty()) {
        out_ << to_dot(p);
      } else {
        write_dot(dot_, p);
      }
      return kOk;
    });
  }

  // tv -------------------------------------------------------------------

  void build_tv(CLI::App& app) {
    auto* tv = app.add_subcommand("tv", "Tarski-Vaught tests over a formula family");
    tv->require_subcommand(1);

    auto* check = tv->add_subcommand("check", "Witnesses for every family member inside one set");
    check->add_option("--structure", structure_, "Structure JSON")->required();
    check->add_option("--subset", set1_, "Comma-separated element labels")->required();
    family_.attach(check);
    on(check, [this] {
      const FinStructure m = load_structure(structure_);
      const auto labels = split_labels(set1_);
      const auto v = tv_check(m, m.subset(labels), family_.load(m.signature()));
      return verdict(m, v);
    });

    auto* pair = tv->add_subcommand("pair", "Common witnesses for the intersection of two sets");
    pair->add_option("--structure", structure_, "Structure JSON")->required();
    pair->add_option("--n1", set1_, "First set")->required();
    pair->add_option("--n2", set2_, "Second set")->required();
    family_.attach(pair);
    on(pair, [this] {
      const FinStructure m = load_structure(structure_);
      const auto a = split_labels(set1_), b = split_labels(set2_);
      const auto v = tv_pair_check(m, m.subset(a), m.subset(b), family_.load(m.signature()));
      return verdict(m, v);
    });

    auto* join = tv->add_subcommand("join", "Witnesses inside the generated join of two sets");
    join->add_option("--structure", structure_, "Structure JSON")->required();
    join->add_option("--n1", set1_, "First set")->required();
    join->add_option("--n2", set2_, "Second set")->required();
    join->add_option("--params", params_, "Where parameters range: intersection (default) or generated")
        ->check(CLI::IsMember({"intersection", "generated"}));
    family_.attach(join);
    on(join, [this] {
      const FinStructure m = load_structure(structure_);
      const auto a = split_labels(set1_), b = split_labels(set2_);
      const auto mode = params_ == "generated" ? JoinParams::Generated : JoinParams::Intersection;
      const auto v = tv_join_check(m, m.subset(a), m.subset(b), family_.load(m.signature()), mode);
      return verdict(m, v);
    });

    auto* en = tv->add_subcommand("enumerate", "All sets passing the test, as a hypergraph");
    en->add_option("--structure", structure_, "Structure JSON")->required();
    en->add_option("--threads", threads_, "Worker threads")->check(CLI::Range(1, 64));
    family_.attach(en);
    on(en, [this] {
      const FinStructure m = load_structure(structure_);
      const auto sets = enumerate_substructural(m, family_.load(m.signature()), {max_universe(), threads_});
      std::vector<std::vector<std::string>> edges;
      for (auto s : sets) edges.push_back(m.labels(s));
      err_ << sets.size() << " substructural sets\n";
      emit(to_json(Hypergraph(m.universe(), edges)));
      return kOk;
    });

    auto* lat = tv->add_subcommand("lattice", "The enumerated sets under inclusion, with closure report");
    lat->add_option("--structure", structure_, "Structure JSON")->required();
    lat->add_option("--threads", threads_, "Worker threads")->check(CLI::Range(1, 64));
    lat->add_option("--dot", dot_, "Also write the Hasse diagram to PATH");
    family_.attach(lat);
    on(lat, [this] {
      const FinStructure m = load_structure(structure_);
      const auto l = substructural_lattice(m, family_.load(m.signature()), {max_universe(), threads_});
      write_dot(dot_, l.poset);
      Json j;
      j["sets"] = sets_json(m, l.family);
      j["meet_closed"] = l.meet_closed;
      j["meet_witness"] = pair_json(m, l.meet_witness);
      j["join_closed"] = l.join_closed;
      j["join_witness"] = pair_json(m, l.join_witness);
      j["profile"] = to_json(l.profile);
      j["poset"] = to_json(l.poset);
      emit(j);
      return l.meet_closed && l.join_closed && l.profile.is_lattice ? kOk : kPropertyFails;
    });
  }

  int verdict(const FinStructure& m, const TvVerdict& v) {
    emit(verdict_to_json(m, v));
    err_ << (v.passed() ? "pass" : "fail") << "\n";
    return v.passed() ? kOk : kPropertyFails;
  }

  // hyper ----------------------------------------------------------------

  void build_hyper(CLI::App& app) {
    auto* hy = app.add_subcommand("hyper", "Hypergraphs of vertex subsets");
    hy->require_subcommand(1);

    auto* uni = hy->add_subcommand("union", "Complete union of hypergraphs");
    uni->add_option("files", files_, "Hypergraph JSON files")->required();
    on(uni, [this] {
      std::vector<Hypergraph> hs;
      for (const auto& f : files_) hs.push_back(load_hypergraph(f));
      Json j;
      j["kind"] = to_string(union_kind(hs));
      const Json h = to_json(complete_union(hs));
      j["vertices"] = h["vertices"];
      j["edges"] = h["edges"];
      emit(j);
      return kOk;
    });

    auto* res = hy->add_subcommand("restrict", "Traces of the edges on a vertex set");
    res->add_option("file", file1_, "Hypergraph JSON")->required();
    res->add_option("--set", set1_, "Comma-separated vertices")->required();
    on(res, [this] {
      const Hypergraph h = load_hypergraph(file1_);
      emit(to_json(restrict(h, h.subset(split_labels(set1_)))));
      return kOk;
    });

    auto* fr = hy->add_subcommand("free", "Every large subset of A is cut out by an edge");
    fr->add_option("file", file1_, "Hypergraph JSON")->required();
    fr->add_option("--set", set1_, "The set A")->required();
    fr->add_option("--tau", tau_, "Size threshold (default 2)")->check(CLI::PositiveNumber);
    on(fr, [this] {
      const Hypergraph h = load_hypergraph(file1_);
      const bool ok = is_h_free(h, h.subset(split_labels(set1_)), tau_);
      emit(Json{{"h_free", ok}, {"tau", tau_}});
      return ok ? kOk : kPropertyFails;
    });

    auto* ind = hy->add_subcommand("indep", "Large subsets of A and B are cut out jointly");
    ind->add_option("file", file1_, "Hypergraph JSON")->required();
    ind->add_option("--a", set1_, "The set A")->required();
    ind->add_option("--b", set2_, "The set B")->required();
    ind->add_option("--tau", tau_, "Size threshold (default 2)")->check(CLI::PositiveNumber);
    on(ind, [this] {
      const Hypergraph h = load_hypergraph(file1_);
      const bool ok = are_h_independent(h, h.subset(split_labels(set1_)), h.subset(split_labels(set2_)), tau_);
      emit(Json{{"h_independent", ok}, {"tau", tau_}});
      return ok ? kOk : kPropertyFails;
    });

    auto* dec = hy->add_subcommand("decomp", "Restriction to the union splits as a complete union");
    dec->add_option("file", file1_, "Hypergraph JSON")->required();
    dec->add_option("--set", sets_, "A set of the family; give two or more")->required();
    dec->add_option("--tau", tau_, "Size threshold (default 2)")->check(CLI::PositiveNumber);
    on(dec, [this] {
      if (sets_.size() < 2) throw UsageError("decomp needs at least two --set options");
      const Hypergraph h = load_hypergraph(file1_);
      std::vector<Subset> sets;
      for (const auto& s : sets_) sets.push_back(h.subset(split_labels(s)));
      const auto d = check_family_decomposition(h, sets, tau_);
      if (d.pairwise_only) err_ << "note: independence checked pairwise only\n";
      emit(Json{{"decomposes", d.holds}, {"pairwise_only", d.pairwise_only}, {"tau", tau_}});
      return d.holds ? kOk : kPropertyFails;
    });

    auto* prof = hy->add_subcommand("profile", "Trace count on A against 2^|A minus acl0|");
    prof->add_option("file", file1_, "Hypergraph JSON")->required();
    prof->add_option("--set", set1_, "The set A (default: all vertices)");
    prof->add_option("--acl0", set2_, "Algebraic closure of the empty set (default: empty)");
    on(prof, [this] {
      const Hypergraph h = load_hypergraph(file1_);
      const Subset a = set1_.empty() ? h.all() : h.subset(split_labels(set1_));
      const auto p = restriction_profile(h, a, h.subset(split_labels(set2_)));
      Json j;
      j["count"] = p.count;
      j["predicted"] = exact(p.predicted);
      if (p.power_of_two) {
        j["dichotomy"] = "power-of-two";
        j["n"] = *p.power_of_two;
      } else {
        j["dichotomy"] = "other";
        j["n"] = nullptr;
      }
      emit(j);
      return cpp_int(p.count) == p.predicted ? kOk : kPropertyFails;
    });
  }

  // ef / eval / fixtures ---------------------------------------------------

  void build_ef(CLI::App& app) {
    auto* ef = app.add_subcommand("ef", "Ehrenfeucht-Fraisse equivalence of two tuples");
    ef->add_option("--structure", structure_, "Structure JSON")->required();
    ef->add_option("--t1", set1_, "First tuple, comma-separated labels")->required();
    ef->add_option("--t2", set2_, "Second tuple")->required();
    ef->add_option("--rounds", rounds_, "Number of rounds")->required()->check(CLI::Range(0, 64));
    on(ef, [this] {
      const FinStructure m = load_structure(structure_);
      Tuple a, b;
      for (const auto& l : split_labels(set1_)) a.push_back(m.element(l));
      for (const auto& l : split_labels(set2_)) b.push_back(m.element(l));
      EfGame game(m);
      const bool eq = game.duplicator_wins(a, b, rounds_);
      err_ << game.positions_explored() << " positions explored\n";
      emit(Json{{"equivalent", eq}, {"rounds", rounds_}});
      return eq ? kOk : kPropertyFails;
    });
  }

  void build_eval(CLI::App& app) {
    auto* ev = app.add_subcommand("eval", "Truth value of a formula under an assignment");
    ev->add_option("--structure", structure_, "Structure JSON")->required();
    ev->add_option("--formula", formula_, "The formula")->required();
    ev->add_option("--assign", assign_, "Comma-separated var=label pairs");
    on(ev, [this] {
      const FinStructure m = load_structure(structure_);
      const Formula f = parse_formula(formula_, m.signature());
      Assignment a;
      Json shown = Json::object();
      for (const auto& item : split_labels(assign_)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("assignment items look like x=label");
        const std::string var = item.substr(0, eq), label = item.substr(eq + 1);
        a[var] = m.element(label);
        shown[var] = label;
      }
      const bool value = evaluate(m, f, a);
      emit(Json{{"formula", to_string(f)}, {"assignment", shown}, {"value", value}});
      return value ? kOk : kPropertyFails;
    });
  }

  void build_fixtures(CLI::App& app) {
    auto* fx = app.add_subcommand("fixtures", "Write example structures, formulas and figure lattices");
    fx->add_option("name", fixture_, "Fixture name or \"all\"")->required();
    fx->add_option("--out", out_dir_, "Output directory (default: current)");
    on(fx, [this] {
      const auto files = fixtures::render(fixture_);
      std::error_code ec;
      std::filesystem::create_directories(out_dir_, ec);
      if (ec) throw InputError("cannot create '" + out_dir_ + "': " + ec.message());
      Json written = Json::array();
      for (const auto& [name, content] : files) {
        const auto path = std::filesystem::path(out_dir_) / name;
        write_text_file(path, content);
        written.push_back(path.string());
      }
      emit(Json{{"written", written}});
      return kOk;
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<int()> action_ = [] { return kUsage; };

  std::size_t k_ = 0, s_ = 0, k1_ = 0, s1_ = 0, k2_ = 0, s2_ = 0;
  std::size_t tau_ = 2, rounds_ = 0, threads_ = 1;
  std::string dot_, file1_, file2_, structure_, set1_, set2_, params_ = "intersection";
  std::string formula_, assign_, fixture_, out_dir_ = ".";
  std::vector<std::string> files_, sets_;
  FamilyArgs family_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace mll::cli
