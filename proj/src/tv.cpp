#include "mll/tv.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <thread>

#include "mll/error.hpp"

namespace mll {

FormulaFamily::FormulaFamily(std::vector<Formula> formulas) : formulas_(std::move(formulas)) {
  for (const auto& f : formulas_) {
    for (const auto& g : subformulas(f)) {
      if (std::find(formulas_.begin(), formulas_.end(), g) == formulas_.end()) {
        closed_ = false;
        return;
      }
    }
  }
}

FormulaFamily FormulaFamily::closure(const std::vector<Formula>& formulas) {
  std::vector<Formula> out;
  for (const auto& f : formulas)
    for (const auto& g : subformulas(f))
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return FormulaFamily(std::move(out));
}

std::optional<ExistentialReading> existential_reading(const Formula& phi) {
  ExistentialReading r{{}, phi, {}};
  if (phi.kind() == Formula::Kind::Exists) {
    r.witness_variable = phi.symbol();
    r.matrix = phi.body();
  } else if (phi.kind() == Formula::Kind::Forall) {
    r.witness_variable = phi.symbol();
    r.matrix = Formula::negation(phi.body());
  } else {
    auto free = free_variables(phi);
    if (free.empty()) return std::nullopt;
    r.witness_variable = free.front();
  }
  for (auto& v : free_variables(r.matrix))
    if (v != r.witness_variable) r.parameters.push_back(std::move(v));
  return r;
}

Subset generated_substructure(const FinStructure& m, Subset s) {
  if (s.empty()) throw PreconditionError("generated substructure needs a nonempty set");
  if (!s.subset_of(m.everything())) throw PreconditionError("set is not contained in the universe");
  return s | m.constant_set();
}

namespace {

void require_inside(const FinStructure& m, Subset s, const char* what) {
  if (s.empty()) throw PreconditionError(std::string(what) + " must be nonempty");
  if (!s.subset_of(m.everything())) throw PreconditionError(std::string(what) + " is not contained in the universe");
}

void require_constants(const FinStructure& m, Subset s, const char* what) {
  if (!m.constant_set().subset_of(s)) {
    throw PreconditionError(std::string(what) + " must contain every constant interpretation");
  }
}

void check_family(const FinStructure& m, const FormulaFamily& family) {
  for (const auto& f : family.formulas()) check_signature(f, m.signature());
}

// Calls fn(tuple) for every tuple of length k over `domain` in lexicographic
// order; stops early when fn returns false.
template <typename Fn>
bool for_each_tuple(const std::vector<ElementId>& domain, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k, 0);
  std::vector<ElementId> tuple(k);
  if (k > 0 && domain.empty()) return true;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = domain[idx[i]];
    if (!fn(tuple)) return false;
    std::size_t pos = k;
    while (pos > 0 && ++idx[pos - 1] == domain.size()) idx[--pos] = 0;
    if (pos == 0) return true;
  }
}

Assignment assign_params(const ExistentialReading& r, const std::vector<ElementId>& params) {
  Assignment a;
  for (std::size_t i = 0; i < params.size(); ++i) a[r.parameters[i]] = params[i];
  return a;
}

Subset witnesses_in_m(const FinStructure& m, const ExistentialReading& r, Assignment a) {
  Subset w;
  for (ElementId e = 0; e < m.size(); ++e) {
    a[r.witness_variable] = e;
    if (evaluate(m, r.matrix, a)) w.insert(e);
  }
  return w;
}

// Shared driver: parameters range over `params_from`; a member fails on a
// tuple when M has a witness but `accepts` rejects every element of
// `witness_from`.
using Accepts = std::function<bool(const ExistentialReading&, Assignment&)>;

TvVerdict run_check(const FinStructure& m, Subset params_from, Subset witness_from, const FormulaFamily& family,
                    const Accepts& accepts) {
  check_family(m, family);
  TvVerdict verdict{witness_from, std::nullopt};
  const auto domain = params_from.indices();
  const auto candidates = witness_from.indices();
  for (const auto& phi : family.formulas()) {
    auto reading = existential_reading(phi);
    if (!reading) continue;
    bool ok = for_each_tuple(domain, reading->parameters.size(), [&](const std::vector<ElementId>& params) {
      Assignment a = assign_params(*reading, params);
      Subset w = witnesses_in_m(m, *reading, a);
      if (w.empty()) return true;
      for (ElementId e : candidates) {
        a[reading->witness_variable] = e;
        if (accepts(*reading, a)) return true;
      }
      verdict.failure = TvCounterexample{phi, *reading, params, w};
      return false;
    });
    if (!ok) break;
  }
  return verdict;
}

}  // namespace

TvVerdict tv_check(const FinStructure& m, Subset n, const FormulaFamily& family) {
  require_inside(m, n, "candidate set");
  require_constants(m, n, "candidate set");
  return run_check(m, n, n, family,
                   [&](const ExistentialReading& r, Assignment& a) { return evaluate(m, r.matrix, a); });
}

TvVerdict tv_pair_check(const FinStructure& m, Subset n1, Subset n2, const FormulaFamily& family) {
  require_inside(m, n1, "first set");
  require_inside(m, n2, "second set");
  require_constants(m, n1, "first set");
  require_constants(m, n2, "second set");
  const Subset common = n1 & n2;
  if (common.empty()) throw PreconditionError("the two sets must intersect");
  return run_check(m, common, common, family, [&](const ExistentialReading& r, Assignment& a) {
    return evaluate_within(m, n1, r.matrix, a) && evaluate_within(m, n2, r.matrix, a);
  });
}

TvVerdict tv_join_check(const FinStructure& m, Subset n1, Subset n2, const FormulaFamily& family, JoinParams params) {
  require_inside(m, n1, "first set");
  require_inside(m, n2, "second set");
  const Subset g = generated_substructure(m, n1 | n2);
  Subset from = g;
  if (params == JoinParams::Intersection) from = (n1 & n2).empty() ? (n1 | n2) : (n1 & n2);
  return run_check(m, from, g, family,
                   [&](const ExistentialReading& r, Assignment& a) { return evaluate_within(m, g, r.matrix, a); });
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

constexpr std::size_t kMaxWitnessTable = std::size_t{1} << 22;

// M-witness sets for every member and every parameter tuple over the whole
// universe. They do not depend on the candidate set, so one table serves all
// 2^n candidates.
class WitnessTable {
 public:
  WitnessTable(const FinStructure& m, const FormulaFamily& family) : n_(m.size()) {
    std::vector<ElementId> all(n_);
    for (ElementId e = 0; e < n_; ++e) all[e] = e;
    for (const auto& phi : family.formulas()) {
      auto reading = existential_reading(phi);
      if (!reading) continue;
      const std::size_t k = reading->parameters.size();
      std::size_t cells = 1;
      for (std::size_t i = 0; i < k; ++i) {
        cells *= n_;
        if (cells > kMaxWitnessTable) throw BoundError("too many parameters to tabulate witnesses");
      }
      Entry entry{k, {}};
      entry.witnesses.reserve(cells);
      for_each_tuple(all, k, [&](const std::vector<ElementId>& params) {
        entry.witnesses.push_back(witnesses_in_m(m, *reading, assign_params(*reading, params)));
        return true;
      });
      entries_.push_back(std::move(entry));
    }
  }

  bool passes(Subset n) const {
    const auto domain = n.indices();
    for (const auto& entry : entries_) {
      bool ok = for_each_tuple(domain, entry.arity, [&](const std::vector<ElementId>& params) {
        std::size_t off = 0;
        for (auto e : params) off = off * n_ + e;
        const Subset w = entry.witnesses[off];
        return w.empty() || w.intersects(n);
      });
      if (!ok) return false;
    }
    return true;
  }

 private:
  struct Entry {
    std::size_t arity;
    std::vector<Subset> witnesses;
  };
  std::size_t n_;
  std::vector<Entry> entries_;
};

}  // namespace

std::vector<Subset> enumerate_substructural(const FinStructure& m, const FormulaFamily& family,
                                            const EnumerateOptions& options) {
  if (m.size() > options.max_universe) {
    throw BoundError("universe has " + std::to_string(m.size()) + " elements; enumeration is limited to " +
                     std::to_string(options.max_universe));
  }
  check_family(m, family);
  const WitnessTable table(m, family);
  const Subset fixed = m.constant_set();
  std::vector<Subset> candidates;
  for_each_submask(m.everything() - fixed, [&](Subset extra) {
    if (!(extra | fixed).empty()) candidates.push_back(extra | fixed);
  });

  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, 64);
  std::vector<std::vector<Subset>> found(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < candidates.size(); i += threads)
          if (table.passes(candidates[i])) found[t].push_back(candidates[i]);
      });
    }
  }
  std::vector<Subset> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

SubstructuralLattice substructural_lattice(const FinStructure& m, const FormulaFamily& family,
                                           const EnumerateOptions& options) {
  auto sets = enumerate_substructural(m, family, options);
  std::vector<std::vector<std::string>> labelled;
  for (auto s : sets) labelled.push_back(m.labels(s));
  SubstructuralLattice out{sets, from_family(labelled), true, std::nullopt, true, std::nullopt, {}};

  std::set<std::uint64_t> members;
  for (auto s : sets) members.insert(s.bits());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (out.meet_closed && !members.count((sets[i] & sets[j]).bits())) {
        out.meet_closed = false;
        out.meet_witness = {sets[i], sets[j]};
      }
      if (out.join_closed && !members.count(generated_substructure(m, sets[i] | sets[j]).bits())) {
        out.join_closed = false;
        out.join_witness = {sets[i], sets[j]};
      }
    }
  }
  out.profile = classify(out.poset);
  return out;
}

}  // namespace mll
