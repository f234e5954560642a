#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mll/eval.hpp"
#include "mll/formula.hpp"
#include "mll/poset.hpp"
#include "mll/structure.hpp"
#include "mll/subset.hpp"

namespace mll {

inline constexpr std::size_t kDefaultMaxUniverse = 16;

// Finite stand-in for "all formulas of the language".
class FormulaFamily {
 public:
  FormulaFamily() = default;
  explicit FormulaFamily(std::vector<Formula> formulas);

  // The family together with every subformula of its members, first
  // occurrences kept in preorder.
  static FormulaFamily closure(const std::vector<Formula>& formulas);

  const std::vector<Formula>& formulas() const { return formulas_; }
  bool empty() const { return formulas_.empty(); }
  std::size_t size() const { return formulas_.size(); }
  bool subformula_closed() const { return closed_; }

 private:
  std::vector<Formula> formulas_;
  bool closed_ = true;
};

// How a family member is read as phi(x0; x1..xn): which variable must be
// witnessed and which are parameters.
//   exists x. psi  ->  x0 = x, matrix psi
//   forall x. psi  ->  x0 = x, matrix ~psi
//   otherwise      ->  x0 = first free variable, matrix the formula itself
// Sentences without a top-level quantifier have no existential reading.
struct ExistentialReading {
  std::string witness_variable;
  Formula matrix;
  std::vector<std::string> parameters;
};
std::optional<ExistentialReading> existential_reading(const Formula& phi);

struct TvCounterexample {
  Formula formula;  // the family member
  ExistentialReading reading;
  std::vector<ElementId> params;  // aligned with reading.parameters
  Subset witnesses;               // every a0 with M |= matrix(a0, params)
};

struct TvVerdict {
  Subset candidate;  // the set witnesses were looked for in
  std::optional<TvCounterexample> failure;

  bool passed() const { return !failure.has_value(); }
};

// Pass iff for every member and every parameter tuple from n: when
// M |= exists x0 matrix, some a0 in n satisfies the matrix in M. The failure
// reported is the first in family order, then lexicographic tuple order.
// Throws PreconditionError if n is empty or misses a constant.
TvVerdict tv_check(const FinStructure& m, Subset n, const FormulaFamily& family);

// Parameters from n1 & n2; the witness must lie in n1 & n2 and satisfy the
// matrix in both induced substructures. Empty intersection is a
// PreconditionError, never a failure.
TvVerdict tv_pair_check(const FinStructure& m, Subset n1, Subset n2, const FormulaFamily& family);

enum class JoinParams {
  // Parameters from n1 & n2, falling back to n1 | n2 when that is empty.
  Intersection,
  // Parameters from the generated universe.
  Generated,
};

// With G = generated_substructure(n1 | n2): the witness must lie in G and
// satisfy the matrix in the substructure induced on G.
TvVerdict tv_join_check(const FinStructure& m, Subset n1, Subset n2, const FormulaFamily& family,
                        JoinParams params = JoinParams::Intersection);

// s together with every constant interpretation.
Subset generated_substructure(const FinStructure& m, Subset s);

struct EnumerateOptions {
  std::size_t max_universe = kDefaultMaxUniverse;
  std::size_t threads = 1;
};

// Every subset containing the constants that passes tv_check, in
// lexicographic order. Throws BoundError above options.max_universe.
std::vector<Subset> enumerate_substructural(const FinStructure& m, const FormulaFamily& family,
                                            const EnumerateOptions& options = {});

struct SubstructuralLattice {
  std::vector<Subset> family;
  FinPoset poset;
  bool meet_closed = true;
  std::optional<std::pair<Subset, Subset>> meet_witness;
  bool join_closed = true;
  std::optional<std::pair<Subset, Subset>> join_witness;
  PosetProfile profile;
};

SubstructuralLattice substructural_lattice(const FinStructure& m, const FormulaFamily& family,
                                           const EnumerateOptions& options = {});

}  // namespace mll
