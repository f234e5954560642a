#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mll/structure.hpp"

namespace mll {

// True iff the map a[i] -> b[i], extended by c^M -> c^M for every constant c,
// is a well-defined injective map preserving every relation both ways.
bool same_atomic_type(const FinStructure& m, std::span<const ElementId> a, std::span<const ElementId> b);

// Ehrenfeucht-Fraisse game on (M, a) versus (M, b), decided by exhaustive
// search of the game tree. Positions already decided are cached, so one
// instance amortises repeated queries against the same structure.
class EfGame {
 public:
  static constexpr std::size_t kMaxRounds = 64;

  explicit EfGame(const FinStructure& m);

  // Duplicator wins the `rounds`-round game. Throws PreconditionError on a
  // length mismatch or an element outside the universe, BoundError above
  // kMaxRounds.
  bool duplicator_wins(std::span<const ElementId> a, std::span<const ElementId> b, std::size_t rounds);

  std::size_t positions_explored() const { return explored_; }

 private:
  bool search(Tuple& a, Tuple& b, std::size_t rounds);
  bool extension_agrees(const Tuple& a, const Tuple& b);

  const FinStructure& m_;
  std::vector<FinStructure::RelationRef> relations_;
  std::vector<std::size_t> idx_;
  Tuple xs_, ys_;
  std::unordered_map<std::string, bool> memo_;
  std::size_t explored_ = 0;
};

bool ef_equivalent(const FinStructure& m, std::span<const ElementId> t1, std::span<const ElementId> t2,
                   std::size_t rounds);

}  // namespace mll
