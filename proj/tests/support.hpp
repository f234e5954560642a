#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mll/structure.hpp"

namespace mll::testing {

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix = "e") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// One binary relation R on n elements, tuple (i,j) present iff bit i*n+j of
// `mask` is set.
inline StructureSpec binary_structure(std::size_t n, std::uint64_t mask) {
  StructureSpec s;
  s.universe = labels(n);
  auto& r = s.relations["R"];
  r.arity = 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> (i * n + j)) & 1U) r.tuples.push_back({s.universe[i], s.universe[j]});
  return s;
}

inline StructureSpec random_structure(std::mt19937_64& rng, std::size_t n, std::size_t constants = 0) {
  StructureSpec s = binary_structure(n, rng());
  auto& p = s.relations["P"];
  p.arity = 1;
  for (const auto& e : s.universe)
    if (rng() % 2) p.tuples.push_back({e});
  for (std::size_t c = 0; c < constants; ++c) s.constants["c" + std::to_string(c)] = s.universe[rng() % n];
  return s;
}

// Relabels element i as element perm[i].
inline StructureSpec permuted(const StructureSpec& s, const std::vector<std::size_t>& perm) {
  auto index = [&](const std::string& l) {
    for (std::size_t i = 0; i < s.universe.size(); ++i)
      if (s.universe[i] == l) return i;
    return std::size_t{0};
  };
  StructureSpec out = s;
  for (auto& [name, rel] : out.relations)
    for (auto& t : rel.tuples)
      for (auto& l : t) l = s.universe[perm[index(l)]];
  for (auto& [c, l] : out.constants) l = s.universe[perm[index(l)]];
  return out;
}

}  // namespace mll::testing
