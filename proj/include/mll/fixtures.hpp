#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mll/formula.hpp"
#include "mll/lrk.hpp"
#include "mll/poset.hpp"
#include "mll/structure.hpp"

namespace mll::fixtures {

// Graph on a1..a4 with R = {[a1,a3],[a1,a4],[a2,a3],[a2,a4]} stored in both
// orientations; constants c1 -> a1, c2 -> a2.
StructureSpec example3();
// Graph on a1..a3 with R = {[a1,a3],[a2,a3]}; constants c1 -> a1, c2 -> a2.
StructureSpec example4();

// exists x. R(c1,x) & R(c2,x)
inline constexpr const char* kPhi = "exists x. R(c1,x) & R(c2,x)";

// Unary P holding everywhere; constants c1..c3 name k1..k3 and b1..bn are
// the unnamed elements.
StructureSpec example1_surrogate(std::size_t unnamed);
// Literals over {P, =} with variables x, y and the constants of `sig`,
// together with the closure of each literal under exists x. Quantifier rank
// at most 1.
std::vector<Formula> rank1_family(const Signature& sig);

// 0 < a < c < 1, 0 < b < 1.
FinPoset pentagon();

// Spectrum behind fixture "fig<n>", n in 1..9.
TypeSpectrum figure_spectrum(int n);

std::vector<std::string> names();
// File name -> content for a fixture name, or for every fixture with "all".
// Throws InputError for an unknown name.
std::map<std::string, std::string> render(const std::string& name);

}  // namespace mll::fixtures
