#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mll/poset.hpp"

namespace mll {

inline constexpr std::size_t kMaxSpectrumParameter = 64;

// k types p1..pk that are realized at most once in a prime model (tag 0
// only) and s types q1..qs that may be realized finitely (tag 0) or
// infinitely (tag 1).
struct TypeSpectrum {
  std::size_t k = 0;
  std::size_t s = 0;

  std::size_t type_count() const { return k + s; }
  // p1..pk followed by q1..qs.
  std::string type_name(std::size_t i) const;
  std::vector<std::string> type_names() const;
  bool taggable(std::size_t i) const { return i >= k; }

  friend bool operator==(const TypeSpectrum&, const TypeSpectrum&) = default;
};

// A set of (type name, tag) pairs with at most one pair per type, tags for
// the p-types fixed at 0. Pairs are kept sorted by (name, tag).
class SignedTypeSet {
 public:
  using Pair = std::pair<std::string, int>;

  SignedTypeSet() = default;
  // Throws PreconditionError if the pairs break the tagging rule for `spec`
  // or name unknown types.
  SignedTypeSet(std::vector<Pair> pairs, const TypeSpectrum& spec);

  const std::vector<Pair>& pairs() const { return pairs_; }
  bool contains(std::string_view name, int tag) const;
  // -1 when the type is absent, otherwise its tag.
  int tag_of(std::string_view name) const;

  friend bool operator==(const SignedTypeSet&, const SignedTypeSet&) = default;

 private:
  std::vector<Pair> pairs_;
};

// "p1:0,q2:1"; the empty set prints as "{}".
std::string to_string(const SignedTypeSet& x);
SignedTypeSet parse_signed_type_set(std::string_view text, const TypeSpectrum& spec);

// 2^k * 3^s, exact.
boost::multiprecision::cpp_int lrk_size(const TypeSpectrum& spec);

// All signed type-sets, ordered lexicographically by their pair sequences.
// Throws BoundError when 2^k * 3^s exceeds `bound`.
std::vector<SignedTypeSet> lrk_elements(const TypeSpectrum& spec, std::size_t bound = kDefaultPosetBound);

// Common pairs, plus (p,0) when one side holds (p,0) and the other (p,1).
SignedTypeSet lrk_meet(const SignedTypeSet& x, const SignedTypeSet& y, const TypeSpectrum& spec);
// i) common pairs; ii), iii) pairs of one side whose type the other side
// lacks; iv) (p,1) when one side holds (p,0) and the other (p,1).
SignedTypeSet lrk_join(const SignedTypeSet& x, const SignedTypeSet& y, const TypeSpectrum& spec);

// X <= Y iff lrk_meet(X, Y) = X; labels are the textual forms.
FinPoset lrk_lattice(const TypeSpectrum& spec, std::size_t bound = kDefaultPosetBound);

// 3^k * 6^s. Throws BoundError for k or s above 64.
boost::multiprecision::cpp_int count_countable_models(const TypeSpectrum& spec);

// Per-type count label: "3-spectrum" for p-types, "6-spectrum" for q-types.
std::vector<std::pair<std::string, std::string>> type_spectrum_labels(const TypeSpectrum& spec);

struct LrkClass {
  boost::multiprecision::cpp_int size;
  bool is_lattice = true;
  bool is_distributive = true;
  bool is_boolean = false;
  bool is_linear = false;
};
// Closed form: Boolean iff k >= 1 and s = 0, linear iff k + s <= 1.
LrkClass classify_lrk(const TypeSpectrum& spec);

struct DisjointUnion {
  TypeSpectrum combined;
  // lrk_lattice(combined) is isomorphic to the product of the two factors.
  bool product_isomorphic = false;
  bool linear = false;
  // Both factors linear and one factor has a single countable model.
  bool linear_by_factors = false;
};
DisjointUnion disjoint_union(const TypeSpectrum& a, const TypeSpectrum& b, std::size_t bound = kDefaultPosetBound);

}  // namespace mll
