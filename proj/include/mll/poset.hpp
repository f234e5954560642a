#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mll {

inline constexpr std::size_t kDefaultPosetBound = 4096;

// Finite partial order. Elements are indexed 0..size()-1 and carry distinct
// labels. The order is stored reflexive-transitively closed, one bit row per
// element.
class FinPoset {
 public:
  // Takes the closure of `leq`; throws InputError on duplicate or unknown
  // labels and when the closure is not antisymmetric.
  FinPoset(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& leq);

  template <typename Leq>
  static FinPoset from_predicate(std::vector<std::string> labels, Leq&& leq) {
    FinPoset p(std::move(labels));
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b)
        if (a == b || leq(a, b)) p.set(a, b);
    p.close();
    return p;
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> find(std::string_view label) const;
  // Throws SymbolError for an unknown label.
  std::size_t index(std::string_view label) const;

  bool leq(std::size_t a, std::size_t b) const { return (down_[b * words_ + a / 64] >> (a % 64)) & 1U; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  // Number of elements below (resp. above) x, x included.
  std::size_t down_count(std::size_t x) const;
  std::size_t up_count(std::size_t x) const;
  // |{c : a <= c <= b}|
  std::size_t interval_size(std::size_t a, std::size_t b) const;

  std::optional<std::size_t> meet(std::size_t x, std::size_t y) const;
  std::optional<std::size_t> join(std::size_t x, std::size_t y) const;
  std::optional<std::size_t> bottom() const;
  std::optional<std::size_t> top() const;

 private:
  explicit FinPoset(std::vector<std::string> labels);
  void set(std::size_t a, std::size_t b);
  void close();

  std::vector<std::string> labels_;
  std::size_t words_ = 0;
  // down_[b] is the set {a : a <= b}; up_[a] is the set {b : a <= b}.
  std::vector<std::uint64_t> down_;
  std::vector<std::uint64_t> up_;
};

// Meet/join by label; nullopt is NoMeet/NoJoin. Throws SymbolError for an
// unknown label.
std::optional<std::string> meet(const FinPoset& p, std::string_view x, std::string_view y);
std::optional<std::string> join(const FinPoset& p, std::string_view x, std::string_view y);

// The sets ordered by inclusion, labelled "{a,b}". Duplicates collapse.
FinPoset from_family(const std::vector<std::vector<std::string>>& sets);

FinPoset chain(std::size_t n);

struct LawWitness {
  std::string law;
  std::vector<std::string> elements;
};

struct PosetProfile {
  std::size_t size = 0;
  bool is_meet_semilattice = false;
  bool is_join_semilattice = false;
  bool is_lattice = false;
  bool is_distributive = false;
  bool is_modular = false;
  bool is_boolean = false;
  bool is_linear = false;
  bool is_atomic = false;
  // First failed law, checked in the order: meets exist, joins exist,
  // modularity, distributivity, complementation, comparability.
  std::optional<LawWitness> failure_witness;
};

PosetProfile classify(const FinPoset& p);

// N5 or M3 embedded as a sublattice; the second route to distributivity.
struct ForbiddenSublattice {
  enum class Shape { N5, M3 } shape;
  std::size_t bottom, top;
  std::vector<std::size_t> middle;
};
std::optional<ForbiddenSublattice> find_forbidden_sublattice(const FinPoset& lattice);

// Componentwise order on pairs, labels "(x|y)", row-major.
FinPoset product(const FinPoset& a, const FinPoset& b);

// Order isomorphism a -> b as an index map, or nullopt. Throws BoundError
// above `bound` elements.
std::optional<std::vector<std::size_t>> find_isomorphism(const FinPoset& a, const FinPoset& b,
                                                         std::size_t bound = kDefaultPosetBound);
bool isomorphic(const FinPoset& a, const FinPoset& b, std::size_t bound = kDefaultPosetBound);

// Length of the longest chain from a minimal element to x.
std::vector<std::size_t> heights(const FinPoset& p);

// Cover pairs (low, high), sorted by (label(low), label(high)).
std::vector<std::pair<std::size_t, std::size_t>> hasse(const FinPoset& p);

std::string to_dot(const FinPoset& p);
// Reads the DOT subset written by to_dot: quoted node statements and
// "a" -> "b" edges. Other statements are skipped.
FinPoset from_dot(std::string_view text);

}  // namespace mll
