#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mll {

inline constexpr std::size_t kMaxCarrier = 64;

// A subset of an indexed carrier of at most 64 elements (structure universe or
// hypergraph vertex set). Element i is present iff bit i is set.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Subset single(std::size_t i) { return Subset(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }

  constexpr Subset& insert(std::size_t i) {
    bits_ |= std::uint64_t{1} << i;
    return *this;
  }
  constexpr Subset& erase(std::size_t i) {
    bits_ &= ~(std::uint64_t{1} << i);
    return *this;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  // Set difference.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset, Subset) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Lexicographic order on the ascending index sequences of two subsets.
// {0,1,2} < {0,1,2,3} < {0,1,3} < {1}
inline bool lex_less(Subset a, Subset b) {
  std::uint64_t x = a.bits(), y = b.bits();
  while (x != 0 && y != 0) {
    int i = std::countr_zero(x), j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

// Calls fn(sub) for every subset of `mask`, including the empty set and mask itself.
template <typename Fn>
void for_each_submask(Subset mask, Fn&& fn) {
  std::uint64_t m = mask.bits();
  std::uint64_t s = m;
  while (true) {
    fn(Subset(s));
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

}  // namespace mll
