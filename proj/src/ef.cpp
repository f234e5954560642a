#include "mll/ef.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "mll/error.hpp"

namespace mll {

namespace {

// Enumerates every index combination of length `arity` over `width` positions.
template <typename Fn>
bool all_index_tuples(std::size_t width, std::size_t arity, std::vector<std::size_t>& idx, Fn&& fn) {
  idx.assign(arity, 0);
  while (true) {
    if (!fn(idx)) return false;
    std::size_t k = arity;
    while (k > 0 && ++idx[k - 1] == width) idx[--k] = 0;
    if (k == 0) return true;
  }
}

}  // namespace

bool same_atomic_type(const FinStructure& m, std::span<const ElementId> a, std::span<const ElementId> b) {
  if (a.size() != b.size()) return false;
  std::vector<ElementId> x(a.begin(), a.end()), y(b.begin(), b.end());
  x.insert(x.end(), m.constant_values().begin(), m.constant_values().end());
  y.insert(y.end(), m.constant_values().begin(), m.constant_values().end());
  const std::size_t width = x.size();
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = i + 1; j < width; ++j) {
      if ((x[i] == x[j]) != (y[i] == y[j])) return false;
    }
  }
  std::vector<ElementId> xs, ys;
  std::vector<std::size_t> idx;
  for (const auto& [name, arity] : m.signature().relations()) {
    const auto rel = m.relation(name);
    bool ok = all_index_tuples(width, arity, idx, [&](const std::vector<std::size_t>& ix) {
      xs.clear();
      ys.clear();
      for (auto i : ix) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
      }
      return rel.holds(xs) == rel.holds(ys);
    });
    if (!ok) return false;
  }
  return true;
}

EfGame::EfGame(const FinStructure& m) : m_(m) {
  for (const auto& [name, arity] : m.signature().relations()) relations_.push_back(m.relation(name));
}

bool EfGame::duplicator_wins(std::span<const ElementId> a, std::span<const ElementId> b, std::size_t rounds) {
  if (a.size() != b.size()) throw PreconditionError("tuples must have equal length");
  if (rounds > kMaxRounds) throw BoundError("at most " + std::to_string(kMaxRounds) + " rounds are supported");
  for (auto e : a) {
    if (e >= m_.size()) throw PreconditionError("tuple entry outside the universe");
  }
  for (auto e : b) {
    if (e >= m_.size()) throw PreconditionError("tuple entry outside the universe");
  }
  if (!same_atomic_type(m_, a, b)) return false;
  Tuple x(a.begin(), a.end()), y(b.begin(), b.end());
  return search(x, y, rounds);
}

// The prefixes without the last entries already agree, so only atomic facts
// mentioning the last position can differ.
bool EfGame::extension_agrees(const Tuple& a, const Tuple& b) {
  const std::size_t last = a.size() - 1;
  const auto& consts = m_.constant_values();
  auto at = [&](const Tuple& t, std::size_t i) { return i < t.size() ? t[i] : consts[i - t.size()]; };
  const std::size_t width = a.size() + consts.size();
  for (std::size_t i = 0; i < width; ++i) {
    if (i != last && (at(a, i) == a[last]) != (at(b, i) == b[last])) return false;
  }
  for (const auto& rel : relations_) {
    bool ok = all_index_tuples(width, rel.arity(), idx_, [&](const std::vector<std::size_t>& ix) {
      if (std::find(ix.begin(), ix.end(), last) == ix.end()) return true;
      xs_.clear();
      ys_.clear();
      for (auto i : ix) {
        xs_.push_back(at(a, i));
        ys_.push_back(at(b, i));
      }
      return rel.holds(xs_) == rel.holds(ys_);
    });
    if (!ok) return false;
  }
  return true;
}

// Precondition: a and b have the same atomic type.
bool EfGame::search(Tuple& a, Tuple& b, std::size_t rounds) {
  // The identity is an automorphism, so equal positions are always won.
  if (rounds == 0 || a == b) return true;

  std::string key;
  key.reserve(2 * a.size() + 2);
  key.push_back(static_cast<char>(rounds));
  for (auto e : a) key.push_back(static_cast<char>(e));
  key.push_back(static_cast<char>(0xff));
  for (auto e : b) key.push_back(static_cast<char>(e));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  ++explored_;

  bool wins = true;
  const std::size_t n = m_.size();
  // Spoiler moves in either copy; Duplicator must answer in the other.
  for (int side = 0; side < 2 && wins; ++side) {
    Tuple& mover = side == 0 ? a : b;
    Tuple& answer = side == 0 ? b : a;
    for (ElementId c = 0; c < n && wins; ++c) {
      mover.push_back(c);
      bool answered = false;
      for (ElementId d = 0; d < n && !answered; ++d) {
        answer.push_back(d);
        answered = extension_agrees(a, b) && search(a, b, rounds - 1);
        answer.pop_back();
      }
      mover.pop_back();
      wins = answered;
    }
  }
  memo_.emplace(std::move(key), wins);
  return wins;
}

bool ef_equivalent(const FinStructure& m, std::span<const ElementId> t1, std::span<const ElementId> t2,
                   std::size_t rounds) {
  return EfGame(m).duplicator_wins(t1, t2, rounds);
}

}  // namespace mll
