#include "mll/poset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "mll/error.hpp"

namespace mll {

FinPoset::FinPoset(std::vector<std::string> labels) : labels_(std::move(labels)) {
  {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("poset labels must be pairwise distinct");
    }
  }
  words_ = (labels_.size() + 63) / 64;
  down_.assign(labels_.size() * words_, 0);
  up_.assign(labels_.size() * words_, 0);
}

FinPoset::FinPoset(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& leq)
    : FinPoset(std::move(labels)) {
  for (std::size_t i = 0; i < size(); ++i) set(i, i);
  for (const auto& [a, b] : leq) {
    auto x = find(a), y = find(b);
    if (!x || !y) throw InputError("order pair mentions unknown element '" + (x ? b : a) + "'");
    set(*x, *y);
  }
  close();
}

void FinPoset::set(std::size_t a, std::size_t b) { down_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64); }

void FinPoset::close() {
  const std::size_t n = size();
  // Warshall over bit rows: if k <= b then everything below k is below b.
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* row_k = &down_[k * words_];
    for (std::size_t b = 0; b < n; ++b) {
      if (b != k && leq(k, b)) {
        std::uint64_t* row_b = &down_[b * words_];
        for (std::size_t w = 0; w < words_; ++w) row_b[w] |= row_k[w];
      }
    }
  }
  std::fill(up_.begin(), up_.end(), 0);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a)
      if (leq(a, b)) up_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t both = down_[a * words_ + w] & up_[a * words_ + w];
      std::uint64_t self = (a / 64 == w) ? std::uint64_t{1} << (a % 64) : 0;
      if (both != self) {
        std::size_t other = w * 64 + static_cast<std::size_t>(std::countr_zero(both & ~self));
        throw InputError("order is not antisymmetric: '" + labels_[a] + "' and '" + labels_[other] +
                         "' are mutually below each other");
      }
    }
  }
}

std::optional<std::size_t> FinPoset::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t FinPoset::index(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw SymbolError("unknown poset element '" + std::string(label) + "'");
}

std::size_t FinPoset::down_count(std::size_t x) const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(down_[x * words_ + w]));
  return c;
}

std::size_t FinPoset::up_count(std::size_t x) const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(up_[x * words_ + w]));
  return c;
}

std::size_t FinPoset::interval_size(std::size_t a, std::size_t b) const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    c += static_cast<std::size_t>(std::popcount(up_[a * words_ + w] & down_[b * words_ + w]));
  }
  return c;
}

namespace {

// Greatest element of rows[x] & rows[y] with respect to `rows`, where rows[m]
// is the down-set (for meets) or up-set (for joins) of m. An element m of the
// common bound set is its extremum iff its own bound set is the whole common
// set, i.e. iff the popcounts agree.
std::optional<std::size_t> extremal_bound(const std::vector<std::uint64_t>& rows, std::size_t words, std::size_t x,
                                          std::size_t y) {
  std::size_t common = 0;
  for (std::size_t w = 0; w < words; ++w) {
    common += static_cast<std::size_t>(std::popcount(rows[x * words + w] & rows[y * words + w]));
  }
  for (std::size_t w = 0; w < words; ++w) {
    for (std::uint64_t b = rows[x * words + w] & rows[y * words + w]; b != 0; b &= b - 1) {
      std::size_t m = w * 64 + static_cast<std::size_t>(std::countr_zero(b));
      std::size_t own = 0;
      for (std::size_t v = 0; v < words; ++v) own += static_cast<std::size_t>(std::popcount(rows[m * words + v]));
      if (own == common) return m;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> FinPoset::meet(std::size_t x, std::size_t y) const {
  return extremal_bound(down_, words_, x, y);
}

std::optional<std::size_t> FinPoset::join(std::size_t x, std::size_t y) const {
  return extremal_bound(up_, words_, x, y);
}

std::optional<std::size_t> FinPoset::bottom() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (up_count(i) == size()) return i;
  return std::nullopt;
}

std::optional<std::size_t> FinPoset::top() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (down_count(i) == size()) return i;
  return std::nullopt;
}

std::optional<std::string> meet(const FinPoset& p, std::string_view x, std::string_view y) {
  auto m = p.meet(p.index(x), p.index(y));
  if (!m) return std::nullopt;
  return p.label(*m);
}

std::optional<std::string> join(const FinPoset& p, std::string_view x, std::string_view y) {
  auto j = p.join(p.index(x), p.index(y));
  if (!j) return std::nullopt;
  return p.label(*j);
}

FinPoset from_family(const std::vector<std::vector<std::string>>& sets) {
  std::vector<std::vector<std::string>> uniq;
  for (auto s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (std::find(uniq.begin(), uniq.end(), s) == uniq.end()) uniq.push_back(std::move(s));
  }
  std::vector<std::string> labels;
  for (const auto& s : uniq) {
    std::string lab = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) lab += ',';
      lab += s[i];
    }
    labels.push_back(lab + "}");
  }
  return FinPoset::from_predicate(std::move(labels), [&](std::size_t a, std::size_t b) {
    return std::includes(uniq[b].begin(), uniq[b].end(), uniq[a].begin(), uniq[a].end());
  });
}

FinPoset chain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinPoset::from_predicate(std::move(labels), [](std::size_t a, std::size_t b) { return a <= b; });
}

// ---------------------------------------------------------------------------
// Classification

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Tables {
  std::size_t n;
  std::vector<std::size_t> meet, join;
  std::size_t m(std::size_t a, std::size_t b) const { return meet[a * n + b]; }
  std::size_t j(std::size_t a, std::size_t b) const { return join[a * n + b]; }
};

Tables tabulate(const FinPoset& p) {
  const std::size_t n = p.size();
  Tables t{n, std::vector<std::size_t>(n * n, kNone), std::vector<std::size_t>(n * n, kNone)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      auto mm = p.meet(a, b);
      auto jj = p.join(a, b);
      t.meet[a * n + b] = t.meet[b * n + a] = mm.value_or(kNone);
      t.join[a * n + b] = t.join[b * n + a] = jj.value_or(kNone);
    }
  }
  return t;
}

LawWitness witness(const FinPoset& p, std::string law, std::initializer_list<std::size_t> elems) {
  LawWitness w{std::move(law), {}};
  for (auto e : elems) w.elements.push_back(p.label(e));
  return w;
}

}  // namespace

PosetProfile classify(const FinPoset& p) {
  PosetProfile prof;
  const std::size_t n = p.size();
  prof.size = n;
  if (n == 0) return prof;
  const Tables t = tabulate(p);
  auto note = [&](LawWitness w) {
    if (!prof.failure_witness) prof.failure_witness = std::move(w);
  };

  prof.is_meet_semilattice = true;
  prof.is_join_semilattice = true;
  for (std::size_t a = 0; a < n && prof.is_meet_semilattice; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (t.m(a, b) == kNone) {
        prof.is_meet_semilattice = false;
        note(witness(p, "meet", {a, b}));
        break;
      }
  for (std::size_t a = 0; a < n && prof.is_join_semilattice; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (t.j(a, b) == kNone) {
        prof.is_join_semilattice = false;
        note(witness(p, "join", {a, b}));
        break;
      }
  prof.is_lattice = prof.is_meet_semilattice && prof.is_join_semilattice;

  if (prof.is_lattice) {
    prof.is_modular = true;
    // x <= z  implies  x v (y ^ z) = (x v y) ^ z
    for (std::size_t x = 0; x < n && prof.is_modular; ++x)
      for (std::size_t z = 0; z < n && prof.is_modular; ++z) {
        if (!p.leq(x, z)) continue;
        for (std::size_t y = 0; y < n; ++y)
          if (t.j(x, t.m(y, z)) != t.m(t.j(x, y), z)) {
            prof.is_modular = false;
            note(witness(p, "modular", {x, y, z}));
            break;
          }
      }
    prof.is_distributive = true;
    // x ^ (y v z) = (x ^ y) v (x ^ z)
    for (std::size_t x = 0; x < n && prof.is_distributive; ++x)
      for (std::size_t y = 0; y < n && prof.is_distributive; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (t.m(x, t.j(y, z)) != t.j(t.m(x, y), t.m(x, z))) {
            prof.is_distributive = false;
            note(witness(p, "distributive", {x, y, z}));
            break;
          }
    const std::size_t bot = *p.bottom(), top = *p.top();
    bool complemented = n >= 2;
    if (!complemented) note(witness(p, "nontrivial", {bot}));
    for (std::size_t x = 0; x < n && complemented; ++x) {
      bool found = false;
      for (std::size_t y = 0; y < n && !found; ++y) found = t.m(x, y) == bot && t.j(x, y) == top;
      if (!found) {
        complemented = false;
        note(witness(p, "complement", {x}));
      }
    }
    prof.is_boolean = prof.is_distributive && complemented;
  }

  prof.is_linear = true;
  for (std::size_t a = 0; a < n && prof.is_linear; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!p.comparable(a, b)) {
        prof.is_linear = false;
        note(witness(p, "comparable", {a, b}));
        break;
      }

  if (auto bot = p.bottom()) {
    std::vector<std::size_t> atoms;
    for (std::size_t a = 0; a < n; ++a)
      if (p.less(*bot, a) && p.down_count(a) == 2) atoms.push_back(a);
    prof.is_atomic = true;
    for (std::size_t x = 0; x < n && prof.is_atomic; ++x) {
      if (x == *bot) continue;
      prof.is_atomic = std::any_of(atoms.begin(), atoms.end(), [&](std::size_t a) { return p.leq(a, x); });
    }
  }
  return prof;
}

std::optional<ForbiddenSublattice> find_forbidden_sublattice(const FinPoset& lattice) {
  const std::size_t n = lattice.size();
  const Tables t = tabulate(lattice);
  for (auto v : t.meet)
    if (v == kNone) throw PreconditionError("forbidden-sublattice search needs a lattice");
  for (auto v : t.join)
    if (v == kNone) throw PreconditionError("forbidden-sublattice search needs a lattice");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      if (!lattice.less(a, c)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (lattice.comparable(a, b) || lattice.comparable(c, b)) continue;
        if (t.m(a, b) == t.m(c, b) && t.j(a, b) == t.j(c, b)) {
          return ForbiddenSublattice{ForbiddenSublattice::Shape::N5, t.m(a, b), t.j(a, b), {a, c, b}};
        }
      }
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (lattice.comparable(a, b)) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (lattice.comparable(a, c) || lattice.comparable(b, c)) continue;
        const std::size_t o = t.m(a, b), i = t.j(a, b);
        if (t.m(a, c) == o && t.m(b, c) == o && t.j(a, c) == i && t.j(b, c) == i) {
          return ForbiddenSublattice{ForbiddenSublattice::Shape::M3, o, i, {a, b, c}};
        }
      }
    }
  return std::nullopt;
}

FinPoset product(const FinPoset& a, const FinPoset& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) labels.push_back("(" + a.label(i) + "|" + b.label(j) + ")");
  const std::size_t nb = b.size();
  return FinPoset::from_predicate(std::move(labels), [&](std::size_t x, std::size_t y) {
    return a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb);
  });
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

std::vector<std::vector<std::size_t>> lower_covers(const FinPoset& p) {
  std::vector<std::vector<std::size_t>> out(p.size());
  for (auto [lo, hi] : hasse(p)) out[hi].push_back(lo);
  return out;
}

std::vector<std::vector<std::size_t>> upper_covers(const FinPoset& p) {
  std::vector<std::vector<std::size_t>> out(p.size());
  for (auto [lo, hi] : hasse(p)) out[lo].push_back(hi);
  return out;
}

// Colour refinement run on both posets with a shared palette, so equal
// colours mean equal invariants across the two.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const FinPoset& a, const FinPoset& b) {
  using Signature = std::vector<std::size_t>;
  const FinPoset* ps[2] = {&a, &b};
  std::vector<std::size_t> col[2];
  std::vector<std::vector<std::size_t>> lo[2], hi[2];
  auto ha = heights(a), hb = heights(b);
  const std::vector<std::size_t>* hs[2] = {&ha, &hb};
  for (int s = 0; s < 2; ++s) {
    lo[s] = lower_covers(*ps[s]);
    hi[s] = upper_covers(*ps[s]);
  }
  {
    std::map<Signature, std::size_t> palette;
    for (int s = 0; s < 2; ++s) {
      col[s].resize(ps[s]->size());
      for (std::size_t x = 0; x < ps[s]->size(); ++x) {
        Signature sig{ps[s]->down_count(x), ps[s]->up_count(x), (*hs[s])[x], lo[s][x].size(), hi[s][x].size()};
        col[s][x] = palette.emplace(sig, palette.size()).first->second;
      }
    }
  }
  std::size_t classes = 0;
  while (true) {
    std::map<Signature, std::size_t> palette;
    std::vector<std::size_t> next[2];
    for (int s = 0; s < 2; ++s) {
      next[s].resize(ps[s]->size());
      for (std::size_t x = 0; x < ps[s]->size(); ++x) {
        Signature sig{col[s][x]};
        std::vector<std::size_t> l, h;
        for (auto y : lo[s][x]) l.push_back(col[s][y]);
        for (auto y : hi[s][x]) h.push_back(col[s][y]);
        std::sort(l.begin(), l.end());
        std::sort(h.begin(), h.end());
        sig.push_back(kNone);
        sig.insert(sig.end(), l.begin(), l.end());
        sig.push_back(kNone);
        sig.insert(sig.end(), h.begin(), h.end());
        next[s][x] = palette.emplace(std::move(sig), palette.size()).first->second;
      }
    }
    col[0] = std::move(next[0]);
    col[1] = std::move(next[1]);
    if (palette.size() == classes) break;
    classes = palette.size();
  }
  return {col[0], col[1]};
}

class IsoSearch {
 public:
  IsoSearch(const FinPoset& a, const FinPoset& b, std::vector<std::size_t> ca, std::vector<std::size_t> cb)
      : a_(a), b_(b), ca_(std::move(ca)), cb_(std::move(cb)), map_(a.size(), kNone), used_(b.size(), false) {
    order_.resize(a.size());
    std::iota(order_.begin(), order_.end(), 0);
    auto h = heights(a);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) { return h[x] < h[y]; });
  }

  bool run(std::size_t depth = 0) {
    if (depth == order_.size()) return true;
    const std::size_t x = order_[depth];
    for (std::size_t y = 0; y < b_.size(); ++y) {
      if (used_[y] || cb_[y] != ca_[x] || !consistent(depth, x, y)) continue;
      map_[x] = y;
      used_[y] = true;
      if (run(depth + 1)) return true;
      used_[y] = false;
      map_[x] = kNone;
    }
    return false;
  }

  const std::vector<std::size_t>& mapping() const { return map_; }

 private:
  bool consistent(std::size_t depth, std::size_t x, std::size_t y) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const std::size_t u = order_[i], v = map_[u];
      if (a_.leq(u, x) != b_.leq(v, y) || a_.leq(x, u) != b_.leq(y, v)) return false;
    }
    return true;
  }

  const FinPoset& a_;
  const FinPoset& b_;
  std::vector<std::size_t> ca_, cb_;
  std::vector<std::size_t> order_, map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const FinPoset& a, const FinPoset& b, std::size_t bound) {
  if (a.size() > bound || b.size() > bound) {
    throw BoundError("isomorphism search is limited to " + std::to_string(bound) + " elements");
  }
  if (a.size() != b.size()) return std::nullopt;
  std::size_t pa = 0, pb = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    pa += a.down_count(x);
    pb += b.down_count(x);
  }
  if (pa != pb) return std::nullopt;
  auto [ca, cb] = refine_colours(a, b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  IsoSearch search(a, b, std::move(ca), std::move(cb));
  if (!search.run()) return std::nullopt;
  return search.mapping();
}

bool isomorphic(const FinPoset& a, const FinPoset& b, std::size_t bound) {
  return find_isomorphism(a, b, bound).has_value();
}

// ---------------------------------------------------------------------------
// Hasse diagrams

std::vector<std::size_t> heights(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Sorting by down-set size gives a linear extension.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return p.down_count(x) < p.down_count(y); });
  std::vector<std::size_t> h(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (p.less(order[j], order[i])) h[order[i]] = std::max(h[order[i]], h[order[j]] + 1);
  return h;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t lo = 0; lo < n; ++lo) {
    for (std::size_t hi = 0; hi < n; ++hi) {
      if (p.less(lo, hi) && p.interval_size(lo, hi) == 2) out.emplace_back(lo, hi);
    }
  }
  std::sort(out.begin(), out.end(), [&](auto x, auto y) {
    return std::tie(p.label(x.first), p.label(x.second)) < std::tie(p.label(y.first), p.label(y.second));
  });
  return out;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const FinPoset& p) {
  std::ostringstream os;
  os << "digraph hasse {\n";
  os << "  rankdir=BT;\n";
  auto names = p.labels();
  std::sort(names.begin(), names.end());
  for (const auto& s : names) os << "  " << quote(s) << ";\n";
  auto h = heights(p);
  std::map<std::size_t, std::vector<std::string>> levels;
  for (std::size_t x = 0; x < p.size(); ++x) levels[h[x]].push_back(p.label(x));
  for (auto& [level, members] : levels) {
    std::sort(members.begin(), members.end());
    os << "  { rank=same;";
    for (const auto& s : members) os << " " << quote(s) << ";";
    os << " }\n";
  }
  for (auto [lo, hi] : hasse(p)) os << "  " << quote(p.label(lo)) << " -> " << quote(p.label(hi)) << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

// Reads a quoted DOT identifier starting at s[i] == '"'; advances i past it.
std::string read_quoted(std::string_view s, std::size_t& i) {
  std::string out;
  ++i;
  while (i < s.size() && s[i] != '"') {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out += s[i++];
  }
  if (i >= s.size()) throw InputError("unterminated quoted identifier in DOT input");
  ++i;
  return out;
}

}  // namespace

FinPoset from_dot(std::string_view text) {
  if (text.find("digraph") == std::string_view::npos) throw InputError("DOT input is not a digraph");
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
  auto add = [&](const std::string& s) {
    if (std::find(labels.begin(), labels.end(), s) == labels.end()) labels.push_back(s);
  };
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string_view::npos || line[i] != '"') continue;
    std::string first = read_quoted(line, i);
    add(first);
    std::size_t arrow = line.find("->", i);
    if (arrow == std::string_view::npos) continue;
    std::size_t j = line.find('"', arrow);
    if (j == std::string_view::npos) throw InputError("malformed DOT edge statement");
    std::string second = read_quoted(line, j);
    add(second);
    edges.emplace_back(std::move(first), std::move(second));
  }
  return FinPoset(std::move(labels), edges);
}

}  // namespace mll
