#include "mll/lrk.hpp"

#include <algorithm>
#include <charconv>

#include "mll/error.hpp"

namespace mll {

using boost::multiprecision::cpp_int;

std::string TypeSpectrum::type_name(std::size_t i) const {
  if (i >= type_count()) throw PreconditionError("type index out of range");
  return i < k ? "p" + std::to_string(i + 1) : "q" + std::to_string(i - k + 1);
}

std::vector<std::string> TypeSpectrum::type_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < type_count(); ++i) out.push_back(type_name(i));
  return out;
}

namespace {

// Index of a type name for `spec`, or -1.
long type_index(std::string_view name, const TypeSpectrum& spec) {
  if (name.size() < 2 || (name[0] != 'p' && name[0] != 'q') || name[1] == '0') return -1;
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
  if (ec != std::errc() || ptr != name.data() + name.size() || n == 0) return -1;
  if (name[0] == 'p') return n <= spec.k ? static_cast<long>(n - 1) : -1;
  return n <= spec.s ? static_cast<long>(spec.k + n - 1) : -1;
}

void check_spec(const TypeSpectrum& spec) {
  if (spec.k > kMaxSpectrumParameter || spec.s > kMaxSpectrumParameter) {
    throw BoundError("k and s must each be at most " + std::to_string(kMaxSpectrumParameter));
  }
}

}  // namespace

SignedTypeSet::SignedTypeSet(std::vector<Pair> pairs, const TypeSpectrum& spec) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& [name, tag] = pairs_[i];
    const long t = type_index(name, spec);
    if (t < 0) throw PreconditionError("unknown type '" + name + "'");
    if (tag != 0 && tag != 1) throw PreconditionError("tag of '" + name + "' must be 0 or 1");
    if (tag == 1 && !spec.taggable(static_cast<std::size_t>(t))) {
      throw PreconditionError("type '" + name + "' can only carry tag 0");
    }
    if (i > 0 && pairs_[i - 1].first == name) throw PreconditionError("type '" + name + "' occurs twice");
  }
}

bool SignedTypeSet::contains(std::string_view name, int tag) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair(std::string(name), tag));
}

int SignedTypeSet::tag_of(std::string_view name) const {
  for (const auto& [n, t] : pairs_)
    if (n == name) return t;
  return -1;
}

std::string to_string(const SignedTypeSet& x) {
  if (x.pairs().empty()) return "{}";
  std::string out;
  for (const auto& [name, tag] : x.pairs()) {
    if (!out.empty()) out += ',';
    out += name + ':' + std::to_string(tag);
  }
  return out;
}

SignedTypeSet parse_signed_type_set(std::string_view text, const TypeSpectrum& spec) {
  std::vector<SignedTypeSet::Pair> pairs;
  if (text != "{}" && !text.empty()) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(start, end - start);
      const auto colon = item.find(':');
      if (colon == std::string_view::npos || colon + 2 != item.size() || (item.back() != '0' && item.back() != '1')) {
        throw InputError("malformed signed pair '" + std::string(item) + "'");
      }
      pairs.emplace_back(std::string(item.substr(0, colon)), item.back() - '0');
      start = end + 1;
    }
  }
  return SignedTypeSet(std::move(pairs), spec);
}

cpp_int lrk_size(const TypeSpectrum& spec) {
  check_spec(spec);
  return pow(cpp_int(2), static_cast<unsigned>(spec.k)) * pow(cpp_int(3), static_cast<unsigned>(spec.s));
}

std::vector<SignedTypeSet> lrk_elements(const TypeSpectrum& spec, std::size_t bound) {
  if (lrk_size(spec) > bound) {
    throw BoundError("LRK(" + std::to_string(spec.k) + "," + std::to_string(spec.s) + ") has more than " +
                     std::to_string(bound) + " elements");
  }
  const auto names = spec.type_names();
  // Odometer over per-type states: 0 absent, 1 tag 0, 2 tag 1 (q-types only).
  std::vector<int> state(spec.type_count(), 0);
  std::vector<SignedTypeSet> out;
  while (true) {
    std::vector<SignedTypeSet::Pair> pairs;
    for (std::size_t i = 0; i < state.size(); ++i)
      if (state[i] > 0) pairs.emplace_back(names[i], state[i] - 1);
    out.emplace_back(std::move(pairs), spec);
    std::size_t i = 0;
    for (; i < state.size(); ++i) {
      const int top = spec.taggable(i) ? 2 : 1;
      if (++state[i] <= top) break;
      state[i] = 0;
    }
    if (i == state.size()) break;
  }
  std::sort(out.begin(), out.end(),
            [](const SignedTypeSet& a, const SignedTypeSet& b) { return a.pairs() < b.pairs(); });
  return out;
}

SignedTypeSet lrk_meet(const SignedTypeSet& x, const SignedTypeSet& y, const TypeSpectrum& spec) {
  std::vector<SignedTypeSet::Pair> out;
  for (const auto& [p, i] : x.pairs()) {
    if (y.contains(p, i)) out.emplace_back(p, i);
    if (i == 0 && y.contains(p, 1)) out.emplace_back(p, 0);
  }
  for (const auto& [p, i] : y.pairs())
    if (i == 0 && x.contains(p, 1)) out.emplace_back(p, 0);
  return SignedTypeSet(std::move(out), spec);
}

SignedTypeSet lrk_join(const SignedTypeSet& x, const SignedTypeSet& y, const TypeSpectrum& spec) {
  std::vector<SignedTypeSet::Pair> out;
  for (const auto& [p, i] : x.pairs()) {
    if (y.contains(p, i)) out.emplace_back(p, i);                              // i
    if (!y.contains(p, 0) && !y.contains(p, 1)) out.emplace_back(p, i);        // ii
    if (i == 0 && y.contains(p, 1)) out.emplace_back(p, 1);                    // iv
  }
  for (const auto& [p, i] : y.pairs()) {
    if (!x.contains(p, 0) && !x.contains(p, 1)) out.emplace_back(p, i);        // iii
    if (i == 0 && x.contains(p, 1)) out.emplace_back(p, 1);                    // iv
  }
  return SignedTypeSet(std::move(out), spec);
}

FinPoset lrk_lattice(const TypeSpectrum& spec, std::size_t bound) {
  const auto elems = lrk_elements(spec, bound);
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(to_string(e));
  return FinPoset::from_predicate(std::move(labels),
                                  [&](std::size_t a, std::size_t b) { return lrk_meet(elems[a], elems[b], spec) == elems[a]; });
}

cpp_int count_countable_models(const TypeSpectrum& spec) {
  check_spec(spec);
  return pow(cpp_int(3), static_cast<unsigned>(spec.k)) * pow(cpp_int(6), static_cast<unsigned>(spec.s));
}

std::vector<std::pair<std::string, std::string>> type_spectrum_labels(const TypeSpectrum& spec) {
  check_spec(spec);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < spec.type_count(); ++i)
    out.emplace_back(spec.type_name(i), spec.taggable(i) ? "6-spectrum" : "3-spectrum");
  return out;
}

LrkClass classify_lrk(const TypeSpectrum& spec) {
  LrkClass c;
  c.size = lrk_size(spec);
  c.is_boolean = spec.k >= 1 && spec.s == 0;
  c.is_linear = spec.k + spec.s <= 1;
  return c;
}

DisjointUnion disjoint_union(const TypeSpectrum& a, const TypeSpectrum& b, std::size_t bound) {
  DisjointUnion u;
  u.combined = TypeSpectrum{a.k + b.k, a.s + b.s};
  check_spec(u.combined);
  u.product_isomorphic = isomorphic(lrk_lattice(u.combined, bound), product(lrk_lattice(a, bound), lrk_lattice(b, bound)), bound);
  u.linear = classify_lrk(u.combined).is_linear;
  u.linear_by_factors = classify_lrk(a).is_linear && classify_lrk(b).is_linear &&
                        std::min(count_countable_models(a), count_countable_models(b)) == 1;
  return u;
}

}  // namespace mll
