#include "mll/eval.hpp"

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "mll/error.hpp"

namespace mll {

namespace {

class Evaluator {
 public:
  Evaluator(const FinStructure& m, Subset domain, const Assignment& a) : m_(m), domain_(domain) {
    for (const auto& [name, value] : a) {
      if (value >= m.size() || !domain.contains(value)) {
        throw PreconditionError("variable '" + name + "' is assigned outside the domain");
      }
      env_.emplace_back(name, value);
    }
  }

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Equality:
        return value(f.terms()[0]) == value(f.terms()[1]);
      case Formula::Kind::Atom: {
        args_.clear();
        for (const auto& t : f.terms()) args_.push_back(value(t));
        return m_.holds(f.symbol(), args_);
      }
      case Formula::Kind::Not:
        return !eval(f.body());
      case Formula::Kind::And:
        return eval(f.left()) && eval(f.right());
      case Formula::Kind::Or:
        return eval(f.left()) || eval(f.right());
      case Formula::Kind::Implies:
        return !eval(f.left()) || eval(f.right());
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        const bool want = f.kind() == Formula::Kind::Exists;
        env_.emplace_back(f.symbol(), 0);
        bool result = !want;
        for (std::uint64_t bits = domain_.bits(); bits != 0; bits &= bits - 1) {
          env_.back().second = static_cast<ElementId>(std::countr_zero(bits));
          if (eval(f.body()) == want) {
            result = want;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  ElementId value(const Term& t) const {
    if (t.is_constant) return m_.constant(t.name);
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == t.name) return it->second;
    }
    throw SymbolError("free variable '" + t.name + "' is not assigned");
  }

  const FinStructure& m_;
  Subset domain_;
  std::vector<std::pair<std::string, ElementId>> env_;
  std::vector<ElementId> args_;
};

}  // namespace

bool evaluate(const FinStructure& m, const Formula& phi, const Assignment& a) {
  return Evaluator(m, m.everything(), a).eval(phi);
}

bool evaluate_within(const FinStructure& m, Subset within, const Formula& phi, const Assignment& a) {
  if (within.empty() || !within.subset_of(m.everything())) {
    throw PreconditionError("evaluation domain must be a nonempty subset of the universe");
  }
  if (!m.constant_set().subset_of(within)) {
    throw PreconditionError("evaluation domain must contain every constant interpretation");
  }
  return Evaluator(m, within, a).eval(phi);
}

}  // namespace mll
