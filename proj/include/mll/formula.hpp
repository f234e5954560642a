#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mll/structure.hpp"

namespace mll {

// A variable or a constant symbol. Which one is fixed when the formula is
// built (the parser decides by signature membership).
struct Term {
  std::string name;
  bool is_constant = false;

  static Term var(std::string name) { return {std::move(name), false}; }
  static Term constant(std::string name) { return {std::move(name), true}; }

  friend bool operator==(const Term&, const Term&) = default;
};

// Immutable first-order formula over a relational signature with constants.
// Nodes are shared; copying a Formula is cheap.
class Formula {
 public:
  enum class Kind { Equality, Atom, Not, And, Or, Implies, Exists, Forall };

  static Formula equality(Term lhs, Term rhs);
  static Formula atom(std::string relation, std::vector<Term> args);
  static Formula negation(Formula f);
  static Formula conjunction(Formula l, Formula r);
  static Formula disjunction(Formula l, Formula r);
  static Formula implication(Formula l, Formula r);
  static Formula exists(std::string variable, Formula body);
  static Formula forall(std::string variable, Formula body);

  Kind kind() const;
  bool is_atomic() const { return kind() == Kind::Equality || kind() == Kind::Atom; }
  bool is_quantifier() const { return kind() == Kind::Exists || kind() == Kind::Forall; }

  // Atom: relation name. Exists/Forall: bound variable.
  const std::string& symbol() const;
  // Atom: arguments. Equality: the two sides.
  const std::vector<Term>& terms() const;
  // Not, Exists, Forall.
  const Formula& body() const;
  // And, Or, Implies.
  const Formula& left() const;
  const Formula& right() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string symbol, std::vector<Term> terms, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

// Free variables in order of first occurrence (left to right).
std::vector<std::string> free_variables(const Formula& f);
std::size_t quantifier_rank(const Formula& f);
// Preorder list of all subformulas, f itself first; duplicates kept.
std::vector<Formula> subformulas(const Formula& f);

// Throws SymbolError if f mentions a relation or constant outside `sig` or
// uses a relation at the wrong arity.
void check_signature(const Formula& f, const Signature& sig);

// Canonical concrete syntax with minimal parentheses; parse_formula inverts it.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

// Grammar:
//   formula := quant | impl
//   quant   := ("exists" | "forall") IDENT "." formula
//   impl    := disj ("->" impl)?
//   disj    := conj ("|" conj)*
//   conj    := lit ("&" lit)*
//   lit     := "~" lit | "(" formula ")" | atom
//   atom    := IDENT "(" term ("," term)* ")" | term "=" term
//   term    := IDENT
// "&" and "|" associate to the left, "->" to the right. An identifier in term
// position is a constant iff `sig` declares it as one.
// Throws SyntaxError (with byte offset) or SymbolError.
Formula parse_formula(std::string_view text, const Signature& sig);

// Reads a .fml document: one formula per line, '#' starts a comment, blank
// lines ignored. Error offsets are relative to the whole text.
std::vector<Formula> parse_formula_lines(std::string_view text, const Signature& sig);

}  // namespace mll
