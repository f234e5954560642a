#include "mll/formula.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "mll/error.hpp"

namespace mll {

struct Formula::Node {
  Kind kind;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

Formula Formula::make(Kind kind, std::string symbol, std::vector<Term> terms, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{kind, std::move(symbol), std::move(terms), std::move(children)}));
}

Formula Formula::equality(Term lhs, Term rhs) { return make(Kind::Equality, {}, {std::move(lhs), std::move(rhs)}, {}); }

Formula Formula::atom(std::string relation, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("atom needs at least one argument");
  return make(Kind::Atom, std::move(relation), std::move(args), {});
}

Formula Formula::negation(Formula f) { return make(Kind::Not, {}, {}, {std::move(f)}); }
Formula Formula::conjunction(Formula l, Formula r) { return make(Kind::And, {}, {}, {std::move(l), std::move(r)}); }
Formula Formula::disjunction(Formula l, Formula r) { return make(Kind::Or, {}, {}, {std::move(l), std::move(r)}); }
Formula Formula::implication(Formula l, Formula r) { return make(Kind::Implies, {}, {}, {std::move(l), std::move(r)}); }
Formula Formula::exists(std::string variable, Formula body) {
  return make(Kind::Exists, std::move(variable), {}, {std::move(body)});
}
Formula Formula::forall(std::string variable, Formula body) {
  return make(Kind::Forall, std::move(variable), {}, {std::move(body)});
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }

const Formula& Formula::body() const {
  if (node_->children.size() != 1) throw std::logic_error("formula has no single body");
  return node_->children[0];
}
const Formula& Formula::left() const {
  if (node_->children.size() != 2) throw std::logic_error("formula is not binary");
  return node_->children[0];
}
const Formula& Formula::right() const {
  if (node_->children.size() != 2) throw std::logic_error("formula is not binary");
  return node_->children[1];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.symbol == y.symbol && x.terms == y.terms && x.children == y.children;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Equality:
    case Formula::Kind::Atom:
      for (const auto& t : f.terms()) {
        if (t.is_constant) continue;
        if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) continue;
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
      }
      return;
    case Formula::Kind::Not:
      collect_free(f.body(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      bound.push_back(f.symbol());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::size_t quantifier_rank(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Equality:
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::Not:
      return quantifier_rank(f.body());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return std::max(quantifier_rank(f.left()), quantifier_rank(f.right()));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 1 + quantifier_rank(f.body());
  }
  return 0;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    out.push_back(g);
    switch (g.kind()) {
      case Formula::Kind::Not:
      case Formula::Kind::Exists:
      case Formula::Kind::Forall:
        stack.push_back(g.body());
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        stack.push_back(g.right());
        stack.push_back(g.left());
        break;
      default:
        break;
    }
  }
  return out;
}

void check_signature(const Formula& f, const Signature& sig) {
  for (const auto& g : subformulas(f)) {
    for (const auto& t : g.terms()) {
      if (t.is_constant && !sig.has_constant(t.name)) throw SymbolError("unknown constant '" + t.name + "'");
    }
    if (g.kind() == Formula::Kind::Atom) {
      auto arity = sig.arity(g.symbol());
      if (!arity) throw SymbolError("unknown relation '" + g.symbol() + "'");
      if (*arity != g.terms().size()) {
        throw SymbolError("relation '" + g.symbol() + "' has arity " + std::to_string(*arity) + ", used with " +
                          std::to_string(g.terms().size()) + " arguments");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength of each node, matching the grammar levels.
int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 0;
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    default:
      return 4;
  }
}

void print(std::string& out, const Formula& f, int required) {
  const bool wrap = level(f) < required;
  if (wrap) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Equality:
      out += f.terms()[0].name;
      out += " = ";
      out += f.terms()[1].name;
      break;
    case Formula::Kind::Atom:
      out += f.symbol();
      out += '(';
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ',';
        out += f.terms()[i].name;
      }
      out += ')';
      break;
    case Formula::Kind::Not:
      out += '~';
      print(out, f.body(), 4);
      break;
    case Formula::Kind::And:
      print(out, f.left(), 3);
      out += " & ";
      print(out, f.right(), 4);
      break;
    case Formula::Kind::Or:
      print(out, f.left(), 2);
      out += " | ";
      print(out, f.right(), 3);
      break;
    case Formula::Kind::Implies:
      print(out, f.left(), 2);
      out += " -> ";
      print(out, f.right(), 1);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out += f.kind() == Formula::Kind::Exists ? "exists " : "forall ";
      out += f.symbol();
      out += ". ";
      print(out, f.body(), 0);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(out, f, 0);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Exists, Forall, Dot, Arrow, Bar, Amp, Tilde, LParen, RParen, Comma, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Exists: return "'exists'";
    case Tok::Forall: return "'forall'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Bar: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex(std::string_view text, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t at = base + i;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = word == "exists" ? Tok::Exists : word == "forall" ? Tok::Forall : Tok::Ident;
      out.push_back({kind, std::move(word), at});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", at});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '.': kind = Tok::Dot; break;
      case '|': kind = Tok::Bar; break;
      case '&': kind = Tok::Amp; break;
      case '~': kind = Tok::Tilde; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw SyntaxError(at, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), at});
    ++i;
  }
  out.push_back({Tok::End, "", base + text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& sig) : tokens_(std::move(tokens)), sig_(sig) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("expected end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw SyntaxError(t.offset, expected + ", found " + (t.kind == Tok::Ident ? "'" + t.text + "'" : describe(t.kind)));
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) fail(std::string("expected ") + describe(kind));
    return tokens_[pos_++];
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  Formula formula() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) {
      const bool is_exists = tokens_[pos_++].kind == Tok::Exists;
      const Token& var = expect(Tok::Ident);
      if (sig_.has_constant(var.text) || sig_.has_relation(var.text)) {
        throw SymbolError("cannot quantify over signature symbol '" + var.text + "' at offset " +
                          std::to_string(var.offset));
      }
      std::string name = var.text;
      expect(Tok::Dot);
      Formula body = formula();
      return is_exists ? Formula::exists(std::move(name), std::move(body))
                       : Formula::forall(std::move(name), std::move(body));
    }
    return implication();
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (accept(Tok::Bar)) acc = Formula::disjunction(std::move(acc), conjunction());
    return acc;
  }

  Formula conjunction() {
    Formula acc = literal();
    while (accept(Tok::Amp)) acc = Formula::conjunction(std::move(acc), literal());
    return acc;
  }

  Formula literal() {
    if (accept(Tok::Tilde)) return Formula::negation(literal());
    if (accept(Tok::LParen)) {
      Formula inner = formula();
      expect(Tok::RParen);
      return inner;
    }
    return atom();
  }

  Formula atom() {
    if (peek().kind != Tok::Ident) fail("expected formula");
    const Token& head = tokens_[pos_++];
    if (accept(Tok::LParen)) {
      auto arity = sig_.arity(head.text);
      if (!arity) {
        throw SymbolError("unknown relation '" + head.text + "' at offset " + std::to_string(head.offset));
      }
      std::vector<Term> args{term()};
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen);
      if (args.size() != *arity) {
        throw SymbolError("relation '" + head.text + "' has arity " + std::to_string(*arity) + " but " +
                          std::to_string(args.size()) + " arguments are given at offset " +
                          std::to_string(head.offset));
      }
      return Formula::atom(head.text, std::move(args));
    }
    Term lhs = classify(head);
    expect(Tok::Equals);
    return Formula::equality(std::move(lhs), term());
  }

  Term term() { return classify(expect(Tok::Ident)); }

  Term classify(const Token& t) const {
    if (sig_.has_relation(t.text)) {
      throw SymbolError("relation '" + t.text + "' used as a term at offset " + std::to_string(t.offset));
    }
    return sig_.has_constant(t.text) ? Term::constant(t.text) : Term::var(t.text);
  }

  std::vector<Token> tokens_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

Formula parse_at(std::string_view text, std::size_t base, const Signature& sig) {
  return Parser(lex(text, base), sig).parse();
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return parse_at(text, 0, sig); }

std::vector<Formula> parse_formula_lines(std::string_view text, const Signature& sig) {
  std::vector<Formula> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(parse_at(line, start, sig));
    start = end + 1;
  }
  return out;
}

}  // namespace mll
