#include "acl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace acl {

// ---------------------------------------------------------------------------
// Signature

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Constant: return "constant";
    case SymbolKind::Function: return "function";
    case SymbolKind::Relation: return "relation";
  }
  return "?";
}

SymbolKind parse_symbol_kind(std::string_view text) {
  if (text == "constant") return SymbolKind::Constant;
  if (text == "function") return SymbolKind::Function;
  if (text == "relation") return SymbolKind::Relation;
  throw SignatureError("unknown symbol kind '" + std::string(text) + "'");
}

bool is_reserved_word(std::string_view name) {
  return name == "d" || name == "sup" || name == "inf" || name == "min" || name == "max";
}

namespace {

bool valid_identifier(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

}  // namespace

Signature::Signature(std::vector<Symbol> symbols) {
  for (auto& s : symbols) add(std::move(s));
}

void Signature::add(Symbol symbol) {
  if (!valid_identifier(symbol.name)) throw SignatureError("invalid symbol name '" + symbol.name + "'");
  if (is_reserved_word(symbol.name)) throw SignatureError("'" + symbol.name + "' is reserved");
  if (find(symbol.name)) throw SignatureError("duplicate symbol '" + symbol.name + "'");
  if (symbol.kind == SymbolKind::Constant && symbol.arity != 0)
    throw SignatureError("constant '" + symbol.name + "' must have arity 0");
  if (symbol.kind != SymbolKind::Constant && symbol.arity == 0)
    throw SignatureError("symbol '" + symbol.name + "' must have arity >= 1");
  if (symbol.lipschitz < 0) throw SignatureError("negative Lipschitz constant for '" + symbol.name + "'");
  symbols_.push_back(std::move(symbol));
}

const Symbol* Signature::find(std::string_view name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return &s;
  return nullptr;
}

const Symbol& Signature::at(std::string_view name) const {
  if (const Symbol* s = find(name)) return *s;
  throw SignatureError("unknown symbol '" + std::string(name) + "'");
}

std::vector<const Symbol*> Signature::of_kind(SymbolKind kind) const {
  std::vector<const Symbol*> out;
  for (const auto& s : symbols_)
    if (s.kind == kind) out.push_back(&s);
  return out;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
  Rational symbol_lipschitz;
  Rational lipschitz;
};

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}, 0, 1}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(name), {}, 0, 0}));
}

Term Term::apply(std::string function, Rational function_lipschitz, std::vector<Term> args) {
  Rational total = 0;
  for (const auto& a : args) total += a.lipschitz();
  Rational lip = function_lipschitz * total;
  return Term(std::make_shared<const Node>(
      Node{Kind::Apply, std::move(function), std::move(args), std::move(function_lipschitz), std::move(lip)}));
}

Term Term::apply(const Signature& sig, const std::string& function, std::vector<Term> args) {
  const Symbol& s = sig.at(function);
  if (s.kind != SymbolKind::Function) throw SignatureError("'" + function + "' is not a function symbol");
  if (s.arity != args.size())
    throw SignatureError("function '" + function + "' expects " + std::to_string(s.arity) + " arguments, got " +
                         std::to_string(args.size()));
  return apply(function, s.lipschitz, std::move(args));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }
const Rational& Term::lipschitz() const { return node_->lipschitz; }
const Rational& Term::symbol_lipschitz() const { return node_->symbol_lipschitz; }

std::set<std::string> Term::variables() const {
  std::set<std::string> out;
  if (kind() == Kind::Variable) out.insert(name());
  for (const auto& a : args()) {
    auto sub = a.variables();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool Term::mentions(const std::string& var) const {
  if (kind() == Kind::Variable) return name() == var;
  return std::any_of(args().begin(), args().end(), [&](const Term& a) { return a.mentions(var); });
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  return kind() == other.kind() && name() == other.name() && args() == other.args();
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind = Kind::One;
  std::string name;  // relation symbol or bound variable
  std::vector<Term> terms;
  std::vector<Formula> children;
  Rational scalar;
  Rational symbol_lipschitz;
  Rational lipschitz;
  Rational bound;
  std::set<std::string> free;
  bool affine = true;
  std::size_t size = 1;
  unsigned depth = 0;
};

namespace {

std::set<std::string> term_vars(const std::vector<Term>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) {
    auto v = t.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

}  // namespace

Formula Formula::one() {
  static const Formula instance = [] {
    Node n;
    n.kind = Kind::One;
    n.lipschitz = 0;
    n.bound = 1;
    return Formula(std::make_shared<const Node>(std::move(n)));
  }();
  return instance;
}

Formula Formula::dist(Term a, Term b) {
  Node n;
  n.kind = Kind::Dist;
  n.lipschitz = a.lipschitz() + b.lipschitz();
  n.bound = 1;
  n.terms = {std::move(a), std::move(b)};
  n.free = term_vars(n.terms);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::rel(std::string relation, Rational relation_lipschitz, std::vector<Term> args) {
  Node n;
  n.kind = Kind::Rel;
  Rational total = 0;
  for (const auto& a : args) total += a.lipschitz();
  n.name = std::move(relation);
  n.lipschitz = relation_lipschitz * total;
  n.symbol_lipschitz = std::move(relation_lipschitz);
  n.bound = 1;
  n.terms = std::move(args);
  n.free = term_vars(n.terms);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::rel(const Signature& sig, const std::string& relation, std::vector<Term> args) {
  const Symbol& s = sig.at(relation);
  if (s.kind != SymbolKind::Relation) throw SignatureError("'" + relation + "' is not a relation symbol");
  if (s.arity != args.size())
    throw SignatureError("relation '" + relation + "' expects " + std::to_string(s.arity) + " arguments, got " +
                         std::to_string(args.size()));
  return rel(relation, s.lipschitz, std::move(args));
}

namespace {

Formula::Node binary_node(Formula::Kind kind, const Formula& a, const Formula& b) {
  Formula::Node n;
  n.kind = kind;
  n.free = a.free_variables();
  n.free.insert(b.free_variables().begin(), b.free_variables().end());
  n.affine = a.is_affine() && b.is_affine() && kind == Formula::Kind::Sum;
  n.size = 1 + a.size() + b.size();
  n.depth = std::max(a.quantifier_depth(), b.quantifier_depth());
  return n;
}

}  // namespace

Formula Formula::sum(Formula a, Formula b) {
  Node n = binary_node(Kind::Sum, a, b);
  n.lipschitz = a.lipschitz() + b.lipschitz();
  n.bound = a.bound() + b.bound();
  n.children = {std::move(a), std::move(b)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::min(Formula a, Formula b) {
  Node n = binary_node(Kind::Min, a, b);
  n.lipschitz = std::max(a.lipschitz(), b.lipschitz());
  n.bound = std::max(a.bound(), b.bound());
  n.children = {std::move(a), std::move(b)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::max(Formula a, Formula b) {
  Node n = binary_node(Kind::Max, a, b);
  n.lipschitz = std::max(a.lipschitz(), b.lipschitz());
  n.bound = std::max(a.bound(), b.bound());
  n.children = {std::move(a), std::move(b)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::scale(Rational r, Formula f) {
  Node n;
  n.kind = Kind::Scale;
  n.lipschitz = abs_value(r) * f.lipschitz();
  n.bound = abs_value(r) * f.bound();
  n.free = f.free_variables();
  n.affine = f.is_affine();
  n.size = 1 + f.size();
  n.depth = f.quantifier_depth();
  n.scalar = std::move(r);
  n.children = {std::move(f)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {

Formula::Node quantifier_node(Formula::Kind kind, const std::string& var, const Formula& body) {
  Formula::Node n;
  n.kind = kind;
  n.name = var;
  n.lipschitz = body.lipschitz();
  n.bound = body.bound();
  n.free = body.free_variables();
  n.free.erase(var);
  n.affine = body.is_affine();
  n.size = 1 + body.size();
  n.depth = 1 + body.quantifier_depth();
  return n;
}

}  // namespace

Formula Formula::sup(std::string var, Formula body) {
  Node n = quantifier_node(Kind::Sup, var, body);
  n.children = {std::move(body)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::inf(std::string var, Formula body) {
  Node n = quantifier_node(Kind::Inf, var, body);
  n.children = {std::move(body)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::numeral(Rational r) { return scale(std::move(r), one()); }

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Rational& Formula::symbol_lipschitz() const { return node_->symbol_lipschitz; }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const Formula& Formula::body() const { return node_->children.at(0); }
const Rational& Formula::scalar() const { return node_->scalar; }
const std::string& Formula::variable() const { return node_->name; }
const Rational& Formula::lipschitz() const { return node_->lipschitz; }
const Rational& Formula::bound() const { return node_->bound; }
const std::set<std::string>& Formula::free_variables() const { return node_->free; }
bool Formula::is_free(const std::string& var) const { return node_->free.count(var) != 0; }
bool Formula::is_affine() const { return node_->affine; }
std::size_t Formula::size() const { return node_->size; }
unsigned Formula::quantifier_depth() const { return node_->depth; }

std::optional<Rational> Formula::numeral_value() const {
  if (kind() == Kind::One) return Rational(1);
  if (kind() == Kind::Scale && body().kind() == Kind::One) return scalar();
  return std::nullopt;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::One: return true;
    case Kind::Dist: return terms() == other.terms();
    case Kind::Rel: return symbol() == other.symbol() && terms() == other.terms();
    case Kind::Sum:
    case Kind::Min:
    case Kind::Max: return left() == other.left() && right() == other.right();
    case Kind::Scale: return scalar() == other.scalar() && body() == other.body();
    case Kind::Inf:
    case Kind::Sup: return variable() == other.variable() && body() == other.body();
  }
  return false;
}

std::set<std::string> Condition::free_variables() const {
  auto out = lhs.free_variables();
  out.insert(rhs.free_variables().begin(), rhs.free_variables().end());
  return out;
}

std::set<std::string> Theory::free_variables() const {
  std::set<std::string> out;
  for (const auto& c : conditions) {
    auto v = c.free_variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

Formula negate(const Formula& f) {
  if (f.kind() == Formula::Kind::Scale) return Formula::scale(-f.scalar(), f.body());
  return Formula::scale(-1, f);
}

// ---------------------------------------------------------------------------
// Printing
//
// Quantifier bodies extend as far right as possible, so a quantifier is
// parenthesized whenever it is an operand of `+` or of a scalar.

std::string to_string(const Term& t) {
  if (t.kind() != Term::Kind::Apply) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

namespace {

std::string print_terms(const std::vector<Term>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ",";
    out += to_string(ts[i]);
  }
  return out;
}

bool is_primary(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::One:
    case Formula::Kind::Dist:
    case Formula::Kind::Rel:
    case Formula::Kind::Min:
    case Formula::Kind::Max: return true;
    default: return false;
  }
}

std::string parenthesized(const Formula& f) { return "(" + to_string(f) + ")"; }

std::string print_scale_body(const Formula& f) { return is_primary(f) ? to_string(f) : parenthesized(f); }

std::string print_sum_operand(const Formula& f, bool right) {
  if (f.is_quantifier()) return parenthesized(f);
  if (right && f.kind() == Formula::Kind::Sum) return parenthesized(f);
  return to_string(f);
}

}  // namespace

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::One: return "1";
    case Formula::Kind::Dist: return "d(" + print_terms(f.terms()) + ")";
    case Formula::Kind::Rel: return f.symbol() + "(" + print_terms(f.terms()) + ")";
    case Formula::Kind::Sum:
      return print_sum_operand(f.left(), false) + " + " + print_sum_operand(f.right(), true);
    case Formula::Kind::Scale:
      // r*1 prints as the bare numeral r, which parses back to r*1.
      if (f.body().kind() == Formula::Kind::One && f.scalar() != 1) return to_string(f.scalar());
      return to_string(f.scalar()) + "*" + print_scale_body(f.body());
    case Formula::Kind::Sup: return "sup " + f.variable() + ". " + to_string(f.body());
    case Formula::Kind::Inf: return "inf " + f.variable() + ". " + to_string(f.body());
    case Formula::Kind::Min: return "min(" + to_string(f.left()) + ", " + to_string(f.right()) + ")";
    case Formula::Kind::Max: return "max(" + to_string(f.left()) + ", " + to_string(f.right()) + ")";
  }
  return "?";
}

std::string to_string(const Condition& c) { return to_string(c.lhs) + " <= " + to_string(c.rhs); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Star, Plus, Minus, Slash, Le, Ge, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
        ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))
        throw SyntaxError("decimal numbers are not accepted, use p/q", start);
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::Le, "<=", start});
      i += 2;
      continue;
    }
    if (c == '>' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::Ge, ">=", start});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '*': k = Tok::Star; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '/': k = Tok::Slash; break;
      case '=': k = Tok::Eq; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// Unknown symbols and arity mismatches are signature errors, not syntax errors.
SignatureError symbol_error(const std::string& what, std::size_t position) {
  return SignatureError(what + " at position " + std::to_string(position));
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

  Formula formula() { return sum(); }

  Term term() {
    const Token& t = expect(Tok::Ident, "term");
    if (is_reserved_word(t.text)) throw SyntaxError("'" + t.text + "' cannot be used as a term", t.pos);
    const Symbol* s = sig_.find(t.text);
    if (peek().kind == Tok::LParen) {
      if (!s) throw symbol_error("unknown function symbol '" + t.text + "'", t.pos);
      if (s->kind != SymbolKind::Function) throw symbol_error("'" + t.text + "' is not a function symbol", t.pos);
      advance();
      auto args = term_list();
      expect(Tok::RParen, "')'");
      if (args.size() != s->arity)
        throw symbol_error("function '" + t.text + "' expects " + std::to_string(s->arity) + " arguments, got " +
                              std::to_string(args.size()),
                          t.pos);
      return Term::apply(t.text, s->lipschitz, std::move(args));
    }
    if (s) {
      if (s->kind != SymbolKind::Constant)
        throw symbol_error("symbol '" + t.text + "' used without arguments", t.pos);
      return Term::constant(t.text);
    }
    return Term::variable(t.text);
  }

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw SyntaxError(std::string("expected ") + what + (peek().kind == Tok::End ? " but input ended" : ""),
                        peek().pos);
    return advance();
  }

  void expect_end() {
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
  }

 private:
  Formula sum() {
    Formula acc = prod();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = advance().kind == Tok::Minus;
      Formula rhs = prod();
      acc = Formula::sum(std::move(acc), minus ? negate(rhs) : std::move(rhs));
    }
    return acc;
  }

  Rational rational() {
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      advance();
      negative = true;
    }
    const Token& num = expect(Tok::Number, "number");
    std::string text = num.text;
    if (peek().kind == Tok::Slash) {
      advance();
      text += "/" + expect(Tok::Number, "denominator").text;
    }
    try {
      Rational r = parse_rational(text);
      return negative ? Rational(-r) : r;
    } catch (const InputError& e) {
      throw SyntaxError(e.what(), num.pos);
    }
  }

  Formula prod() {
    const bool signed_number = peek().kind == Tok::Minus && peek(1).kind == Tok::Number;
    if (peek().kind == Tok::Number || signed_number) {
      const bool bare_one = peek().kind == Tok::Number && peek().text == "1" && peek(1).kind != Tok::Slash &&
                            peek(1).kind != Tok::Star;
      if (bare_one) {
        advance();
        return Formula::one();
      }
      Rational r = rational();
      if (peek().kind == Tok::Star) {
        advance();
        // Nested scales print as "r*s*phi" and scaled numerals as "r*s".
        const bool number_next =
            peek().kind == Tok::Number || (peek().kind == Tok::Minus && peek(1).kind == Tok::Number);
        return Formula::scale(std::move(r), number_next ? prod() : prim());
      }
      // A bare rational r abbreviates r*1.
      return Formula::numeral(std::move(r));
    }
    if (peek().kind == Tok::Minus) {
      advance();
      return negate(prim());
    }
    return prim();
  }

  Formula prim() {
    const Token& t = peek();
    if (t.kind == Tok::Number && t.text == "1" && peek(1).kind != Tok::Slash) {
      advance();
      return Formula::one();
    }
    if (t.kind == Tok::LParen) {
      advance();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) throw SyntaxError("expected formula", t.pos);
    if (t.text == "sup" || t.text == "inf") {
      advance();
      const Token& v = expect(Tok::Ident, "bound variable");
      if (is_reserved_word(v.text) || sig_.find(v.text))
        throw SyntaxError("'" + v.text + "' cannot be bound", v.pos);
      expect(Tok::Dot, "'.'");
      Formula body = formula();
      return t.text == "sup" ? Formula::sup(v.text, std::move(body)) : Formula::inf(v.text, std::move(body));
    }
    if (t.text == "min" || t.text == "max") {
      advance();
      expect(Tok::LParen, "'('");
      Formula a = formula();
      expect(Tok::Comma, "','");
      Formula b = formula();
      expect(Tok::RParen, "')'");
      return t.text == "min" ? Formula::min(std::move(a), std::move(b)) : Formula::max(std::move(a), std::move(b));
    }
    if (t.text == "d") {
      advance();
      expect(Tok::LParen, "'('");
      Term a = term();
      expect(Tok::Comma, "','");
      Term b = term();
      expect(Tok::RParen, "')'");
      return Formula::dist(std::move(a), std::move(b));
    }
    const Symbol* s = sig_.find(t.text);
    if (!s) throw symbol_error("unknown relation symbol '" + t.text + "'", t.pos);
    if (s->kind != SymbolKind::Relation)
      throw symbol_error("'" + t.text + "' is a " + std::string(to_string(s->kind)) + ", not a relation", t.pos);
    advance();
    expect(Tok::LParen, "'('");
    auto args = term_list();
    expect(Tok::RParen, "')'");
    if (args.size() != s->arity)
      throw symbol_error("relation '" + t.text + "' expects " + std::to_string(s->arity) + " arguments, got " +
                            std::to_string(args.size()),
                        t.pos);
    return Formula::rel(t.text, s->lipschitz, std::move(args));
  }

  std::vector<Term> term_list() {
    std::vector<Term> out{term()};
    while (peek().kind == Tok::Comma) {
      advance();
      out.push_back(term());
    }
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Term t = p.term();
  p.expect_end();
  return t;
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

std::vector<Condition> parse_conditions(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula lhs = p.formula();
  const Token& op = p.peek();
  if (op.kind != Tok::Le && op.kind != Tok::Ge && op.kind != Tok::Eq)
    throw SyntaxError("expected '<=', '>=' or '='", op.pos);
  p.advance();
  Formula rhs = p.formula();
  p.expect_end();
  switch (op.kind) {
    case Tok::Le: return {Condition{lhs, rhs}};
    case Tok::Ge: return {Condition{rhs, lhs}};
    default: return {Condition{lhs, rhs}, Condition{rhs, lhs}};
  }
}

Condition parse_condition(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula lhs = p.formula();
  p.expect(Tok::Le, "'<='");
  Formula rhs = p.formula();
  p.expect_end();
  return Condition{lhs, rhs};
}

// ---------------------------------------------------------------------------
// Alpha equivalence and substitution

namespace {

using Renaming = std::vector<std::pair<std::string, std::string>>;

// Innermost binding wins; unbound names must coincide.
bool same_variable(const std::string& a, const std::string& b, const Renaming& env) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    const bool hit_a = it->first == a;
    const bool hit_b = it->second == b;
    if (hit_a || hit_b) return hit_a && hit_b;
  }
  return a == b;
}

bool alpha_terms(const Term& a, const Term& b, const Renaming& env) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Term::Kind::Variable) return same_variable(a.name(), b.name(), env);
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!alpha_terms(a.args()[i], b.args()[i], env)) return false;
  return true;
}

bool alpha_formulas(const Formula& a, const Formula& b, Renaming& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::One: return true;
    case Formula::Kind::Rel:
      if (a.symbol() != b.symbol()) return false;
      [[fallthrough]];
    case Formula::Kind::Dist:
      if (a.terms().size() != b.terms().size()) return false;
      for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (!alpha_terms(a.terms()[i], b.terms()[i], env)) return false;
      return true;
    case Formula::Kind::Sum:
    case Formula::Kind::Min:
    case Formula::Kind::Max: return alpha_formulas(a.left(), b.left(), env) && alpha_formulas(a.right(), b.right(), env);
    case Formula::Kind::Scale: return a.scalar() == b.scalar() && alpha_formulas(a.body(), b.body(), env);
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: {
      env.emplace_back(a.variable(), b.variable());
      const bool ok = alpha_formulas(a.body(), b.body(), env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  Renaming env;
  return alpha_formulas(a, b, env);
}

bool alpha_equivalent(const Condition& a, const Condition& b) {
  return alpha_equivalent(a.lhs, b.lhs) && alpha_equivalent(a.rhs, b.rhs);
}

Term substitute(const Term& in, const std::string& var, const Term& t) {
  switch (in.kind()) {
    case Term::Kind::Variable: return in.name() == var ? t : in;
    case Term::Kind::Constant: return in;
    case Term::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(in.args().size());
      for (const auto& a : in.args()) args.push_back(substitute(a, var, t));
      return Term::apply(in.name(), in.symbol_lipschitz(), std::move(args));
    }
  }
  return in;
}

Formula substitute(const Formula& in, const std::string& var, const Term& t) {
  if (!in.is_free(var)) return in;
  auto subst_terms = [&](const std::vector<Term>& ts) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& a : ts) out.push_back(substitute(a, var, t));
    return out;
  };
  switch (in.kind()) {
    case Formula::Kind::One: return in;
    case Formula::Kind::Dist: {
      auto ts = subst_terms(in.terms());
      return Formula::dist(ts[0], ts[1]);
    }
    case Formula::Kind::Rel: return Formula::rel(in.symbol(), in.symbol_lipschitz(), subst_terms(in.terms()));
    case Formula::Kind::Sum: return Formula::sum(substitute(in.left(), var, t), substitute(in.right(), var, t));
    case Formula::Kind::Min: return Formula::min(substitute(in.left(), var, t), substitute(in.right(), var, t));
    case Formula::Kind::Max: return Formula::max(substitute(in.left(), var, t), substitute(in.right(), var, t));
    case Formula::Kind::Scale: return Formula::scale(in.scalar(), substitute(in.body(), var, t));
    case Formula::Kind::Inf:
    case Formula::Kind::Sup: {
      if (t.mentions(in.variable()))
        throw CaptureError("substituting " + to_string(t) + " for " + var + " would capture '" + in.variable() +
                           "' in " + to_string(in));
      Formula body = substitute(in.body(), var, t);
      return in.kind() == Formula::Kind::Sup ? Formula::sup(in.variable(), std::move(body))
                                             : Formula::inf(in.variable(), std::move(body));
    }
  }
  return in;
}

Condition affine_combination(const std::vector<std::pair<Condition, Rational>>& weighted) {
  if (weighted.empty()) throw InputError("affine combination of no conditions");
  std::optional<Formula> lhs, rhs;
  auto accumulate = [](std::optional<Formula>& acc, const Formula& f, const Rational& w) {
    Formula term = w == 1 ? f : Formula::scale(w, f);
    acc = acc ? Formula::sum(*acc, term) : term;
  };
  for (const auto& [cond, w] : weighted) {
    if (w < 0) throw InputError("negative weight " + to_string(w) + " in affine combination");
    if (w == 0) continue;
    accumulate(lhs, cond.lhs, w);
    accumulate(rhs, cond.rhs, w);
  }
  if (!lhs) throw InputError("affine combination needs a positive weight");
  return Condition{*lhs, *rhs};
}

}  // namespace acl
