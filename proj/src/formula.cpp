#include "redlab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace redlab {

Term Term::var(std::string n) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(n);
  return t;
}

Term Term::num(unsigned v) {
  Term t;
  t.kind = Kind::Num;
  t.value = v;
  return t;
}

Term Term::app(std::string n, std::vector<Term> a) {
  Term t;
  t.kind = Kind::App;
  t.name = std::move(n);
  t.args = std::move(a);
  return t;
}

Term Term::var_app(std::string n, std::vector<Term> a) {
  Term t = app(std::move(n), std::move(a));
  t.head_is_var = true;
  return t;
}

FormulaPtr prime(std::string name, std::vector<Term> args) {
  return std::make_shared<Formula>(Prime{std::move(name), std::move(args)});
}
FormulaPtr bot() { return std::make_shared<Formula>(Bot{}); }
FormulaPtr eq(Term l, Term r) { return std::make_shared<Formula>(Eq{std::move(l), std::move(r)}); }
FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(And{std::move(l), std::move(r)});
}
FormulaPtr disj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Or{std::move(l), std::move(r)});
}
FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Implies{std::move(l), std::move(r)});
}
FormulaPtr neg(FormulaPtr f) { return implies(std::move(f), bot()); }
FormulaPtr forall(std::string v, Sort s, FormulaPtr body) {
  return std::make_shared<Formula>(Forall{std::move(v), s, std::move(body)});
}
FormulaPtr exists(std::string v, Sort s, FormulaPtr body) {
  return std::make_shared<Formula>(Exists{std::move(v), s, std::move(body)});
}

bool equal(const Formula& a, const Formula& b) {
  if (a.node().index() != b.node().index()) return false;
  if (auto* pa = a.get_if<Prime>()) {
    auto* pb = b.get_if<Prime>();
    return pa->name == pb->name && pa->args == pb->args;
  }
  if (a.get_if<Bot>()) return true;
  if (auto* ea = a.get_if<Eq>()) {
    auto* eb = b.get_if<Eq>();
    return ea->lhs == eb->lhs && ea->rhs == eb->rhs;
  }
  if (auto* ca = a.get_if<And>()) {
    auto* cb = b.get_if<And>();
    return equal(*ca->lhs, *cb->lhs) && equal(*ca->rhs, *cb->rhs);
  }
  if (auto* da = a.get_if<Or>()) {
    auto* db = b.get_if<Or>();
    return equal(*da->lhs, *db->lhs) && equal(*da->rhs, *db->rhs);
  }
  if (auto* ia = a.get_if<Implies>()) {
    auto* ib = b.get_if<Implies>();
    return equal(*ia->lhs, *ib->lhs) && equal(*ia->rhs, *ib->rhs);
  }
  if (auto* fa = a.get_if<Forall>()) {
    auto* fb = b.get_if<Forall>();
    return fa->var == fb->var && fa->sort == fb->sort && equal(*fa->body, *fb->body);
  }
  auto* xa = a.get_if<Exists>();
  auto* xb = b.get_if<Exists>();
  return xa->var == xb->var && xa->sort == xb->sort && equal(*xa->body, *xb->body);
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}

ShapeError::ShapeError(const std::string& msg) : std::runtime_error(msg) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident,
  Number,
  KwForall,
  KwExists,
  KwBot,
  LParen,
  RParen,
  Comma,
  Dot,
  Colon,
  Equal,
  Amp,
  Pipe,
  Arrow,
  Bang,
  End,
};

struct Token {
  Tok type;
  std::string text;
  unsigned value = 0;
  std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok t, std::size_t pos, std::string s = "", unsigned v = 0) {
    out.push_back(Token{t, std::move(s), v, pos});
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      i = j;
      if (word == "forall")
        push(Tok::KwForall, start);
      else if (word == "exists")
        push(Tok::KwExists, start);
      else if (word == "bot")
        push(Tok::KwBot, start);
      else
        push(Tok::Ident, start, std::move(word));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      unsigned long v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        v = v * 10 + static_cast<unsigned long>(text[j] - '0');
        if (v > 1000000000ul) throw ParseError("numeral too large", start);
        ++j;
      }
      push(Tok::Number, start, std::string(text.substr(i, j - i)), static_cast<unsigned>(v));
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, start); ++i; break;
      case ')': push(Tok::RParen, start); ++i; break;
      case ',': push(Tok::Comma, start); ++i; break;
      case '.': push(Tok::Dot, start); ++i; break;
      case ':': push(Tok::Colon, start); ++i; break;
      case '=': push(Tok::Equal, start); ++i; break;
      case '&': push(Tok::Amp, start); ++i; break;
      case '|': push(Tok::Pipe, start); ++i; break;
      case '!': push(Tok::Bang, start); ++i; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, start);
          i += 2;
          break;
        }
        throw ParseError("stray '-' (did you mean '->'?)", start);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  push(Tok::End, text.size());
  return out;
}

// Raw syntactic term, before variable resolution and sort checking.
struct PTerm {
  Term::Kind kind;
  std::string name;
  unsigned value = 0;
  std::vector<PTerm> args;
  std::size_t pos = 0;
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;
  std::vector<std::pair<std::string, Sort>> env;

  const Token& peek() const { return toks[at]; }
  Token next() { return toks[at++]; }
  bool accept(Tok t) {
    if (peek().type == t) {
      ++at;
      return true;
    }
    return false;
  }
  Token expect(Tok t, const char* what) {
    if (peek().type != t) throw ParseError(std::string("expected ") + what, peek().pos);
    return next();
  }

  std::optional<Sort> lookup(const std::string& name) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == name) return it->second;
    return std::nullopt;
  }

  PTerm parse_pterm() {
    const Token& t = peek();
    if (t.type == Tok::Number) {
      Token n = next();
      return PTerm{Term::Kind::Num, "", n.value, {}, n.pos};
    }
    if (t.type == Tok::Ident) {
      Token id = next();
      if (accept(Tok::LParen)) {
        std::vector<PTerm> args;
        if (peek().type != Tok::RParen) {
          args.push_back(parse_pterm());
          while (accept(Tok::Comma)) args.push_back(parse_pterm());
        }
        expect(Tok::RParen, "')'");
        if (args.empty()) throw ParseError("application needs at least one argument", id.pos);
        return PTerm{Term::Kind::App, id.text, 0, std::move(args), id.pos};
      }
      return PTerm{Term::Kind::Var, id.text, 0, {}, id.pos};
    }
    throw ParseError("expected a term", t.pos);
  }

  // A term in number position: numerals, type-0 variables, applications.
  Term check_number_term(const PTerm& p) {
    switch (p.kind) {
      case Term::Kind::Num:
        return Term::num(p.value);
      case Term::Kind::Var: {
        auto s = lookup(p.name);
        if (!s) throw ParseError("unbound variable '" + p.name + "'", p.pos);
        if (*s != Sort::Number)
          throw ParseError("sort mismatch: type-1 variable '" + p.name +
                               "' where a number term is expected",
                           p.pos);
        return Term::var(p.name);
      }
      case Term::Kind::App: {
        std::vector<Term> args;
        args.reserve(p.args.size());
        for (const auto& a : p.args) args.push_back(check_number_term(a));
        auto s = lookup(p.name);
        if (s) {
          if (*s != Sort::Function)
            throw ParseError("sort mismatch: type-0 variable '" + p.name +
                                 "' applied as a function",
                             p.pos);
          return Term::var_app(p.name, std::move(args));
        }
        return Term::app(p.name, std::move(args));
      }
    }
    throw ParseError("malformed term", p.pos);
  }

  // A term in prime-argument position: any bound variable, or a number term.
  Term check_prime_arg(const PTerm& p) {
    if (p.kind == Term::Kind::Var) {
      auto s = lookup(p.name);
      if (!s) throw ParseError("unbound variable '" + p.name + "'", p.pos);
      return Term::var(p.name);
    }
    return check_number_term(p);
  }

  Sort parse_sort() {
    const Token& t = peek();
    if (t.type == Tok::Number && t.value == 0) {
      next();
      return Sort::Number;
    }
    if (t.type == Tok::Number && t.value == 1) {
      next();
      return Sort::Function;
    }
    throw ParseError("expected sort 0 or 1", t.pos);
  }

  FormulaPtr parse_formula() {
    FormulaPtr lhs = parse_or();
    if (accept(Tok::Arrow)) return implies(std::move(lhs), parse_formula());
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    if (accept(Tok::Pipe)) return disj(std::move(lhs), parse_or());
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    if (accept(Tok::Amp)) return conj(std::move(lhs), parse_and());
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (accept(Tok::Bang)) return neg(parse_unary());
    if (peek().type == Tok::KwForall || peek().type == Tok::KwExists) {
      bool universal = next().type == Tok::KwForall;
      Token id = expect(Tok::Ident, "a variable name");
      if (lookup(id.text))
        throw ParseError("variable '" + id.text + "' is bound twice on one path", id.pos);
      expect(Tok::Colon, "':' and a sort");
      Sort s = parse_sort();
      expect(Tok::Dot, "'.'");
      env.emplace_back(id.text, s);
      FormulaPtr body = parse_formula();
      env.pop_back();
      return universal ? forall(id.text, s, std::move(body)) : exists(id.text, s, std::move(body));
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    const Token& t = peek();
    if (t.type == Tok::KwBot) {
      next();
      return bot();
    }
    if (t.type == Tok::LParen) {
      next();
      FormulaPtr f = parse_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.type == Tok::Ident || t.type == Tok::Number) {
      PTerm first = parse_pterm();
      if (accept(Tok::Equal)) {
        PTerm second = parse_pterm();
        Term l = check_number_term(first);
        Term r = check_number_term(second);
        return eq(std::move(l), std::move(r));
      }
      // A prime formula: name or name(args).
      if (first.kind == Term::Kind::Num)
        throw ParseError("a numeral is not a formula (missing '='?)", first.pos);
      if (lookup(first.name))
        throw ParseError("variable '" + first.name + "' used as a formula", first.pos);
      std::vector<Term> args;
      args.reserve(first.args.size());
      for (const auto& a : first.args) args.push_back(check_prime_arg(a));
      return prime(first.name, std::move(args));
    }
    throw ParseError("expected a formula", t.pos);
  }
};

}  // namespace

FormulaPtr parse(std::string_view text) {
  Parser p{lex(text), 0, {}};
  FormulaPtr f = p.parse_formula();
  if (p.peek().type != Tok::End) throw ParseError("trailing input after formula", p.peek().pos);
  return f;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

void print_term(const Term& t, std::string& out) {
  switch (t.kind) {
    case Term::Kind::Var:
      out += t.name;
      return;
    case Term::Kind::Num:
      out += std::to_string(t.value);
      return;
    case Term::Kind::App:
      out += t.name;
      out += '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        print_term(t.args[i], out);
      }
      out += ')';
      return;
  }
}

// min_prec: 1 implies, 2 or, 3 and.  rightmost marks positions where the
// printed subformula ends the enclosing formula, so a max-scope quantifier
// needs no parentheses there.
void print_formula(const Formula& f, int min_prec, bool rightmost, std::string& out) {
  if (auto* p = f.get_if<Prime>()) {
    out += p->name;
    if (!p->args.empty()) {
      out += '(';
      for (std::size_t i = 0; i < p->args.size(); ++i) {
        if (i) out += ", ";
        print_term(p->args[i], out);
      }
      out += ')';
    }
    return;
  }
  if (f.get_if<Bot>()) {
    out += "bot";
    return;
  }
  if (auto* e = f.get_if<Eq>()) {
    print_term(e->lhs, out);
    out += " = ";
    print_term(e->rhs, out);
    return;
  }
  auto binary = [&](const FormulaPtr& l, const FormulaPtr& r, int prec, const char* op) {
    bool parens = prec < min_prec;
    if (parens) out += '(';
    print_formula(*l, prec + 1, false, out);
    out += op;
    print_formula(*r, prec, parens ? true : rightmost, out);
    if (parens) out += ')';
  };
  if (auto* c = f.get_if<And>()) return binary(c->lhs, c->rhs, 3, " & ");
  if (auto* d = f.get_if<Or>()) return binary(d->lhs, d->rhs, 2, " | ");
  if (auto* i = f.get_if<Implies>()) return binary(i->lhs, i->rhs, 1, " -> ");

  const std::string* var;
  Sort sort;
  const Formula* body;
  bool universal;
  if (auto* fa = f.get_if<Forall>()) {
    var = &fa->var;
    sort = fa->sort;
    body = fa->body.get();
    universal = true;
  } else {
    auto* ex = f.get_if<Exists>();
    var = &ex->var;
    sort = ex->sort;
    body = ex->body.get();
    universal = false;
  }
  bool parens = !rightmost;
  if (parens) out += '(';
  out += universal ? "forall " : "exists ";
  out += *var;
  out += sort == Sort::Number ? ":0 . " : ":1 . ";
  print_formula(*body, 0, true, out);
  if (parens) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, 0, true, out);
  return out;
}

std::string print(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

void collect_free(const Term& t, const std::vector<std::string>& bound, std::set<std::string>& out) {
  auto is_bound = [&](const std::string& n) {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  };
  switch (t.kind) {
    case Term::Kind::Num:
      return;
    case Term::Kind::Var:
      if (!is_bound(t.name)) out.insert(t.name);
      return;
    case Term::Kind::App:
      if (t.head_is_var && !is_bound(t.name)) out.insert(t.name);
      for (const auto& a : t.args) collect_free(a, bound, out);
      return;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (auto* p = f.get_if<Prime>()) {
    for (const auto& a : p->args) collect_free(a, bound, out);
    return;
  }
  if (f.get_if<Bot>()) return;
  if (auto* e = f.get_if<Eq>()) {
    collect_free(e->lhs, bound, out);
    collect_free(e->rhs, bound, out);
    return;
  }
  if (auto* c = f.get_if<And>()) {
    collect_free(*c->lhs, bound, out);
    collect_free(*c->rhs, bound, out);
    return;
  }
  if (auto* d = f.get_if<Or>()) {
    collect_free(*d->lhs, bound, out);
    collect_free(*d->rhs, bound, out);
    return;
  }
  if (auto* i = f.get_if<Implies>()) {
    collect_free(*i->lhs, bound, out);
    collect_free(*i->rhs, bound, out);
    return;
  }
  if (auto* fa = f.get_if<Forall>()) {
    bound.push_back(fa->var);
    collect_free(*fa->body, bound, out);
    bound.pop_back();
    return;
  }
  auto* ex = f.get_if<Exists>();
  bound.push_back(ex->var);
  collect_free(*ex->body, bound, out);
  bound.pop_back();
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

bool is_exists_free(const Formula& f) {
  if (f.get_if<Prime>() || f.get_if<Bot>() || f.get_if<Eq>()) return true;
  if (auto* c = f.get_if<And>()) return is_exists_free(*c->lhs) && is_exists_free(*c->rhs);
  if (f.get_if<Or>()) return false;
  if (auto* i = f.get_if<Implies>()) return is_exists_free(*i->lhs) && is_exists_free(*i->rhs);
  if (auto* fa = f.get_if<Forall>()) return is_exists_free(*fa->body);
  return false;  // Exists
}

bool is_gamma1(const Formula& f) {
  if (f.get_if<Prime>() || f.get_if<Bot>() || f.get_if<Eq>()) return true;
  if (auto* c = f.get_if<And>()) return is_gamma1(*c->lhs) && is_gamma1(*c->rhs);
  if (auto* d = f.get_if<Or>()) return is_gamma1(*d->lhs) && is_gamma1(*d->rhs);
  if (auto* fa = f.get_if<Forall>()) return is_gamma1(*fa->body);
  if (auto* ex = f.get_if<Exists>()) return is_gamma1(*ex->body);
  auto* imp = f.get_if<Implies>();
  // Strip the maximal leading existential block of the antecedent.  A
  // shorter strip leaves a leading Exists in the core, which is never
  // exists-free, so only the maximal block can qualify.
  std::vector<std::string> block;
  const Formula* core = imp->lhs.get();
  while (auto* ex = core->get_if<Exists>()) {
    block.push_back(ex->var);
    core = ex->body.get();
  }
  if (!is_exists_free(*core)) return false;
  if (!is_gamma1(*imp->rhs)) return false;
  if (!block.empty()) {
    std::set<std::string> fv = free_vars(*imp->rhs);
    for (const auto& v : block)
      if (fv.count(v)) return false;  // block variable occurs free in B: rejected
  }
  return true;
}

FormulaPtr matrix(FormulaPtr f) {
  for (;;) {
    if (auto* fa = f->get_if<Forall>()) {
      f = fa->body;
      continue;
    }
    if (auto* ex = f->get_if<Exists>()) {
      f = ex->body;
      continue;
    }
    return f;
  }
}

// ---------------------------------------------------------------------------
// Problem shape

namespace {

const char* node_kind(const Formula& f) {
  struct V {
    const char* operator()(const Prime&) { return "a prime formula"; }
    const char* operator()(const Bot&) { return "bot"; }
    const char* operator()(const Eq&) { return "an equality"; }
    const char* operator()(const And&) { return "a conjunction"; }
    const char* operator()(const Or&) { return "a disjunction"; }
    const char* operator()(const Implies&) { return "an implication"; }
    const char* operator()(const Forall&) { return "a universal quantifier"; }
    const char* operator()(const Exists&) { return "an existential quantifier"; }
  };
  return std::visit(V{}, f.node());
}

}  // namespace

ProblemShape problem_shape(const Formula& f) {
  auto* fa = f.get_if<Forall>();
  if (!fa)
    throw ShapeError(std::string("expected a universal quantifier at the root, found ") +
                     node_kind(f));
  auto* imp = fa->body->get_if<Implies>();
  if (!imp)
    throw ShapeError(std::string("expected an implication under the universal quantifier, found ") +
                     node_kind(*fa->body));
  auto* ex = imp->rhs->get_if<Exists>();
  if (!ex)
    throw ShapeError(std::string("expected an existential quantifier in the consequent, found ") +
                     node_kind(*imp->rhs));
  ProblemShape s;
  s.instance_var = fa->var;
  s.instance_sort = fa->sort;
  s.instance_pred = imp->lhs;
  s.solution_var = ex->var;
  s.solution_sort = ex->sort;
  s.solution_pred = ex->body;
  return s;
}

FormulaPtr reassemble(const ProblemShape& s) {
  return forall(s.instance_var, s.instance_sort,
                implies(s.instance_pred,
                        exists(s.solution_var, s.solution_sort, s.solution_pred)));
}

// ---------------------------------------------------------------------------
// Reduction predicate

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind != Term::Kind::Num) out.insert(t.name);
  for (const auto& a : t.args) collect_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (auto* p = f.get_if<Prime>()) {
    out.insert(p->name);
    for (const auto& a : p->args) collect_names(a, out);
    return;
  }
  if (f.get_if<Bot>()) return;
  if (auto* e = f.get_if<Eq>()) {
    collect_names(e->lhs, out);
    collect_names(e->rhs, out);
    return;
  }
  if (auto* c = f.get_if<And>()) {
    collect_names(*c->lhs, out);
    collect_names(*c->rhs, out);
    return;
  }
  if (auto* d = f.get_if<Or>()) {
    collect_names(*d->lhs, out);
    collect_names(*d->rhs, out);
    return;
  }
  if (auto* i = f.get_if<Implies>()) {
    collect_names(*i->lhs, out);
    collect_names(*i->rhs, out);
    return;
  }
  if (auto* fa = f.get_if<Forall>()) {
    out.insert(fa->var);
    collect_names(*fa->body, out);
    return;
  }
  auto* ex = f.get_if<Exists>();
  out.insert(ex->var);
  collect_names(*ex->body, out);
}

Term rename_term(const Term& t, const std::string& from, const std::string& to) {
  Term r = t;
  if (t.kind == Term::Kind::Var && t.name == from) r.name = to;
  if (t.kind == Term::Kind::App && t.head_is_var && t.name == from) r.name = to;
  for (auto& a : r.args) a = rename_term(a, from, to);
  return r;
}

FormulaPtr rename_free(const FormulaPtr& f, const std::string& from, const std::string& to) {
  if (auto* p = f->get_if<Prime>()) {
    std::vector<Term> args;
    args.reserve(p->args.size());
    for (const auto& a : p->args) args.push_back(rename_term(a, from, to));
    return prime(p->name, std::move(args));
  }
  if (f->get_if<Bot>()) return f;
  if (auto* e = f->get_if<Eq>()) return eq(rename_term(e->lhs, from, to), rename_term(e->rhs, from, to));
  if (auto* c = f->get_if<And>())
    return conj(rename_free(c->lhs, from, to), rename_free(c->rhs, from, to));
  if (auto* d = f->get_if<Or>())
    return disj(rename_free(d->lhs, from, to), rename_free(d->rhs, from, to));
  if (auto* i = f->get_if<Implies>())
    return implies(rename_free(i->lhs, from, to), rename_free(i->rhs, from, to));
  if (auto* fa = f->get_if<Forall>()) {
    if (fa->var == from) return f;  // shadowed below this binder
    return forall(fa->var, fa->sort, rename_free(fa->body, from, to));
  }
  auto* ex = f->get_if<Exists>();
  if (ex->var == from) return f;
  return exists(ex->var, ex->sort, rename_free(ex->body, from, to));
}

}  // namespace

FormulaPtr reduction_predicate(const ProblemShape& q, const ProblemShape& p) {
  std::set<std::string> used;
  used.insert(q.instance_var);
  used.insert(q.solution_var);
  collect_names(*q.instance_pred, used);
  collect_names(*q.solution_pred, used);

  std::set<std::string> p_names;
  collect_names(*p.instance_pred, p_names);
  collect_names(*p.solution_pred, p_names);

  FormulaPtr p1 = p.instance_pred;
  FormulaPtr p2 = p.solution_pred;
  auto rename_apart = [&](const std::string& var) {
    if (!used.count(var)) {
      used.insert(var);
      return;
    }
    std::string fresh = var;
    do {
      fresh += '\'';
    } while (used.count(fresh) || p_names.count(fresh));
    p1 = rename_free(p1, var, fresh);
    p2 = rename_free(p2, var, fresh);
    used.insert(fresh);
  };
  rename_apart(p.instance_var);
  rename_apart(p.solution_var);

  return implies(q.instance_pred, conj(p1, implies(p2, q.solution_pred)));
}

std::string rt_formula_text(unsigned k, bool problem_format) {
  std::ostringstream m;
  m << "forall m:0 . (lt(x(m), x(s(m))) & forall i:0 . forall j:0 . "
    << "((lt(0, i) & lt(i, j) & lt(j, m)) -> t" << k << "(f(x(i), x(j))) = x(0)))";
  std::ostringstream f;
  if (problem_format)
    f << "forall f:1 . (0 = 0 -> exists x:1 . " << m.str() << ")";
  else
    f << "forall f:1 . exists x:1 . " << m.str();
  return f.str();
}

}  // namespace redlab
