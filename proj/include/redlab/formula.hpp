#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace redlab {

// Two sorts cover everything in scope: numbers and number->number functions.
enum class Sort : unsigned { Number = 0, Function = 1 };

// Terms: variables, numerals, applications head(t1,...,tn).  An application
// head is either a bound type-1 variable (head_is_var) or an uninterpreted
// function symbol.  A type-1 variable applied to several arguments stands
// for application to the coded tuple of them.
struct Term {
  enum class Kind { Var, Num, App };
  Kind kind = Kind::Num;
  std::string name;        // Var, App
  unsigned value = 0;      // Num
  std::vector<Term> args;  // App
  bool head_is_var = false;

  static Term var(std::string n);
  static Term num(unsigned v);
  static Term app(std::string n, std::vector<Term> a);      // function symbol head
  static Term var_app(std::string n, std::vector<Term> a);  // type-1 variable head

  bool operator==(const Term&) const = default;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Prime {
  std::string name;
  std::vector<Term> args;
};
struct Bot {};
struct Eq {
  Term lhs, rhs;
};
struct And {
  FormulaPtr lhs, rhs;
};
struct Or {
  FormulaPtr lhs, rhs;
};
struct Implies {
  FormulaPtr lhs, rhs;
};
struct Forall {
  std::string var;
  Sort sort;
  FormulaPtr body;
};
struct Exists {
  std::string var;
  Sort sort;
  FormulaPtr body;
};

// Immutable AST node.  Negation is not a node: !A parses to Implies(A, Bot).
class Formula {
 public:
  using Node = std::variant<Prime, Bot, Eq, And, Or, Implies, Forall, Exists>;

  explicit Formula(Node n) : node_(std::move(n)) {}
  const Node& node() const { return node_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
};

bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

// Node factories.
FormulaPtr prime(std::string name, std::vector<Term> args = {});
FormulaPtr bot();
FormulaPtr eq(Term l, Term r);
FormulaPtr conj(FormulaPtr l, FormulaPtr r);
FormulaPtr disj(FormulaPtr l, FormulaPtr r);
FormulaPtr implies(FormulaPtr l, FormulaPtr r);
FormulaPtr neg(FormulaPtr f);  // f -> bot
FormulaPtr forall(std::string v, Sort s, FormulaPtr body);
FormulaPtr exists(std::string v, Sort s, FormulaPtr body);

struct ParseError : std::runtime_error {
  std::size_t position;  // byte offset into the input
  ParseError(const std::string& msg, std::size_t pos);
};

// Grammar (UTF-8 text), loosest to tightest: `->` < `|` < `&`, all
// right-associative; `!F` is sugar for `F -> bot`; quantifier bodies extend
// as far right as possible.
//
//   formula := or ("->" formula)?
//   or      := and ("|" or)?
//   and     := unary ("&" and)?
//   unary   := "!" unary | ("forall"|"exists") ident ":" ("0"|"1") "." formula | atom
//   atom    := "bot" | "(" formula ")" | term "=" term | name | name "(" term,* ")"
//   term    := numeral | ident | ident "(" term,* ")"
//
// Every variable occurrence must be bound by an enclosing quantifier, no
// name may be bound twice on one path, and terms must be well-sorted:
// equality compares numbers, a type-1 variable applies to one or more
// number arguments, function symbols take number arguments.
FormulaPtr parse(std::string_view text);

// Canonical text form; parse(print(f)) reproduces f node for node.
std::string print(const Formula& f);
inline std::string print(const FormulaPtr& f) { return print(*f); }

std::string print(const Term& t);

// Free variables (term variables only, including applied type-1 heads).
std::set<std::string> free_vars(const Formula& f);

// True iff f contains no Exists and no Or: built from prime formulas with
// only universal quantification, conjunction and implication.
bool is_exists_free(const Formula& f);

// Membership in the class generated by: primes; closure under And, Or,
// Forall, Exists; and (Ex x1..xn A) -> B with A exists-free and B in the
// class, where the existential block may be empty.  Implications whose
// antecedent block binds a variable occurring free in B are rejected rather
// than renamed; the classification is purely syntactic.
bool is_gamma1(const Formula& f);

// Body after the leading quantifier prefix.
FormulaPtr matrix(FormulaPtr f);

// forall x (p1(x) -> exists y p2(x,y)), taken apart.
struct ProblemShape {
  std::string instance_var;
  Sort instance_sort = Sort::Function;
  FormulaPtr instance_pred;  // p1
  std::string solution_var;
  Sort solution_sort = Sort::Function;
  FormulaPtr solution_pred;  // p2
};

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg);
};

ProblemShape problem_shape(const Formula& f);  // throws ShapeError
inline ProblemShape problem_shape(const FormulaPtr& f) { return problem_shape(*f); }

// Inverse of problem_shape: rebuilding gives a formula equal to the source.
FormulaPtr reassemble(const ProblemShape& s);

// q1(u) -> (p1(x) & (p2(x,y) -> q2(u,v))), free in x, y, u, v.  P's
// variables are renamed apart from Q's when the names collide.
FormulaPtr reduction_predicate(const ProblemShape& q, const ProblemShape& p);

// The pairs-and-k-colors Ramsey statement as a formula of this language:
//   forall f:1 . exists x:1 . forall m:0 . (lt(x(m), x(s(m))) &
//     forall i:0 . forall j:0 . ((lt(0,i) & lt(i,j) & lt(j,m)) ->
//       tk(f(x(i), x(j))) = x(0)))
// With problem_format, wrapped as forall f:1 . (0=0 -> exists x:1 . ...).
std::string rt_formula_text(unsigned k, bool problem_format = false);

}  // namespace redlab
