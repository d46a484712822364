#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "redlab/word.hpp"

namespace redlab {

struct QueryOutOfRange : std::runtime_error {
  std::size_t position;
  explicit QueryOutOfRange(std::size_t pos)
      : std::runtime_error("oracle query out of range: position " + std::to_string(pos)),
        position(pos) {}
};

struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

// The positions a computation actually consulted, with the answers it saw.
struct UseRecord {
  std::map<std::size_t, unsigned> queried;

  bool agrees_with(const Word& w) const {
    for (auto [pos, val] : queried)
      if (pos >= w.size() || w[pos] != val) return false;
    return true;
  }
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    out.reserve(queried.size());
    for (auto [pos, _] : queried) out.push_back(pos);
    return out;
  }
  std::size_t max_position() const {
    return queried.empty() ? 0 : queried.rbegin()->first;
  }
  bool operator==(const UseRecord&) const = default;
};

// Instrumented read handle over a word.  Every query is recorded and charged
// against the budget.
class Oracle {
 public:
  Oracle(const Word& data, std::uint64_t budget) : data_(&data), remaining_(budget) {}

  unsigned at(std::size_t pos) {
    if (remaining_ == 0) throw BudgetExhausted{};
    --remaining_;
    if (pos >= data_->size()) throw QueryOutOfRange{pos};
    unsigned v = (*data_)[pos];
    use_.queried.emplace(pos, v);
    return v;
  }
  std::size_t size() const { return data_->size(); }
  const UseRecord& use() const { return use_; }

 private:
  const Word* data_;
  UseRecord use_;
  std::uint64_t remaining_;
};

// A computation that reads its primary input only through an Oracle.  aux
// words are plain values, not tracked.  Functionals must be stateless: two
// evaluations on oracles answering alike must return alike.
struct TrackedFunctional {
  std::string name;
  std::size_t aux_arity = 0;
  std::function<Word(Oracle&, const std::vector<Word>&)> fn;
};

struct EvalResult {
  Word output;
  UseRecord use;
  bool operator==(const EvalResult&) const = default;
};

EvalResult evaluate(const TrackedFunctional& f, const Word& input, std::uint64_t budget);
EvalResult evaluate(const TrackedFunctional& f, const Word& input, const std::vector<Word>& aux,
                    std::uint64_t budget);

// Requires u and uprime to agree on the positions f actually uses on u, then
// reports whether the two evaluations (output and use record) coincide.
// True for every honest functional; false flags hidden state.
bool consistency_check(const TrackedFunctional& f, const Word& u, const Word& uprime,
                       std::uint64_t budget);

// --- combinators -----------------------------------------------------------

TrackedFunctional constant_functional(Word output);
TrackedFunctional copy_functional();                  // output = the whole input
TrackedFunctional read_position(std::size_t pos);     // output = [u(pos)]

// Expression-built functionals over oracle reads.  Read positions are taken
// mod the input length; IfZero makes the use set input-dependent.
struct Expr {
  enum class Op { Const, Read, ReadAt, Add, Mul, IfZero };
  Op op = Op::Const;
  unsigned value = 0;
  std::vector<Expr> kids;
};

TrackedFunctional expression_functional(std::vector<Expr> outputs, std::string name = "expr");

// Deterministic functional drawn from the expression grammar.
TrackedFunctional seeded_functional(std::uint64_t seed, std::size_t output_length);

}  // namespace redlab
