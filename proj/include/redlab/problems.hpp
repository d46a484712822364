#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "redlab/tree.hpp"
#include "redlab/word.hpp"

namespace redlab {

// A problem over finite encodings: which words are instances, which words
// solve which instance, and deterministic enumeration of both.  Enumerators
// only emit valid objects, in a fixed order; callbacks return false to stop
// early.  instance_count/instance_at (when nonzero) expose the instance
// space by index for partitioned scans.
struct Problem {
  std::string name;
  std::function<bool(const Word&)> instance_valid;
  std::function<bool(const Word&, const Word&)> is_solution;
  std::function<void(const std::function<bool(const Word&)>&)> for_each_instance;
  std::function<void(const Word&, const std::function<bool(const Word&)>&)> for_each_solution;
  std::uint64_t instance_count = 0;
  std::function<Word(std::uint64_t)> instance_at;
  std::function<Word(std::mt19937_64&)> random_instance;
};

// Everything is an instance, everything is a solution.
Problem trivial_problem(WordSpace instances, WordSpace solutions);

// The tree problem: instances are arbitrary words of length depth+1, and a
// solution either walks the tree (v(0) = 0 and the shifted tail stays in T
// through depth) or names an escape (v(0) > 0 and u's (v(0)+1)-prefix, read
// as 0/1, is outside T).
Problem path_problem(Tree t, unsigned depth);

// Wraps a solver and counts invocations: the executable meaning of "uses of
// the principle".  The counter tolerates concurrent calls.
class CountedSolver {
 public:
  using Fn = std::function<std::optional<Word>(const Word&)>;

  explicit CountedSolver(Fn inner, std::string name = "solver")
      : inner_(std::move(inner)), name_(std::move(name)) {}
  CountedSolver(const CountedSolver&) = delete;
  CountedSolver& operator=(const CountedSolver&) = delete;

  std::optional<Word> operator()(const Word& instance) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_(instance);
  }
  std::uint64_t count() const { return calls_.load(std::memory_order_relaxed); }
  void reset() { calls_.store(0, std::memory_order_relaxed); }
  const std::string& name() const { return name_; }

 private:
  Fn inner_;
  std::string name_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

inline CountedSolver counted(CountedSolver::Fn solver, std::string name = "solver") {
  return CountedSolver(std::move(solver), std::move(name));
}

// 1 + the least m with u's (m+1)-prefix (0/1-collapsed) outside the tree,
// searching prefix lengths 1..depth; absent when every such prefix is in
// the tree.  Requires |u| >= depth.
std::optional<unsigned> mu_witness(const Word& u, const Tree& t, unsigned depth);

}  // namespace redlab
