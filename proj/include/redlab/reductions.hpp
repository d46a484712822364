#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redlab/functionals.hpp"
#include "redlab/problems.hpp"

namespace redlab {

// A uniform reduction Q <= P: phi turns Q-instances into P-instances,
// psi turns (Q-instance, P-solution) pairs back into Q-solutions.
struct Reduction {
  std::string name;
  Problem source;  // Q
  Problem target;  // P
  TrackedFunctional forward;   // aux_arity 0: oracle is the Q-instance
  TrackedFunctional backward;  // aux_arity 1: oracle is the Q-instance, aux is the P-solution
};

// Packages two functionals as a reduction; rejects arity mismatches.
Reduction as_reduction_pair(TrackedFunctional phi, TrackedFunctional psi, Problem source,
                            Problem target, std::string name);

// phi copies the instance, psi returns the solution unchanged.
Reduction identity_reduction(const Problem& p);

struct VerifyOptions {
  bool exhaustive = true;
  std::uint64_t samples = 0;  // randomized mode sample count
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  unsigned jobs = 1;
  std::size_t max_recorded_failures = 64;
};

// Outcome of checking both reduction clauses over the enumerated spaces.
// The verdict is pass exactly when both failure lists are empty; failures
// beyond max_recorded_failures are counted but not stored (the stored ones
// are the lexicographically least).  Evaluation errors (budget exhaustion,
// out-of-range queries) are reported per instance, never thrown.
struct VerificationReport {
  std::string source;
  std::string target;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t instances_checked = 0;
  std::uint64_t forward_failure_count = 0;
  std::uint64_t backward_failure_count = 0;
  std::uint64_t error_count = 0;
  std::vector<Word> forward_failures;                       // instances u with q1(u) but not p1(phi(u))
  std::vector<std::pair<Word, Word>> backward_failures;     // (u, y) with p2(phi(u), y) but not q2(u, psi(u, y))
  std::vector<std::pair<Word, std::string>> errors;
  std::size_t max_use = 0;       // largest oracle use across all evaluations
  std::uint64_t evaluations = 0; // total phi + psi evaluations

  bool pass() const { return forward_failure_count == 0 && backward_failure_count == 0; }
};

// For every enumerated instance u of Q: check p1(phi(u)); for every
// enumerated solution y of phi(u): check q2(u, psi(u, y)).  Exhaustive mode
// walks the whole instance space (partitioned across jobs when the problem
// is indexable); randomized mode draws `samples` instances from the
// recorded seed.  Failure lists are canonically sorted.
VerificationReport verify(const Reduction& r, const VerifyOptions& opts = {});

// Transitive composition: forward = r2.phi of r1.phi, backward feeds the
// intermediate solution back through r1.psi.  The outer budget only meters
// reads of the original instance; reads of materialized intermediate words
// are free.
Reduction compose(const Reduction& r1, const Reduction& r2, std::string name = "");

// --- sequential multi-use ---------------------------------------------------

// Instance data for "solve P, feed the answer through kappa, solve P again
// (uses times)".  The instance word carries whatever the stages need;
// first_instance extracts the first P-instance and kappa maps (instance
// word, previous solution) to the next P-instance.
struct SeqEncoding {
  std::function<bool(const Word&)> instance_valid;
  std::function<void(const std::function<bool(const Word&)>&)> for_each_instance;
  std::uint64_t instance_count = 0;
  std::function<Word(std::uint64_t)> instance_at;
  std::function<Word(std::mt19937_64&)> random_instance;
  std::function<Word(const Word&)> first_instance;
  TrackedFunctional kappa;  // aux_arity 1
};

// The instance word is itself the P-instance and kappa returns it unchanged.
SeqEncoding identity_seq_encoding(const Problem& p);

// Solutions are `uses` length-prefixed blocks [ |y1|, y1..., |y2|, y2..., ... ]
// with y1 solving first_instance(w) and each later block solving the kappa
// image of its predecessor.
Problem seq_use_n(const Problem& p, const SeqEncoding& enc, unsigned uses, std::string name,
                  std::uint64_t budget = 1'000'000);
Problem seq_use2(const Problem& p, const SeqEncoding& enc, std::string name,
                 std::uint64_t budget = 1'000'000);
Problem seq_use2(const Problem& p);

// Solve a sequential instance with a counted solver: exactly `uses` solver
// calls on success.
std::optional<Word> solve_seq(const SeqEncoding& enc, const Word& instance,
                              const CountedSolver& solver, unsigned uses,
                              std::uint64_t budget = 1'000'000);

Word join_blocks(const std::vector<Word>& blocks);
std::optional<std::vector<Word>> split_blocks(const Word& s, unsigned count);

inline std::uint64_t application_count(const CountedSolver& s) { return s.count(); }

}  // namespace redlab
