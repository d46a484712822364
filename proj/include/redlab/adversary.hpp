#pragma once

#include <optional>
#include <string>

#include "redlab/functionals.hpp"
#include "redlab/tree.hpp"

namespace redlab {

// Verdict of the tree counterexample's solution predicate.  v(0) = 0 claims
// the shifted tail n |-> v(n+1) walks the tree; v(0) = w > 0 claims u's
// length-(w+1) prefix has already left the tree.
enum class Q2Verdict { PassPath, PassEscape, Fail };

const char* to_string(Q2Verdict v);

// Requires |u| >= depth+1 and |v| >= depth+1; throws when v(0)+1 exceeds
// the available prefix data.
Q2Verdict q2_verdict(const Word& u, const Word& v, const Tree& t, unsigned depth);

// Evidence that a backward functional answered from too little of its input:
// s0 agrees with everything the functional looked at, yet the output fails.
struct CounterWitness {
  UseRecord use;
  Word s0;
  Word v0;
  unsigned failure_depth = 0;  // prefix length where v0 leaves the tree, or
                               // the in-tree prefix length refuting an escape claim
};

struct ProbeOutcome {
  bool survived = false;
  std::optional<CounterWitness> witness;
  Q2Verdict verdict = Q2Verdict::Fail;
  Word s0;
  Word output;
  UseRecord use;
  std::string note;
};

// Feed psi a path prefix padded with zeros, record its use, and evaluate it
// on the computable extension s0 that copies the queried prefix and
// continues with zeros.  psi takes (u, empty) with empty the constant-0
// word.  Returns a CounterWitness when q2 fails on (s0, psi(s0, empty)).
ProbeOutcome probe(const TrackedFunctional& psi, const Tree& t, const Word& u0_prefix,
                   unsigned depth, std::uint64_t budget);

// Independently re-evaluate a witness: s0 must agree with the recorded use,
// psi(s0, empty) must reproduce v0, and the verdict must still be Fail.
bool reverify(const CounterWitness& w, const TrackedFunctional& psi, const Tree& t,
              unsigned depth, std::uint64_t budget);

inline Tree secret_prefix_tree(const Word& secret, unsigned depth) {
  return Tree::secret_prefix(secret, depth);
}

// The case-two strategy: every output position recomputes 1 + the least m
// with u's (m+1)-prefix outside the tree (searching prefix lengths
// 1..search_depth).  When no prefix escapes, falls back to the all-zero
// path claim.
TrackedFunctional mu_escape_functional(const Tree& t, unsigned search_depth,
                                       std::size_t output_length);

// Reads the first read_count positions and claims the path that copies them
// and continues with zeros.
TrackedFunctional prefix_guess_functional(std::size_t read_count, std::size_t output_length);

}  // namespace redlab
