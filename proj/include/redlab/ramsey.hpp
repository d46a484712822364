#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redlab/problems.hpp"
#include "redlab/reductions.hpp"

namespace redlab {

// t_k: m itself when m < k, otherwise 0.  Composing with t_k turns an
// arbitrary numeric table into a k-coloring.
inline unsigned truncate_color(unsigned m, unsigned k) { return m < k ? m : 0; }

std::uint64_t binomial(unsigned n, unsigned k);

// Rank of a strictly increasing subset of {0..N-1} in the lexicographic
// order of all same-size subsets.
std::uint64_t subset_rank(std::span<const unsigned> subset, unsigned N);

// Visit the size-`size` subsets of {0..N-1} in lexicographic order; the
// callback returns false to stop.
void for_each_subset(unsigned N, unsigned size,
                     const std::function<bool(std::span<const unsigned>)>& fn);

// A total k-coloring of the n-element subsets of {0..N-1}.  The table is
// indexed in lexicographic subset order and read through t_k, so arbitrary
// entries are tolerated.
struct Coloring {
  unsigned exponent = 2;  // n
  unsigned vertices = 0;  // N
  unsigned colors = 2;    // k
  std::vector<unsigned> table;

  unsigned at(std::span<const unsigned> subset) const;
  std::uint64_t expected_table_size() const { return binomial(vertices, exponent); }
  bool well_formed() const;

  static Coloring constant(unsigned exponent, unsigned N, unsigned k, unsigned color);
};

// A vertex set all of whose n-subsets share one color.
struct HomSet {
  std::vector<unsigned> vertices;  // strictly increasing
  unsigned color = 0;
  bool operator==(const HomSet&) const = default;
};

// The common color of all n-subsets of vs, or absent if the colors differ
// or |vs| < n leaves it undetermined.
std::optional<unsigned> homogeneous_color(const Coloring& f, std::span<const unsigned> vs);

// Checked construction; throws std::invalid_argument when vs is not
// homogeneous.
HomSet make_homset(const Coloring& f, std::vector<unsigned> vs);

// Lexicographically least homogeneous set of exactly `size` vertices, or
// absent.  (Homogeneity is closed under subsets, so a size-`size` set exists
// whenever any larger one does.)
std::optional<HomSet> find_homogeneous(const Coloring& f, unsigned size);

// Lexicographically least size-`size` set whose n-subsets use at most
// max_distinct distinct colors, together with the colors observed.
struct ColorBounded {
  std::vector<unsigned> vertices;
  std::vector<unsigned> colors;  // sorted distinct colors used
};
std::optional<ColorBounded> find_color_bounded(const Coloring& f, unsigned size,
                                               unsigned max_distinct);

// A set on which a pairs-coloring uses at most two colors, with its color
// pair.  For a constant observed color c the pair is {c, (c+1) mod k}.
struct TwoMono {
  std::vector<unsigned> vertices;
  unsigned low = 0, high = 0;  // low < high
};
std::optional<TwoMono> find_2mono(const Coloring& f, unsigned size);

// g1: pairs colored by which half of {0,1,2,3} the original color falls in.
Coloring color_halving_forward(const Coloring& f);

// g2 on the indices of x: the parity of the original color of {x_i, x_j}.
// Requires x homogeneous for color_halving_forward(f) and |x| >= 2.
Coloring parity_forward(const Coloring& f, const HomSet& x);

// z = { x_m : m in y }, strictly increasing; y's vertices index into x's.
std::vector<unsigned> two_step_backward(const HomSet& x, const HomSet& y);

// --- solver word protocol ---------------------------------------------------
// Instance: [ requested size, table... ]; solution: [ color, vertices... ].
// The vertex count is recovered from the table length.

Word encode_rt_instance(unsigned size, const Coloring& g);
struct RtInstance {
  unsigned size = 0;
  Coloring coloring;
};
std::optional<RtInstance> decode_rt_instance(const Word& w, unsigned exponent, unsigned colors);

// The vertex count whose n-subset table has this length, if any.
std::optional<unsigned> rt_vertex_count(std::size_t table_len, unsigned exponent);

Word encode_homset(const HomSet& h);
std::optional<HomSet> decode_homset(const Word& w);

// Brute-force solver for the protocol above, built on find_homogeneous.
CountedSolver::Fn brute_rt_solver(unsigned exponent, unsigned colors);

// Brute-force solver over bare coloring tables at a fixed target size: the
// shape sequential problems feed their stage solver.
CountedSolver::Fn rt_table_solver(unsigned exponent, unsigned colors, unsigned size);

// Stage-1 request size guaranteeing a size-`size` monochromatic set in any
// 2-coloring of that many vertices (the binomial bound C(2m-2, m-1)).
unsigned stage1_request_size(unsigned size);

// --- the two-application pipeline -------------------------------------------

struct TwoStepResult {
  std::optional<HomSet> hom;
  int failed_stage = 0;  // 0 none, 1 or 2
  std::uint64_t applications = 0;
  std::string note;
};

// Halve the four colors, solve, recolor the surviving set by parity, solve
// again, map back.  Exactly two solver applications on success.
TwoStepResult rt24_via_two_rt22(const Coloring& f, const CountedSolver& solver, unsigned size);

// --- the classical one-application proofs -----------------------------------

enum class OneUseOutcome { Success, SolverFailure, Insufficient, AdviceContradiction };

struct OneUseResult {
  OneUseOutcome outcome = OneUseOutcome::SolverFailure;
  std::optional<HomSet> hom;
  int branch = 1;  // 0: advice set found; 1: exhaustive search found none
  std::uint64_t applications = 0;
  std::vector<unsigned> contradiction_witness;
  std::string note;
};

const char* to_string(OneUseOutcome o);

// Advice phase (solver-free): exhaustively search for a 2-mono set of size
// advice_size.  Found (j=0): recolor it by its color pair and make the one
// solver call at the target size.  Absent (j=1): recolor everything by the
// {0,1}/{2,3} split and make the one call at the advice size; a full-size
// answer would certify a contradiction with the exhaustive search, so it is
// reported as such (and is unreachable with an honest solver), while an
// undersized answer is reported as insufficiency.
OneUseResult classical_one_use_rt24(const Coloring& f, const CountedSolver& solver,
                                    unsigned advice_size, unsigned size);

// The k-color generalization: search the halving hierarchy deepest level
// first (at most 1, 2, 4, ... distinct colors, k padded to a power of two),
// split the observed colors of the best advice set in half, one solver
// call, map back.  The exponent is threaded through untouched (n <= 3).
OneUseResult generalized_one_use(const Coloring& f, const CountedSolver& solver,
                                 unsigned advice_size, unsigned size);

// --- problems and reductions -------------------------------------------------

// Instances: tables of C(N,n) entries (read through t_k); solutions:
// [color, vertices...] homogeneous sets of size >= min_size, enumerated by
// size then lexicographically.
Problem rt_problem(unsigned exponent, unsigned N, unsigned k, unsigned min_size);

// Sequential-double-use encoding of the pipeline: the instance word is the
// 4-coloring table, the first stage is its halving, and kappa recolors the
// first answer by parity.
SeqEncoding two_step_encoding(unsigned N);
Problem rt24_seq2_problem(unsigned N, unsigned min_size);

// The pipeline packaged as a reduction from rt(2,N,4,min_size) to the
// sequential-double-use problem.
Reduction rt24_two_step_reduction(unsigned N, unsigned min_size);

}  // namespace redlab
