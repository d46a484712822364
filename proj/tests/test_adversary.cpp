#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redlab/adversary.hpp"

using namespace redlab;

namespace {

constexpr std::uint64_t kBudget = 100000;

TrackedFunctional constant_backward(Word output) {
  TrackedFunctional f;
  f.name = "const-backward";
  f.aux_arity = 1;
  f.fn = [out = std::move(output)](Oracle&, const std::vector<Word>&) { return out; };
  return f;
}

}  // namespace

TEST_CASE("downward closure checks") {
  CHECK(check_downward_closed(Tree::full(8), 8));
  CHECK(check_downward_closed(Tree::explicit_tree({{}, {0}, {0, 1}}, 4), 4));
  CHECK_FALSE(check_downward_closed(Tree::explicit_tree({{0, 1}}, 4), 4));
  CHECK(check_downward_closed(Tree::secret_prefix({1, 0, 1}, 12), 12));
}

TEST_CASE("q2 verdicts") {
  unsigned D = 4;
  Tree full = Tree::full(D);
  Word zeros(D + 1, 0);

  CHECK(q2_verdict(zeros, zeros, full, D) == Q2Verdict::PassPath);

  Tree tiny = Tree::explicit_tree({Word{}}, D);
  Word escape(D + 1, 0);
  escape[0] = 1;
  CHECK(q2_verdict(Word(D + 1, 1), escape, tiny, D) == Q2Verdict::PassEscape);

  Word two(D + 1, 0);
  two[0] = 2;
  CHECK(q2_verdict(zeros, two, full, D) == Q2Verdict::Fail);

  Word overflow(D + 1, 0);
  overflow[0] = D + 1;
  CHECK_THROWS_AS(q2_verdict(zeros, overflow, full, D), std::invalid_argument);
  CHECK_THROWS_AS(q2_verdict(Word{0}, zeros, full, D), std::invalid_argument);
}

TEST_CASE("secret prefix trees: members count as 2^(D - secret length)") {
  Tree t = Tree::secret_prefix(Word{1, 0, 1, 1, 0, 1, 0, 0}, 10);
  std::size_t members = 0;
  WordSpace space{10, 2};
  space.for_each([&](const Word& w) {
    if (t.contains(w)) ++members;
    return true;
  });
  CHECK(members == 4);  // 2^(10-8)

  // the empty secret is the full tree
  Tree full = Tree::secret_prefix({}, 3);
  std::size_t all = 0;
  WordSpace small{3, 2};
  small.for_each([&](const Word& w) {
    if (full.contains(w)) ++all;
    return true;
  });
  CHECK(all == 8);

  CHECK(Tree::secret_prefix({1}, 4).contains(Word{1, 0}));
  CHECK_FALSE(Tree::secret_prefix({1}, 4).contains(Word{0}));
}

TEST_CASE("probe: a constant path answer survives trees that have that path") {
  unsigned D = 6;
  Tree full = Tree::full(D);
  ProbeOutcome out =
      probe(constant_backward(Word(D + 1, 0)), full, Word{0, 0, 0}, D, kBudget);
  CHECK(out.survived);
  CHECK(out.verdict == Q2Verdict::PassPath);
  CHECK_FALSE(out.witness.has_value());
}

TEST_CASE("probe: a use-capped guesser is defeated on most secrets") {
  unsigned D = 20, secret_len = 8, cap = 4;
  TrackedFunctional psi = prefix_guess_functional(cap, D + 1);
  std::mt19937_64 rng(42);
  unsigned witnesses = 0, trials = 400;
  for (unsigned i = 0; i < trials; ++i) {
    Word secret(secret_len, 0);
    for (auto& b : secret) b = static_cast<unsigned>(rng() % 2);
    Tree t = Tree::secret_prefix(secret, D);
    ProbeOutcome out = probe(psi, t, secret, D, kBudget);
    if (out.witness) {
      ++witnesses;
      CHECK(reverify(*out.witness, psi, t, D, kBudget));
      CHECK(out.witness->use.agrees_with(out.witness->s0));
      // the witness names the depth where the path claim breaks
      CHECK(out.witness->failure_depth >= cap + 1);
      CHECK(out.witness->failure_depth <= secret_len);
    } else {
      // survival requires the unread secret bits to be all zero
      bool tail_zero = true;
      for (unsigned b = cap; b < secret_len; ++b)
        if (secret[b] != 0) tail_zero = false;
      CHECK(tail_zero);
    }
  }
  // information bound: survival chance 2^-(8-4) per trial
  CHECK(witnesses > trials * 8 / 10);
}

TEST_CASE("probe: the mu strategy survives on trees whose zero path is real") {
  unsigned D = 8;
  Tree full = Tree::full(D);
  TrackedFunctional psi = mu_escape_functional(full, D, D + 1);
  ProbeOutcome out = probe(psi, full, Word{}, D, kBudget);
  CHECK(out.survived);
  CHECK(out.verdict == Q2Verdict::PassPath);
  CHECK(out.note.find("no escape exists on path inputs") != std::string::npos);
}

TEST_CASE("the mu strategy emits valid escapes off the tree") {
  unsigned D = 6;
  Tree tiny = Tree::explicit_tree({Word{}}, D);
  TrackedFunctional psi = mu_escape_functional(tiny, D, D + 1);
  Word ones(D + 1, 1);
  EvalResult r = evaluate(psi, ones, {Word(D + 1, 0)}, kBudget);
  CHECK(r.output == Word(D + 1, 1));
  CHECK(q2_verdict(ones, r.output, tiny, D) == Q2Verdict::PassEscape);
}

TEST_CASE("probe soundness: never a witness against a functional valid everywhere") {
  // on the singleton tree every input escapes at the first step, and the mu
  // strategy finds that escape for every input
  unsigned D = 5;
  Tree tiny = Tree::explicit_tree({Word{}}, D);
  TrackedFunctional psi = mu_escape_functional(tiny, D, D + 1);
  // exhaustive: the only path prefix of the singleton tree is the empty one
  ProbeOutcome out = probe(psi, tiny, Word{}, D, kBudget);
  CHECK(out.survived);

  // and on the full tree, the all-zero claim is valid for every input
  Tree full = Tree::full(D);
  TrackedFunctional zero_path = constant_backward(Word(D + 1, 0));
  WordSpace prefixes{3, 2};
  prefixes.for_each([&](const Word& u0) {
    ProbeOutcome o = probe(zero_path, full, u0, D, kBudget);
    CHECK(o.survived);
    return true;
  });
}

TEST_CASE("probe rejects non-path prefixes") {
  Tree t = Tree::secret_prefix({1, 1}, 6);
  CHECK_THROWS_AS(probe(constant_backward(Word(7, 0)), t, Word{0, 0}, 6, kBudget),
                  std::invalid_argument);
}

TEST_CASE("counter witnesses re-verify only against the right data") {
  unsigned D = 10;
  Word secret{1, 0, 1, 1, 0, 1};
  Tree t = Tree::secret_prefix(secret, D);
  TrackedFunctional psi = prefix_guess_functional(2, D + 1);
  ProbeOutcome out = probe(psi, t, secret, D, kBudget);
  REQUIRE(out.witness.has_value());
  CHECK(reverify(*out.witness, psi, t, D, kBudget));

  // tampering with the recorded output must break re-verification
  CounterWitness tampered = *out.witness;
  tampered.v0[3] ^= 1u;
  CHECK_FALSE(reverify(tampered, psi, t, D, kBudget));
}
