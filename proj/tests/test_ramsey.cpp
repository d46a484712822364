#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "redlab/ramsey.hpp"

using namespace redlab;

namespace {

Coloring random_coloring(std::mt19937_64& rng, unsigned n, unsigned N, unsigned k) {
  Coloring f{n, N, k, {}};
  f.table.resize(static_cast<std::size_t>(binomial(N, n)));
  for (auto& v : f.table) v = static_cast<unsigned>(rng() % k);
  return f;
}

// Exhaustive oracle: does any size-`size` subset use at most `bound`
// distinct colors?
std::optional<std::vector<unsigned>> subset_scan_color_bounded(const Coloring& f, unsigned size,
                                                               unsigned bound) {
  std::optional<std::vector<unsigned>> found;
  for_each_subset(f.vertices, size, [&](std::span<const unsigned> vs) {
    std::set<unsigned> used;
    for_each_subset(size, f.exponent, [&](std::span<const unsigned> idx) {
      std::vector<unsigned> subset(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = vs[idx[i]];
      used.insert(f.at(subset));
      return true;
    });
    if (used.size() <= bound) {
      found = std::vector<unsigned>(vs.begin(), vs.end());
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace

TEST_CASE("color truncation") {
  CHECK(truncate_color(3, 4) == 3);
  CHECK(truncate_color(7, 4) == 0);
  CHECK(truncate_color(0, 1) == 0);
}

TEST_CASE("subset ranking matches enumeration order") {
  for (unsigned n = 1; n <= 3; ++n) {
    std::uint64_t index = 0;
    for_each_subset(6, n, [&](std::span<const unsigned> s) {
      CHECK(subset_rank(s, 6) == index);
      ++index;
      return true;
    });
    CHECK(index == binomial(6, n));
  }
}

TEST_CASE("find_homogeneous: constant colorings yield the first vertices") {
  Coloring f = Coloring::constant(2, 7, 4, 3);
  for (unsigned m = 2; m <= 7; ++m) {
    auto h = find_homogeneous(f, m);
    REQUIRE(h.has_value());
    CHECK(h->color == 3);
    CHECK(h->vertices.size() == m);
    for (unsigned i = 0; i < m; ++i) CHECK(h->vertices[i] == i);
  }
  CHECK_FALSE(find_homogeneous(f, 8).has_value());
}

TEST_CASE("six vertices always admit a homogeneous triple, five do not") {
  WordSpace six{15, 2};
  bool all = true;
  six.for_each([&](const Word& table) {
    Coloring f{2, 6, 2, table};
    if (!find_homogeneous(f, 3)) all = false;
    return all;
  });
  CHECK(all);

  WordSpace five{10, 2};
  std::optional<Coloring> counterexample;
  five.for_each([&](const Word& table) {
    Coloring f{2, 5, 2, table};
    if (!find_homogeneous(f, 3)) {
      counterexample = f;
      return false;
    }
    return true;
  });
  REQUIRE(counterexample.has_value());
  // the emitted witness coloring really has no homogeneous triple
  for_each_subset(5, 3, [&](std::span<const unsigned> vs) {
    CHECK_FALSE(homogeneous_color(*counterexample, vs).has_value());
    return true;
  });
}

TEST_CASE("homogeneity is closed under subsets") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    Coloring f = random_coloring(rng, 2, 9, 2);
    auto h = find_homogeneous(f, 4);
    if (!h) continue;
    for_each_subset(4, 3, [&](std::span<const unsigned> idx) {
      std::vector<unsigned> sub;
      for (unsigned i : idx) sub.push_back(h->vertices[i]);
      CHECK(homogeneous_color(f, sub) == h->color);
      return true;
    });
  }
}

TEST_CASE("color halving: defining clauses and entrywise cross-check") {
  CHECK(color_halving_forward(Coloring::constant(2, 5, 4, 0)).table == Word(10, 0));
  CHECK(color_halving_forward(Coloring::constant(2, 5, 4, 3)).table == Word(10, 1));

  std::mt19937_64 rng(4);
  Coloring f = random_coloring(rng, 2, 8, 4);
  Coloring g1 = color_halving_forward(f);
  for_each_subset(8, 2, [&](std::span<const unsigned> pair) {
    CHECK(g1.at(pair) == (f.at(pair) > 1 ? 1u : 0u));
    return true;
  });

  Coloring triples{3, 6, 4, Word(20, 0)};
  CHECK_THROWS_AS(color_halving_forward(triples), std::invalid_argument);
}

TEST_CASE("parity recoloring: defining clauses and entrywise cross-check") {
  Coloring f2 = Coloring::constant(2, 6, 4, 2);
  HomSet x = make_homset(color_halving_forward(f2), {0, 2, 4});
  CHECK(parity_forward(f2, x).table == Word(3, 0));

  Coloring f3 = Coloring::constant(2, 6, 4, 3);
  HomSet x3 = make_homset(color_halving_forward(f3), {1, 2, 5});
  CHECK(parity_forward(f3, x3).table == Word(3, 1));

  // mixed colors {2,3} on x: parity entry by entry
  std::mt19937_64 rng(9);
  Coloring f{2, 6, 4, {}};
  f.table.resize(15);
  for (auto& v : f.table) v = 2 + static_cast<unsigned>(rng() % 2);
  HomSet x23 = make_homset(color_halving_forward(f), {0, 1, 2, 3});
  Coloring g2 = parity_forward(f, x23);
  for_each_subset(4, 2, [&](std::span<const unsigned> idx) {
    unsigned pair[2] = {x23.vertices[idx[0]], x23.vertices[idx[1]]};
    CHECK(g2.at(idx) == f.at(pair) % 2);
    return true;
  });

  // a set that is not halving-homogeneous is a precondition violation
  Coloring mixed{2, 4, 4, {0, 3, 0, 0, 0, 0}};
  CHECK_THROWS_AS(parity_forward(mixed, HomSet{{0, 1, 2}, 0}), std::invalid_argument);
}

TEST_CASE("two-step backward substitution") {
  HomSet x{{2, 5, 7, 11}, 0};
  CHECK(two_step_backward(x, HomSet{{0, 1}, 0}) == std::vector<unsigned>{2, 5});
  CHECK(two_step_backward(x, HomSet{{0, 2, 3}, 1}) == std::vector<unsigned>{2, 7, 11});
  CHECK_THROWS_AS(two_step_backward(x, HomSet{{4}, 0}), std::out_of_range);
}

TEST_CASE("two-step backward preserves homogeneity when both stages were homogeneous") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Coloring f = random_coloring(rng, 2, 10, 4);
    auto x = find_homogeneous(color_halving_forward(f), 4);
    if (!x) continue;
    Coloring g2 = parity_forward(f, *x);
    auto y = find_homogeneous(g2, 2);
    REQUIRE(y.has_value());
    std::vector<unsigned> z = two_step_backward(*x, *y);
    CHECK(homogeneous_color(f, z).has_value());
  }
}

TEST_CASE("the two-step pipeline: constant case, exhaustive four vertices, random forty") {
  CountedSolver solver = counted(brute_rt_solver(2, 2));

  TwoStepResult constant = rt24_via_two_rt22(Coloring::constant(2, 8, 4, 2), solver, 3);
  REQUIRE(constant.hom.has_value());
  CHECK(constant.hom->color == 2);
  CHECK(constant.applications == 2);

  WordSpace four{6, 4};
  four.for_each([&](const Word& table) {
    Coloring f{2, 4, 4, table};
    solver.reset();
    TwoStepResult r = rt24_via_two_rt22(f, solver, 2);
    REQUIRE(r.hom.has_value());
    REQUIRE(r.applications == 2);
    REQUIRE(homogeneous_color(f, r.hom->vertices) == r.hom->color);
    REQUIRE(r.hom->vertices.size() >= 2);
    return true;
  });

  std::mt19937_64 rng(8);
  unsigned succeeded = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Coloring f = random_coloring(rng, 2, 40, 4);
    solver.reset();
    TwoStepResult r = rt24_via_two_rt22(f, solver, 3);
    if (r.hom) {
      ++succeeded;
      CHECK(r.applications == 2);
      CHECK(r.hom->vertices.size() >= 3);
      CHECK(homogeneous_color(f, r.hom->vertices) == r.hom->color);
    }
  }
  CHECK(succeeded > 0);
}

TEST_CASE("find_2mono: constant, two-color, and bounded-size colorings") {
  Coloring c1 = Coloring::constant(2, 6, 4, 1);
  auto m1 = find_2mono(c1, 4);
  REQUIRE(m1.has_value());
  CHECK(m1->vertices == std::vector<unsigned>{0, 1, 2, 3});
  CHECK(m1->low == 1);
  CHECK(m1->high == 2);  // {c, (c+1) mod k}

  Coloring c3 = Coloring::constant(2, 6, 4, 3);
  auto m3 = find_2mono(c3, 3);
  REQUIRE(m3.has_value());
  CHECK(m3->low == 0);  // {3, 0} sorted
  CHECK(m3->high == 3);

  // colors {1,3} everywhere: the whole vertex set with that pair
  std::mt19937_64 rng(2);
  Coloring f13{2, 6, 4, {}};
  f13.table.resize(15);
  for (auto& v : f13.table) v = rng() % 2 ? 3u : 1u;
  bool has_both = false;
  for (std::size_t i = 1; i < f13.table.size(); ++i)
    if (f13.table[i] != f13.table[0]) has_both = true;
  if (has_both) {
    auto m13 = find_2mono(f13, 6);
    REQUIRE(m13.has_value());
    CHECK(m13->vertices.size() == 6);
    CHECK(m13->low == 1);
    CHECK(m13->high == 3);
  }

  CHECK_THROWS_AS(find_2mono(c1, 1), std::invalid_argument);
}

TEST_CASE("find_2mono matches the exhaustive subset oracle, including a max-size-3 witness") {
  std::mt19937_64 rng(77);
  std::optional<Coloring> capped;  // max 2-mono size exactly 3
  for (int trial = 0; trial < 20000 && !capped; ++trial) {
    Coloring f = random_coloring(rng, 2, 5, 4);
    bool at3 = subset_scan_color_bounded(f, 3, 2).has_value();
    bool at4 = subset_scan_color_bounded(f, 4, 2).has_value();
    if (at3 && !at4) capped = f;
  }
  REQUIRE(capped.has_value());
  CHECK(find_2mono(*capped, 3).has_value());
  CHECK_FALSE(find_2mono(*capped, 4).has_value());

  // agreement on arbitrary colorings (advice soundness both ways)
  for (int trial = 0; trial < 300; ++trial) {
    Coloring f = random_coloring(rng, 2, 6, 4);
    for (unsigned s = 2; s <= 5; ++s) {
      auto mine = find_2mono(f, s);
      auto oracle = subset_scan_color_bounded(f, s, 2);
      CHECK(mine.has_value() == oracle.has_value());
      if (mine && oracle) CHECK(mine->vertices == *oracle);  // both lexicographically least
    }
  }
}

TEST_CASE("classical one use: constant case and the exhaustive four-vertex space") {
  CountedSolver solver = counted(brute_rt_solver(2, 2));

  OneUseResult constant = classical_one_use_rt24(Coloring::constant(2, 7, 4, 2), solver, 4, 3);
  CHECK(constant.outcome == OneUseOutcome::Success);
  CHECK(constant.branch == 0);
  CHECK(constant.applications == 1);
  REQUIRE(constant.hom.has_value());
  CHECK(constant.hom->color == 2);
  CHECK(constant.hom->vertices.size() == 3);

  WordSpace four{6, 4};
  four.for_each([&](const Word& table) {
    Coloring f{2, 4, 4, table};
    solver.reset();
    OneUseResult r = classical_one_use_rt24(f, solver, 2, 2);
    REQUIRE(r.outcome == OneUseOutcome::Success);
    REQUIRE(r.applications == 1);
    REQUIRE(r.branch == 0);
    REQUIRE(homogeneous_color(f, r.hom->vertices) == r.hom->color);
    // output containment: the answer lives inside the advice set
    for (unsigned v : r.hom->vertices) REQUIRE(v <= 1);
    return true;
  });
}

TEST_CASE("classical one use: forced j=1 branch reports, never silently answers") {
  // a coloring with no 2-mono set of size 4: every 4-set uses >= 3 colors
  std::mt19937_64 rng(123);
  std::optional<Coloring> colorful;
  for (int trial = 0; trial < 50000 && !colorful; ++trial) {
    Coloring f = random_coloring(rng, 2, 5, 4);
    if (!subset_scan_color_bounded(f, 4, 2)) colorful = f;
  }
  REQUIRE(colorful.has_value());

  // an honest solver cannot find the contradictory set: insufficiency
  CountedSolver honest = counted(brute_rt_solver(2, 2));
  OneUseResult r = classical_one_use_rt24(*colorful, honest, 4, 2);
  CHECK(r.branch == 1);
  CHECK(r.outcome == OneUseOutcome::Insufficient);
  CHECK(r.applications == 1);
  CHECK_FALSE(r.hom.has_value());

  // a synthetic solver returning undersized sets: insufficiency, with the
  // answer validated rather than trusted
  Coloring g = color_halving_forward(*colorful);
  CountedSolver undersized = counted([&](const Word&) -> std::optional<Word> {
    auto h = find_homogeneous(g, 2);
    REQUIRE(h.has_value());
    return encode_homset(*h);
  });
  OneUseResult u = classical_one_use_rt24(*colorful, undersized, 4, 2);
  CHECK(u.branch == 1);
  CHECK(u.outcome == OneUseOutcome::Insufficient);

  // a lying solver whose answer is not homogeneous for g: rejected, and
  // never turned into a contradiction certificate
  CountedSolver lying = counted([&](const Word&) -> std::optional<Word> {
    return encode_homset(HomSet{{0, 1, 2, 3}, 0});
  });
  OneUseResult l = classical_one_use_rt24(*colorful, lying, 4, 2);
  CHECK(l.branch == 1);
  CHECK(l.outcome != OneUseOutcome::AdviceContradiction);
  CHECK_FALSE(l.hom.has_value());
}

TEST_CASE("generalized one use: k=2 degenerates to a direct call") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    Coloring f = random_coloring(rng, 2, 6, 2);
    CountedSolver solver = counted(brute_rt_solver(2, 2));
    OneUseResult r = generalized_one_use(f, solver, 3, 3);
    auto direct = find_homogeneous(f, 3);
    CHECK(r.applications == 1);
    if (direct) {
      REQUIRE(r.outcome == OneUseOutcome::Success);
      CHECK(homogeneous_color(f, r.hom->vertices) == r.hom->color);
    } else {
      CHECK(r.outcome != OneUseOutcome::Success);
    }
  }
}

TEST_CASE("generalized one use at k=4 matches the classical construction exactly") {
  WordSpace four{6, 4};
  four.for_each([&](const Word& table) {
    Coloring f{2, 4, 4, table};
    CountedSolver a = counted(brute_rt_solver(2, 2));
    CountedSolver b = counted(brute_rt_solver(2, 2));
    OneUseResult classical = classical_one_use_rt24(f, a, 2, 2);
    OneUseResult general = generalized_one_use(f, b, 2, 2);
    REQUIRE(classical.outcome == general.outcome);
    REQUIRE(classical.hom.has_value() == general.hom.has_value());
    if (classical.hom) {
      REQUIRE(classical.hom->vertices == general.hom->vertices);
      REQUIRE(classical.hom->color == general.hom->color);
    }
    return true;
  });
}

TEST_CASE("generalized one use covers the pigeonhole case") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    Coloring f = random_coloring(rng, 1, 9, 3);
    CountedSolver solver = counted(brute_rt_solver(1, 2));
    OneUseResult r = generalized_one_use(f, solver, 3, 3);
    auto direct = find_homogeneous(f, 3);
    CHECK(r.applications == 1);
    if (r.outcome == OneUseOutcome::Success) {
      CHECK(homogeneous_color(f, r.hom->vertices) == r.hom->color);
      CHECK(r.hom->vertices.size() >= 3);
    } else {
      // with 9 vertices and 3 colors a majority class of size 3 always exists
      CHECK(direct.has_value() == false);
    }
  }
}

TEST_CASE("generalized one use succeeds on eight colors via the hierarchy") {
  std::mt19937_64 rng(21);
  unsigned successes = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Coloring f = random_coloring(rng, 2, 8, 8);
    CountedSolver solver = counted(brute_rt_solver(2, 2));
    OneUseResult r = generalized_one_use(f, solver, 2, 2);
    CHECK(r.applications == 1);
    if (r.outcome == OneUseOutcome::Success) {
      ++successes;
      CHECK(homogeneous_color(f, r.hom->vertices) == r.hom->color);
    }
  }
  CHECK(successes == 60);  // a size-2 advice set is a single pair, always present

  // larger advice sets reach the intermediate hierarchy levels; outcomes are
  // then success (a 1- or 2-color-bounded set exists) or honest insufficiency
  unsigned deep = 0, shallow = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Coloring f = random_coloring(rng, 2, 8, 8);
    CountedSolver solver = counted(brute_rt_solver(2, 2));
    OneUseResult r = generalized_one_use(f, solver, 3, 2);
    CHECK(r.applications == 1);
    if (r.outcome == OneUseOutcome::Success) {
      ++deep;
      CHECK(homogeneous_color(f, r.hom->vertices) == r.hom->color);
    } else {
      ++shallow;
      CHECK(r.outcome == OneUseOutcome::Insufficient);
      CHECK(subset_scan_color_bounded(f, 3, 2) == std::nullopt);
    }
  }
  CHECK(deep + shallow == 60);
}

TEST_CASE("rt problems enumerate only genuine solutions") {
  Problem p = rt_problem(2, 4, 2, 2);
  std::uint64_t pairs = 0;
  p.for_each_instance([&](const Word& u) {
    CHECK(p.instance_valid(u));
    p.for_each_solution(u, [&](const Word& s) {
      ++pairs;
      CHECK(p.is_solution(u, s));
      return true;
    });
    return true;
  });
  CHECK(pairs > 0);

  Problem seq = rt24_seq2_problem(3, 2);
  seq.for_each_instance([&](const Word& w) {
    seq.for_each_solution(w, [&](const Word& s) {
      CHECK(seq.is_solution(w, s));
      return true;
    });
    return true;
  });
}

TEST_CASE("solver protocol round trip and stage-one request sizes") {
  Coloring g = Coloring::constant(2, 5, 2, 1);
  Word w = encode_rt_instance(3, g);
  auto inst = decode_rt_instance(w, 2, 2);
  REQUIRE(inst.has_value());
  CHECK(inst->size == 3);
  CHECK(inst->coloring.vertices == 5);
  CHECK(inst->coloring.table == g.table);

  HomSet h{{1, 3, 4}, 1};
  CHECK(decode_homset(encode_homset(h)) == h);
  CHECK_FALSE(decode_homset(Word{0, 3, 1}).has_value());  // not increasing

  CHECK(stage1_request_size(2) == 2);
  CHECK(stage1_request_size(3) == 6);
  CHECK(stage1_request_size(4) == 20);
}
