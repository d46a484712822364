#include "redlab/ramsey.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace redlab {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

std::uint64_t subset_rank(std::span<const unsigned> subset, unsigned N) {
  unsigned n = static_cast<unsigned>(subset.size());
  if (n == 1) return subset[0];
  if (n == 2) {
    std::uint64_t a = subset[0], b = subset[1];
    return a * (2ull * N - a - 1) / 2 + (b - a - 1);
  }
  std::uint64_t rank = 0;
  unsigned prev = 0;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned v = prev; v < subset[i]; ++v) rank += binomial(N - 1 - v, n - 1 - i);
    prev = subset[i] + 1;
  }
  return rank;
}

void for_each_subset(unsigned N, unsigned size,
                     const std::function<bool(std::span<const unsigned>)>& fn) {
  if (size > N) return;
  std::vector<unsigned> s(size);
  for (unsigned i = 0; i < size; ++i) s[i] = i;
  for (;;) {
    if (!fn(s)) return;
    // advance the rightmost element that can still move
    unsigned i = size;
    while (i > 0) {
      --i;
      if (s[i] + (size - i) < N) {
        ++s[i];
        for (unsigned j = i + 1; j < size; ++j) s[j] = s[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
    if (size == 0) return;
  }
}

unsigned Coloring::at(std::span<const unsigned> subset) const {
  if (subset.size() != exponent)
    throw std::invalid_argument("coloring applied to a subset of the wrong size");
  return truncate_color(table.at(subset_rank(subset, vertices)), colors);
}

bool Coloring::well_formed() const { return table.size() == expected_table_size(); }

Coloring Coloring::constant(unsigned exponent, unsigned N, unsigned k, unsigned color) {
  Coloring c{exponent, N, k, {}};
  c.table.assign(static_cast<std::size_t>(binomial(N, exponent)), color);
  return c;
}

std::optional<unsigned> homogeneous_color(const Coloring& f, std::span<const unsigned> vs) {
  unsigned n = f.exponent;
  if (vs.size() < n) return std::nullopt;
  std::optional<unsigned> color;
  bool ok = true;
  for_each_subset(static_cast<unsigned>(vs.size()), n, [&](std::span<const unsigned> idx) {
    std::vector<unsigned> subset(n);
    for (unsigned i = 0; i < n; ++i) subset[i] = vs[idx[i]];
    unsigned c = f.at(subset);
    if (!color)
      color = c;
    else if (*color != c)
      ok = false;
    return ok;
  });
  return ok ? color : std::nullopt;
}

HomSet make_homset(const Coloring& f, std::vector<unsigned> vs) {
  auto c = homogeneous_color(f, vs);
  if (!c) throw std::invalid_argument("vertex set is not homogeneous");
  return HomSet{std::move(vs), *c};
}

namespace {

// Colors of the new n-subsets created by appending v to `chosen`.
template <class Check>
bool new_subset_colors(const Coloring& f, const std::vector<unsigned>& chosen, unsigned v,
                       Check&& check) {
  unsigned n = f.exponent;
  if (chosen.size() + 1 < n) return true;
  std::vector<unsigned> subset(n);
  subset[n - 1] = v;
  switch (n) {
    case 1:
      return check(f.at(subset));
    case 2:
      for (unsigned a : chosen) {
        subset[0] = a;
        if (!check(f.at(subset))) return false;
      }
      return true;
    case 3:
      for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j) {
          subset[0] = chosen[i];
          subset[1] = chosen[j];
          if (!check(f.at(subset))) return false;
        }
      return true;
    default:
      throw std::invalid_argument("exponent must be 1, 2 or 3");
  }
}

bool homogeneous_dfs(const Coloring& f, unsigned size, std::vector<unsigned>& chosen,
                     std::optional<unsigned> color, HomSet& out) {
  if (chosen.size() == size) {
    out = HomSet{chosen, color.value_or(0)};
    return true;
  }
  unsigned start = chosen.empty() ? 0 : chosen.back() + 1;
  for (unsigned v = start; v < f.vertices; ++v) {
    if (f.vertices - v < size - chosen.size()) break;
    std::optional<unsigned> next = color;
    bool ok = new_subset_colors(f, chosen, v, [&](unsigned c) {
      if (!next) {
        next = c;
        return true;
      }
      return *next == c;
    });
    if (!ok) continue;
    chosen.push_back(v);
    if (homogeneous_dfs(f, size, chosen, next, out)) return true;
    chosen.pop_back();
  }
  return false;
}

bool color_bounded_dfs(const Coloring& f, unsigned size, unsigned max_distinct,
                       std::vector<unsigned>& chosen, std::vector<unsigned> colors,
                       ColorBounded& out) {
  if (chosen.size() == size) {
    out = ColorBounded{chosen, std::move(colors)};
    return true;
  }
  unsigned start = chosen.empty() ? 0 : chosen.back() + 1;
  for (unsigned v = start; v < f.vertices; ++v) {
    if (f.vertices - v < size - chosen.size()) break;
    std::vector<unsigned> next = colors;
    bool ok = new_subset_colors(f, chosen, v, [&](unsigned c) {
      auto it = std::lower_bound(next.begin(), next.end(), c);
      if (it != next.end() && *it == c) return true;
      if (next.size() == max_distinct) return false;
      next.insert(it, c);
      return true;
    });
    if (!ok) continue;
    chosen.push_back(v);
    if (color_bounded_dfs(f, size, max_distinct, chosen, std::move(next), out)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<HomSet> find_homogeneous(const Coloring& f, unsigned size) {
  if (size < f.exponent) throw std::invalid_argument("target size below the exponent");
  if (!f.well_formed()) throw std::invalid_argument("coloring table has the wrong length");
  if (size > f.vertices) return std::nullopt;
  std::vector<unsigned> chosen;
  chosen.reserve(size);
  HomSet out;
  if (!homogeneous_dfs(f, size, chosen, std::nullopt, out)) return std::nullopt;
  return out;
}

std::optional<ColorBounded> find_color_bounded(const Coloring& f, unsigned size,
                                               unsigned max_distinct) {
  if (!f.well_formed()) throw std::invalid_argument("coloring table has the wrong length");
  if (max_distinct == 0) throw std::invalid_argument("need at least one permitted color");
  if (size > f.vertices) return std::nullopt;
  std::vector<unsigned> chosen;
  chosen.reserve(size);
  ColorBounded out;
  if (!color_bounded_dfs(f, size, max_distinct, chosen, {}, out)) return std::nullopt;
  return out;
}

std::optional<TwoMono> find_2mono(const Coloring& f, unsigned size) {
  if (size < 2) throw std::invalid_argument("2-mono search needs size >= 2");
  if (f.exponent != 2) throw std::invalid_argument("2-mono search is the pairs case");
  auto found = find_color_bounded(f, size, 2);
  if (!found) return std::nullopt;
  TwoMono r;
  r.vertices = std::move(found->vertices);
  if (found->colors.size() == 2) {
    r.low = found->colors[0];
    r.high = found->colors[1];
  } else {
    unsigned c = found->colors.at(0);
    unsigned partner = (c + 1) % std::max(2u, f.colors);
    r.low = std::min(c, partner);
    r.high = std::max(c, partner);
  }
  return r;
}

Coloring color_halving_forward(const Coloring& f) {
  if (f.exponent != 2) throw std::invalid_argument("color halving is the pairs case");
  if (f.colors != 4) throw std::invalid_argument("color halving expects four colors");
  Coloring g{2, f.vertices, 2, {}};
  g.table.reserve(f.table.size());
  for (unsigned raw : f.table) g.table.push_back(truncate_color(raw, 4) > 1 ? 1u : 0u);
  return g;
}

Coloring parity_forward(const Coloring& f, const HomSet& x) {
  if (f.exponent != 2) throw std::invalid_argument("parity recoloring is the pairs case");
  if (x.vertices.size() < 2) throw std::invalid_argument("parity recoloring needs |x| >= 2");
  Coloring g1 = color_halving_forward(f);
  if (homogeneous_color(g1, x.vertices) != x.color)
    throw std::invalid_argument("x is not homogeneous for the halved coloring");
  unsigned n = static_cast<unsigned>(x.vertices.size());
  Coloring g{2, n, 2, {}};
  g.table.reserve(binomial(n, 2));
  for_each_subset(n, 2, [&](std::span<const unsigned> idx) {
    unsigned pair[2] = {x.vertices[idx[0]], x.vertices[idx[1]]};
    g.table.push_back(f.at(pair) % 2);
    return true;
  });
  return g;
}

std::vector<unsigned> two_step_backward(const HomSet& x, const HomSet& y) {
  std::vector<unsigned> z;
  z.reserve(y.vertices.size());
  for (unsigned m : y.vertices) {
    if (m >= x.vertices.size())
      throw std::out_of_range("solution index " + std::to_string(m) +
                              " out of range for a set of " +
                              std::to_string(x.vertices.size()));
    z.push_back(x.vertices[m]);
  }
  return z;
}

// --- solver word protocol ---------------------------------------------------

Word encode_rt_instance(unsigned size, const Coloring& g) {
  Word w;
  w.reserve(1 + g.table.size());
  w.push_back(size);
  w.insert(w.end(), g.table.begin(), g.table.end());
  return w;
}

std::optional<unsigned> rt_vertex_count(std::size_t table_len, unsigned exponent) {
  for (unsigned cand = 0; cand <= 4096; ++cand) {
    std::uint64_t c = binomial(cand, exponent);
    if (c == table_len && (table_len > 0 || cand == 0)) return cand;
    if (c > table_len) break;
  }
  return std::nullopt;
}

std::optional<RtInstance> decode_rt_instance(const Word& w, unsigned exponent, unsigned colors) {
  if (w.empty()) return std::nullopt;
  auto N = rt_vertex_count(w.size() - 1, exponent);
  if (!N) return std::nullopt;
  RtInstance inst;
  inst.size = w[0];
  inst.coloring = Coloring{exponent, *N, colors, Word(w.begin() + 1, w.end())};
  return inst;
}

Word encode_homset(const HomSet& h) {
  Word w;
  w.reserve(1 + h.vertices.size());
  w.push_back(h.color);
  w.insert(w.end(), h.vertices.begin(), h.vertices.end());
  return w;
}

std::optional<HomSet> decode_homset(const Word& w) {
  if (w.empty()) return std::nullopt;
  HomSet h;
  h.color = w[0];
  h.vertices.assign(w.begin() + 1, w.end());
  for (std::size_t i = 1; i < h.vertices.size(); ++i)
    if (h.vertices[i - 1] >= h.vertices[i]) return std::nullopt;
  return h;
}

CountedSolver::Fn brute_rt_solver(unsigned exponent, unsigned colors) {
  return [exponent, colors](const Word& w) -> std::optional<Word> {
    auto inst = decode_rt_instance(w, exponent, colors);
    if (!inst) return std::nullopt;
    if (inst->size < exponent) return std::nullopt;
    auto hom = find_homogeneous(inst->coloring, inst->size);
    if (!hom) return std::nullopt;
    return encode_homset(*hom);
  };
}

CountedSolver::Fn rt_table_solver(unsigned exponent, unsigned colors, unsigned size) {
  return [exponent, colors, size](const Word& table) -> std::optional<Word> {
    Word w;
    w.reserve(1 + table.size());
    w.push_back(size);
    w.insert(w.end(), table.begin(), table.end());
    auto inst = decode_rt_instance(w, exponent, colors);
    if (!inst) return std::nullopt;
    auto hom = find_homogeneous(inst->coloring, size);
    if (!hom) return std::nullopt;
    return encode_homset(*hom);
  };
}

unsigned stage1_request_size(unsigned size) {
  if (size < 2) return std::max(size, 1u);
  std::uint64_t b = binomial(2 * size - 2, size - 1);
  return static_cast<unsigned>(std::min<std::uint64_t>(b, 1u << 20));
}

// --- the two-application pipeline -------------------------------------------

namespace {

// Decode a solver answer and insist it really is homogeneous for g.
std::optional<HomSet> validate_solution(const Coloring& g, const Word& encoded) {
  auto h = decode_homset(encoded);
  if (!h) return std::nullopt;
  for (unsigned v : h->vertices)
    if (v >= g.vertices) return std::nullopt;
  if (homogeneous_color(g, h->vertices) != h->color) return std::nullopt;
  return h;
}

}  // namespace

TwoStepResult rt24_via_two_rt22(const Coloring& f, const CountedSolver& solver, unsigned size) {
  if (f.exponent != 2) throw std::invalid_argument("the pipeline is the pairs case");
  if (f.colors != 4) throw std::invalid_argument("the pipeline starts from four colors");
  if (size < 2) throw std::invalid_argument("target size must be at least 2");
  std::uint64_t before = solver.count();
  TwoStepResult result;

  Coloring g1 = color_halving_forward(f);
  std::optional<Word> r1 = solver(encode_rt_instance(stage1_request_size(size), g1));
  if (!r1) {
    result.failed_stage = 1;
    result.note = "stage 1 solver returned nothing";
    result.applications = solver.count() - before;
    return result;
  }
  auto x = validate_solution(g1, *r1);
  if (!x || x->vertices.size() < 2) {
    result.failed_stage = 1;
    result.note = "stage 1 solver answer invalid";
    result.applications = solver.count() - before;
    return result;
  }

  Coloring g2 = parity_forward(f, *x);
  std::optional<Word> r2 = solver(encode_rt_instance(size, g2));
  if (!r2) {
    result.failed_stage = 2;
    result.note = "stage 2 solver returned nothing";
    result.applications = solver.count() - before;
    return result;
  }
  auto y = validate_solution(g2, *r2);
  if (!y || y->vertices.size() < size) {
    result.failed_stage = 2;
    result.note = "stage 2 solver answer invalid or undersized";
    result.applications = solver.count() - before;
    return result;
  }

  std::vector<unsigned> z = two_step_backward(*x, *y);
  result.hom = make_homset(f, std::move(z));  // homogeneous by the two-step argument
  result.applications = solver.count() - before;
  return result;
}

// --- the classical one-application proofs -----------------------------------

const char* to_string(OneUseOutcome o) {
  switch (o) {
    case OneUseOutcome::Success: return "success";
    case OneUseOutcome::SolverFailure: return "solver-failure";
    case OneUseOutcome::Insufficient: return "insufficient";
    case OneUseOutcome::AdviceContradiction: return "advice-contradiction";
  }
  return "?";
}

OneUseResult classical_one_use_rt24(const Coloring& f, const CountedSolver& solver,
                                    unsigned advice_size, unsigned size) {
  if (f.exponent != 2) throw std::invalid_argument("classical one-use is the pairs case");
  if (f.colors != 4) throw std::invalid_argument("classical one-use expects four colors");
  if (size < 2 || advice_size < size)
    throw std::invalid_argument("need advice_size >= size >= 2");
  std::uint64_t before = solver.count();
  OneUseResult result;

  auto advice = find_2mono(f, advice_size);
  if (advice) {
    // j = 0: recolor the 2-mono set by its color pair
    result.branch = 0;
    const auto& x = advice->vertices;
    unsigned n = static_cast<unsigned>(x.size());
    Coloring g{2, n, 2, {}};
    g.table.reserve(binomial(n, 2));
    for_each_subset(n, 2, [&](std::span<const unsigned> idx) {
      unsigned pair[2] = {x[idx[0]], x[idx[1]]};
      g.table.push_back(f.at(pair) == advice->high ? 1u : 0u);
      return true;
    });
    std::optional<Word> r = solver(encode_rt_instance(size, g));
    result.applications = solver.count() - before;
    if (!r) {
      result.outcome = OneUseOutcome::SolverFailure;
      result.note = "solver returned nothing on the advice coloring";
      return result;
    }
    auto y = validate_solution(g, *r);
    if (!y) {
      result.outcome = OneUseOutcome::SolverFailure;
      result.note = "solver answer invalid";
      return result;
    }
    if (y->vertices.size() < size) {
      result.outcome = OneUseOutcome::Insufficient;
      result.note = "solver answer below the target size";
      return result;
    }
    HomSet xh{x, 0};
    std::vector<unsigned> z = two_step_backward(xh, *y);
    unsigned color = y->color == 0 ? advice->low : advice->high;
    result.hom = HomSet{std::move(z), color};
    if (homogeneous_color(f, result.hom->vertices) != color)
      throw std::logic_error("one-use output failed its homogeneity check");
    result.outcome = OneUseOutcome::Success;
    return result;
  }

  // j = 1: no 2-mono set of the advice size exists; recolor everything by
  // the {0,1}/{2,3} split and hunt the contradiction
  result.branch = 1;
  Coloring g = color_halving_forward(f);
  std::optional<Word> r = solver(encode_rt_instance(advice_size, g));
  result.applications = solver.count() - before;
  if (!r) {
    result.outcome = OneUseOutcome::Insufficient;
    result.note = "no 2-mono advice set and the solver returned nothing";
    return result;
  }
  auto y = validate_solution(g, *r);
  if (!y) {
    result.outcome = OneUseOutcome::SolverFailure;
    result.note = "solver answer invalid";
    return result;
  }
  if (y->vertices.size() >= advice_size) {
    // A halving-homogeneous set of the advice size is 2-mono for f, which
    // the exhaustive advice search ruled out.
    result.outcome = OneUseOutcome::AdviceContradiction;
    result.contradiction_witness = y->vertices;
    result.note = "solver produced a 2-mono set the advice phase proved absent";
    return result;
  }
  result.outcome = OneUseOutcome::Insufficient;
  result.note = "solver answer below the advice size";
  return result;
}

OneUseResult generalized_one_use(const Coloring& f, const CountedSolver& solver,
                                 unsigned advice_size, unsigned size) {
  if (f.colors < 2) throw std::invalid_argument("need at least two colors");
  if (f.exponent < 1 || f.exponent > 3) throw std::invalid_argument("exponent must be 1, 2 or 3");
  if (size < f.exponent || advice_size < size)
    throw std::invalid_argument("need advice_size >= size >= exponent");
  std::uint64_t before = solver.count();
  OneUseResult result;

  unsigned padded = std::bit_ceil(std::max(2u, f.colors));

  // deepest level first: at most 1, 2, 4, ... distinct colors
  std::vector<unsigned> x;
  std::vector<unsigned> observed;
  bool advice_found = false;
  for (unsigned width = 1; width < padded; width *= 2) {
    if (auto found = find_color_bounded(f, advice_size, width)) {
      x = std::move(found->vertices);
      observed = std::move(found->colors);
      advice_found = true;
      break;
    }
  }
  if (!advice_found) {
    // level 0: the whole vertex set, colors as observed on it
    x.resize(f.vertices);
    for (unsigned v = 0; v < f.vertices; ++v) x[v] = v;
    for (unsigned raw : f.table) {
      unsigned c = truncate_color(raw, f.colors);
      auto it = std::lower_bound(observed.begin(), observed.end(), c);
      if (it == observed.end() || *it != c) observed.insert(it, c);
    }
  }
  result.branch = advice_found ? 0 : 1;

  // split the observed colors in half; the upper half maps to 1
  std::size_t lower_size = (observed.size() + 1) / 2;
  auto is_upper = [&](unsigned c) {
    auto it = std::lower_bound(observed.begin(), observed.end(), c);
    return static_cast<std::size_t>(it - observed.begin()) >= lower_size;
  };
  unsigned n = static_cast<unsigned>(x.size());
  Coloring g{f.exponent, n, 2, {}};
  g.table.reserve(binomial(n, f.exponent));
  for_each_subset(n, f.exponent, [&](std::span<const unsigned> idx) {
    std::vector<unsigned> subset(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = x[idx[i]];
    g.table.push_back(is_upper(f.at(subset)) ? 1u : 0u);
    return true;
  });

  if (observed.size() <= 2) {
    // the surviving halves are single colors: the call yields the answer
    std::optional<Word> r = solver(encode_rt_instance(size, g));
    result.applications = solver.count() - before;
    if (!r) {
      result.outcome = OneUseOutcome::SolverFailure;
      result.note = "solver returned nothing on the split coloring";
      return result;
    }
    auto y = validate_solution(g, *r);
    if (!y) {
      result.outcome = OneUseOutcome::SolverFailure;
      result.note = "solver answer invalid";
      return result;
    }
    if (y->vertices.size() < size) {
      result.outcome = OneUseOutcome::Insufficient;
      result.note = "solver answer below the target size";
      return result;
    }
    HomSet xh{x, 0};
    std::vector<unsigned> z = two_step_backward(xh, *y);
    unsigned color = y->color == 1 && observed.size() == 2 ? observed[1] : observed.at(0);
    result.hom = HomSet{std::move(z), color};
    if (homogeneous_color(f, result.hom->vertices) != color)
      throw std::logic_error("generalized one-use output failed its homogeneity check");
    result.outcome = OneUseOutcome::Success;
    return result;
  }

  // more than two surviving colors: a full-size answer would be a deeper
  // advice set than the deepest the exhaustive search found
  std::optional<Word> r = solver(encode_rt_instance(advice_size, g));
  result.applications = solver.count() - before;
  if (!r) {
    result.outcome = OneUseOutcome::Insufficient;
    result.note = "no deeper advice set and the solver returned nothing";
    return result;
  }
  auto y = validate_solution(g, *r);
  if (!y) {
    result.outcome = OneUseOutcome::SolverFailure;
    result.note = "solver answer invalid";
    return result;
  }
  if (y->vertices.size() >= advice_size) {
    HomSet xh{x, 0};
    result.outcome = OneUseOutcome::AdviceContradiction;
    result.contradiction_witness = two_step_backward(xh, *y);
    result.note = "solver produced a color-bounded set the advice phase proved absent";
    return result;
  }
  result.outcome = OneUseOutcome::Insufficient;
  result.note = "solver answer below the advice size";
  return result;
}

// --- problems and reductions -------------------------------------------------

Problem rt_problem(unsigned exponent, unsigned N, unsigned k, unsigned min_size) {
  if (exponent < 1 || exponent > 3) throw std::invalid_argument("exponent must be 1, 2 or 3");
  if (min_size < exponent) throw std::invalid_argument("min_size must be at least the exponent");
  std::uint64_t table_len = binomial(N, exponent);
  WordSpace instances{static_cast<std::size_t>(table_len), k};

  // N fixes the enumerated instance space; validity and solutions accept a
  // coloring of any vertex count recoverable from the table length, so
  // derived instances on fewer vertices stay inside the problem.
  Problem p;
  p.name = "rt(n=" + std::to_string(exponent) + ",N=" + std::to_string(N) +
           ",k=" + std::to_string(k) + ",m=" + std::to_string(min_size) + ")";
  p.instance_valid = [exponent](const Word& u) {
    return rt_vertex_count(u.size(), exponent).has_value();
  };
  p.is_solution = [exponent, k, min_size](const Word& u, const Word& s) {
    auto n = rt_vertex_count(u.size(), exponent);
    if (!n) return false;
    auto h = decode_homset(s);
    if (!h) return false;
    if (h->vertices.size() < min_size) return false;
    for (unsigned v : h->vertices)
      if (v >= *n) return false;
    Coloring f{exponent, *n, k, u};
    return homogeneous_color(f, h->vertices) == h->color;
  };
  p.for_each_instance = [instances](const std::function<bool(const Word&)>& fn) {
    instances.for_each(fn);
  };
  p.for_each_solution = [exponent, k, min_size](const Word& u,
                                                const std::function<bool(const Word&)>& fn) {
    auto n = rt_vertex_count(u.size(), exponent);
    if (!n) return;
    Coloring f{exponent, *n, k, u};
    for (unsigned size = min_size; size <= *n; ++size) {
      bool keep_going = true;
      for_each_subset(*n, size, [&](std::span<const unsigned> subset) {
        std::vector<unsigned> vs(subset.begin(), subset.end());
        if (auto c = homogeneous_color(f, vs)) {
          Word s;
          s.reserve(1 + vs.size());
          s.push_back(*c);
          s.insert(s.end(), vs.begin(), vs.end());
          keep_going = fn(s);
        }
        return keep_going;
      });
      if (!keep_going) return;
    }
  };
  p.instance_count = instances.count();
  p.instance_at = [instances](std::uint64_t i) { return instances.at(i); };
  p.random_instance = [instances, k](std::mt19937_64& rng) {
    Word w(instances.length, 0);
    for (auto& v : w) v = static_cast<unsigned>(rng() % k);
    return w;
  };
  return p;
}

SeqEncoding two_step_encoding(unsigned N) {
  std::uint64_t table_len = binomial(N, 2);
  WordSpace instances{static_cast<std::size_t>(table_len), 4};

  SeqEncoding enc;
  enc.instance_valid = [table_len](const Word& w) { return w.size() == table_len; };
  enc.for_each_instance = [instances](const std::function<bool(const Word&)>& fn) {
    instances.for_each(fn);
  };
  enc.instance_count = instances.count();
  enc.instance_at = [instances](std::uint64_t i) { return instances.at(i); };
  enc.random_instance = [instances](std::mt19937_64& rng) {
    Word w(instances.length, 0);
    for (auto& v : w) v = static_cast<unsigned>(rng() % 4);
    return w;
  };
  enc.first_instance = [](const Word& w) {
    Word g(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) g[i] = truncate_color(w[i], 4) > 1 ? 1u : 0u;
    return g;
  };
  enc.kappa.name = "parity-recolor";
  enc.kappa.aux_arity = 1;
  enc.kappa.fn = [N](Oracle& o, const std::vector<Word>& aux) {
    auto y1 = decode_homset(aux[0]);
    if (!y1) throw std::invalid_argument("kappa: malformed first-stage solution");
    const auto& xs = y1->vertices;
    Word table;
    table.reserve(binomial(static_cast<unsigned>(xs.size()), 2));
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        unsigned pair[2] = {xs[i], xs[j]};
        unsigned raw = o.at(static_cast<std::size_t>(subset_rank(pair, N)));
        table.push_back(truncate_color(raw, 4) % 2);
      }
    return table;
  };
  return enc;
}

Problem rt24_seq2_problem(unsigned N, unsigned min_size) {
  Problem base = rt_problem(2, N, 2, min_size);
  return seq_use_n(base, two_step_encoding(N), 2,
                   "seq2(rt22,N=" + std::to_string(N) + ",m=" + std::to_string(min_size) + ")");
}

Reduction rt24_two_step_reduction(unsigned N, unsigned min_size) {
  Problem source = rt_problem(2, N, 4, min_size);
  Problem target = rt24_seq2_problem(N, min_size);

  TrackedFunctional psi;
  psi.name = "two-step-backward";
  psi.aux_arity = 1;
  psi.fn = [N](Oracle& o, const std::vector<Word>& aux) {
    auto blocks = split_blocks(aux[0], 2);
    if (!blocks) throw std::invalid_argument("backward: malformed sequential solution");
    auto y1 = decode_homset((*blocks)[0]);
    auto y2 = decode_homset((*blocks)[1]);
    if (!y1 || !y2) throw std::invalid_argument("backward: malformed stage solution");
    std::vector<unsigned> z = two_step_backward(*y1, *y2);
    if (z.size() < 2) throw std::invalid_argument("backward: output too small to color");
    unsigned pair[2] = {z[0], z[1]};
    unsigned color = truncate_color(o.at(static_cast<std::size_t>(subset_rank(pair, N))), 4);
    Word s;
    s.reserve(1 + z.size());
    s.push_back(color);
    s.insert(s.end(), z.begin(), z.end());
    return s;
  };
  return as_reduction_pair(copy_functional(), std::move(psi), std::move(source),
                           std::move(target),
                           "rt24<=2*rt22(N=" + std::to_string(N) + ")");
}

}  // namespace redlab
