#include "redlab/reductions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

namespace redlab {

Reduction as_reduction_pair(TrackedFunctional phi, TrackedFunctional psi, Problem source,
                            Problem target, std::string name) {
  if (phi.aux_arity != 0)
    throw std::invalid_argument("forward functional must take no auxiliary words");
  if (psi.aux_arity != 1)
    throw std::invalid_argument("backward functional must take exactly one auxiliary word");
  Reduction r;
  r.name = std::move(name);
  r.source = std::move(source);
  r.target = std::move(target);
  r.forward = std::move(phi);
  r.backward = std::move(psi);
  return r;
}

Reduction identity_reduction(const Problem& p) {
  TrackedFunctional phi = copy_functional();
  TrackedFunctional psi;
  psi.name = "return-solution";
  psi.aux_arity = 1;
  psi.fn = [](Oracle&, const std::vector<Word>& aux) { return aux[0]; };
  return as_reduction_pair(std::move(phi), std::move(psi), p, p, "identity(" + p.name + ")");
}

namespace {

// Per-worker accumulator keeping only the lexicographically least failures,
// so merged results do not depend on the partition.
struct Partial {
  std::uint64_t checked = 0;
  std::uint64_t forward_count = 0;
  std::uint64_t backward_count = 0;
  std::uint64_t error_count = 0;
  std::vector<Word> forward;
  std::vector<std::pair<Word, Word>> backward;
  std::vector<std::pair<Word, std::string>> errors;
  std::size_t max_use = 0;
  std::uint64_t evaluations = 0;

  template <class V>
  static void cap_insert(V& v, typename V::value_type item, std::size_t cap) {
    v.push_back(std::move(item));
    if (v.size() > 2 * cap + 8) {
      std::sort(v.begin(), v.end());
      v.resize(cap);
    }
  }
};

void check_instance(const Reduction& r, const Word& u, const VerifyOptions& opts, Partial& acc) {
  ++acc.checked;
  Word image;
  try {
    EvalResult fwd = evaluate(r.forward, u, opts.budget);
    ++acc.evaluations;
    acc.max_use = std::max(acc.max_use, fwd.use.queried.size());
    image = std::move(fwd.output);
  } catch (const std::exception& e) {
    ++acc.error_count;
    Partial::cap_insert(acc.errors, {u, std::string("forward: ") + e.what()},
                        opts.max_recorded_failures);
    return;
  }
  if (!r.target.instance_valid(image)) {
    ++acc.forward_count;
    Partial::cap_insert(acc.forward, u, opts.max_recorded_failures);
    return;
  }
  try {
    r.target.for_each_solution(image, [&](const Word& y) {
      try {
        EvalResult bwd = evaluate(r.backward, u, {y}, opts.budget);
        ++acc.evaluations;
        acc.max_use = std::max(acc.max_use, bwd.use.queried.size());
        if (!r.source.is_solution(u, bwd.output)) {
          ++acc.backward_count;
          Partial::cap_insert(acc.backward, {u, y}, opts.max_recorded_failures);
        }
      } catch (const std::exception& e) {
        ++acc.error_count;
        Partial::cap_insert(acc.errors, {u, std::string("backward: ") + e.what()},
                            opts.max_recorded_failures);
      }
      return true;
    });
  } catch (const std::exception& e) {
    ++acc.error_count;
    Partial::cap_insert(acc.errors, {u, std::string("solution enumeration: ") + e.what()},
                        opts.max_recorded_failures);
  }
}

VerificationReport merge(const Reduction& r, const VerifyOptions& opts,
                         std::vector<Partial>& parts, bool exhaustive) {
  VerificationReport rep;
  rep.source = r.source.name;
  rep.target = r.target.name;
  rep.exhaustive = exhaustive;
  rep.seed = opts.seed;
  for (auto& p : parts) {
    rep.instances_checked += p.checked;
    rep.forward_failure_count += p.forward_count;
    rep.backward_failure_count += p.backward_count;
    rep.error_count += p.error_count;
    rep.max_use = std::max(rep.max_use, p.max_use);
    rep.evaluations += p.evaluations;
    rep.forward_failures.insert(rep.forward_failures.end(), p.forward.begin(), p.forward.end());
    rep.backward_failures.insert(rep.backward_failures.end(), p.backward.begin(),
                                 p.backward.end());
    rep.errors.insert(rep.errors.end(), p.errors.begin(), p.errors.end());
  }
  auto finish = [&](auto& v) {
    std::sort(v.begin(), v.end());
    if (v.size() > opts.max_recorded_failures) v.resize(opts.max_recorded_failures);
  };
  finish(rep.forward_failures);
  finish(rep.backward_failures);
  finish(rep.errors);
  return rep;
}

}  // namespace

VerificationReport verify(const Reduction& r, const VerifyOptions& opts) {
  if (!opts.exhaustive) {
    if (!r.source.random_instance)
      throw std::invalid_argument("randomized verification needs a sampleable source problem");
    std::vector<Partial> parts(1);
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t i = 0; i < opts.samples; ++i)
      check_instance(r, r.source.random_instance(rng), opts, parts[0]);
    return merge(r, opts, parts, false);
  }

  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs > 1 && r.source.instance_count > 0 && r.source.instance_at) {
    std::uint64_t total = r.source.instance_count;
    jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, total ? total : 1));
    std::vector<Partial> parts(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      std::uint64_t lo = total * w / jobs;
      std::uint64_t hi = total * (w + 1) / jobs;
      workers.emplace_back([&, w, lo, hi] {
        for (std::uint64_t i = lo; i < hi; ++i)
          check_instance(r, r.source.instance_at(i), opts, parts[w]);
      });
    }
    for (auto& t : workers) t.join();
    return merge(r, opts, parts, true);
  }

  std::vector<Partial> parts(1);
  r.source.for_each_instance([&](const Word& u) {
    check_instance(r, u, opts, parts[0]);
    return true;
  });
  return merge(r, opts, parts, true);
}

Reduction compose(const Reduction& r1, const Reduction& r2, std::string name) {
  if (r1.target.name != r2.source.name)
    throw std::invalid_argument("compose: " + r1.name + " targets " + r1.target.name +
                                " but " + r2.name + " starts from " + r2.source.name);
  constexpr std::uint64_t kInnerBudget = std::numeric_limits<std::uint64_t>::max();

  TrackedFunctional phi;
  phi.name = r2.forward.name + " . " + r1.forward.name;
  phi.fn = [f1 = r1.forward, f2 = r2.forward](Oracle& o, const std::vector<Word>&) {
    Word mid = f1.fn(o, {});
    Oracle inner(mid, kInnerBudget);
    return f2.fn(inner, {});
  };

  TrackedFunctional psi;
  psi.name = r1.backward.name + " . " + r2.backward.name;
  psi.aux_arity = 1;
  psi.fn = [f1 = r1.forward, b1 = r1.backward, b2 = r2.backward](Oracle& o,
                                                                 const std::vector<Word>& aux) {
    Word mid = f1.fn(o, {});
    Oracle inner(mid, kInnerBudget);
    Word y1 = b2.fn(inner, {aux[0]});
    return b1.fn(o, {y1});
  };

  Reduction out;
  out.name = name.empty() ? "(" + r2.name + " . " + r1.name + ")" : std::move(name);
  out.source = r1.source;
  out.target = r2.target;
  out.forward = std::move(phi);
  out.backward = std::move(psi);
  return out;
}

// --- sequential multi-use ---------------------------------------------------

Word join_blocks(const std::vector<Word>& blocks) {
  Word out;
  for (const Word& b : blocks) {
    out.push_back(static_cast<unsigned>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::optional<std::vector<Word>> split_blocks(const Word& s, unsigned count) {
  std::vector<Word> blocks;
  std::size_t at = 0;
  for (unsigned i = 0; i < count; ++i) {
    if (at >= s.size()) return std::nullopt;
    std::size_t len = s[at++];
    if (at + len > s.size()) return std::nullopt;
    blocks.emplace_back(s.begin() + static_cast<long>(at),
                        s.begin() + static_cast<long>(at + len));
    at += len;
  }
  if (at != s.size()) return std::nullopt;
  return blocks;
}

SeqEncoding identity_seq_encoding(const Problem& p) {
  SeqEncoding enc;
  enc.instance_valid = p.instance_valid;
  enc.for_each_instance = p.for_each_instance;
  enc.instance_count = p.instance_count;
  enc.instance_at = p.instance_at;
  enc.random_instance = p.random_instance;
  enc.first_instance = [](const Word& w) { return w; };
  enc.kappa.name = "again";
  enc.kappa.aux_arity = 1;
  enc.kappa.fn = [](Oracle& o, const std::vector<Word>&) {
    Word out(o.size(), 0);
    for (std::size_t i = 0; i < o.size(); ++i) out[i] = o.at(i);
    return out;
  };
  return enc;
}

Problem seq_use_n(const Problem& p, const SeqEncoding& enc, unsigned uses, std::string name,
                  std::uint64_t budget) {
  if (uses == 0) throw std::invalid_argument("seq_use_n: need at least one use");
  Problem out;
  out.name = std::move(name);
  out.instance_valid = enc.instance_valid;
  out.for_each_instance = enc.for_each_instance;
  out.instance_count = enc.instance_count;
  out.instance_at = enc.instance_at;
  out.random_instance = enc.random_instance;

  out.is_solution = [p, enc, uses, budget](const Word& w, const Word& s) {
    auto blocks = split_blocks(s, uses);
    if (!blocks) return false;
    Word x = enc.first_instance(w);
    for (unsigned i = 0; i < uses; ++i) {
      if (!p.is_solution(x, (*blocks)[i])) return false;
      if (i + 1 < uses) x = evaluate(enc.kappa, w, {(*blocks)[i]}, budget).output;
    }
    return true;
  };

  out.for_each_solution = [p, enc, uses, budget](const Word& w,
                                                 const std::function<bool(const Word&)>& fn) {
    std::vector<Word> acc;
    std::function<bool(unsigned, const Word&)> rec = [&](unsigned stage, const Word& x) {
      bool keep_going = true;
      p.for_each_solution(x, [&](const Word& y) {
        acc.push_back(y);
        if (stage + 1 == uses) {
          keep_going = fn(join_blocks(acc));
        } else {
          Word next = evaluate(enc.kappa, w, {y}, budget).output;
          keep_going = rec(stage + 1, next);
        }
        acc.pop_back();
        return keep_going;
      });
      return keep_going;
    };
    rec(0, enc.first_instance(w));
  };
  return out;
}

Problem seq_use2(const Problem& p, const SeqEncoding& enc, std::string name,
                 std::uint64_t budget) {
  return seq_use_n(p, enc, 2, std::move(name), budget);
}

Problem seq_use2(const Problem& p) {
  return seq_use_n(p, identity_seq_encoding(p), 2, p.name + "^2");
}

std::optional<Word> solve_seq(const SeqEncoding& enc, const Word& instance,
                              const CountedSolver& solver, unsigned uses, std::uint64_t budget) {
  std::vector<Word> blocks;
  Word x = enc.first_instance(instance);
  for (unsigned i = 0; i < uses; ++i) {
    std::optional<Word> y = solver(x);
    if (!y) return std::nullopt;
    blocks.push_back(*y);
    if (i + 1 < uses) x = evaluate(enc.kappa, instance, {*y}, budget).output;
  }
  return join_blocks(blocks);
}

}  // namespace redlab
