#include "redlab/adversary.hpp"

#include <stdexcept>

namespace redlab {

const char* to_string(Q2Verdict v) {
  switch (v) {
    case Q2Verdict::PassPath: return "pass-path";
    case Q2Verdict::PassEscape: return "pass-escape";
    case Q2Verdict::Fail: return "fail";
  }
  return "?";
}

Q2Verdict q2_verdict(const Word& u, const Word& v, const Tree& t, unsigned depth) {
  if (u.size() < depth + 1 || v.size() < depth + 1)
    throw std::invalid_argument("q2_verdict: words must have length >= depth+1");
  if (v[0] == 0) {
    // shifted word must stay in the tree at every prefix length <= depth
    Word prefix;
    prefix.reserve(depth);
    for (unsigned len = 1; len <= depth; ++len) {
      prefix.push_back(v[len]);
      if (!t.contains(prefix)) return Q2Verdict::Fail;
    }
    return Q2Verdict::PassPath;
  }
  if (static_cast<std::size_t>(v[0]) + 1 > u.size())
    throw std::invalid_argument("q2_verdict: v(0) exceeds the available prefix of u");
  Word prefix(u.begin(), u.begin() + static_cast<long>(v[0]) + 1);
  return t.contains(prefix) ? Q2Verdict::Fail : Q2Verdict::PassEscape;
}

namespace {

unsigned failure_depth_of(const Word& s0, const Word& v0, const Tree& t, unsigned depth) {
  if (v0[0] == 0) {
    Word prefix;
    for (unsigned len = 1; len <= depth; ++len) {
      prefix.push_back(v0[len]);
      if (!t.contains(prefix)) return len;
    }
    return 0;  // unreachable for a failing path claim
  }
  (void)s0;
  return v0[0] + 1;  // the prefix length that stayed in the tree
}

}  // namespace

ProbeOutcome probe(const TrackedFunctional& psi, const Tree& t, const Word& u0_prefix,
                   unsigned depth, std::uint64_t budget) {
  if (!is_path_prefix(t, u0_prefix))
    throw std::invalid_argument("probe: u0_prefix is not a path prefix of the tree");
  std::size_t length = static_cast<std::size_t>(depth) + 1;
  if (u0_prefix.size() > length)
    throw std::invalid_argument("probe: u0_prefix longer than depth+1");

  Word padded = u0_prefix;
  padded.resize(length, 0);
  Word empty_solution(length, 0);

  EvalResult first = evaluate(psi, padded, {empty_solution}, budget);

  // The computable extension: copy everything the functional looked at,
  // continue with zeros.  (With zero padding this equals the padded word.)
  Word s0(length, 0);
  std::size_t k = first.use.queried.empty() ? 0 : first.use.max_position();
  for (std::size_t i = 0; i <= k && i < length; ++i) s0[i] = padded[i];

  EvalResult second = evaluate(psi, s0, {empty_solution}, budget);
  if (second.output.size() < length)
    throw std::invalid_argument("probe: psi output shorter than depth+1");

  ProbeOutcome out;
  out.s0 = s0;
  out.output = second.output;
  out.use = second.use;
  out.verdict = q2_verdict(s0, second.output, t, depth);
  if (out.verdict == Q2Verdict::Fail) {
    out.survived = false;
    out.witness = CounterWitness{second.use, s0, second.output,
                                 failure_depth_of(s0, second.output, t, depth)};
    out.note = second.output[0] == 0
                   ? "path claim leaves the tree at depth " +
                         std::to_string(out.witness->failure_depth)
                   : "escape claim refuted: the prefix of length " +
                         std::to_string(out.witness->failure_depth) + " is still in the tree";
  } else {
    out.survived = true;
    if (out.verdict == Q2Verdict::PassPath && is_path_prefix(t, s0))
      out.note = "survived via a path claim; no escape exists on path inputs";
    else if (out.verdict == Q2Verdict::PassEscape)
      out.note = "survived via an escape witness";
    else
      out.note = "survived via a path claim";
  }
  return out;
}

bool reverify(const CounterWitness& w, const TrackedFunctional& psi, const Tree& t,
              unsigned depth, std::uint64_t budget) {
  if (!w.use.agrees_with(w.s0)) return false;
  Word empty_solution(w.s0.size(), 0);
  EvalResult r = evaluate(psi, w.s0, {empty_solution}, budget);
  if (r.output != w.v0) return false;
  return q2_verdict(w.s0, r.output, t, depth) == Q2Verdict::Fail;
}

TrackedFunctional mu_escape_functional(const Tree& t, unsigned search_depth,
                                       std::size_t output_length) {
  TrackedFunctional f;
  f.name = "mu-escape";
  f.aux_arity = 1;
  f.fn = [t, search_depth, output_length](Oracle& o, const std::vector<Word>&) {
    Word out(output_length, 0);
    for (std::size_t n = 0; n < output_length; ++n) {
      // recompute the witness for every position
      Word prefix;
      unsigned value = 0;
      for (unsigned m = 0; m + 1 <= search_depth; ++m) {
        prefix.push_back(o.at(m) != 0 ? 1u : 0u);
        if (!t.contains(prefix)) {
          value = 1 + m;
          break;
        }
      }
      out[n] = value;  // 0 = no escape found: fall back to the zero path claim
    }
    return out;
  };
  return f;
}

TrackedFunctional prefix_guess_functional(std::size_t read_count, std::size_t output_length) {
  TrackedFunctional f;
  f.name = "prefix-guess(" + std::to_string(read_count) + ")";
  f.aux_arity = 1;
  f.fn = [read_count, output_length](Oracle& o, const std::vector<Word>&) {
    Word out(output_length, 0);
    for (std::size_t i = 0; i < read_count && i + 1 < output_length; ++i)
      out[i + 1] = o.at(i) != 0 ? 1u : 0u;
    return out;
  };
  return f;
}

}  // namespace redlab
