#include "redlab/problems.hpp"

#include <stdexcept>

#include "redlab/adversary.hpp"

namespace redlab {

Problem trivial_problem(WordSpace instances, WordSpace solutions) {
  Problem p;
  p.name = "trivial(L=" + std::to_string(instances.length) + ",B=" +
           std::to_string(instances.bound) + ";solL=" + std::to_string(solutions.length) +
           ",solB=" + std::to_string(solutions.bound) + ")";
  p.instance_valid = [](const Word&) { return true; };
  p.is_solution = [](const Word&, const Word&) { return true; };
  p.for_each_instance = [instances](const std::function<bool(const Word&)>& fn) {
    instances.for_each(fn);
  };
  p.for_each_solution = [solutions](const Word&, const std::function<bool(const Word&)>& fn) {
    solutions.for_each(fn);
  };
  p.instance_count = instances.count();
  p.instance_at = [instances](std::uint64_t i) { return instances.at(i); };
  p.random_instance = [instances](std::mt19937_64& rng) {
    Word w(instances.length, 0);
    for (auto& v : w) v = static_cast<unsigned>(rng() % instances.bound);
    return w;
  };
  return p;
}

Problem path_problem(Tree t, unsigned depth) {
  WordSpace instances{static_cast<std::size_t>(depth) + 1, 2};
  Problem p;
  p.name = "path(D=" + std::to_string(depth) + ")";
  p.instance_valid = [depth](const Word& u) { return u.size() == depth + 1; };
  p.is_solution = [t, depth](const Word& u, const Word& v) {
    return q2_verdict(u, v, t, depth) != Q2Verdict::Fail;
  };
  p.for_each_instance = [instances](const std::function<bool(const Word&)>& fn) {
    instances.for_each(fn);
  };
  // solutions in order of (v(0), tail): the path claim first, then escapes
  p.for_each_solution = [t, depth](const Word& u, const std::function<bool(const Word&)>& fn) {
    WordSpace tails{depth, 2};
    for (unsigned head = 0; head <= depth; ++head) {
      bool keep_going = true;
      tails.for_each([&](const Word& tail) {
        Word v;
        v.reserve(depth + 1);
        v.push_back(head);
        v.insert(v.end(), tail.begin(), tail.end());
        if (q2_verdict(u, v, t, depth) != Q2Verdict::Fail) keep_going = fn(v);
        return keep_going;
      });
      if (!keep_going) return;
    }
  };
  p.instance_count = instances.count();
  p.instance_at = [instances](std::uint64_t i) { return instances.at(i); };
  p.random_instance = [instances](std::mt19937_64& rng) {
    Word w(instances.length, 0);
    for (auto& v : w) v = static_cast<unsigned>(rng() % 2);
    return w;
  };
  return p;
}

std::optional<unsigned> mu_witness(const Word& u, const Tree& t, unsigned depth) {
  if (u.size() < depth) throw std::invalid_argument("mu_witness: |u| must be at least the bound");
  Word prefix;
  prefix.reserve(depth);
  for (unsigned m = 0; m + 1 <= depth; ++m) {
    prefix.push_back(u[m] != 0 ? 1u : 0u);
    if (!t.contains(prefix)) return 1 + m;
  }
  return std::nullopt;
}

}  // namespace redlab
