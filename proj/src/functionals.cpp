#include "redlab/functionals.hpp"

namespace redlab {

EvalResult evaluate(const TrackedFunctional& f, const Word& input, std::uint64_t budget) {
  return evaluate(f, input, {}, budget);
}

EvalResult evaluate(const TrackedFunctional& f, const Word& input, const std::vector<Word>& aux,
                    std::uint64_t budget) {
  if (budget == 0) throw std::invalid_argument("evaluation budget must be positive");
  if (aux.size() != f.aux_arity)
    throw std::invalid_argument("functional '" + f.name + "' expects " +
                                std::to_string(f.aux_arity) + " auxiliary words, got " +
                                std::to_string(aux.size()));
  Oracle oracle(input, budget);
  Word out = f.fn(oracle, aux);
  return EvalResult{std::move(out), oracle.use()};
}

bool consistency_check(const TrackedFunctional& f, const Word& u, const Word& uprime,
                       std::uint64_t budget) {
  EvalResult first = evaluate(f, u, budget);
  if (!first.use.agrees_with(uprime))
    throw std::invalid_argument("consistency_check: inputs disagree on the recorded use");
  EvalResult second = evaluate(f, uprime, budget);
  return first == second;
}

TrackedFunctional constant_functional(Word output) {
  TrackedFunctional f;
  f.name = "const";
  f.fn = [out = std::move(output)](Oracle&, const std::vector<Word>&) { return out; };
  return f;
}

TrackedFunctional copy_functional() {
  TrackedFunctional f;
  f.name = "copy";
  f.fn = [](Oracle& o, const std::vector<Word>&) {
    Word out(o.size(), 0);
    for (std::size_t i = 0; i < o.size(); ++i) out[i] = o.at(i);
    return out;
  };
  return f;
}

TrackedFunctional read_position(std::size_t pos) {
  TrackedFunctional f;
  f.name = "read(" + std::to_string(pos) + ")";
  f.fn = [pos](Oracle& o, const std::vector<Word>&) { return Word{o.at(pos)}; };
  return f;
}

namespace {

unsigned eval_expr(const Expr& e, Oracle& o) {
  auto clamp = [&](unsigned v) { return o.size() == 0 ? 0 : v % o.size(); };
  switch (e.op) {
    case Expr::Op::Const:
      return e.value;
    case Expr::Op::Read:
      return o.at(clamp(e.value));
    case Expr::Op::ReadAt:
      return o.at(clamp(eval_expr(e.kids[0], o)));
    case Expr::Op::Add:
      return (eval_expr(e.kids[0], o) + eval_expr(e.kids[1], o)) % 256u;
    case Expr::Op::Mul:
      return (eval_expr(e.kids[0], o) * eval_expr(e.kids[1], o)) % 256u;
    case Expr::Op::IfZero:
      return eval_expr(e.kids[0], o) == 0 ? eval_expr(e.kids[1], o) : eval_expr(e.kids[2], o);
  }
  return 0;
}

Expr random_expr(std::mt19937_64& rng, unsigned depth) {
  auto pick = [&](unsigned n) { return static_cast<unsigned>(rng() % n); };
  Expr e;
  if (depth == 0) {
    if (pick(2) == 0) {
      e.op = Expr::Op::Const;
      e.value = pick(8);
    } else {
      e.op = Expr::Op::Read;
      e.value = pick(64);
    }
    return e;
  }
  switch (pick(5)) {
    case 0:
      e.op = Expr::Op::ReadAt;
      e.kids.push_back(random_expr(rng, depth - 1));
      break;
    case 1:
      e.op = Expr::Op::Add;
      e.kids.push_back(random_expr(rng, depth - 1));
      e.kids.push_back(random_expr(rng, depth - 1));
      break;
    case 2:
      e.op = Expr::Op::Mul;
      e.kids.push_back(random_expr(rng, depth - 1));
      e.kids.push_back(random_expr(rng, depth - 1));
      break;
    case 3:
      e.op = Expr::Op::IfZero;
      e.kids.push_back(random_expr(rng, depth - 1));
      e.kids.push_back(random_expr(rng, depth - 1));
      e.kids.push_back(random_expr(rng, depth - 1));
      break;
    default:
      e.op = Expr::Op::Read;
      e.value = pick(64);
      break;
  }
  return e;
}

}  // namespace

TrackedFunctional expression_functional(std::vector<Expr> outputs, std::string name) {
  TrackedFunctional f;
  f.name = std::move(name);
  f.fn = [exprs = std::move(outputs)](Oracle& o, const std::vector<Word>&) {
    Word out;
    out.reserve(exprs.size());
    for (const Expr& e : exprs) out.push_back(eval_expr(e, o));
    return out;
  };
  return f;
}

TrackedFunctional seeded_functional(std::uint64_t seed, std::size_t output_length) {
  std::mt19937_64 rng(seed);
  std::vector<Expr> outputs;
  outputs.reserve(output_length);
  for (std::size_t i = 0; i < output_length; ++i)
    outputs.push_back(random_expr(rng, 1 + static_cast<unsigned>(rng() % 3)));
  return expression_functional(std::move(outputs), "seeded(" + std::to_string(seed) + ")");
}

}  // namespace redlab
