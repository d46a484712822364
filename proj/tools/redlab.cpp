#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "redlab/formula.hpp"
#include "redlab/json_io.hpp"

using namespace redlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;   // a verified negative outcome or counterexample
constexpr int kExitUsage = 2;  // bad flags, unreadable input, parse errors

std::string output_path(const std::string& out) {
  if (out.empty() || out.front() == '/') return out;
  const char* dir = std::getenv("REDLAB_OUT_DIR");
  if (!dir || !*dir) return out;
  return std::string(dir) + "/" + out;
}

void emit(const Json& report, const std::string& out) {
  std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::string path = output_path(out);
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) { return Json::parse(slurp(path)); }

Coloring load_coloring(const std::string& path) { return coloring_from_json(load_json(path)); }

// A path prefix of the requested length found by greedy descent, cut short
// where the tree dead-ends.
Word greedy_path_prefix(const Tree& t, unsigned len) {
  Word prefix;
  for (unsigned i = 0; i < len; ++i) {
    prefix.push_back(0);
    if (t.contains(prefix)) continue;
    prefix.back() = 1;
    if (t.contains(prefix)) continue;
    prefix.pop_back();
    break;
  }
  return prefix;
}

Problem problem_from_json(const Json& j) {
  std::string name = j.at("name").get<std::string>();
  if (name == "trivial") {
    WordSpace inst{j.at("L").get<std::size_t>(), j.at("B").get<unsigned>()};
    WordSpace sol{j.value("solution_L", inst.length), j.value("solution_B", inst.bound)};
    return trivial_problem(inst, sol);
  }
  if (name == "rt") {
    return rt_problem(j.at("n").get<unsigned>(), j.at("N").get<unsigned>(),
                      j.at("k").get<unsigned>(), j.at("m").get<unsigned>());
  }
  if (name == "path") {
    Tree t = tree_from_json(j.at("tree"));
    return path_problem(t, j.at("D").get<unsigned>());
  }
  throw std::runtime_error("unknown problem '" + name + "' (expected trivial, rt or path)");
}

struct CommonOut {
  std::string out;
  std::uint64_t seed = 0;
};

int run_formula_classify(const std::string& file, const std::string& text,
                         const CommonOut& common) {
  std::string source = text.empty() ? slurp(file) : text;
  FormulaPtr f;
  try {
    f = parse(source);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  Json report;
  report["command"] = "formula classify";
  report["params"] = Json{{"file", file}, {"text", text}};
  report["seed"] = common.seed;
  report["formula"] = print(f);
  report["exists_free"] = is_exists_free(*f);
  report["exists_free_matrix"] = is_exists_free(*matrix(f));
  report["gamma1"] = is_gamma1(*f);
  emit(report, common.out);
  return kExitPass;
}

int run_formula_shape(const std::string& file, const std::string& text, const CommonOut& common) {
  std::string source = text.empty() ? slurp(file) : text;
  FormulaPtr f;
  try {
    f = parse(source);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  Json report;
  report["command"] = "formula problem-shape";
  report["params"] = Json{{"file", file}, {"text", text}};
  report["seed"] = common.seed;
  try {
    ProblemShape s = problem_shape(*f);
    report["ok"] = true;
    report["instance_var"] = s.instance_var;
    report["instance_sort"] = static_cast<unsigned>(s.instance_sort);
    report["instance_pred"] = print(s.instance_pred);
    report["solution_var"] = s.solution_var;
    report["solution_sort"] = static_cast<unsigned>(s.solution_sort);
    report["solution_pred"] = print(s.solution_pred);
    emit(report, common.out);
    return kExitPass;
  } catch (const ShapeError& e) {
    report["ok"] = false;
    report["error"] = e.what();
    emit(report, common.out);
    return kExitFail;
  }
}

Reduction broken_path_reduction(const Tree& tree, unsigned depth) {
  Problem source = path_problem(tree, depth);
  Problem target = trivial_problem(WordSpace{0, 1}, WordSpace{0, 1});
  TrackedFunctional phi = constant_functional({});
  TrackedFunctional psi;
  psi.name = "constant-zero";
  psi.aux_arity = 1;
  psi.fn = [depth](Oracle&, const std::vector<Word>&) { return Word(depth + 1, 0); };
  return as_reduction_pair(std::move(phi), std::move(psi), std::move(source), std::move(target),
                           "path-constant-backward");
}

int run_reduce_verify(const std::string& reduction, const std::string& problem_json,
                      const std::string& tree_file, unsigned N, unsigned m, unsigned depth,
                      std::uint64_t samples, std::uint64_t budget, unsigned jobs,
                      const CommonOut& common) {
  Reduction r;
  Json params;
  params["reduction"] = reduction;
  if (reduction == "identity") {
    if (problem_json.empty()) {
      std::cerr << "--problem is required for the identity reduction\n";
      return kExitUsage;
    }
    Problem p = problem_from_json(Json::parse(problem_json));
    params["problem"] = Json::parse(problem_json);
    r = identity_reduction(p);
  } else if (reduction == "rt24-two-step") {
    params["N"] = N;
    params["m"] = m;
    r = rt24_two_step_reduction(N, m);
  } else if (reduction == "path-constant-backward") {
    Tree t = tree_file.empty() ? Tree::full(depth) : tree_from_json(load_json(tree_file));
    params["tree"] = tree_to_json(t);
    params["D"] = depth;
    r = broken_path_reduction(t, depth);
  } else {
    std::cerr << "unknown reduction '" << reduction
              << "' (expected identity, rt24-two-step or path-constant-backward)\n";
    return kExitUsage;
  }

  VerifyOptions opts;
  opts.exhaustive = samples == 0;
  opts.samples = samples;
  opts.seed = common.seed;
  opts.budget = budget;
  opts.jobs = jobs;
  VerificationReport rep = verify(r, opts);

  Json report;
  report["command"] = "reduce verify";
  report["params"] = params;
  report["seed"] = common.seed;
  report["jobs"] = jobs;
  report["report"] = report_to_json(rep);
  emit(report, common.out);
  std::cerr << (rep.pass() ? "pass" : "FAIL") << ": " << rep.instances_checked
            << " instances checked\n";
  return rep.pass() ? kExitPass : kExitFail;
}

int run_ramsey_solve(const std::string& in, unsigned m, const CommonOut& common) {
  Coloring f = load_coloring(in);
  auto hom = find_homogeneous(f, m);
  Json report;
  report["command"] = "ramsey solve";
  report["params"] = Json{{"in", in}, {"m", m}};
  report["seed"] = common.seed;
  report["found"] = hom.has_value();
  if (hom) report["homset"] = homset_to_json(*hom);
  emit(report, common.out);
  return hom ? kExitPass : kExitFail;
}

int run_ramsey_two_step(const std::string& in, unsigned m, const CommonOut& common) {
  Coloring f = load_coloring(in);
  if (f.colors != 4) {
    std::cerr << "two-step expects a 4-coloring (k=4)\n";
    return kExitUsage;
  }
  CountedSolver solver(brute_rt_solver(2, 2), "rt22-brute");
  TwoStepResult res = rt24_via_two_rt22(f, solver, m);
  Json report;
  report["command"] = "ramsey two-step";
  report["params"] = Json{{"in", in}, {"m", m}};
  report["seed"] = common.seed;
  report["applications"] = res.applications;
  report["failed_stage"] = res.failed_stage;
  if (!res.note.empty()) report["note"] = res.note;
  if (res.hom) {
    report["homset"] = homset_to_json(*res.hom);
    report["verified"] = homogeneous_color(f, res.hom->vertices) == res.hom->color;
  }
  emit(report, common.out);
  return res.hom ? kExitPass : kExitFail;
}

int run_ramsey_one_use(bool general, const std::string& in, unsigned m, unsigned s_advice,
                       const CommonOut& common) {
  Coloring f = load_coloring(in);
  if (!general && f.colors != 4) {
    std::cerr << "one-use expects a 4-coloring (k=4); use 'ramsey general' otherwise\n";
    return kExitUsage;
  }
  CountedSolver solver(brute_rt_solver(f.exponent, 2), "rt2-brute");
  OneUseResult res = general ? generalized_one_use(f, solver, s_advice, m)
                             : classical_one_use_rt24(f, solver, s_advice, m);
  Json report;
  report["command"] = general ? "ramsey general" : "ramsey one-use";
  report["params"] = Json{{"in", in}, {"m", m}, {"s_advice", s_advice}};
  report["seed"] = common.seed;
  report["outcome"] = to_string(res.outcome);
  report["branch"] = res.branch;
  report["applications"] = res.applications;
  if (!res.note.empty()) report["note"] = res.note;
  if (res.hom) {
    report["homset"] = homset_to_json(*res.hom);
    report["verified"] = homogeneous_color(f, res.hom->vertices) == res.hom->color;
  }
  if (!res.contradiction_witness.empty())
    report["contradiction_witness"] = word_to_json(res.contradiction_witness);
  emit(report, common.out);
  return res.outcome == OneUseOutcome::Success ? kExitPass : kExitFail;
}

int run_adversary_probe(const std::string& tree_file, unsigned secret_bits, unsigned depth,
                        unsigned use_cap, std::uint64_t trials, std::uint64_t budget,
                        const CommonOut& common) {
  Json report;
  report["command"] = "adversary probe";
  report["params"] = Json{{"tree", tree_file},   {"secret_bits", secret_bits},
                          {"depth", depth},      {"use_cap", use_cap},
                          {"trials", trials},    {"budget", budget}};
  report["seed"] = common.seed;

  TrackedFunctional psi = prefix_guess_functional(use_cap, depth + 1);
  std::uint64_t witnesses = 0;
  bool all_reverified = true;
  std::optional<Json> sample;

  if (!tree_file.empty()) {
    Tree t = tree_from_json(load_json(tree_file));
    Word u0 = greedy_path_prefix(t, depth);
    ProbeOutcome out = probe(psi, t, u0, depth, budget);
    report["trials"] = 1;
    report["survived"] = out.survived;
    report["verdict"] = to_string(out.verdict);
    report["note"] = out.note;
    if (out.witness) {
      witnesses = 1;
      all_reverified = reverify(*out.witness, psi, t, depth, budget);
      report["witness"] = witness_to_json(*out.witness);
      report["reverified"] = all_reverified;
    }
    emit(report, common.out);
    return out.survived ? kExitPass : kExitFail;
  }

  std::mt19937_64 rng(common.seed);
  for (std::uint64_t i = 0; i < trials; ++i) {
    Word secret(secret_bits, 0);
    for (auto& b : secret) b = static_cast<unsigned>(rng() % 2);
    Tree t = secret_prefix_tree(secret, depth);
    ProbeOutcome out = probe(psi, t, secret, depth, budget);
    if (out.witness) {
      ++witnesses;
      if (!reverify(*out.witness, psi, t, depth, budget)) all_reverified = false;
      if (!sample) sample = witness_to_json(*out.witness);
    }
  }
  report["trials"] = trials;
  report["witnesses"] = witnesses;
  report["witness_rate"] = trials == 0 ? 0.0 : static_cast<double>(witnesses) / trials;
  report["all_reverified"] = all_reverified;
  if (sample) report["sample_witness"] = *sample;
  emit(report, common.out);
  return witnesses > 0 ? kExitFail : kExitPass;
}

int run_enumerate_oracle(unsigned jobs, const CommonOut& common) {
  // every 2-coloring of 6 vertices admits a homogeneous triple
  const std::uint64_t six_total = 1u << 15;
  unsigned workers = std::max(1u, jobs);
  std::vector<std::uint64_t> missing(workers, 0);
  {
    std::vector<std::thread> pool;
    WordSpace six{15, 2};
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t lo = six_total * w / workers;
      std::uint64_t hi = six_total * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] {
        for (std::uint64_t i = lo; i < hi; ++i) {
          Coloring f{2, 6, 2, six.at(i)};
          if (!find_homogeneous(f, 3)) ++missing[w];
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  std::uint64_t six_missing = 0;
  for (auto v : missing) six_missing += v;

  // and some 2-coloring of 5 vertices has none: emit the least
  WordSpace five{10, 2};
  std::optional<Coloring> counterexample;
  for (std::uint64_t i = 0; i < (1u << 10); ++i) {
    Coloring f{2, 5, 2, five.at(i)};
    if (!find_homogeneous(f, 3)) {
      counterexample = f;
      break;
    }
  }

  Json report;
  report["command"] = "enumerate ramsey-oracle";
  report["params"] = Json{{"jobs", jobs}};
  report["seed"] = common.seed;
  report["six_vertices"] = Json{{"checked", six_total}, {"all_admit_size_3", six_missing == 0}};
  report["five_vertices"] = Json{{"checked", 1u << 10},
                                 {"counterexample_found", counterexample.has_value()}};
  if (counterexample) report["five_vertex_counterexample"] = coloring_to_json(*counterexample);
  emit(report, common.out);
  bool ok = six_missing == 0 && counterexample.has_value();
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redlab: a verification bench for uniform reductions between finite problems"};
  app.require_subcommand(1);

  CommonOut common;
  std::string file, text, in;
  std::string reduction, problem_json, tree_file;
  unsigned N = 5, m = 2, s_advice = 2, depth = 8, use_cap = 4, jobs = 1;
  unsigned secret_bits = 8;
  std::uint64_t samples = 0, trials = 1, budget = 1'000'000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out, "write the JSON report here (default stdout)");
    cmd->add_option("--seed", common.seed, "seed recorded in the report");
  };

  auto* formula = app.add_subcommand("formula", "parse and classify formulas");
  auto* classify = formula->add_subcommand("classify", "exists-free / gamma1 classification");
  classify->add_option("--file", file, "formula file");
  classify->add_option("--text", text, "formula text");
  add_common(classify);
  auto* shape = formula->add_subcommand("problem-shape", "split forall x (p1 -> exists y p2)");
  shape->add_option("--file", file, "formula file");
  shape->add_option("--text", text, "formula text");
  add_common(shape);

  auto* reduce = app.add_subcommand("reduce", "reduction checking");
  auto* rverify = reduce->add_subcommand("verify", "verify both reduction clauses");
  rverify->add_option("--reduction", reduction,
                      "identity | rt24-two-step | path-constant-backward")->required();
  rverify->add_option("--problem", problem_json, "problem JSON for the identity reduction");
  rverify->add_option("--tree", tree_file, "tree JSON file for the path problem");
  rverify->add_option("--N", N, "vertex count");
  rverify->add_option("--m", m, "target homogeneous size");
  rverify->add_option("--depth", depth, "path problem depth");
  rverify->add_option("--samples", samples, "randomized sample count (0 = exhaustive)");
  rverify->add_option("--budget", budget, "oracle query budget per evaluation");
  rverify->add_option("--jobs", jobs, "worker count for exhaustive scans");
  add_common(rverify);

  auto* ramsey = app.add_subcommand("ramsey", "finite Ramsey instances");
  auto* solve = ramsey->add_subcommand("solve", "brute-force homogeneous search");
  solve->add_option("--in", in, "coloring JSON file")->required();
  solve->add_option("--m", m, "target size")->required();
  add_common(solve);
  auto* two_step = ramsey->add_subcommand("two-step", "halve, solve, parity, solve");
  two_step->add_option("--in", in, "4-coloring JSON file")->required();
  two_step->add_option("--m", m, "target size")->required();
  add_common(two_step);
  auto* one_use = ramsey->add_subcommand("one-use", "advice search plus a single solver call");
  one_use->add_option("--in", in, "4-coloring JSON file")->required();
  one_use->add_option("--m", m, "target size")->required();
  one_use->add_option("--s-advice", s_advice, "advice set size")->required();
  add_common(one_use);
  auto* general = ramsey->add_subcommand("general", "k-color one-use via the halving hierarchy");
  general->add_option("--in", in, "coloring JSON file")->required();
  general->add_option("--m", m, "target size")->required();
  general->add_option("--s-advice", s_advice, "advice set size")->required();
  add_common(general);

  auto* adversary = app.add_subcommand("adversary", "finite-use defeat probes");
  auto* probe_cmd = adversary->add_subcommand("probe", "probe a backward functional");
  probe_cmd->add_option("--tree", tree_file, "tree JSON file (single probe)");
  probe_cmd->add_option("--secret-bits", secret_bits, "random secret length per trial");
  probe_cmd->add_option("--depth", depth, "working depth");
  probe_cmd->add_option("--use-cap", use_cap, "positions the probed functional may read");
  probe_cmd->add_option("--trials", trials, "number of random-secret trials");
  probe_cmd->add_option("--budget", budget, "oracle query budget per evaluation");
  add_common(probe_cmd);

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive oracles");
  auto* oracle = enumerate->add_subcommand("ramsey-oracle",
                                           "6-vertex guarantee and 5-vertex counterexample");
  oracle->add_option("--jobs", jobs, "worker count");
  add_common(oracle);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_formula_classify(file, text, common);
    if (shape->parsed()) return run_formula_shape(file, text, common);
    if (rverify->parsed())
      return run_reduce_verify(reduction, problem_json, tree_file, N, m, depth, samples, budget,
                               jobs, common);
    if (solve->parsed()) return run_ramsey_solve(in, m, common);
    if (two_step->parsed()) return run_ramsey_two_step(in, m, common);
    if (one_use->parsed()) return run_ramsey_one_use(false, in, m, s_advice, common);
    if (general->parsed()) return run_ramsey_one_use(true, in, m, s_advice, common);
    if (probe_cmd->parsed())
      return run_adversary_probe(tree_file, secret_bits, depth, use_cap, trials, budget, common);
    if (oracle->parsed()) return run_enumerate_oracle(jobs, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "no subcommand given\n";
  return kExitUsage;
}
