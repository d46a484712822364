#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "redlab/formula.hpp"
#include "redlab/json_io.hpp"

using namespace redlab;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(REDLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.stdout_text.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/redlab_cli_" + name;
  std::ofstream f(path);
  REQUIRE(f.good());
  f << content;
  return path;
}

}  // namespace

TEST_CASE("formula classify: the Ramsey formulas and exit codes") {
  std::string rt24 = std::string(REDLAB_DATA_DIR) + "/rt24.fml";
  RunResult r = run("formula classify --file " + rt24);
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.stdout_text);
  CHECK(j.at("exists_free_matrix") == true);
  CHECK(j.at("gamma1") == true);
  CHECK(j.at("exists_free") == false);

  RunResult bad = run("formula classify --text 'forall x .0=0'");
  CHECK(bad.exit_code == 2);

  // byte-identical output for an identical invocation
  RunResult again = run("formula classify --file " + rt24);
  CHECK(again.stdout_text == r.stdout_text);

  // both shipped formulas reproduce the library's canonical text
  std::string rt22 = std::string(REDLAB_DATA_DIR) + "/rt22.fml";
  RunResult two = run("formula classify --file " + rt22);
  CHECK(two.exit_code == 0);
  Json j22 = Json::parse(two.stdout_text);
  CHECK(j22.at("gamma1") == true);
  CHECK(j22.at("formula") == print(*parse(rt_formula_text(2))));
}

TEST_CASE("formula problem-shape: success and shape mismatch") {
  RunResult ok = run("formula problem-shape --text 'forall u:1 . (0=0 -> exists v:1 . q2(u, v))'");
  CHECK(ok.exit_code == 0);
  Json j = Json::parse(ok.stdout_text);
  CHECK(j.at("ok") == true);
  CHECK(j.at("instance_var") == "u");
  CHECK(j.at("solution_var") == "v");
  CHECK(j.at("solution_pred") == "q2(u, v)");

  RunResult mismatch = run("formula problem-shape --text '0=0'");
  CHECK(mismatch.exit_code == 1);
  CHECK(Json::parse(mismatch.stdout_text).at("ok") == false);
}

TEST_CASE("ramsey subcommands: solve, two-step, one-use, general") {
  Coloring f = Coloring::constant(2, 6, 4, 2);
  std::string path = write_temp("const.json", coloring_to_json(f).dump());

  RunResult solve = run("ramsey solve --in " + path + " --m 4");
  CHECK(solve.exit_code == 0);
  Json js = Json::parse(solve.stdout_text);
  CHECK(js.at("found") == true);
  CHECK(js.at("homset").at("color") == 2);

  RunResult two = run("ramsey two-step --in " + path + " --m 3 --seed 7");
  CHECK(two.exit_code == 0);
  Json jt = Json::parse(two.stdout_text);
  CHECK(jt.at("applications") == 2);
  CHECK(jt.at("verified") == true);
  CHECK(jt.at("seed") == 7);

  RunResult one = run("ramsey one-use --in " + path + " --m 2 --s-advice 2");
  CHECK(one.exit_code == 0);
  Json jo = Json::parse(one.stdout_text);
  CHECK(jo.at("applications") == 1);
  CHECK(jo.at("outcome") == "success");
  CHECK(jo.at("verified") == true);

  RunResult gen = run("ramsey general --in " + path + " --m 2 --s-advice 2");
  CHECK(gen.exit_code == 0);
  CHECK(Json::parse(gen.stdout_text).at("applications") == 1);

  // absent answers exit 1
  std::string small = write_temp("small.json", coloring_to_json(Coloring{2, 2, 2, {0}}).dump());
  RunResult absent = run("ramsey solve --in " + small + " --m 3");
  CHECK(absent.exit_code == 1);
  CHECK(Json::parse(absent.stdout_text).at("found") == false);
}

TEST_CASE("reduce verify: identity passes, a broken backward map fails") {
  RunResult identity = run(
      "reduce verify --reduction identity --problem "
      "'{\"name\":\"trivial\",\"L\":2,\"B\":2}'");
  CHECK(identity.exit_code == 0);
  Json ji = Json::parse(identity.stdout_text);
  CHECK(ji.at("report").at("pass") == true);
  CHECK(ji.at("report").at("checked") == 4);

  std::string tree = write_temp(
      "tree.json", tree_to_json(Tree::secret_prefix({1, 0, 1}, 4)).dump());
  RunResult broken =
      run("reduce verify --reduction path-constant-backward --tree " + tree + " --depth 4");
  CHECK(broken.exit_code == 1);
  Json jb = Json::parse(broken.stdout_text);
  CHECK(jb.at("report").at("pass") == false);
  CHECK(jb.at("report").at("backward_failure_count").get<std::uint64_t>() > 0);
  CHECK_FALSE(jb.at("report").at("backward_failures").empty());

  RunResult pipeline = run("reduce verify --reduction rt24-two-step --N 4 --m 2 --jobs 2");
  CHECK(pipeline.exit_code == 0);
  CHECK(Json::parse(pipeline.stdout_text).at("report").at("checked") == 4096);

  RunResult unknown = run("reduce verify --reduction nonesuch");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("adversary probe: random secrets defeat a capped guesser reproducibly") {
  RunResult r = run("adversary probe --secret-bits 6 --depth 16 --use-cap 3 --trials 60 --seed 5");
  CHECK(r.exit_code == 1);  // witnesses found
  Json j = Json::parse(r.stdout_text);
  CHECK(j.at("witnesses").get<std::uint64_t>() > 40);
  CHECK(j.at("all_reverified") == true);
  CHECK(j.at("sample_witness").contains("failure_depth"));

  RunResult again =
      run("adversary probe --secret-bits 6 --depth 16 --use-cap 3 --trials 60 --seed 5");
  CHECK(again.stdout_text == r.stdout_text);

  // a full tree admits the all-zero path: the guesser survives
  std::string full = write_temp("full.json", tree_to_json(Tree::full(8)).dump());
  RunResult survived = run("adversary probe --tree " + full + " --depth 8 --use-cap 3");
  CHECK(survived.exit_code == 0);
  CHECK(Json::parse(survived.stdout_text).at("survived") == true);
}

TEST_CASE("enumerate ramsey-oracle emits the five-vertex counterexample") {
  RunResult r = run("enumerate ramsey-oracle");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.stdout_text);
  CHECK(j.at("six_vertices").at("all_admit_size_3") == true);
  CHECK(j.at("five_vertices").at("counterexample_found") == true);
  Coloring witness = coloring_from_json(j.at("five_vertex_counterexample"));
  CHECK_FALSE(find_homogeneous(witness, 3).has_value());
}

TEST_CASE("reports land in REDLAB_OUT_DIR when --out is relative") {
  std::string dir = "/tmp/redlab_out_test";
  std::string cleanup = "rm -rf " + dir + " && mkdir -p " + dir;
  REQUIRE(std::system(cleanup.c_str()) == 0);
  std::string cmd = "REDLAB_OUT_DIR=" + dir + " " + REDLAB_CLI_PATH +
                    " formula classify --text '0=0' --out report.json 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream f(dir + "/report.json");
  REQUIRE(f.good());
  Json j = Json::parse(f);
  CHECK(j.at("gamma1") == true);
}
