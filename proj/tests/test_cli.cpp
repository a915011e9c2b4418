// End-to-end checks of the command-line tool: exit codes, JSON shape, and
// byte-identical output across repeated runs.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

#ifndef RBWV_CLI_PATH
#error "RBWV_CLI_PATH must point at the built binary"
#endif

struct RunResult {
  int exit_code;
  std::string output;
};

int counter = 0;

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string path = std::string("/tmp/rbwv_cli_test_") + std::to_string(::getpid()) + "_" +
                     std::to_string(counter++) + ".json";
  std::string command = env + (env.empty() ? "" : " ") + RBWV_CLI_PATH + " " + args + " > " +
                        path + " 2>/dev/null";
  int status = std::system(command.c_str());
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  std::remove(path.c_str());
  return {WEXITSTATUS(status), text.str()};
}

nlohmann::json parse(const RunResult& r) {
  return nlohmann::json::parse(r.output);
}

}  // namespace

TEST_CASE("verify: cataloged operator passes with exit 0") {
  auto r = run_cli("verify --family W0_I --k 1 --alpha 1 --weight 0 --window 10");
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["schema"] == 1);
  CHECK(j["report"]["pass"] == true);
  CHECK(j["operator"] == "W0_I{k=1,alpha=1}");
}

TEST_CASE("classify: the eight weight-1 patterns at window 4") {
  auto r = run_cli("classify --sig witt --weight 1 --degree 0 --window 4");
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["solutions"].size() == 8);
  CHECK(j["sound"] == true);
  int with_free_f0 = 0;
  for (const auto& s : j["solutions"])
    for (const auto& f : s["free"])
      if (f == "f0")
        ++with_free_f0;
  CHECK(with_free_f0 == 2);
}

TEST_CASE("obstruction: -Id_W fails first at (2,-2) with value 1/2") {
  auto r = run_cli("obstruction --family W1_EMPTY --window 5");
  CHECK(r.exit_code == 1);
  auto j = parse(r);
  CHECK(j["report"]["pass"] == false);
  const auto& first = j["report"]["failures"][0];
  CHECK(first["m"] == 2);
  CHECK(first["n"] == -2);
  CHECK(first["value"] == "1/2");
}

TEST_CASE("cybe: catalog solutions and operator-derived tensors") {
  auto r = run_cli("cybe --solution CYBE_V0_IV{k=2,mu=1} --window 6");
  CHECK(r.exit_code == 0);
  CHECK(parse(r)["report"]["pass"] == true);

  auto from_op = run_cli("cybe --from-operator --family W0_II --k 1 --beta 1 --window 6");
  CHECK(from_op.exit_code == 0);
  CHECK(parse(from_op)["report"]["pass"] == true);
}

TEST_CASE("induce: defect summary and multiplication table") {
  auto r = run_cli("induce --family V1_LE1 --mu 1 --kind postlie --window 4");
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["defects"]["pass"] == true);
  CHECK(j["table"].size() == 10 * 10);  // 9 window symbols plus C, squared

  // a weight-0 operator does not satisfy the PostLie axioms
  auto bad = run_cli("induce --family W0_I --k 0 --alpha 1 --kind postlie --window 4");
  CHECK(bad.exit_code == 1);
  CHECK(parse(bad)["defects"]["pass"] == false);
}

TEST_CASE("catalog lists every family") {
  auto r = run_cli("catalog");
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["families"].size() == 24);
  CHECK(j["cybe_solutions"].size() == 24);
}

TEST_CASE("usage and domain errors exit 2") {
  CHECK(run_cli("verify --family NOPE --window 4").exit_code == 2);
  CHECK(run_cli("verify --family W0_III --k 2 --l 2 --gamma 1").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("classify --sig witt --weight 1").exit_code == 2);  // missing --degree
}

TEST_CASE("output is byte-identical across runs") {
  for (const char* cmd :
       {"classify --sig virasoro --weight 0 --degree 2 --window 6",
        "verify --family W0_III --k 1 --l 2 --gamma 1 --window 8",
        "cybe --solution CYBE_W1_PLUS{alpha=2} --window 5"}) {
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());
  }
}

TEST_CASE("RB_WINDOW overrides the default window, flags override both") {
  auto env_run = run_cli("verify --family W1_LE1 --weight 1", "RB_WINDOW=5");
  CHECK(parse(env_run)["report"]["window"] == 5);
  auto flag_run = run_cli("verify --family W1_LE1 --weight 1 --window 7", "RB_WINDOW=5");
  CHECK(parse(flag_run)["report"]["window"] == 7);
}
