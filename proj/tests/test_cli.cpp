// End-to-end tests of the command-line binary: exit codes, report shapes,
// file round-trips through the JSON readers, and byte determinism. The
// binary path arrives as the first program argument.
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string g_cli;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  return r;
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories("cli_tmp");
  return "cli_tmp/" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

}  // namespace

TEST_CASE("hilbert com horizon 20 csv: header plus 21 rows, dims 0 then all 1") {
  auto r = run_cli("hilbert --family com --horizon 20 --format csv");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 22);
  CHECK(lines[0] == "arity,dim");
  CHECK(lines[1] == "0,0");
  for (int n = 1; n <= 20; ++n) CHECK(lines[1 + n] == std::to_string(n) + ",1");
}

TEST_CASE("axioms mas horizon 7 exits 0 with a pass report") {
  auto r = run_cli("axioms --family mas --horizon 7");
  CHECK(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["axioms"]["pass"] == true);
  CHECK(j["axioms"]["checked"].get<long>() > 0);
}

TEST_CASE("prime mas horizon 10 exits 1 with a witness ideal pair") {
  auto r = run_cli("prime --family mas --horizon 10");
  CHECK(r.exit_code == 1);
  auto j = parse(r.out);
  CHECK(j["prime"]["witness_found"] == true);
  CHECK(j["prime"]["gen_i"].get<std::string>() != "");
  CHECK(j["prime"]["gen_j"].get<std::string>() != "");
}

TEST_CASE("prime com horizon 12 finds no violation and exits 0") {
  auto r = run_cli("prime --family com --horizon 12");
  CHECK(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["prime"]["witness_found"] == false);
}

TEST_CASE("family dump reparses through --input and still passes axioms") {
  auto dump = run_cli("family --family ope --w 4 --horizon 6");
  REQUIRE(dump.exit_code == 0);
  auto j = parse(dump.out);
  REQUIRE(j.contains("operad"));
  const std::string path = tmp_path("ope4.json");
  write_file(path, j["operad"].dump());
  auto ax = run_cli("axioms --input " + path + " --horizon 6");
  CHECK(ax.exit_code == 0);
  auto hil = run_cli("hilbert --input " + path + " --horizon 6 --format csv");
  CHECK(hil.exit_code == 0);
  auto lines = lines_of(hil.out);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "arity,dim");
  CHECK(lines[5] == "4,0");  // ope^4 supports only arities 1 mod 4
  CHECK(lines[6] == "5,1");
}

TEST_CASE("functor g-str on a dumped polynomial algebra round-trips") {
  auto dump = run_cli("algebra --algebra poly --horizon 8");
  REQUIRE(dump.exit_code == 0);
  const std::string path = tmp_path("poly.json");
  write_file(path, parse(dump.out)["algebra"].dump());
  auto fr = run_cli("functor g-str --input " + path + " --horizon 8");
  CHECK(fr.exit_code == 0);
  auto j = parse(fr.out);
  CHECK(j["roundtrip"]["pass"] == true);
  CHECK(j["image"]["kind"] == "operad");
}

TEST_CASE("functor f on a dumped mas operad reports the matching round trip") {
  auto dump = run_cli("family --family mas --horizon 6");
  REQUIRE(dump.exit_code == 0);
  const std::string path = tmp_path("mas.json");
  write_file(path, parse(dump.out)["operad"].dump());
  auto fr = run_cli("functor f --input " + path);
  CHECK(fr.exit_code == 0);
  auto j = parse(fr.out);
  CHECK(j["roundtrip"]["pass"] == true);
  CHECK(j["image"]["kind"] == "dense");
  CHECK(j["image"]["dims"][0] == 1);
}

TEST_CASE("word presentation input drives the series pipeline") {
  const std::string path = tmp_path("pres.json");
  write_file(path,
             R"({"generators":[{"degree":1,"name":"x"},{"degree":2,"name":"y"}],)"
             R"("name":"W","rules":[{"kind":"commute"}]})");
  auto r = run_cli("hilbert --input " + path + " --horizon 6 --format csv");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "degree,dim");
  CHECK(lines[7] == "6,4");  // partitions of 6 into parts of size 1 and 2
}

TEST_CASE("series csv files feed gkdim and keep their index name") {
  auto csv = run_cli("hilbert --family com --horizon 120 --format csv");
  REQUIRE(csv.exit_code == 0);
  const std::string path = tmp_path("com.csv");
  write_file(path, csv.out);
  auto r = run_cli("gkdim --input " + path + " --horizon 120");
  CHECK(r.exit_code == 0);
  auto j = parse(r.out);
  CHECK(j["index"] == "arity");
  CHECK(j["gk"]["headline"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("saturation: poly passes at d 30, kx fails with a kernel witness") {
  auto pass = run_cli("saturation --algebra poly --d 30 --horizon 31");
  CHECK(pass.exit_code == 0);
  auto pj = parse(pass.out);
  CHECK(pj["saturation"]["pass"] == true);
  CHECK(pj["saturation"]["t_d"] == 31);

  auto fail = run_cli("saturation --algebra kx --d 1");
  CHECK(fail.exit_code == 1);
  auto fj = parse(fail.out);
  CHECK(fj["saturation"]["pass"] == false);
  bool kernel = false;
  for (const auto& st : fj["saturation"]["steps"])
    kernel = kernel || st["witness"].get<std::string>().find("kernel") != std::string::npos;
  CHECK(kernel);
}

TEST_CASE("torsion: kx holds a right-torsion element, bc does not") {
  auto hit = run_cli("torsion --algebra kx --horizon 8");
  CHECK(hit.exit_code == 1);
  auto hj = parse(hit.out);
  CHECK(hj["torsion"]["any"] == true);
  CHECK(hj["torsion"]["elements"][0]["degree"] == 1);

  auto clean = run_cli("torsion --algebra bc --b 2 --horizon 8");
  CHECK(clean.exit_code == 0);
  CHECK(parse(clean.out)["torsion"]["any"] == false);
}

TEST_CASE("multiplicity: com over F4 via base change doubles the prime-field count") {
  auto r = run_cli(
      "multiplicity --family com --horizon 12 --field F2 "
      "--base-change '{\"char\":2,\"tower\":[[1,1,1]]}'");
  CHECK(r.exit_code == 0);
  CHECK(parse(r.out)["multiplicity"]["value"] == "2");
}

TEST_CASE("central: com generators are central, the mas product is not") {
  CHECK(run_cli("central --family com --arity 3 --horizon 9").exit_code == 0);
  auto r = run_cli("central --family mas --arity 2 --horizon 8");
  CHECK(r.exit_code == 1);
  CHECK(parse(r.out)["central"]["violation"].get<std::string>() != "");
}

TEST_CASE("classify: the com profile lands in the linear band") {
  auto r = run_cli("classify --family com --horizon 120");
  CHECK(r.exit_code == 0);
  CHECK(parse(r.out)["growth"]["class"] == "gk1");
}

TEST_CASE("example pipelines: exit codes and key report fields") {
  auto e61 = run_cli("example 6.1 --tower 3 --horizon 200");
  CHECK(e61.exit_code == 0);
  auto j61 = parse(e61.out);
  CHECK(j61["report"]["lambdas"][0]["lambda"] == "7");
  CHECK(j61["report"]["sum_bound"]["verdict"] == "certified");

  auto e62 = run_cli("example 6.2 --mode symbolic --smax 3");
  CHECK(e62.exit_code == 0);
  auto j62 = parse(e62.out);
  REQUIRE(j62["report"]["steps"].size() == 3);
  CHECK(j62["report"]["steps"][0]["route"] == "numeric-log");
  CHECK(j62["report"]["steps"][1]["route"] == "floor-lemma");
  CHECK(j62["report"]["steps"][2]["route"] == "definitional");

  auto e62c = run_cli("example 6.2 --schedule 1,5 --horizon 20");
  CHECK(e62c.exit_code == 0);
  auto j62c = parse(e62c.out);
  CHECK(j62c["report"]["alpha"][0] == 2);
  CHECK(j62c["report"]["beta"][0] == 1);
  CHECK(j62c["report"]["windows"][0]["window_dims"] == nlohmann::json::array({1, 2, 1}));
}

TEST_CASE("determinism: repeated runs emit byte-identical reports") {
  const std::vector<std::string> cmds = {
      "family --family mas --horizon 5",
      "example 6.2 --schedule 1,5 --horizon 20",
      "hilbert --family lin_o --b 3 --b-kind zero --horizon 8",
      "gkdim --algebra poly --horizon 100",
  };
  for (const auto& cmd : cmds) {
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("hilbert --family nosuch").exit_code == 2);
  CHECK(run_cli("hilbert --family com --algebra poly").exit_code == 2);
  CHECK(run_cli("axioms --family mas --format csv").exit_code == 2);
  CHECK(run_cli("functor g-str").exit_code == 2);
  CHECK(run_cli("functor f --input /nonexistent/file.json").exit_code == 2);
  CHECK(run_cli("example 6.4").exit_code == 2);
  CHECK(run_cli("saturation --algebra poly --field F9").exit_code == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("hilbert --help").exit_code == 0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [doctest args]\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  std::vector<const char*> args;
  args.push_back(argv[0]);
  for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
  ctx.applyCommandLine(static_cast<int>(args.size()), args.data());
  return ctx.run();
}
