#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code;
  std::string stdout_text;
};

fs::path work_dir() {
  auto p = fs::temp_directory_path() / "twoway_cli_tests";
  fs::create_directories(p);
  return p;
}

CmdResult run_cli(const std::string& args) {
  auto out = work_dir() / "stdout.txt";
  std::string cmd = std::string(CLI_PATH) + " " + args + " > " + out.string() +
                    " 2> " + (work_dir() / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("region subcommand writes the H-rep and vertex files") {
  auto stem = (work_dir() / "mod2").string();
  auto r = run_cli("region --model mod2-macbc --out " + stem);
  CHECK(r.exit_code == 0);
  auto csv = slurp(stem + ".csv");
  CHECK(count_lines(csv) == 10);  // header + 9 vertices
  auto j = nlohmann::json::parse(slurp(stem + ".json"));
  CHECK(j["coords"].size() == 4);
  CHECK(j["ineqs"].size() == 2);

  auto stem2 = (work_dir() / "ic21").string();
  auto r2 = run_cli("region --model ld-ic --n12 2 --n34 2 --n32 1 --n14 1 "
                    "--n21 2 --n43 2 --n23 1 --n41 1 --out " + stem2);
  CHECK(r2.exit_code == 0);
  auto j2 = nlohmann::json::parse(slurp(stem2 + ".json"));
  CHECK(j2["ineqs"].size() == 14);  // 4 singles + 10 sum bounds
  CHECK(j2["adaptation"] == "partial");

  auto stem3 = (work_dir() / "ic_k3").string();
  auto r3 = run_cli("region --model modk --topology ic --kappa 3 --out " + stem3);
  CHECK(r3.exit_code == 0);
  auto j3 = nlohmann::json::parse(slurp(stem3 + ".json"));
  CHECK(j3["unit_log2_of"] == 3);
  CHECK(j3["ineqs"][0]["b"] == "1");
  // vertex CSV renders in bits: log2(3) appears
  auto csv3 = slurp(stem3 + ".csv");
  CHECK(csv3.find("1.584963") != std::string::npos);
}

TEST_CASE("curve subcommand default grid") {
  auto out = (work_dir() / "curve.csv").string();
  auto r = run_cli("curve --out " + out);
  CHECK(r.exit_code == 0);
  auto csv = slurp(out);
  CHECK(count_lines(csv) == 38);  // header + 37 rows
  CHECK(csv.find("OPEN") != std::string::npos);
  // json format preserves exact fractions
  auto jout = (work_dir() / "curve.json").string();
  CHECK(run_cli("curve --format json --out " + jout).exit_code == 0);
  auto j = nlohmann::json::parse(slurp(jout));
  CHECK(j.size() == 37);
}

TEST_CASE("gaps subcommand emits a passing table plus summary") {
  auto stem = (work_dir() / "gaps").string();
  auto r = run_cli("gaps --snr-steps 12 --inr-steps 12 --out " + stem);
  CHECK(r.exit_code == 0);
  auto csv = slurp(stem + ".csv");
  CHECK(count_lines(csv) == 145);  // header + 144 points
  CHECK(csv.rfind("snr_db,inr_db,regime,outer,inner,gap,limit,pass", 0) == 0);
  auto j = nlohmann::json::parse(slurp(stem + ".summary.json"));
  CHECK(j["all_pass"] == true);
}

TEST_CASE("simulate subcommand runs and reports PASS") {
  auto out = (work_dir() / "sim.jsonl").string();
  auto r = run_cli(
      "simulate --scheme macbc --n12 2 --n32 2 --n21 2 --n23 2 "
      "--alpha 1/2 --beta 1/2 --payload M12=2,M32=2,M21=2,M23=2 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.rfind("PASS", 0) == 0);
  CHECK(count_lines(slurp(out)) == 6);  // 3 nodes x 2 slots

  auto bad = run_cli("simulate --scheme macbc --n12 1 --n32 1 --n21 1 --n23 1 "
                     "--payload M12=2,M32=2");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("oracle subcommand with caching") {
  auto out = (work_dir() / "oracle.json").string();
  auto cache = (work_dir() / "cache").string();
  auto r = run_cli("oracle --builtin mod2-macbc --n 1 --sizes 2 "
                   "--class nonadaptive --cache-dir " + cache + " --out " + out);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  bool has = false;
  for (const auto& f : j["feasible"])
    has |= (f == nlohmann::json::array({2, 1, 2, 1}));
  CHECK(has);
  // second run hits the cache
  auto r2 = run_cli("oracle --builtin mod2-macbc --n 1 --sizes 2 "
                    "--class nonadaptive --cache-dir " + cache + " --out " + out);
  CHECK(r2.exit_code == 0);
  CHECK(r2.stdout_text.find("cache hit") != std::string::npos);

  // budget exhaustion is exit code 2
  auto r3 = run_cli("oracle --builtin mod2-ic --n 2 --sizes 4 --class full "
                    "--budget 10");
  CHECK(r3.exit_code == 2);
}

TEST_CASE("macbc-gap subcommand") {
  auto r = run_cli("macbc-gap --p1 1 --p2 1 --p3 1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("pass") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  auto a = (work_dir() / "det_a.jsonl").string();
  auto b = (work_dir() / "det_b.jsonl").string();
  std::string args =
      "simulate --scheme z --n12 1 --n32 1 --n34 1 --n43 1 --n23 1 --n21 1 "
      "--alpha 1/3 --beta 1/3 --seed 9 "
      "--payload M12=1,M32=1,M34=1,M43=1,M23=1,M21=1 --out ";
  CHECK(run_cli(args + a).exit_code == 0);
  CHECK(run_cli(args + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  // gaps output is independent of the worker count
  auto g1 = (work_dir() / "g1").string();
  auto g4 = (work_dir() / "g4").string();
  CHECK(run_cli("gaps --snr-steps 9 --inr-steps 9 --jobs 1 --out " + g1)
            .exit_code == 0);
  CHECK(run_cli("gaps --snr-steps 9 --inr-steps 9 --jobs 4 --out " + g4)
            .exit_code == 0);
  CHECK(slurp(g1 + ".csv") == slurp(g4 + ".csv"));
}

TEST_CASE("validation failures exit with code 1 and write nothing") {
  auto out = (work_dir() / "never.json").string();
  auto r = run_cli("region --model no-such-model --out " + out);
  CHECK(r.exit_code == 1);
  CHECK_FALSE(fs::exists(out));
}
