#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  std::string command = std::string(KRONCOVER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("kron_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("diagram queries") {
  CHECK(run("dim '[3,2,1]'").output == "16\n");
  CHECK(run("conj '[4,2,1]'").output == "[3,2,1,1]\n");
  CHECK(run("hsum '[3,2]' '[4,2,1]'").output == "[7,4,1]\n");
  CHECK(run("vsum '[3,2]' '[4]'").output == "[4,3,2]\n");
  CHECK(run("dist '[1,1,1,1]' '[4]'").output == "3\n");
  CHECK(run("distrows '[8,7,4,3,3,1]'").output == "5\n");
  CHECK(run("distrows '[8,7,4,3,3,1]' '[7,7,5,3,3,1]'").output == "3\n");
  auto hooks = run("hooks '[2,2]'");
  CHECK(hooks.output == "3 2\n2 1\n");
  auto stair = run("staircase-extract '[8,7,4,3,3,1]' 3 --rows 7,3,1");
  CHECK(stair.output == "mu [8,4,3]\nnu [4,1]\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("dim '[2,3]'").exit_code == 2);      // not weakly decreasing
  CHECK(run("dist '[2,1]' '[4]'").exit_code == 2);  // size mismatch
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("dim").exit_code == 2);
}

TEST_CASE("resource limits exit with 3") {
  CHECK(run("kron --cap 5 '[6]' '[6]' '[6]'").exit_code == 3);
  CHECK(run("power --product-cap 4 '[5]' 2").exit_code == 3);
}

TEST_CASE("characters and oracle") {
  CHECK(run("char '[2,1]' '[3]'").output == "-1\n");
  CHECK(run("kron '[2,1]' '[2,1]' '[2,1]'").output == "1\n");
  CHECK(run("kron-ext '[2,1]' '[2,1]' '[2,1]' '[2,1]'").output == "3\n");
  CHECK(run("tensor '[2,1]' '[2,1]'").output == "[3]\n[2,1]\n[1,1,1]\n");
  CHECK(run("saxl '[3,2,1]'").output == "true\n");
  CHECK(run("saxl '[4]'").output == "false\n");
  CHECK(run("saxl-fourth 3").output == "true\n");
  CHECK(run("covers '[2]' '[1,1]'").output == "true\n");
  CHECK(run("covers '[2]'").output == "false\n");
  auto never = run("min-power '[2,2]'");
  CHECK(never.output.find("never (support stabilized)") == 0);
  CHECK(run("min-power '[3,2,1]'").output == "2\n");
  auto power = run("power '[2,2]' 3");
  CHECK(power.output == "[4]\n[2,2]\n[1,1,1,1]\n");
}

TEST_CASE("table is served byte-identically from cache") {
  TempDir dir;
  std::string base = "table 6 --cache-dir " + dir.path.string();
  auto fresh = run(base);
  CHECK(fresh.exit_code == 0);
  REQUIRE(std::filesystem::exists(dir.path / "chartable_n6.kct"));
  auto cached = run(base);
  CHECK(cached.exit_code == 0);
  CHECK(fresh.output == cached.output);
  CHECK(fresh.output.find("kronchar 1\nn 6\n") == 0);
}

TEST_CASE("certify and verify round trip") {
  TempDir dir;
  std::string cert_file = (dir.path / "fig3.cert").string();
  auto certify = run("certify pieri '[3,2,1]' 4 hook --out " + cert_file);
  REQUIRE(certify.exit_code == 0);

  auto verify = run("verify " + cert_file + " --mode full");
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("PASS") != std::string::npos);

  // Tamper with the root entries: structural verification must fail.
  std::string text;
  {
    std::ifstream in(cert_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  auto pos = text.find("[7,2,1]");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 7, "[7,1,2]");  // not weakly decreasing: parse must reject
  {
    std::ofstream out(cert_file, std::ios::trunc);
    out << text;
  }
  auto bad = run("verify " + cert_file + " --mode structural");
  CHECK(bad.exit_code == 2);

  auto structural = run("certify rectsquare 2 3 1 --out " + cert_file);
  REQUIRE(structural.exit_code == 0);
  auto full = run("verify " + cert_file + " --mode full");
  CHECK(full.exit_code == 0);
}

TEST_CASE("verification failure exits with 1") {
  TempDir dir;
  std::string cert_file = (dir.path / "tampered.cert").string();
  auto certify = run("certify trivial-pair '[2,1]' --out " + cert_file);
  REQUIRE(certify.exit_code == 0);
  std::string text;
  {
    std::ifstream in(cert_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  // Replace the trivial third entry with a different valid partition.
  auto pos = text.rfind("[3]");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 3, "[2,1]");
  {
    std::ofstream out(cert_file, std::ios::trunc);
    out << text;
  }
  auto bad = run("verify " + cert_file + " --mode structural");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("FAIL") != std::string::npos);
}

TEST_CASE("experiments embed reproducibility data") {
  auto stats = run("stats-distrows plancherel 50 --trials 5 --seed 99 --format structured");
  CHECK(stats.exit_code == 0);
  std::istringstream lines(stats.output);
  std::string line, last;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 6);  // 5 trials + summary
  auto summary = nlohmann::json::parse(last);
  CHECK(summary["record"] == "summary");
  CHECK(summary["seed"] == 99);
  CHECK(summary["rng_algorithm"] == "sm64ctr-v1");
  CHECK(summary["version"] == "1.0.0");
  CHECK(summary["trials"] == 5);

  // Bit-identical re-run.
  auto again = run("stats-distrows plancherel 50 --trials 5 --seed 99 --format structured");
  CHECK(again.output == stats.output);

  auto samples = run("sample uniform 20 --trials 3 --seed 7");
  CHECK(samples.exit_code == 0);
  auto samples_again = run("sample uniform 20 --trials 3 --seed 7");
  CHECK(samples_again.output == samples.output);

  auto cover = run("exp-coupled-cover plancherel 6 6 --trials 10 --seed 3 --coupling identical");
  CHECK(cover.exit_code == 0);
  CHECK(cover.output.find("frequency") != std::string::npos);
}

TEST_CASE("measure commands") {
  CHECK(run("measure '[3]' '[2,1]' '[1,1,1]'").output == "1\n");
  CHECK(run("measure '[4]'").output == "1/24\n");

  TempDir dir;
  std::string vfile = (dir.path / "v.support").string();
  {
    std::ofstream out(vfile);
    out << "[3]\n[2,1]\n[1,1,1]\n";
  }
  auto pig = run("pigeonhole " + vfile + " " + vfile);
  CHECK(pig.exit_code == 0);
  CHECK(pig.output.find("pass") != std::string::npos);

  auto mono = run("monotonicity " + vfile + " '[2,1]'");
  CHECK(mono.exit_code == 0);

  auto affine = run("affine-demo 5");
  CHECK(affine.exit_code == 0);
  CHECK(affine.output.find("4/5") != std::string::npos);

  auto audit = run("constant-audit --nmin 5 --nmax 6");
  CHECK(audit.exit_code == 0);
  CHECK(audit.output.find("max_ratio") != std::string::npos);
}
