#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef OMEGALAB_CLI_PATH
#error "OMEGALAB_CLI_PATH must point at the omegalab binary"
#endif

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string &args, bool merge_stderr = false) {
  // scrub ambient configuration so results depend only on the arguments
  const std::string cmd = "env -u OMEGALAB_CACHE_DIR -u OMEGALAB_THREADS " +
                          std::string(OMEGALAB_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult res;
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) {
    res.output.append(buf, n);
    if (n < sizeof buf) {
      if (feof(pipe)) break;
    }
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("omegalab_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::vector<std::string> split_lines(const std::string &text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

const char *kEnvScope = "env -u OMEGALAB_CACHE_DIR -u OMEGALAB_THREADS ";

RunResult run_hermetic(const std::string &args, bool merge_stderr = false) {
  // no persistent cache, no ambient env configuration
  return run_cli("--cache-dir '' " + args, merge_stderr);
}

} // namespace

TEST_CASE("pi subcommand") {
  RunResult res = run_hermetic("pi --x 100");
  CHECK(res.exit_code == 0);
  auto lines = split_lines(res.output);
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "25");
  CHECK(res.output.find("checkpoint") != std::string::npos);

  CHECK(run_hermetic("pi --x 1000000").output.substr(0, 5) == "78498");
  CHECK(run_hermetic("pi --x 1").exit_code == 2);
}

TEST_CASE("pi json format carries provenance") {
  RunResult res = run_hermetic("pi --x 1000 --format json");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.output);
  CHECK(doc["pi"] == 168);
  CHECK(doc["provenance"]["code_version"] == "1.0.0");
  CHECK(doc["provenance"].contains("von_koch_const"));
  CHECK(doc["provenance"].contains("sieve_cap"));
}

TEST_CASE("omega subcommand validation and output") {
  CHECK(run_hermetic("omega --delta 0.6 --xmax 10000").exit_code == 2);
  CHECK(run_hermetic("omega --delta 0.25").exit_code == 3); // auto infeasible
  // the conditional bound cannot reach 1e-3/delta below the sieve cap
  CHECK(run_hermetic("omega --delta 0.1 --eps 1e-3").exit_code == 3);

  RunResult res = run_hermetic("omega --delta 0.25 --xmax 10000");
  CHECK(res.exit_code == 0);
  auto lines = split_lines(res.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "delta,omega,scaled,residual,x_trunc,tail_bound,eval_err");
  CHECK(lines[1].substr(0, 5) == "0.25,");
}

TEST_CASE("omega auto truncation with a relaxed eps") {
  RunResult res = run_hermetic("omega --delta 0.45 --eps 0.5 --format json");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.output);
  const double x_trunc = doc["rows"][0]["x_trunc"];
  const double tail = doc["rows"][0]["tail_bound"];
  CHECK(tail <= 0.5 / 0.45);
  CHECK(std::exp2(std::round(std::log2(x_trunc))) == x_trunc);
  CHECK(doc["provenance"]["eps"] == 0.5);
}

TEST_CASE("sweep csv schema and json equivalence") {
  RunResult csv = run_hermetic("sweep --deltas 0.3,0.1 --xmax 1000000");
  CHECK(csv.exit_code == 0);
  auto lines = split_lines(csv.output);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "delta,omega,scaled,residual,x_trunc,tail_bound,eval_err");

  RunResult js =
      run_hermetic("sweep --deltas 0.3,0.1 --xmax 1000000 --format json");
  CHECK(js.exit_code == 0);
  json doc = json::parse(js.output);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["sieve_pass_count"] == 1);

  // identical numeric values through both serializations
  for (size_t i = 0; i < 2; ++i) {
    std::stringstream ss(lines[i + 1]);
    std::string cell;
    std::vector<double> csv_vals;
    while (std::getline(ss, cell, ',')) csv_vals.push_back(std::stod(cell));
    REQUIRE(csv_vals.size() == 7);
    const json &row = doc["rows"][i];
    CHECK(csv_vals[0] == double(row["delta"]));
    CHECK(csv_vals[1] == double(row["omega"]));
    CHECK(csv_vals[2] == double(row["scaled"]));
    CHECK(csv_vals[3] == double(row["residual"]));
    CHECK(csv_vals[4] == double(row["x_trunc"]));
    CHECK(csv_vals[5] == double(row["tail_bound"]));
    CHECK(csv_vals[6] == double(row["eval_err"]));
  }
}

TEST_CASE("serial reruns reproduce bitwise") {
  const std::string cmd = "--threads 1 sweep --deltas 0.25,0.1 --xmax 500000";
  RunResult a = run_hermetic(cmd);
  RunResult b = run_hermetic(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("thread count does not change the sweep output") {
  RunResult one = run_hermetic("--threads 1 sweep --deltas 0.3,0.2 --xmax 2000000");
  RunResult eight = run_hermetic("--threads 8 sweep --deltas 0.3,0.2 --xmax 2000000");
  CHECK(one.exit_code == 0);
  CHECK(eight.exit_code == 0);
  CHECK(one.output == eight.output);
}

TEST_CASE("mult subcommand") {
  RunResult trivial = run_hermetic("mult --deltas 0.3 --xmax 100000");
  CHECK(trivial.exit_code == 0);
  json doc = json::parse(trivial.output);
  CHECK(double(doc["ratio"]) == 1.0);

  CHECK(run_hermetic("mult --deltas 0.1,0.1 --xmax 100000").exit_code == 3);
  CHECK(run_hermetic("mult --deltas 0.6 --xmax 100000").exit_code == 2);
}

TEST_CASE("factor subcommand") {
  RunResult res = run_hermetic("factor --n 6 --xmax 100000");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.output);
  CHECK(doc["inputs"]["n"] == 6);
  CHECK(doc["factors"].size() == 2);
  CHECK(doc["factors"][0]["p"] == 2);
  CHECK(doc["factors"][1]["p"] == 3);
  CHECK(run_hermetic("factor --n 1 --xmax 100000").exit_code == 2);
}

TEST_CASE("zeta-check emits the residual report") {
  RunResult res = run_hermetic("zeta-check --sigma 2 --t 0 --xmax 1000000");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.output);
  REQUIRE(doc["checks"].size() == 2);
  CHECK(double(doc["checks"][0]["residual"]) <= 1e-6);
  CHECK(doc["checks"][0]["pass"] == true);
  CHECK(doc["checks"][1]["pass"] == true);
  CHECK(std::string(doc["checks"][1]["note"]).find("ln(1 - x^s)") !=
        std::string::npos);
  CHECK(run_hermetic("zeta-check --sigma 0.9 --t 0 --xmax 1000").exit_code == 2);
}

TEST_CASE("lemma-check and singular-check emit reports") {
  RunResult res = run_hermetic("lemma-check --sigma 0.75 --xmax 100000");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.output);
  CHECK(doc["check_name"] == "half_pole_removal");
  CHECK(doc.contains("leading_term_correction"));
  CHECK(run_hermetic("lemma-check --sigma 0.5 --xmax 1000").exit_code == 2);

  RunResult sing = run_hermetic("singular-check --eps-grid 1e-3,1e-4");
  CHECK(sing.exit_code == 0);
  json sdoc = json::parse(sing.output);
  CHECK(sdoc["checks"].size() == 2);
  CHECK(sdoc["checks"][0]["pass"] == true);
  CHECK(std::string(sdoc["checks"][0]["half_pole"]["matching_variant"])
            .find("2s-1") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("nonsense", true).exit_code == 2);
  CHECK(run_cli("omega", true).exit_code == 2);          // missing --delta
  CHECK(run_cli("", true).exit_code == 2);               // missing subcommand
  CHECK(run_cli("--format yaml pi --x 10", true).exit_code == 2);
}

TEST_CASE("cache dir environment variable is honored") {
  TempDir tmp;
  const std::string cmd = std::string(kEnvScope) + "OMEGALAB_CACHE_DIR=" +
                          tmp.path.string() + " " OMEGALAB_CLI_PATH
                          " pi --x 15000000 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  std::string out;
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  pclose(pipe);
  CHECK(out.find(tmp.path.string()) != std::string::npos);
  CHECK(std::filesystem::exists(tmp.path / "pi_checkpoints.bin"));
}

TEST_CASE("config file precedence: flag > env > file > default") {
  TempDir tmp;
  const std::string cfg_path = (tmp.path / "omegalab.conf").string();
  {
    std::ofstream cfg(cfg_path);
    cfg << "# test configuration\n"
        << "threads = 3\n"
        << "von_koch_const = 0.05\n"
        << "eps = 0.125\n"
        << "output_format = json\n";
  }
  // file values apply when neither flag nor env supplies them
  RunResult res = run_hermetic("--config " + cfg_path +
                               " omega --delta 0.25 --xmax 10000");
  CHECK(res.exit_code == 0);
  json doc = json::parse(res.output); // output_format=json from the file
  CHECK(doc["provenance"]["threads"] == 3);
  CHECK(double(doc["provenance"]["von_koch_const"]) == 0.05);
  CHECK(double(doc["provenance"]["eps"]) == 0.125);

  // the file's delta_grid backs a sweep with no --deltas
  {
    std::ofstream cfg(cfg_path, std::ios::app);
    cfg << "delta_grid = 0.3, 0.2\n";
  }
  RunResult grid = run_hermetic("--config " + cfg_path +
                                " sweep --xmax 100000 --format json");
  CHECK(grid.exit_code == 0);
  json gdoc = json::parse(grid.output);
  REQUIRE(gdoc["rows"].size() == 2);
  CHECK(double(gdoc["rows"][0]["delta"]) == 0.3);
  CHECK(run_hermetic("sweep --xmax 100000").exit_code == 2); // no grid at all

  // flags win over the file
  RunResult flag = run_hermetic("--config " + cfg_path +
                                " --threads 2 --von-koch 0.07 omega "
                                "--delta 0.25 --xmax 10000 --format json");
  json fdoc = json::parse(flag.output);
  CHECK(fdoc["provenance"]["threads"] == 2);
  CHECK(double(fdoc["provenance"]["von_koch_const"]) == 0.07);

  // env wins over the file but loses to flags
  const std::string env_cmd = std::string(kEnvScope) + "OMEGALAB_THREADS=5 " +
                              OMEGALAB_CLI_PATH + " --cache-dir '' --config " +
                              cfg_path +
                              " omega --delta 0.25 --xmax 10000 --format json"
                              " 2>/dev/null";
  FILE *pipe = popen(env_cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) {
    out.append(buf, n);
    if (feof(pipe)) break;
  }
  pclose(pipe);
  json edoc = json::parse(out);
  CHECK(edoc["provenance"]["threads"] == 5);
}
