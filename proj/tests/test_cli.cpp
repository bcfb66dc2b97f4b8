// End-to-end tests driving the installed command-line binary. The binary
// path arrives through the SPSVD_BIN compile definition; each test writes
// its inputs into a scratch directory and inspects exit codes, stdout,
// stderr, and produced files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "spsvd/matrix_io.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/simulate.hpp"
#include "spsvd/types.hpp"

namespace fs = std::filesystem;

using spsvd::Index;
using spsvd::Matrix;
using spsvd::Vector;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("spsvd_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args) {
  static int invocation = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(invocation));
  const fs::path err = scratch_dir() / ("err" + std::to_string(invocation));
  ++invocation;
  const std::string cmd = std::string(SPSVD_BIN) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("decompose writes factors for a diagonal matrix") {
  const fs::path in = scratch_dir() / "diag.csv";
  write_text(in, "5,0,0\n0,3,0\n0,0,1\n");
  const fs::path out_dir = scratch_dir() / "diag_out";
  const auto res = run_cli("decompose --input " + in.string() +
                           " --rank 2 --method svd --out " + out_dir.string());
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("method=svd rank=2") != std::string::npos);
  CHECK(res.out.find("f1_residual=") != std::string::npos);
  CHECK(slurp(out_dir / "d.csv") == "5\n3\n");
  const Matrix U = spsvd::read_matrix_csv_file((out_dir / "U.csv").string());
  REQUIRE(U.rows() == 3);
  REQUIRE(U.cols() == 2);
  CHECK(std::abs(std::abs(U(0, 0)) - 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(U(1, 1)) - 1.0) <= 1e-12);
  CHECK(fs::exists(out_dir / "V.csv"));
  CHECK(fs::exists(out_dir / "result.json"));
}

TEST_CASE("decompose recovers an exact rank-1 matrix and reruns identically") {
  Matrix X(6, 4);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 4; ++j)
      X(i, j) = static_cast<double>((i + 1) * (j + 1));
  const fs::path in = scratch_dir() / "rank1.csv";
  spsvd::write_matrix_csv_file(in.string(), X);

  const fs::path out_dir = scratch_dir() / "rank1_out";
  const std::string cmd = "decompose --input " + in.string() +
                          " --rank 1 --method spsvd --out " + out_dir.string();
  const auto res = run_cli(cmd);
  CHECK(res.exit_code == 0);

  // Residual is reported on stdout as f1_residual=<value>.
  const auto pos = res.out.find("f1_residual=");
  REQUIRE(pos != std::string::npos);
  const double residual = std::stod(res.out.substr(pos + 12));
  CHECK(residual <= 1e-5);

  const std::string first_json = slurp(out_dir / "result.json");
  CHECK(!first_json.empty());
  const auto rerun = run_cli(cmd);
  CHECK(rerun.exit_code == 0);
  CHECK(slurp(out_dir / "result.json") == first_json);
}

TEST_CASE("missing input file is a usage error") {
  const auto res =
      run_cli("decompose --input " + (scratch_dir() / "nope.csv").string());
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("error:") != std::string::npos);
  CHECK(res.err.find("nope.csv") != std::string::npos);
}

TEST_CASE("malformed csv reports the offending line") {
  const fs::path in = scratch_dir() / "bad.csv";
  write_text(in, "1,2\n3,oops\n");
  const auto res = run_cli("decompose --input " + in.string());
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("line 2") != std::string::npos);
}

TEST_CASE("bound rejects a non-positive search depth") {
  const fs::path in = scratch_dir() / "diag2.csv";
  write_text(in, "5,0,0\n0,3,0\n0,0,1\n1,1,1\n");
  const auto res = run_cli("bound --input " + in.string() + " --kmax 0");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("kmax") != std::string::npos);
}

TEST_CASE("unknown probe statistic lists the valid handles") {
  const fs::path in = scratch_dir() / "diag3.csv";
  write_text(in, "5,0,0\n0,3,0\n0,0,1\n");
  const auto res = run_cli("probe --input " + in.string() +
                           " --stat pca-x --block 1,1");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("pca-x") != std::string::npos);
  CHECK(res.err.find("spsvd-right") != std::string::npos);
}

TEST_CASE("probe rejects zero trials") {
  const fs::path in = scratch_dir() / "diag4.csv";
  write_text(in, "5,0,0\n0,3,0\n0,0,1\n");
  const auto res = run_cli("probe --input " + in.string() +
                           " --stat svd-right --block 1,1 --trials 0");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("trials") != std::string::npos);
}

TEST_CASE("a tiny enumeration budget aborts with partial progress") {
  Vector d(1);
  d << 25;
  const Matrix X = spsvd::signal_plus_noise(10, 6, d, 3);
  const fs::path in = scratch_dir() / "signal.csv";
  spsvd::write_matrix_csv_file(in.string(), X);
  const auto res = run_cli("bound --input " + in.string() +
                           " --rank 1 --kmax 3 --budget 3");
  CHECK(res.exit_code == 4);
  CHECK(res.err.find("budget") != std::string::npos);
  CHECK(res.err.find("partial: k=1") != std::string::npos);
}

TEST_CASE("an unreachable tolerance is a numeric failure") {
  spsvd::Philox rng(77, 0);
  const Matrix X = spsvd::gaussian_matrix(rng, 80, 70);
  const fs::path in = scratch_dir() / "big.csv";
  spsvd::write_matrix_csv_file(in.string(), X);
  const auto res = run_cli("decompose --input " + in.string() +
                           " --method svd --rank 1 --max-iters 1 --tol 1e-18");
  CHECK(res.exit_code == 3);
  CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("simulate emits one csv row per (rep, eta, method) cell") {
  const auto res = run_cli("simulate --preset fig1 --reps 3");
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 1 + 3 * 2 * 4);  // header + reps x methods x etas
  CHECK(lines[0] ==
        "method,eta,left_angle_deg,right_angle_deg,d1_ratio,wall_time_s,seed,"
        "rep,failed");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK((lines[i].rfind("svd,", 0) == 0 || lines[i].rfind("spsvd,", 0) == 0));
    CHECK(lines[i].find(",false") != std::string::npos);
  }
}

TEST_CASE("probe prints a json report") {
  Vector d(1);
  d << 40;
  const Matrix X = spsvd::signal_plus_noise(20, 10, d, 0);
  const fs::path in = scratch_dir() / "probe_in.csv";
  spsvd::write_matrix_csv_file(in.string(), X);
  const fs::path out = scratch_dir() / "probe.json";
  const auto res = run_cli("probe --input " + in.string() +
                           " --stat svd-right --block 1,10 --trials 2 --out " +
                           out.string());
  CHECK(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.out);
  CHECK(parsed.at("stat") == "svd-right");
  CHECK(parsed.at("trials") == 2);
  CHECK(parsed.at("broke_down").is_boolean());
  CHECK(slurp(out) == res.out);
}

TEST_CASE("bench reports one row per size and method") {
  const auto res = run_cli("bench --sizes 60:30 --methods svd --reps 1");
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,p,method,median_wall_time_s,time_ratio_vs_svd,failed");
  CHECK(lines[1].rfind("60,30,svd,", 0) == 0);
  CHECK(lines[1].find(",false") != std::string::npos);
  // The method timed against itself has ratio one.
  CHECK(lines[1].find(",1,") != std::string::npos);
}

TEST_CASE("bench keeps a deterministic row order across runs") {
  const std::string cmd =
      "bench --sizes 40:20,30:15 --methods svd,spsvd --reps 1";
  const auto first = run_cli(cmd);
  const auto second = run_cli(cmd);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  const auto rows1 = lines_of(first.out);
  const auto rows2 = lines_of(second.out);
  REQUIRE(rows1.size() == 5);  // header + 2 sizes x 2 methods
  REQUIRE(rows2.size() == rows1.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    // Times vary between runs; the (n, p, method) prefix must not.
    const auto prefix = [](const std::string& row) {
      std::size_t commas = 0, pos = 0;
      for (; pos < row.size() && commas < 3; ++pos)
        if (row[pos] == ',') ++commas;
      return row.substr(0, pos);
    };
    CHECK(prefix(rows1[i]) == prefix(rows2[i]));
  }
}

TEST_CASE("config file supplies defaults and flags override it") {
  const fs::path in = scratch_dir() / "cfg_in.csv";
  write_text(in, "5,0,0\n0,3,0\n0,0,1\n");
  const fs::path cfg = scratch_dir() / "probe.toml";
  write_text(cfg, "[probe]\ntrials=3\n");

  const std::string base = "--config " + cfg.string() + " probe --input " +
                           in.string() + " --stat svd-right --block 1,3";
  const auto from_config = run_cli(base);
  CHECK(from_config.exit_code == 0);
  CHECK(nlohmann::json::parse(from_config.out).at("trials") == 3);

  const auto overridden = run_cli(base + " --trials 2");
  CHECK(overridden.exit_code == 0);
  CHECK(nlohmann::json::parse(overridden.out).at("trials") == 2);
}

TEST_CASE("scratch cleanup") {
  // Not a real assertion target: drop the accumulated artifacts.
  std::error_code ec;
  fs::remove_all(scratch_dir(), ec);
  CHECK(!fs::exists(scratch_dir()));
}
