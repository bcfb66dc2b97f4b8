// spsvd: command-line front end for the robust SVD library.
//
// Subcommands: decompose, simulate, bound, probe, bench. Every subcommand
// is deterministic given --seed (wall-time fields exempt). Exit codes:
// 0 success, 2 usage or input error, 3 numeric failure, 4 enumeration
// budget exceeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spsvd/breakdown.hpp"
#include "spsvd/elsvd.hpp"
#include "spsvd/errors.hpp"
#include "spsvd/matrix_io.hpp"
#include "spsvd/normalize.hpp"
#include "spsvd/serialize.hpp"
#include "spsvd/simulate.hpp"
#include "spsvd/spsvd.hpp"
#include "spsvd/subspace.hpp"
#include "spsvd/truncated_svd.hpp"
#include "spsvd/types.hpp"

namespace {

using spsvd::Index;
using spsvd::Matrix;
using spsvd::Vector;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitBudget = 4;

Vector to_vector(const std::vector<double>& values) {
  Vector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    v[static_cast<Index>(i)] = values[i];
  return v;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw spsvd::ParameterError("cannot open '" + path + "' for writing");
  }
  out << text;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeArgs {
  std::string input;
  std::string out_dir = ".";
  Index rank = 1;
  std::string method = "spsvd";
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iters = 300;
  double delta = 1.345;
};

int run_decompose(const DecomposeArgs& args) {
  const Matrix X = spsvd::read_matrix_csv_file(args.input);

  spsvd::TruncatedSvdOptions svd_opts;
  svd_opts.seed = args.seed;
  svd_opts.tol = args.tol;
  svd_opts.max_iters = args.max_iters;
  spsvd::HuberConfig huber;
  huber.delta = args.delta;
  huber.max_iters = args.max_iters;

  spsvd::SvdFactorization fac;
  std::string result_json;
  const auto t0 = std::chrono::steady_clock::now();
  if (args.method == "svd") {
    fac = spsvd::truncated_svd(X, args.rank, svd_opts);
    result_json = spsvd::to_json(fac, "svd");
  } else if (args.method == "spsvd") {
    spsvd::SpsvdResult res = spsvd::spsvd_decompose(X, args.rank, svd_opts);
    result_json = spsvd::to_json(res);
    fac = std::move(res.factorization);
  } else if (args.method == "elsvd") {
    spsvd::ElsvdResult res = spsvd::elsvd_decompose(X, args.rank, huber);
    result_json = spsvd::to_json(res);
    fac = std::move(res.factorization);
  } else {
    throw spsvd::ParameterError("unknown method '" + args.method +
                                "' (expected svd, spsvd, or elsvd)");
  }
  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();
  const double residual = spsvd::entrywise_l1_norm(X - fac.reconstruction());

  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  spsvd::write_matrix_csv_file((dir / "d.csv").string(),
                               Matrix(fac.singular_values()));
  spsvd::write_matrix_csv_file((dir / "U.csv").string(), fac.matrix_u());
  spsvd::write_matrix_csv_file((dir / "V.csv").string(), fac.matrix_v());
  write_text_file((dir / "result.json").string(), result_json);

  std::cout << "method=" << args.method << " rank=" << fac.rank()
            << " f1_residual=" << spsvd::format_double(residual)
            << " wall_time_s=" << spsvd::format_double(wall) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string preset = "fig1";
  Index n = 0;
  Index p = 0;
  Index rank = 0;
  std::vector<double> singular_values;
  std::vector<double> etas;
  std::vector<std::string> methods;
  int reps = 0;
  double row_frac = -1;
  double col_frac = -1;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

// Fill any field the user left unset from the named preset.
void apply_simulate_preset(SimulateArgs& a) {
  const bool rank9 = a.preset == "rank9";
  if (!rank9 && a.preset != "fig1" && a.preset != "custom") {
    throw spsvd::ParameterError("unknown preset '" + a.preset +
                                "' (expected fig1, rank9, or custom)");
  }
  if (a.preset == "custom") return;  // every field must come from flags/config
  if (a.n == 0) a.n = rank9 ? 1000 : 200;
  if (a.p == 0) a.p = rank9 ? 500 : 100;
  if (a.rank == 0) a.rank = rank9 ? 9 : 3;
  if (a.singular_values.empty()) {
    if (rank9) {
      for (int r = 0; r < 9; ++r) a.singular_values.push_back(750.0 - 50.0 * r);
    } else {
      a.singular_values = {80, 70, 60};
    }
  }
  if (a.etas.empty()) a.etas = rank9 ? std::vector<double>{1000}
                                     : std::vector<double>{0, 250, 500, 1000};
  if (a.methods.empty()) a.methods = {"svd", "spsvd"};
  if (a.reps == 0) a.reps = rank9 ? 2 : 10;
  if (a.row_frac < 0) a.row_frac = 0.05;
  if (a.col_frac < 0) a.col_frac = 0.05;
}

int run_simulate(const SimulateArgs& args_in) {
  SimulateArgs args = args_in;
  apply_simulate_preset(args);
  spsvd::SweepConfig cfg;
  cfg.sim.n = args.n;
  cfg.sim.p = args.p;
  cfg.sim.rank = args.rank;
  cfg.sim.singular_values = to_vector(args.singular_values);
  cfg.sim.row_frac = args.row_frac;
  cfg.sim.col_frac = args.col_frac;
  cfg.sim.seed = args.seed;
  cfg.etas = args.etas;
  cfg.methods = args.methods;
  cfg.reps = args.reps;
  cfg.threads = std::max(1, args.threads);

  const std::vector<spsvd::ExperimentRecord> records = spsvd::run_sweep(cfg);
  if (args.out.empty()) {
    spsvd::write_sweep_csv(std::cout, records);
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
      throw spsvd::ParameterError("cannot open '" + args.out +
                                  "' for writing");
    }
    spsvd::write_sweep_csv(out, records);
    std::cout << "wrote " << records.size() << " records to " << args.out
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  std::string input;
  std::string preset;
  Index rank = 0;
  int kmax = 6;
  std::uint64_t budget = 200'000'000;
  double scale = 0.3;
  int seeds = 5;
  std::uint64_t seed = 0;
  bool verbose = false;
  std::string json_out;
};

std::string render_bound(const spsvd::BoundResult& r) {
  std::string s = std::to_string(r.bound);
  if (!r.exhausted) s += "↑";  // searched to k_max without an answer
  return s;
}

void print_per_k(const spsvd::BoundResult& r, const char* label) {
  std::cout << "  per-k infima (" << label << "):\n";
  for (const auto& [k, inf] : r.per_k_infimum) {
    std::cout << "    k=" << k << " inf=" << spsvd::format_double(inf) << "\n";
  }
}

int run_bound_matrix(const BoundArgs& args) {
  const Matrix X = spsvd::read_matrix_csv_file(args.input);
  const Index R = args.rank == 0 ? 1 : args.rank;
  spsvd::BoundOptions opts;
  opts.max_evaluations = args.budget;
  // The library requires k_max <= dim - R; clamp the request so the default
  // works on small matrices too.
  spsvd::BoundOptions row_opts = opts;
  row_opts.k_max = static_cast<int>(
      std::min<Index>(args.kmax, X.rows() - R));
  spsvd::BoundOptions col_opts = opts;
  col_opts.k_max = static_cast<int>(
      std::min<Index>(args.kmax, X.cols() - R));
  if (row_opts.k_max < 1 || col_opts.k_max < 1) {
    throw spsvd::ParameterError("matrix too small for the requested rank");
  }

  const spsvd::BoundResult nR = spsvd::row_deletion_bound(X, R, row_opts);
  const spsvd::BoundResult pR = spsvd::col_deletion_bound(X, R, col_opts);
  std::cout << "n_R = " << render_bound(nR) << " (k_max=" << nR.k_max_searched
            << ")\n";
  if (args.verbose) print_per_k(nR, "rows");
  std::cout << "p_R = " << render_bound(pR) << " (k_max=" << pR.k_max_searched
            << ")\n";
  if (args.verbose) print_per_k(pR, "cols");

  if (!args.json_out.empty()) {
    std::string doc = "{\n  \"n_R\": ";
    std::string nj = spsvd::to_json(nR);
    std::string pj = spsvd::to_json(pR);
    if (!nj.empty() && nj.back() == '\n') nj.pop_back();
    if (!pj.empty() && pj.back() == '\n') pj.pop_back();
    doc += nj;
    doc += ",\n  \"p_R\": ";
    doc += pj;
    doc += "\n}\n";
    write_text_file(args.json_out, doc);
  }
  return 0;
}

int mode_of(const std::vector<int>& values) {
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  int best = values.front();
  int best_count = 0;
  for (const auto& [v, c] : counts) {
    if (c > best_count) {  // ties resolve to the smallest value
      best = v;
      best_count = c;
    }
  }
  return best;
}

int run_bound_table(const BoundArgs& args) {
  if (args.seeds < 1) throw spsvd::ParameterError("--seeds must be >= 1");
  if (!(args.scale > 0) || !std::isfinite(args.scale)) {
    throw spsvd::ParameterError("--scale must be positive and finite");
  }
  const Index n = 60;
  const Index p = 30;
  struct Row {
    std::string label;
    Vector d;
    Index rank;
  };
  std::vector<Row> rows;
  rows.push_back({"(80,70,60)x" , to_vector({80, 70, 60}) * args.scale, 3});
  rows.push_back({"(60)x", to_vector({60}) * args.scale, 1});

  std::cout << "singular_values R seed n_R p_R\n";
  for (const Row& row : rows) {
    spsvd::BoundOptions opts;
    opts.k_max = args.kmax;
    opts.max_evaluations = args.budget;
    std::vector<int> n_bounds, p_bounds;
    std::string n_render, p_render;
    bool n_all_exhausted = true, p_all_exhausted = true;
    for (int s = 0; s < args.seeds; ++s) {
      const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(s);
      const Matrix X = spsvd::signal_plus_noise(n, p, row.d, seed);
      const spsvd::BoundResult nR =
          spsvd::row_deletion_bound(X, row.rank, opts);
      const spsvd::BoundResult pR =
          spsvd::col_deletion_bound(X, row.rank, opts);
      n_bounds.push_back(nR.bound);
      p_bounds.push_back(pR.bound);
      n_all_exhausted = n_all_exhausted && nR.exhausted;
      p_all_exhausted = p_all_exhausted && pR.exhausted;
      std::cout << row.label << spsvd::format_double(args.scale) << " "
                << row.rank << " " << seed << " " << render_bound(nR) << " "
                << render_bound(pR) << "\n";
    }
    const int n_mode = mode_of(n_bounds);
    const int p_mode = mode_of(p_bounds);
    std::cout << row.label << spsvd::format_double(args.scale) << " "
              << row.rank << " mode " << n_mode
              << (n_all_exhausted || n_mode <= args.kmax ? "" : "↑") << " "
              << p_mode
              << (p_all_exhausted || p_mode <= args.kmax ? "" : "↑")
              << "\n";
  }
  return 0;
}

int run_bound(const BoundArgs& args) {
  if (!args.preset.empty() && args.preset != "appendix-table") {
    throw spsvd::ParameterError("unknown preset '" + args.preset +
                                "' (expected appendix-table)");
  }
  if (args.preset.empty() && args.input.empty()) {
    throw spsvd::ParameterError(
        "bound needs --input MATRIX.csv or --preset appendix-table");
  }
  if (args.kmax < 1) throw spsvd::ParameterError("--kmax must be >= 1");
  return args.preset.empty() ? run_bound_matrix(args) : run_bound_table(args);
}

// ---------------------------------------------------------------------------
// probe

struct ProbeArgs {
  std::string input;
  std::string stat;
  std::vector<Index> block;
  std::vector<double> magnitudes = {1e2, 1e4, 1e6, 1e8};
  int trials = 8;
  Index rank = 1;
  double threshold = 89.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_probe(const ProbeArgs& args) {
  const Matrix X = spsvd::read_matrix_csv_file(args.input);
  if (args.block.size() != 2) {
    throw spsvd::ParameterError("--block expects exactly two values: k,l");
  }
  spsvd::ProbeOptions opts;
  opts.rank = args.rank;
  opts.magnitudes = args.magnitudes;
  opts.trials = args.trials;
  opts.seed = args.seed;
  opts.angle_threshold_deg = args.threshold;
  const spsvd::ProbeReport report = spsvd::breakdown_probe(
      X, spsvd::parse_stat(args.stat),
      spsvd::BlockSize{args.block[0], args.block[1]}, opts);
  const std::string doc = spsvd::to_json(report);
  std::cout << doc;
  if (!args.out.empty()) write_text_file(args.out, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::string> sizes = {"200:100", "500:250", "1000:500",
                                    "2000:1000"};
  Index rank = 3;
  std::vector<std::string> methods = {"svd", "spsvd"};
  int reps = 3;
  std::uint64_t seed = 0;
  std::string out;
};

std::pair<Index, Index> parse_size(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size()) {
    throw spsvd::ParameterError("size '" + s + "' must look like n:p");
  }
  try {
    const long n = std::stol(s.substr(0, pos));
    const long p = std::stol(s.substr(pos + 1));
    if (n < 2 || p < 2) throw spsvd::ParameterError("sizes must be >= 2");
    return {static_cast<Index>(n), static_cast<Index>(p)};
  } catch (const std::logic_error&) {
    throw spsvd::ParameterError("size '" + s + "' must look like n:p");
  }
}

int run_bench(const BenchArgs& args) {
  if (args.reps < 1) throw spsvd::ParameterError("--reps must be >= 1");
  if (args.sizes.empty()) throw spsvd::ParameterError("--sizes must be non-empty");
  if (args.methods.empty()) {
    throw spsvd::ParameterError("--methods must be non-empty");
  }

  std::ostringstream csv;
  csv << "n,p,method,median_wall_time_s,time_ratio_vs_svd,failed\n";
  bool any_failed = false;

  for (const std::string& size : args.sizes) {
    const auto [n, p] = parse_size(size);
    const Index R = std::min(args.rank, std::min(n, p));
    // Signal scaled so the signal-to-noise ratio is roughly size-independent.
    const double base =
        std::sqrt(static_cast<double>(n) * static_cast<double>(p) / 20000.0);
    Vector d(R);
    for (Index r = 0; r < R; ++r) {
      d[r] = base * (80.0 - 20.0 * static_cast<double>(r) /
                                static_cast<double>(std::max<Index>(R - 1, 1)));
    }
    const Matrix X = spsvd::signal_plus_noise(n, p, d, args.seed);

    std::map<std::string, double> medians;
    std::map<std::string, bool> failed;
    for (const std::string& method : args.methods) {
      std::vector<double> times;
      bool method_failed = false;
      for (int rep = 0; rep < args.reps && !method_failed; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
          spsvd::TruncatedSvdOptions opts;
          opts.seed = args.seed;
          if (method == "svd") {
            spsvd::truncated_svd(X, R, opts);
          } else if (method == "spsvd") {
            spsvd::spsvd_decompose(X, R, opts);
          } else if (method == "elsvd") {
            spsvd::elsvd_decompose(X, R, spsvd::HuberConfig{});
          } else {
            throw spsvd::ParameterError("unknown method '" + method + "'");
          }
        } catch (const spsvd::ParameterError&) {
          throw;
        } catch (const std::exception&) {
          method_failed = true;
        }
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      failed[method] = method_failed;
      any_failed = any_failed || method_failed;
      if (!method_failed) {
        std::sort(times.begin(), times.end());
        medians[method] = times[times.size() / 2];
      }
    }
    const bool have_svd = medians.count("svd") > 0;
    for (const std::string& method : args.methods) {
      csv << n << ',' << p << ',' << method << ',';
      if (!failed[method]) csv << spsvd::format_double(medians[method]);
      csv << ',';
      if (!failed[method] && have_svd && medians["svd"] > 0) {
        csv << spsvd::format_double(medians[method] / medians["svd"]);
      }
      csv << ',' << (failed[method] ? "true" : "false") << "\n";
    }
  }

  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(args.out, csv.str());
    std::cout << "wrote bench results to " << args.out << "\n";
  }
  return any_failed ? kExitNumeric : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Robust singular value decomposition via spherical normalization: "
      "decomposition, simulation sweeps, breakdown bounds, and probes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.get_config_formatter_base()->section("");
  int threads = 1;
  app.add_option("--threads", threads,
                 "Upper bound on worker threads (execution is deterministic "
                 "and may use fewer)")
      ->envname("SPSVD_THREADS")
      ->check(CLI::PositiveNumber);

  DecomposeArgs dec;
  CLI::App* cmd_dec = app.add_subcommand(
      "decompose", "Decompose a CSV matrix and write d.csv, U.csv, V.csv, "
                   "result.json");
  cmd_dec->add_option("--input", dec.input, "Input matrix CSV")
      ->required();
  cmd_dec->add_option("--rank", dec.rank, "Number of components")
      ->check(CLI::PositiveNumber);
  cmd_dec->add_option("--method", dec.method, "svd | spsvd | elsvd");
  cmd_dec->add_option("--out", dec.out_dir, "Output directory (default .)");
  cmd_dec->add_option("--seed", dec.seed, "Random seed")
      ->envname("SPSVD_SEED");
  cmd_dec->add_option("--tol", dec.tol, "Iterative solver tolerance");
  cmd_dec->add_option("--max-iters", dec.max_iters, "Iteration cap");
  cmd_dec->add_option("--delta", dec.delta, "Huber threshold (elsvd)");

  SimulateArgs sim;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate", "Run a contamination sweep and write the records CSV");
  cmd_sim->add_option("--preset", sim.preset, "fig1 | rank9 | custom");
  cmd_sim->add_option("--n", sim.n, "Rows");
  cmd_sim->add_option("--p", sim.p, "Columns");
  cmd_sim->add_option("--rank", sim.rank, "Signal rank");
  cmd_sim->add_option("--singular-values", sim.singular_values,
                      "Signal singular values, strictly decreasing")
      ->delimiter(',');
  cmd_sim->add_option("--etas", sim.etas, "Outlier magnitudes")
      ->delimiter(',');
  cmd_sim->add_option("--methods", sim.methods, "Methods to run")
      ->delimiter(',');
  cmd_sim->add_option("--reps", sim.reps, "Repetitions per cell");
  cmd_sim->add_option("--row-frac", sim.row_frac, "Outlier row fraction");
  cmd_sim->add_option("--col-frac", sim.col_frac, "Outlier column fraction");
  cmd_sim->add_option("--seed", sim.seed, "Random seed")
      ->envname("SPSVD_SEED");
  cmd_sim->add_option("--out", sim.out, "Output CSV path (default stdout)");

  BoundArgs bnd;
  CLI::App* cmd_bnd = app.add_subcommand(
      "bound", "Exact row/column deletion lower bounds on breakdown");
  cmd_bnd->add_option("--input", bnd.input, "Input matrix CSV");
  cmd_bnd->add_option("--preset", bnd.preset,
                      "appendix-table: synthetic 60x30 bound table");
  cmd_bnd->add_option("--rank", bnd.rank, "Subspace rank")
      ->check(CLI::PositiveNumber);
  cmd_bnd->add_option("--kmax", bnd.kmax, "Deepest deletion count searched");
  cmd_bnd->add_option("--budget", bnd.budget,
                      "Maximum submatrix evaluations before aborting");
  cmd_bnd->add_option("--scale", bnd.scale,
                      "Singular-value scale for the table preset");
  cmd_bnd->add_option("--seeds", bnd.seeds,
                      "Number of seeds for the table preset");
  cmd_bnd->add_option("--seed", bnd.seed, "Base random seed")
      ->envname("SPSVD_SEED");
  cmd_bnd->add_flag("--verbose", bnd.verbose, "Print per-k infima");
  cmd_bnd->add_option("--json", bnd.json_out, "Write BoundResult JSON here");

  ProbeArgs prb;
  CLI::App* cmd_prb = app.add_subcommand(
      "probe", "Randomized block-contamination breakdown probe");
  cmd_prb->add_option("--input", prb.input, "Input matrix CSV")->required();
  cmd_prb
      ->add_option("--stat", prb.stat,
                   "svd-left | svd-right | spsvd-left | spsvd-right | "
                   "elsvd-left | elsvd-right")
      ->required();
  cmd_prb->add_option("--block", prb.block, "Block size k,l")
      ->required()
      ->delimiter(',');
  cmd_prb->add_option("--magnitudes", prb.magnitudes, "Contamination scales")
      ->delimiter(',');
  cmd_prb->add_option("--trials", prb.trials, "Random trials");
  cmd_prb->add_option("--rank", prb.rank, "Subspace rank");
  cmd_prb->add_option("--threshold", prb.threshold,
                      "Breakdown angle threshold in degrees");
  cmd_prb->add_option("--seed", prb.seed, "Random seed")
      ->envname("SPSVD_SEED");
  cmd_prb->add_option("--out", prb.out, "Also write the report JSON here");

  BenchArgs ben;
  CLI::App* cmd_ben = app.add_subcommand(
      "bench", "Median decomposition wall times over matrix sizes");
  cmd_ben->add_option("--sizes", ben.sizes, "Sizes as n:p pairs")
      ->delimiter(',');
  cmd_ben->add_option("--rank", ben.rank, "Components per decomposition")
      ->check(CLI::PositiveNumber);
  cmd_ben->add_option("--methods", ben.methods, "Methods to time")
      ->delimiter(',');
  cmd_ben->add_option("--reps", ben.reps, "Repetitions (median reported)");
  cmd_ben->add_option("--seed", ben.seed, "Random seed")
      ->envname("SPSVD_SEED");
  cmd_ben->add_option("--out", ben.out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    sim.threads = threads;
    if (cmd_dec->parsed()) return run_decompose(dec);
    if (cmd_sim->parsed()) return run_simulate(sim);
    if (cmd_bnd->parsed()) return run_bound(bnd);
    if (cmd_prb->parsed()) return run_probe(prb);
    if (cmd_ben->parsed()) return run_bench(ben);
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const spsvd::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& [k, inf] : e.partial_infima()) {
      std::cerr << "  partial: k=" << k
                << " inf=" << spsvd::format_double(inf) << "\n";
    }
    return kExitBudget;
  } catch (const spsvd::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const spsvd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // ParameterError and DegenerateInputError both land here.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
