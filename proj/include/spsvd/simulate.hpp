#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spsvd/elsvd.hpp"
#include "spsvd/truncated_svd.hpp"
#include "spsvd/types.hpp"

namespace spsvd {

// Philox stream-splitting conventions for experiment code: generator
// number rep uses streams rep * 8 + <substream>, so reps never share a
// stream. Substream 3 is reserved by the breakdown probe's attack draws
// (which key streams from a high base instead), 4 by the accuracy study's
// fixed outlier direction.
inline constexpr std::uint64_t kFactorStream = 0;   // Haar factors U, V
inline constexpr std::uint64_t kNoiseStream = 1;    // dense gaussian noise
inline constexpr std::uint64_t kIndexStream = 2;    // outlier index draws
inline constexpr std::uint64_t kStudyDirectionStream = 4;
inline constexpr std::uint64_t kRepStreamStride = 8;

// Low-rank signal plus gaussian noise plus a rank-one spike supported on a
// small index block, scaled by eta at evaluation time.
struct SimConfig {
  Index n = 200;
  Index p = 100;
  Index rank = 3;
  Vector singular_values = (Vector(3) << 80, 70, 60).finished();
  double row_frac = 0.05;  // |I| = floor(row_frac * n) outlier rows
  double col_frac = 0.05;  // |J| = floor(col_frac * p) outlier columns
  std::uint64_t seed = 0;
};

void validate(const SimConfig& cfg);

struct GeneratedInstance {
  Matrix low_rank;  // U diag(d) V^T
  Matrix noise;     // iid standard normal
  // Unit-Frobenius rank-one spike supported on I x J, built in the null
  // space of the signal factors restricted to the block, so its row and
  // column spaces are exactly orthogonal to the signal's.
  Matrix spike;
  Matrix u_true;  // n x R
  Matrix v_true;  // p x R
  std::vector<Index> outlier_rows;
  std::vector<Index> outlier_cols;

  Matrix clean() const { return low_rank + noise; }
  Matrix contaminated(double eta) const {
    return low_rank + noise + eta * spike;
  }
};

// Haar-distributed orthonormal factors via QR of gaussian matrices with
// the R-factor sign correction.
std::pair<Matrix, Matrix> haar_orthogonal_factors(Index n, Index p, Index R,
                                                  std::uint64_t seed);

GeneratedInstance gen_instance(const SimConfig& cfg, int rep = 0);

// Clean draw U diag(d) V^T + E with Haar factors and standard gaussian
// noise, using the same per-rep streams as gen_instance but no outlier
// block. Used by the breakdown-bound tables, where no contamination is
// added up front.
Matrix signal_plus_noise(Index n, Index p, const Vector& singular_values,
                         std::uint64_t seed, int rep = 0);

// Returns a copy with the block entries multiplied by factor (the
// measurement-error mechanism: a subset of entries mis-scaled in place).
Matrix contaminate_scale_block(const Matrix& X,
                               const std::vector<Index>& rows,
                               const std::vector<Index>& cols, double factor);

struct SweepConfig {
  SimConfig sim;
  std::vector<double> etas = {0, 250, 500, 1000};
  std::vector<std::string> methods = {"svd", "spsvd", "elsvd"};
  int reps = 10;
  TruncatedSvdOptions svd;
  HuberConfig huber;
  int threads = 1;
};

struct ExperimentRecord {
  std::string method;
  double eta = 0.0;
  double left_angle_deg = 0.0;
  double right_angle_deg = 0.0;
  double d1_ratio = 0.0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  int rep = 0;
  bool failed = false;
};

// One record per (method, eta, rep): principal angles of the estimated
// factors against the true ones, the ratio of the largest estimated scale
// to d_1, and the decomposition wall time. Instances are deterministic per
// (seed, rep) and shared by every method and eta within a rep. Method
// failures become flagged records (NaN metrics) instead of aborting.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg);

struct AccuracyCell {
  Index n = 0;
  double epsilon = 0.0;
  std::vector<double> mean_error;  // per recovered direction j
  int reps = 0;
};

struct AccuracyStudyConfig {
  std::vector<Index> n_grid = {200, 400, 800, 1600};
  Index p = 10;
  std::vector<double> epsilons = {0.0};
  // Diagonal covariance spectrum; must be strictly decreasing (the
  // estimator needs distinct eigenvalues, so e.g. the identity is refused).
  Vector covariance_eigenvalues;
  Index rank = 1;  // directions to recover and score
  int reps = 50;
  double outlier_scale = 1e6;
  std::uint64_t seed = 0;
};

// Default spectrum: lambda_j = 2^(p - j), strictly decreasing.
Vector default_covariance_eigenvalues(Index p);

// Monte Carlo eigenvector-consistency study: rows are (1 - eps) * n
// gaussian samples with the given diagonal covariance plus eps * n copies
// of one fixed large outlier, and the error per direction j is
// min(||v_j_hat - e_j||, ||v_j_hat + e_j||), averaged over reps.
std::vector<AccuracyCell> accuracy_study(const AccuracyStudyConfig& cfg);

}  // namespace spsvd
