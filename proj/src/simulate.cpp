#include "spsvd/simulate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spsvd/errors.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/spsvd.hpp"
#include "spsvd/subspace.hpp"

namespace spsvd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Index block_count(double frac, Index dim) {
  return static_cast<Index>(std::floor(frac * static_cast<double>(dim)));
}

// Orthonormal basis fix-up: make the QR factor unique by forcing the
// diagonal of R positive, so the distribution is exactly Haar.
Matrix haar_factor(Philox& rng, Index dim, Index R) {
  Matrix G = gaussian_matrix(rng, dim, R);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(dim, R);
  Matrix Rfac = qr.matrixQR().topRows(R).triangularView<Eigen::Upper>();
  for (Index j = 0; j < R; ++j) {
    if (Rfac(j, j) < 0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

// Unit vector in the null space of B^T where B is the restriction of an
// orthonormal factor to the block indices: the last left singular vector
// of the (block x R) matrix, which exists whenever block size > R.
Vector restricted_null_direction(const Matrix& factor,
                                 const std::vector<Index>& block) {
  const Index k = static_cast<Index>(block.size());
  Matrix B(k, factor.cols());
  for (Index i = 0; i < k; ++i) B.row(i) = factor.row(block[static_cast<std::size_t>(i)]);
  Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeFullU);
  return svd.matrixU().col(k - 1);
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n < 2 || cfg.p < 2) {
    throw ParameterError("simulation needs n >= 2 and p >= 2");
  }
  if (cfg.rank < 1 || cfg.rank > std::min(cfg.n, cfg.p)) {
    throw ParameterError("simulation rank must be in [1, min(n, p)]");
  }
  if (cfg.singular_values.size() != cfg.rank) {
    throw ParameterError("singular_values must have exactly rank entries");
  }
  for (Index r = 0; r < cfg.rank; ++r) {
    const double d = cfg.singular_values[r];
    if (!(d > 0) || !std::isfinite(d)) {
      throw ParameterError("singular values must be positive and finite");
    }
    if (r > 0 && !(cfg.singular_values[r - 1] > d)) {
      throw ParameterError("singular values must be strictly decreasing");
    }
  }
  if (!(cfg.row_frac >= 0) || !(cfg.row_frac <= 1) || !(cfg.col_frac >= 0) ||
      !(cfg.col_frac <= 1)) {
    throw ParameterError("outlier fractions must lie in [0, 1]");
  }
  const Index nI = block_count(cfg.row_frac, cfg.n);
  const Index nJ = block_count(cfg.col_frac, cfg.p);
  if (nI < cfg.rank + 1 || nJ < cfg.rank + 1) {
    throw ParameterError(
        "outlier block must exceed the rank in both dimensions "
        "(floor(frac * dim) >= rank + 1)");
  }
}

std::pair<Matrix, Matrix> haar_orthogonal_factors(Index n, Index p, Index R,
                                                  std::uint64_t seed) {
  if (R < 1 || R > std::min(n, p)) {
    throw ParameterError("factor rank must be in [1, min(n, p)]");
  }
  Philox rng(seed, kFactorStream);
  Matrix U = haar_factor(rng, n, R);
  Matrix V = haar_factor(rng, p, R);
  return {std::move(U), std::move(V)};
}

GeneratedInstance gen_instance(const SimConfig& cfg, int rep) {
  validate(cfg);
  if (rep < 0) throw ParameterError("rep must be non-negative");
  const std::uint64_t base =
      static_cast<std::uint64_t>(rep) * kRepStreamStride;

  GeneratedInstance inst;
  {
    Philox rng(cfg.seed, base + kFactorStream);
    inst.u_true = haar_factor(rng, cfg.n, cfg.rank);
    inst.v_true = haar_factor(rng, cfg.p, cfg.rank);
  }
  inst.low_rank = inst.u_true * cfg.singular_values.asDiagonal() *
                  inst.v_true.transpose();
  {
    Philox rng(cfg.seed, base + kNoiseStream);
    inst.noise = gaussian_matrix(rng, cfg.n, cfg.p);
  }
  {
    Philox rng(cfg.seed, base + kIndexStream);
    inst.outlier_rows = sample_without_replacement(
        rng, cfg.n, block_count(cfg.row_frac, cfg.n));
    inst.outlier_cols = sample_without_replacement(
        rng, cfg.p, block_count(cfg.col_frac, cfg.p));
  }

  // Rank-one spike a b^T supported on I x J with a ⟂ col(U) and b ⟂ col(V):
  // restrict each factor to the block and take a null-space direction.
  // Block sizes exceed the rank, so the null space is non-trivial.
  const Vector a_block = restricted_null_direction(inst.u_true, inst.outlier_rows);
  const Vector b_block = restricted_null_direction(inst.v_true, inst.outlier_cols);
  inst.spike = Matrix::Zero(cfg.n, cfg.p);
  for (std::size_t i = 0; i < inst.outlier_rows.size(); ++i) {
    for (std::size_t j = 0; j < inst.outlier_cols.size(); ++j) {
      inst.spike(inst.outlier_rows[i], inst.outlier_cols[j]) =
          a_block[static_cast<Index>(i)] * b_block[static_cast<Index>(j)];
    }
  }
  // a and b are unit vectors, so ||a b^T||_F = 1 already; normalize anyway
  // to keep the contract independent of the construction.
  inst.spike /= inst.spike.norm();
  return inst;
}

Matrix signal_plus_noise(Index n, Index p, const Vector& singular_values,
                         std::uint64_t seed, int rep) {
  const Index R = singular_values.size();
  if (n < 1 || p < 1) throw ParameterError("dimensions must be positive");
  if (R < 1 || R > std::min(n, p)) {
    throw ParameterError("number of singular values must be in [1, min(n, p)]");
  }
  for (Index r = 0; r < R; ++r) {
    const double d = singular_values[r];
    if (!(d > 0) || !std::isfinite(d)) {
      throw ParameterError("singular values must be positive and finite");
    }
    if (r > 0 && !(singular_values[r - 1] > d)) {
      throw ParameterError("singular values must be strictly decreasing");
    }
  }
  if (rep < 0) throw ParameterError("rep must be non-negative");
  const std::uint64_t base =
      static_cast<std::uint64_t>(rep) * kRepStreamStride;
  Matrix U, V;
  {
    Philox rng(seed, base + kFactorStream);
    U = haar_factor(rng, n, R);
    V = haar_factor(rng, p, R);
  }
  Philox rng(seed, base + kNoiseStream);
  return U * singular_values.asDiagonal() * V.transpose() +
         gaussian_matrix(rng, n, p);
}

Matrix contaminate_scale_block(const Matrix& X, const std::vector<Index>& rows,
                               const std::vector<Index>& cols, double factor) {
  if (!std::isfinite(factor)) {
    throw ParameterError("scale factor must be finite");
  }
  for (Index i : rows) {
    if (i < 0 || i >= X.rows()) throw ParameterError("row index out of range");
  }
  for (Index j : cols) {
    if (j < 0 || j >= X.cols()) throw ParameterError("column index out of range");
  }
  Matrix Y = X;
  for (Index i : rows) {
    for (Index j : cols) Y(i, j) *= factor;
  }
  return Y;
}

namespace {

struct MethodOutcome {
  Matrix U;
  Matrix V;
  double d_max = 0.0;
};

MethodOutcome run_method(const std::string& method, const Matrix& X, Index R,
                         const TruncatedSvdOptions& svd_opts,
                         const HuberConfig& huber) {
  SvdFactorization fac;
  if (method == "svd") {
    fac = truncated_svd(X, R, svd_opts);
  } else if (method == "spsvd") {
    fac = spsvd_decompose(X, R, svd_opts).factorization;
  } else if (method == "elsvd") {
    fac = elsvd_decompose(X, R, huber).factorization;
  } else {
    throw ParameterError("unknown method '" + method +
                         "' (expected svd, spsvd, or elsvd)");
  }
  MethodOutcome out;
  out.U = fac.matrix_u();
  out.V = fac.matrix_v();
  out.d_max = fac.singular_values().maxCoeff();
  return out;
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg) {
  validate(cfg.sim);
  if (cfg.reps < 1) throw ParameterError("sweep needs reps >= 1");
  if (cfg.etas.empty()) throw ParameterError("sweep needs at least one eta");
  if (cfg.methods.empty()) throw ParameterError("sweep needs at least one method");
  for (double eta : cfg.etas) {
    if (!std::isfinite(eta) || eta < 0) {
      throw ParameterError("eta values must be finite and non-negative");
    }
  }

  const double d1 = cfg.sim.singular_values[0];
  std::vector<ExperimentRecord> records;
  records.reserve(cfg.methods.size() * cfg.etas.size() *
                  static_cast<std::size_t>(cfg.reps));

  for (int rep = 0; rep < cfg.reps; ++rep) {
    const GeneratedInstance inst = gen_instance(cfg.sim, rep);
    const Subspace left_true(inst.u_true);
    const Subspace right_true(inst.v_true);
    for (double eta : cfg.etas) {
      const Matrix X = inst.contaminated(eta);
      for (const std::string& method : cfg.methods) {
        ExperimentRecord rec;
        rec.method = method;
        rec.eta = eta;
        rec.seed = cfg.sim.seed;
        rec.rep = rep;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const MethodOutcome out =
              run_method(method, X, cfg.sim.rank, cfg.svd, cfg.huber);
          rec.left_angle_deg = degrees(principal_angle(left_true.basis, out.U));
          rec.right_angle_deg =
              degrees(principal_angle(right_true.basis, out.V));
          rec.d1_ratio = out.d_max / d1;
        } catch (const ParameterError&) {
          throw;  // configuration bugs should not be recorded as data
        } catch (const std::exception&) {
          rec.left_angle_deg = kNaN;
          rec.right_angle_deg = kNaN;
          rec.d1_ratio = kNaN;
          rec.failed = true;
        }
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

Vector default_covariance_eigenvalues(Index p) {
  if (p < 1) throw ParameterError("dimension must be positive");
  Vector lambda(p);
  for (Index j = 0; j < p; ++j) {
    lambda[j] = std::ldexp(1.0, static_cast<int>(p - j));
  }
  return lambda;
}

std::vector<AccuracyCell> accuracy_study(const AccuracyStudyConfig& cfg) {
  if (cfg.p < 2) throw ParameterError("study needs p >= 2");
  if (cfg.n_grid.empty()) throw ParameterError("study needs at least one n");
  if (cfg.epsilons.empty()) {
    throw ParameterError("study needs at least one contamination level");
  }
  if (cfg.reps < 1) throw ParameterError("study needs reps >= 1");
  if (cfg.rank < 1 || cfg.rank > cfg.p) {
    throw ParameterError("study rank must be in [1, p]");
  }
  if (!(cfg.outlier_scale > 0) || !std::isfinite(cfg.outlier_scale)) {
    throw ParameterError("outlier scale must be positive and finite");
  }
  Vector lambda = cfg.covariance_eigenvalues.size() == 0
                      ? default_covariance_eigenvalues(cfg.p)
                      : cfg.covariance_eigenvalues;
  if (lambda.size() != cfg.p) {
    throw ParameterError("covariance spectrum must have p entries");
  }
  for (Index j = 0; j < cfg.p; ++j) {
    if (!(lambda[j] > 0) || !std::isfinite(lambda[j])) {
      throw ParameterError("covariance eigenvalues must be positive and finite");
    }
    if (j > 0 && !(lambda[j - 1] > lambda[j])) {
      throw DegenerateInputError(
          "covariance eigenvalues must be strictly decreasing: with repeated "
          "eigenvalues the principal directions are not identifiable");
    }
  }
  for (Index n : cfg.n_grid) {
    if (n < cfg.p) throw ParameterError("study needs n >= p for every n");
  }
  for (double eps : cfg.epsilons) {
    if (!(eps >= 0) || !(eps < 1)) {
      throw ParameterError("contamination levels must lie in [0, 1)");
    }
  }

  const Vector scale = lambda.cwiseSqrt();
  // One fixed outlier direction for the whole study, drawn up front.
  Vector w;
  {
    Philox rng(cfg.seed, kStudyDirectionStream);
    w = gaussian_vector(rng, cfg.p);
    w /= w.norm();
  }
  const Vector outlier_row = cfg.outlier_scale * w;

  std::vector<AccuracyCell> cells;
  cells.reserve(cfg.n_grid.size() * cfg.epsilons.size());
  for (Index n : cfg.n_grid) {
    for (double eps : cfg.epsilons) {
      const Index n_out = static_cast<Index>(
          std::floor(eps * static_cast<double>(n)));
      AccuracyCell cell;
      cell.n = n;
      cell.epsilon = eps;
      cell.reps = cfg.reps;
      cell.mean_error.assign(static_cast<std::size_t>(cfg.rank), 0.0);
      for (int rep = 0; rep < cfg.reps; ++rep) {
        Philox rng(cfg.seed,
                   static_cast<std::uint64_t>(rep) * kRepStreamStride +
                       kNoiseStream);
        Matrix X = gaussian_matrix(rng, n, cfg.p);
        X = X * scale.asDiagonal();  // rows ~ N(0, diag(lambda))
        for (Index i = 0; i < n_out; ++i) {
          X.row(n - 1 - i) = outlier_row.transpose();
        }
        const SvdFactorization fac =
            spsvd_decompose(X, cfg.rank, TruncatedSvdOptions{}).factorization;
        for (Index r = 0; r < cfg.rank; ++r) {
          const Vector& v = fac.triples[static_cast<std::size_t>(r)].v;
          Vector e = Vector::Zero(cfg.p);
          e[r] = 1.0;
          const double err = std::min((v - e).norm(), (v + e).norm());
          cell.mean_error[static_cast<std::size_t>(r)] +=
              err / static_cast<double>(cfg.reps);
        }
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace spsvd
