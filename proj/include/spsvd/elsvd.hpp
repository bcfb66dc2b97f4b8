#pragma once

#include <vector>

#include "spsvd/truncated_svd.hpp"
#include "spsvd/types.hpp"

namespace spsvd {

struct HuberConfig {
  double delta = 1.345;   // Huber transition point
  int max_iters = 100;    // IRLS sweeps per component
  double conv_tol = 1e-8; // relative objective change declaring convergence
};

struct ElsvdResult {
  SvdFactorization factorization;  // d_r >= 0, sign absorbed into u_r
  bool converged = false;          // every component met conv_tol
  std::vector<int> iterations;     // IRLS sweeps used per component
  // Huber objective per component: entry 0 is the warm start, then one
  // value after each IRLS sweep. Non-increasing by construction.
  std::vector<std::vector<double>> objective_trace;
};

// Rank-R robust decomposition under the Huber loss: components are fit one
// at a time to the deflated residual by iteratively reweighted alternating
// least squares, warm-started from the residual's leading SVD triple and
// Gram-Schmidt-orthogonalized against earlier components. Non-convergence
// is not an error; the best iterate is returned with converged = false.
// As delta grows past the data range the loss is quadratic and the result
// matches the standard truncated SVD.
ElsvdResult elsvd_decompose(const Matrix& X, Index R,
                            const HuberConfig& cfg = {});

}  // namespace spsvd
