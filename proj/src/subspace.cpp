#include "spsvd/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "spsvd/errors.hpp"

namespace spsvd {

Subspace::Subspace(Matrix b) : basis(std::move(b)) {
  if (basis.cols() < 1 || basis.cols() > basis.rows())
    throw ParameterError("Subspace: need 1 <= dim <= ambient dim");
  const Matrix gram = basis.transpose() * basis;
  const double defect =
      (gram - Matrix::Identity(basis.cols(), basis.cols())).norm();
  if (defect > 1e-10)
    throw ParameterError("Subspace: basis is not orthonormal (defect " +
                         std::to_string(defect) + ")");
}

double principal_angle(const Subspace& V, const Subspace& W) {
  if (V.ambient_dim() != W.ambient_dim())
    throw ParameterError("principal_angle: ambient dimensions differ");
  if (V.dim() != W.dim())
    throw ParameterError("principal_angle: subspace dimensions differ");
  const Matrix M = V.basis.transpose() * W.basis;
  Eigen::JacobiSVD<Matrix> svd(M);
  const double c =
      std::clamp(svd.singularValues()[M.rows() - 1], 0.0, 1.0);
  return std::acos(c);
}

double principal_angle(const Matrix& V, const Matrix& W) {
  return principal_angle(Subspace(V), Subspace(W));
}

}  // namespace spsvd
