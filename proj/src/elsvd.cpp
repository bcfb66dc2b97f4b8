#include "spsvd/elsvd.hpp"

#include <cmath>
#include <string>

#include "spsvd/errors.hpp"
#include "spsvd/rng.hpp"
#include "spsvd/summation.hpp"

namespace spsvd {
namespace {

double huber_rho(double z, double delta) {
  const double a = std::abs(z);
  if (a <= delta) return 0.5 * z * z;
  return delta * (a - 0.5 * delta);
}

double huber_weight(double z, double delta) {
  const double a = std::abs(z);
  return (a <= delta) ? 1.0 : delta / a;
}

double huber_objective(const Matrix& M, const Vector& a, const Vector& b,
                       double delta) {
  KahanSum acc;
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i)
      acc.add(huber_rho(M(i, j) - a[i] * b[j], delta));
  return acc.value();
}

// Approximate leading triple of M by plain power iteration; used only as
// the IRLS warm start, so it never throws on slow spectra.
void warm_start(const Matrix& M, Vector& a, Vector& b) {
  Philox rng(0xE15Du, 0);
  Vector v = gaussian_vector(rng, M.cols());
  v.normalize();
  for (int it = 0; it < 40; ++it) {
    Vector w = M.transpose() * (M * v);
    const double nw = w.norm();
    if (nw == 0) break;  // M is (numerically) zero; keep the start vector
    v = w / nw;
  }
  b = v;
  a = M * v;  // carries the scale d
}

// One IRLS sweep: exact weighted least-squares update of a then b, each
// under weights refreshed at the current iterate. Both half-steps minimize
// a quadratic majorant of the Huber objective, so the objective cannot
// increase across a sweep.
void irls_sweep(const Matrix& M, Vector& a, Vector& b, double delta) {
  const Index n = M.rows();
  const Index p = M.cols();
  for (Index i = 0; i < n; ++i) {
    double num = 0.0;
    double den = 0.0;
    for (Index j = 0; j < p; ++j) {
      const double w = huber_weight(M(i, j) - a[i] * b[j], delta);
      num += w * M(i, j) * b[j];
      den += w * b[j] * b[j];
    }
    a[i] = (den > 0) ? num / den : 0.0;
  }
  for (Index j = 0; j < p; ++j) {
    double num = 0.0;
    double den = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double w = huber_weight(M(i, j) - a[i] * b[j], delta);
      num += w * M(i, j) * a[i];
      den += w * a[i] * a[i];
    }
    b[j] = (den > 0) ? num / den : 0.0;
  }
  const double s = b.norm();
  if (s > 0) {  // fix the scale split; leaves the product a b^T unchanged
    b /= s;
    a *= s;
  }
}

// 1-D IRLS for the scale of a fixed rank-one direction.
double refit_scale(const Matrix& M, const Vector& u, const Vector& v,
                   double delta, double d0) {
  double d = d0;
  for (int it = 0; it < 20; ++it) {
    double num = 0.0;
    double den = 0.0;
    for (Index j = 0; j < M.cols(); ++j)
      for (Index i = 0; i < M.rows(); ++i) {
        const double uv = u[i] * v[j];
        const double w = huber_weight(M(i, j) - d * uv, delta);
        num += w * M(i, j) * uv;
        den += w * uv * uv;
      }
    if (!(den > 0)) return 0.0;
    const double next = num / den;
    const bool settled = std::abs(next - d) <= 1e-12 * std::max(1.0, std::abs(d));
    d = next;
    if (settled) break;
  }
  return d;
}

// Standard basis vector with the largest remainder after projecting out the
// prior components on the requested side, normalized.
Vector complete_direction(const std::vector<SvdTriple>& prior, Index dim,
                          bool left_side) {
  Vector best;
  double best_norm = -1.0;
  for (Index k = 0; k < dim; ++k) {
    Vector e = Vector::Unit(dim, k);
    for (const auto& t : prior) {
      const Vector& w = left_side ? t.u : t.v;
      e -= w.dot(e) * w;
    }
    const double nrm = e.norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      best = e;
    }
  }
  best.normalize();
  return best;
}

}  // namespace

ElsvdResult elsvd_decompose(const Matrix& X, Index R, const HuberConfig& cfg) {
  const Index minDim = std::min(X.rows(), X.cols());
  if (X.rows() == 0 || X.cols() == 0)
    throw ParameterError("elsvd_decompose: empty matrix");
  if (R < 1 || R > minDim)
    throw ParameterError("elsvd_decompose: rank " + std::to_string(R) +
                         " out of range [1, " + std::to_string(minDim) + "]");
  if (!(cfg.delta > 0))
    throw ParameterError("elsvd_decompose: delta must be > 0");
  if (cfg.max_iters < 1)
    throw ParameterError("elsvd_decompose: max_iters must be >= 1");
  if (!(cfg.conv_tol > 0))
    throw ParameterError("elsvd_decompose: conv_tol must be > 0");
  if (!X.allFinite())
    throw DegenerateInputError("elsvd_decompose: non-finite entries");

  ElsvdResult res;
  res.converged = true;
  Matrix M = X;
  for (Index r = 0; r < R; ++r) {
    Vector a;
    Vector b;
    warm_start(M, a, b);

    std::vector<double> trace;
    trace.push_back(huber_objective(M, a, b, cfg.delta));
    bool component_converged = false;
    int used = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
      irls_sweep(M, a, b, cfg.delta);
      const double obj = huber_objective(M, a, b, cfg.delta);
      trace.push_back(obj);
      used = it;
      const double prev = trace[trace.size() - 2];
      if (std::abs(prev - obj) <= cfg.conv_tol * std::max(1.0, std::abs(prev))) {
        component_converged = true;
        break;
      }
    }

    // Re-impose orthogonality against the components already extracted,
    // then refit the scale along the corrected direction.
    Vector u = a;
    Vector v = b;
    for (int pass = 0; pass < 2; ++pass) {  // reorthogonalize once
      for (const auto& prev : res.factorization.triples) {
        u -= prev.u.dot(u) * prev.u;
        v -= prev.v.dot(v) * prev.v;
      }
    }
    const double nu = u.norm();
    const double nv = v.norm();
    double d = 0.0;
    if (nu > 0 && nv > 0) {
      u /= nu;
      v /= nv;
      d = refit_scale(M, u, v, cfg.delta, u.dot(M * v));
    } else {
      // The iterate collapsed into the span of earlier components; emit a
      // zero-scale triple with a deterministic direction orthogonal to them.
      u = (nu > 0) ? Vector(u / nu)
                   : complete_direction(res.factorization.triples, M.rows(), true);
      v = (nv > 0) ? Vector(v / nv)
                   : complete_direction(res.factorization.triples, M.cols(), false);
    }
    if (d < 0) {
      d = -d;
      u = -u;
    }

    M.noalias() -= d * u * v.transpose();
    res.factorization.triples.push_back(SvdTriple{d, std::move(u), std::move(v)});
    res.iterations.push_back(used);
    res.objective_trace.push_back(std::move(trace));
    if (!component_converged) res.converged = false;
  }
  return res;
}

}  // namespace spsvd
