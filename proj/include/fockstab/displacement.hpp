#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "fockstab/fock.hpp"

namespace fockstab {

/// Spectral factorization of the truncated displacement generator
/// G = adag - a, cached once per truncation so that D_alpha = exp(alpha G)
/// can be applied per alpha in O(d^2).
///
/// G is real antisymmetric and tridiagonal. Conjugating i*G by the diagonal
/// phase S = diag(i^n) yields a real symmetric tridiagonal matrix T with
/// zero diagonal and off-diagonal entries sqrt(n+1), so
///
///   D_alpha = S U exp(-i alpha Lambda) U^T S^{-1},   T = U Lambda U^T.
///
/// The truncated G stays exactly antisymmetric, hence D_alpha is exactly
/// orthogonal on the truncated space and the chain's branch probabilities
/// see no truncation leakage.
class DisplacementTable {
 public:
  static DisplacementTable build(int n_max, double alpha_limit) {
    if (n_max < 1)
      throw std::invalid_argument("DisplacementTable: n_max must be >= 1");
    if (alpha_limit < 0.0)
      throw std::invalid_argument("DisplacementTable: negative alpha_limit");
    const int d = n_max + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n + 1 < d; ++n) {
      const double b = std::sqrt(static_cast<double>(n + 1));
      t(n, n + 1) = b;
      t(n + 1, n) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("DisplacementTable: eigendecomposition failed");
    DisplacementTable table;
    table.n_max_ = n_max;
    table.alpha_limit_ = alpha_limit;
    table.eigvecs_ = solver.eigenvectors();
    table.eigvals_ = solver.eigenvalues();
    return table;
  }

  int n_max() const { return n_max_; }
  int dim() const { return n_max_ + 1; }
  double alpha_limit() const { return alpha_limit_; }

  /// D_alpha |psi>, renormalized. D_0 is the identity and short-circuits.
  /// The pre-normalization norm drift |norm - 1| is reported through
  /// `norm_drift` when non-null; it is orthogonality roundoff only.
  StateVector apply(double alpha, const StateVector& psi,
                    double* norm_drift = nullptr) const {
    if (psi.dim() != dim())
      throw std::invalid_argument("DisplacementTable: dimension mismatch");
    if (std::abs(alpha) > alpha_limit_)
      throw std::domain_error(
          "DisplacementTable: |alpha| exceeds the validated limit");
    if (alpha == 0.0) {
      if (norm_drift) *norm_drift = 0.0;
      return psi;
    }
    StateVector out = raw_apply(alpha, psi);
    const double nrm = out.renormalize();
    if (norm_drift) *norm_drift = std::abs(nrm - 1.0);
    return out;
  }

  /// Dense D_alpha in the number basis (diagnostics and oracle tests).
  /// Goes through the spectral factorization without the alpha = 0
  /// short-circuit and without renormalization; the imaginary residual of
  /// the reconstruction is roundoff and is discarded.
  Eigen::MatrixXd matrix(double alpha) const {
    const int d = dim();
    const Eigen::VectorXd phase_re = (alpha * eigvals_.array()).cos();
    const Eigen::VectorXd phase_im = (-alpha * eigvals_.array()).sin();
    Eigen::MatrixXd out(d, d);
    StateVector basis(d);
    for (int j = 0; j < d; ++j) {
      basis.amplitudes.assign(d, Complex{0.0, 0.0});
      basis.amplitudes[j] = Complex{1.0, 0.0};
      const StateVector col = raw_apply(alpha, basis);
      for (int i = 0; i < d; ++i) out(i, j) = col.amplitudes[i].real();
    }
    return out;
  }

 private:
  StateVector raw_apply(double alpha, const StateVector& psi) const {
    const int d = dim();
    Eigen::VectorXd wr(d), wi(d);
    for (int n = 0; n < d; ++n) {
      // w = S^{-1} psi, S = diag(i^n): multiply entry n by (-i)^n.
      const double a = psi.amplitudes[n].real();
      const double b = psi.amplitudes[n].imag();
      switch (n & 3) {
        case 0: wr[n] = a;  wi[n] = b;  break;
        case 1: wr[n] = b;  wi[n] = -a; break;
        case 2: wr[n] = -a; wi[n] = -b; break;
        default: wr[n] = -b; wi[n] = a; break;
      }
    }
    Eigen::VectorXd yr = eigvecs_.transpose() * wr;
    Eigen::VectorXd yi = eigvecs_.transpose() * wi;
    for (int k = 0; k < d; ++k) {
      // multiply by exp(-i alpha lambda_k)
      const double c = std::cos(alpha * eigvals_[k]);
      const double s = std::sin(alpha * eigvals_[k]);
      const double re = yr[k] * c + yi[k] * s;
      const double im = yi[k] * c - yr[k] * s;
      yr[k] = re;
      yi[k] = im;
    }
    const Eigen::VectorXd zr = eigvecs_ * yr;
    const Eigen::VectorXd zi = eigvecs_ * yi;
    StateVector out(d);
    for (int n = 0; n < d; ++n) {
      // multiply entry n by i^n to undo the similarity transform
      switch (n & 3) {
        case 0: out.amplitudes[n] = Complex{zr[n], zi[n]}; break;
        case 1: out.amplitudes[n] = Complex{-zi[n], zr[n]}; break;
        case 2: out.amplitudes[n] = Complex{-zr[n], -zi[n]}; break;
        default: out.amplitudes[n] = Complex{zi[n], -zr[n]}; break;
      }
    }
    return out;
  }

  int n_max_ = 0;
  double alpha_limit_ = 0.0;
  Eigen::MatrixXd eigvecs_;
  Eigen::VectorXd eigvals_;
};

/// Untruncated matrix element <m|D_alpha|n> for real alpha, by the closed
/// form sqrt(n!/m!) alpha^{m-n} exp(-alpha^2/2) L_n^{(m-n)}(alpha^2) for
/// m >= n, with the associated Laguerre polynomial evaluated by its stable
/// three-term recurrence. For m < n, <m|D_alpha|n> = (-1)^{m-n} <n|D_alpha|m>.
/// Independent of the spectral route above; used as its exactness oracle.
inline double displacement_oracle_entry(int m, int n, double alpha) {
  if (m < 0 || n < 0)
    throw std::out_of_range("displacement_oracle_entry: negative index");
  if (m < n) {
    const double sign = ((n - m) % 2 == 0) ? 1.0 : -1.0;
    return sign * displacement_oracle_entry(n, m, alpha);
  }
  const int k = m - n;
  const double x = alpha * alpha;
  double prefactor = std::exp(-x / 2.0);
  for (int j = n + 1; j <= m; ++j)
    prefactor *= alpha / std::sqrt(static_cast<double>(j));
  if (n == 0) return prefactor;
  double l_prev = 1.0;           // L_0^{(k)}
  double l_cur = 1.0 + k - x;    // L_1^{(k)}
  for (int j = 2; j <= n; ++j) {
    const double l_next =
        ((2.0 * j - 1.0 + k - x) * l_cur - (j - 1.0 + k) * l_prev) / j;
    l_prev = l_cur;
    l_cur = l_next;
  }
  return prefactor * l_cur;
}

}  // namespace fockstab
