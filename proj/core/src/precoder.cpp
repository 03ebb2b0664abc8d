// SPDX-License-Identifier: Apache-2.0
#include "rcilab/precoder.hpp"

#include <cmath>
#include <string>

#include "rcilab/errors.hpp"

namespace rcilab {

double optimal_regularizer(double beta, double rho) {
  if (!(beta > 0.0)) throw ValidationError("optimal_regularizer: beta must be > 0");
  if (!(rho > 0.0)) throw ValidationError("optimal_regularizer: rho must be > 0");
  const double rad = beta * beta * (rho * rho + rho + 1.0)
                     - beta * (2.0 * rho * (rho - 1.0)) + rho * rho;
  const double num = -2.0 * rho * rho * (1.0 - beta) * (1.0 - beta)
                     + 6.0 * rho * beta + 2.0 * beta * beta
                     - 2.0 * (beta * (rho + 1.0) - rho) * std::sqrt(rad);
  const double den = 6.0 * rho * rho * (beta + 2.0) + 6.0 * rho * beta;
  return num / den;
}

Precoder build_rci(const Eigen::MatrixXcd& Hhat, double xi) {
  const Eigen::Index K = Hhat.rows();
  const Eigen::Index M = Hhat.cols();
  if (K < 1 || M < 1) throw ValidationError("build_rci: empty channel matrix");
  if (Hhat.norm() == 0.0)
    throw DegenerateInputError("build_rci: Hhat is the zero matrix (tau = 1?), precoder undefined");

  const double shift = static_cast<double>(M) * xi;
  Eigen::MatrixXcd Wu;  // unnormalized (Hhat^H Hhat + M xi I)^-1 Hhat^H, M x K

  // (Hhat^H Hhat + s I)^-1 Hhat^H == Hhat^H (Hhat Hhat^H + s I)^-1:
  // pick the smaller Gram matrix.
  if (K <= M) {
    Eigen::MatrixXcd A = Hhat * Hhat.adjoint();
    A.diagonal().array() += shift;
    if (xi > 0.0) {
      // Hermitian positive definite for xi > 0.
      Eigen::LLT<Eigen::MatrixXcd> llt(A);
      if (llt.info() != Eigen::Success)
        throw SingularMatrixError("build_rci: Cholesky factorization failed");
      Wu = llt.solve(Hhat).adjoint();
    } else {
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
      if (!lu.isInvertible())
        throw SingularMatrixError("build_rci: Hhat Hhat^H + M xi I is singular (xi = "
                                  + std::to_string(xi) + ")");
      Wu = lu.solve(Hhat).adjoint();
    }
  } else {
    Eigen::MatrixXcd A = Hhat.adjoint() * Hhat;
    A.diagonal().array() += shift;
    if (xi > 0.0) {
      Eigen::LLT<Eigen::MatrixXcd> llt(A);
      if (llt.info() != Eigen::Success)
        throw SingularMatrixError("build_rci: Cholesky factorization failed");
      Wu = llt.solve(Hhat.adjoint());
    } else {
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
      if (!lu.isInvertible())
        throw SingularMatrixError("build_rci: Hhat^H Hhat + M xi I is singular (xi = "
                                  + std::to_string(xi) + ")");
      Wu = lu.solve(Hhat.adjoint());
    }
  }

  // gamma = tr{Hhat (.)^-2 Hhat^H} = ||(.)^-1 Hhat^H||_F^2.
  const double gamma = Wu.squaredNorm();
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DegenerateInputError("build_rci: power normalization gamma = "
                               + std::to_string(gamma));

  Precoder prec;
  prec.W = Wu / std::sqrt(gamma);
  prec.gamma = gamma;
  prec.xi = xi;
  return prec;
}

namespace {

void check_user_index(const Eigen::MatrixXcd& H, const Precoder& prec, int k) {
  if (H.cols() != prec.W.rows())
    throw ValidationError("user SINR: channel and precoder dimensions disagree");
  if (H.rows() != prec.W.cols())
    throw ValidationError("user SINR: K mismatch between H and W");
  if (k < 0 || k >= H.rows())
    throw ValidationError("user SINR: index k = " + std::to_string(k)
                          + " out of range [0," + std::to_string(H.rows()) + ")");
}

}  // namespace

double sinr_intended(const Eigen::MatrixXcd& H, const Precoder& prec,
                     double rho, int k) {
  check_user_index(H, prec, k);
  const Eigen::RowVectorXcd row = H.row(k) * prec.W;  // row_j = h_k^H w_j
  const double sig = std::norm(row(k));
  const double interf = row.squaredNorm() - sig;
  return rho * sig / (1.0 + rho * interf);
}

double sinr_eavesdropper(const Eigen::MatrixXcd& H, const Precoder& prec,
                         double rho, int k) {
  check_user_index(H, prec, k);
  const Eigen::VectorXcd col = H * prec.W.col(k);  // col_j = h_j^H w_k
  return rho * (col.squaredNorm() - std::norm(col(k)));
}

RatePoint secrecy_sum_rate(const Eigen::MatrixXcd& H, const Precoder& prec,
                           double rho) {
  check_user_index(H, prec, 0);
  const Eigen::Index K = H.rows();
  const Eigen::MatrixXcd G = H * prec.W;  // G(k, j) = h_k^H w_j

  RatePoint rp;
  rp.sinr_intended.resize(K);
  rp.sinr_eve.resize(K);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < K; ++k) {
    const double sig = std::norm(G(k, k));
    const double interf = G.row(k).squaredNorm() - sig;
    const double leak = G.col(k).squaredNorm() - sig;
    const double sinr_k = rho * sig / (1.0 + rho * interf);
    const double sinr_e = rho * leak;
    rp.sinr_intended(k) = sinr_k;
    rp.sinr_eve(k) = sinr_e;
    const double diff = std::log2(1.0 + sinr_k) - std::log2(1.0 + sinr_e);
    if (diff > 0.0) sum += diff;
  }
  rp.secrecy_sum_rate = sum;
  return rp;
}

}  // namespace rcilab
