#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gpt2d/boundary_frame.hpp"
#include "gpt2d/contrast.hpp"

namespace gpt2d {

/// Nystrom discretization of the adjoint Neumann-Poincare operator
///   K*[phi](x) = (1/2pi) p.v. int <x - y, nu_x> / |x - y|^2 phi(y) dsigma(y)
/// on a frame. Off-diagonal entry (i, j) is the smooth kernel at (x_i, y_j)
/// times weight_j; the diagonal carries the continuous limit kappa_i / (4 pi)
/// of the kernel on a C^2 curve, which keeps plain trapezoidal Nystrom
/// spectrally accurate.
struct NpDiscretization {
  BoundaryFrame frame;
  Eigen::MatrixXd kstar;
  Eigen::VectorXd weights;
};

inline NpDiscretization assemble(const BoundaryFrame& frame) {
  const int n = frame.n;
  NpDiscretization disc{frame, Eigen::MatrixXd(n, n), Eigen::VectorXd(n)};
  for (int j = 0; j < n; ++j) disc.weights(j) = frame.weight(j);
  const double scale = frame.arclength() / double(n);
  for (int i = 0; i < n; ++i) {
    const cplx xi = frame.points[i];
    const cplx nui = frame.normal[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) {
        disc.kstar(i, i) = frame.curvature[i] / (4.0 * pi) * disc.weights(i);
        continue;
      }
      const cplx r = xi - frame.points[j];
      const double r2 = std::norm(r);
      if (r2 < 1e-24 * scale * scale)
        throw ShapeError("assemble: coincident boundary samples");
      const double dot = r.real() * nui.real() + r.imag() * nui.imag();
      disc.kstar(i, j) = dot / (2.0 * pi * r2) * disc.weights(j);
    }
  }
  return disc;
}

/// Factorized resolvent of (lambda I - K*). At |lambda| = 1/2 the operator is
/// invertible only on the zero-weighted-mean subspace and the system is
/// solved in bordered form with one Lagrange constraint row/column; otherwise
/// a plain LU factorization is used.
class NpSolver {
 public:
  NpSolver(const NpDiscretization& disc, const Contrast& contrast)
      : n_(disc.frame.n), bordered_(std::abs(contrast.lambda) == 0.5) {
    if (std::abs(contrast.lambda) < 0.5)
      throw MethodError("NpSolver: |lambda| >= 1/2 required");
    Eigen::MatrixXd a =
        contrast.lambda * Eigen::MatrixXd::Identity(n_, n_) - disc.kstar;
    if (!bordered_) {
      lu_.compute(a);
    } else {
      Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_ + 1, n_ + 1);
      b.topLeftCorner(n_, n_) = a;
      b.col(n_).head(n_).setOnes();
      b.row(n_).head(n_) = disc.weights.transpose();
      lu_.compute(b);
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    if (!bordered_) return lu_.solve(rhs);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n_ + 1);
    b.head(n_) = rhs;
    return lu_.solve(b).head(n_);
  }

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const {
    Eigen::VectorXd re = solve(Eigen::VectorXd(rhs.real()));
    Eigen::VectorXd im = solve(Eigen::VectorXd(rhs.imag()));
    return re + cplx(0.0, 1.0) * im;
  }

 private:
  int n_;
  bool bordered_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Solves (lambda I - K*) phi = rhs. The right-hand side must have zero
/// weighted mean (it is the flux of a harmonic function over a closed curve).
inline Eigen::VectorXd solve_density(const NpDiscretization& disc, const Contrast& contrast,
                                     const Eigen::VectorXd& rhs) {
  if (rhs.size() != disc.frame.n)
    throw std::invalid_argument("solve_density: rhs size mismatch");
  const double total = disc.weights.sum();
  const double rms = std::sqrt(disc.weights.dot(rhs.cwiseAbs2()) / total);
  if (rms == 0.0) return Eigen::VectorXd::Zero(rhs.size());
  const double mean = disc.weights.dot(rhs) / total;
  if (std::abs(mean) > 1e-10 * rms)
    throw std::invalid_argument("solve_density: rhs has nonzero weighted mean");
  return NpSolver(disc, contrast).solve(rhs);
}

/// Single-layer potential (1/2pi) int ln|z - y| phi(y) dsigma(y) by the
/// frame's trapezoidal rule; z must stay off the boundary.
inline double single_layer(const BoundaryFrame& frame, const Eigen::VectorXd& density,
                           cplx z) {
  const double scale = frame.arclength();
  double sum = 0.0;
  for (int j = 0; j < frame.n; ++j) {
    const double d = std::abs(z - frame.points[j]);
    if (d < 1e-12 * scale)
      throw std::domain_error("single_layer: evaluation point on the boundary");
    sum += std::log(d) * density(j) * frame.weight(j);
  }
  return sum / (2.0 * pi);
}

inline cplx single_layer(const BoundaryFrame& frame, const Eigen::VectorXcd& density,
                         cplx z) {
  return {single_layer(frame, Eigen::VectorXd(density.real()), z),
          single_layer(frame, Eigen::VectorXd(density.imag()), z)};
}

}  // namespace gpt2d
