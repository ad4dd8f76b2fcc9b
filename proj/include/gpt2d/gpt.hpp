#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gpt2d/np_operator.hpp"

namespace gpt2d {

/// Complex contracted polarization tensors up to the given order: n1(i, j)
/// and n2(i, j) hold the subscript-(i+1, j+1) entries. For forward-computed
/// tensors n1 is symmetric and n2 Hermitian.
struct GptMatrix {
  int order = 0;
  Eigen::MatrixXcd n1, n2;
  double lambda = 0.5;
};

/// Forward computation: for each m solves the two densities with fluxes
/// d(z^m)/dnu and d(conj(z)^m)/dnu (analytic gradients m z^{m-1} dotted with
/// the normal) and integrates them against the monomials z^n.
inline GptMatrix gpt_forward(const NpDiscretization& disc, const Contrast& contrast,
                             int order) {
  const BoundaryFrame& fr = disc.frame;
  if (order < 1) throw std::invalid_argument("gpt_forward: order >= 1 required");
  if (fr.n < 8 * order)
    throw std::invalid_argument("gpt_forward: need at least 8 quadrature nodes per order");

  const int n = fr.n;
  NpSolver solver(disc, contrast);

  // wpow(j, k) = z_j^{k+1} w_j;  pow1(j, k) = z_j^k for the flux factors.
  Eigen::MatrixXcd wpow(n, order), pow0(n, order);
  for (int j = 0; j < n; ++j) {
    cplx p = 1.0;
    for (int k = 0; k < order; ++k) {
      pow0(j, k) = p;
      p *= fr.points[j];
      wpow(j, k) = p * fr.weight(j);
    }
  }

  GptMatrix out{order, Eigen::MatrixXcd(order, order), Eigen::MatrixXcd(order, order),
                contrast.lambda};
  Eigen::VectorXcd rhs(n);
  for (int m = 1; m <= order; ++m) {
    for (int j = 0; j < n; ++j)
      rhs(j) = double(m) * pow0(j, m - 1) * fr.normal[j];
    const Eigen::VectorXcd phi = solver.solve(rhs);
    out.n1.row(m - 1) = (wpow.transpose() * phi).transpose();
    // Real operator: the density for the conjugated flux is conj(phi).
    out.n2.row(m - 1) = (wpow.transpose() * phi.conjugate()).transpose();
  }
  return out;
}

inline GptMatrix gpt_forward(const BoundaryFrame& frame, const Contrast& contrast,
                             int order) {
  return gpt_forward(assemble(frame), contrast, order);
}

/// Far-field perturbation u - H at z from the multipole expansion of the
/// tensors; alpha[i] is the coefficient of z^{i+1} in
/// H = sum_m (alpha_m z^m + conj(alpha_m z^m)).
inline cplx multipole_field(const GptMatrix& gpt, const std::vector<cplx>& alpha, cplx z) {
  const int m_max = int(alpha.size());
  if (m_max > gpt.order)
    throw std::invalid_argument("multipole_field: more coefficients than tensor order");
  const cplx iz = 1.0 / z;
  cplx zn = 1.0;
  cplx total = 0.0;
  for (int n = 1; n <= gpt.order; ++n) {
    zn *= iz;
    cplx s1 = 0.0, s2 = 0.0;
    for (int m = 1; m <= m_max; ++m) {
      const cplx a = alpha[m - 1];
      s1 += a * gpt.n1(m - 1, n - 1) + std::conj(a) * gpt.n2(m - 1, n - 1);
      s2 += std::conj(a * gpt.n1(m - 1, n - 1)) + a * std::conj(gpt.n2(m - 1, n - 1));
    }
    total -= (s1 * zn + s2 * std::conj(zn)) / (4.0 * pi * double(n));
  }
  return total;
}

enum class NoiseMode { absolute, relative };

/// Noise variance 10^(-SNR/10) of the additive Gaussian model.
inline double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

/// Adds independent Gaussian noise to both parts of every entry and restores
/// the symmetry classes by averaging with the transpose (n1) and the
/// conjugate transpose (n2). Absolute mode (the default) adds variance Var to
/// every entry; relative mode scales the variance per entry as Var * |entry|^2,
/// which at SNR = 5 already means 56% noise on every entry and makes the
/// first-order recoveries collapse. Deterministic per seed.
inline GptMatrix add_noise(const GptMatrix& gpt, double snr_db, std::uint64_t seed,
                           NoiseMode mode = NoiseMode::absolute) {
  if (std::isinf(snr_db)) return gpt;
  const double sd_base = std::sqrt(noise_variance(snr_db));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  GptMatrix out = gpt;
  auto perturb = [&](Eigen::MatrixXcd& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        const double sd =
            mode == NoiseMode::relative ? sd_base * std::abs(m(i, j)) : sd_base;
        m(i, j) += cplx(gauss(rng) * sd, gauss(rng) * sd);
      }
  };
  perturb(out.n1);
  out.n1 = ((out.n1 + out.n1.transpose()) / 2.0).eval();
  perturb(out.n2);
  out.n2 = ((out.n2 + out.n2.adjoint()) / 2.0).eval();
  return out;
}

}  // namespace gpt2d
