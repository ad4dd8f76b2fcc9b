#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gpt2d/faber.hpp"
#include "gpt2d/gpt.hpp"
#include "gpt2d/grunsky.hpp"

namespace gpt2d {

/// Polarization tensors in the Faber basis of basis_map. For an ellipse
/// evaluated in its own basis both matrices are diagonal.
struct FptMatrix {
  int order = 0;
  Eigen::MatrixXcd f1, f2;
  double lambda = 0.5;
  ExteriorMap basis_map;
  /// Relative change of the top block when the finite section grows; filled
  /// by fpt_analytic as a truncation diagnostic.
  double tail_sensitivity = 0.0;
};

/// Finite sections of the resolvent expansion matrices
///   A = 8 lambda G^{2N} (4 lambda^2 I - G^{-2N} C G^{-2N} conj(C))^{-1},
///   B = 4 C (4 lambda^2 I - G^{-2N} conj(C) G^{-2N} C)^{-1},
/// where G^{2N} = diag(gamma^{2k}). They expand the resolvent applied to the
/// oscillatory density basis:
///   (lambda I - K*)^{-1}[zeta_m]
///     = (1/2) sum_k sqrt(k/m) gamma^{-(m+k)} (a_mk zeta_k + b_mk conj(zeta_k)).
struct SeriesSolver {
  int order = 0;
  double gamma = 1.0;
  Eigen::MatrixXcd a, b;
};

inline SeriesSolver series_solver(const ExteriorMap& map, const Contrast& contrast,
                                  int k_tr) {
  if (k_tr < 1) throw std::invalid_argument("series_solver: order >= 1 required");
  const double lam = contrast.lambda;
  const GrunskyMatrix gm = grunsky(map, k_tr);
  Eigen::VectorXd g2(k_tr), gm2(k_tr);
  for (int k = 1; k <= k_tr; ++k) {
    g2(k - 1) = std::pow(map.gamma, 2.0 * k);
    gm2(k - 1) = 1.0 / g2(k - 1);
  }
  const Eigen::MatrixXcd four_l2 =
      4.0 * lam * lam * Eigen::MatrixXcd::Identity(k_tr, k_tr);
  const Eigen::MatrixXcd qa =
      four_l2 - gm2.asDiagonal() * gm.c * gm2.asDiagonal() * gm.c.conjugate();
  const Eigen::MatrixXcd qb =
      four_l2 - gm2.asDiagonal() * gm.c.conjugate() * gm2.asDiagonal() * gm.c;
  SeriesSolver out{k_tr, map.gamma, {}, {}};
  out.a = 8.0 * lam * g2.asDiagonal() *
          qa.partialPivLu().solve(Eigen::MatrixXcd::Identity(k_tr, k_tr));
  out.b = 4.0 * gm.c * qb.partialPivLu().solve(Eigen::MatrixXcd::Identity(k_tr, k_tr));
  return out;
}

inline int default_truncation(int order) { return std::max(4 * order, order + 16); }

namespace detail {

inline std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> fpt_section(const ExteriorMap& map,
                                                                 double lam, int order,
                                                                 int k_tr) {
  const GrunskyMatrix gm = grunsky(map, k_tr);
  if (grunsky_norm(gm) >= 2.0 * std::abs(lam))
    throw MethodError("fpt_analytic: finite section ill-conditioned (|G| >= 2|lambda|)");
  Eigen::VectorXd gm2(k_tr);
  for (int k = 1; k <= k_tr; ++k) gm2(k - 1) = std::pow(map.gamma, -2.0 * k);
  const Eigen::MatrixXcd q =
      4.0 * lam * lam * Eigen::MatrixXcd::Identity(k_tr, k_tr) -
      gm2.asDiagonal() * gm.c.conjugate() * gm2.asDiagonal() * gm.c;
  const Eigen::MatrixXcd qinv =
      q.partialPivLu().solve(Eigen::MatrixXcd::Identity(k_tr, k_tr));
  const double defect = 1.0 - 4.0 * lam * lam;
  Eigen::MatrixXcd f1(order, order), f2(order, order);
  const Eigen::MatrixXcd cq = gm.c * qinv;
  for (int m = 1; m <= order; ++m) {
    const double g2m = std::pow(map.gamma, 2.0 * m);
    for (int k = 1; k <= order; ++k) {
      const cplx c1 = gm.c(m - 1, k - 1) + defect * cq(m - 1, k - 1);
      f1(m - 1, k - 1) = 4.0 * pi * double(k) * c1;
      const cplx c2 = (m == k ? 1.0 : 0.0) + defect * qinv(m - 1, k - 1);
      f2(m - 1, k - 1) = 8.0 * pi * double(k) * lam * g2m * c2;
    }
  }
  return {std::move(f1), std::move(f2)};
}

}  // namespace detail

/// Closed-form tensors from the map's Grunsky coefficients with finite-section
/// inversion at truncation k_tr (defaults to max(4M, M+16)). The returned
/// block is checked against a grown section and the relative change stored in
/// tail_sensitivity.
inline FptMatrix fpt_analytic(const ExteriorMap& map, const Contrast& contrast, int order,
                              int k_tr = 0) {
  if (order < 1) throw std::invalid_argument("fpt_analytic: order >= 1 required");
  if (k_tr <= 0) k_tr = default_truncation(order);
  if (k_tr < order) throw std::invalid_argument("fpt_analytic: truncation below order");
  const double lam = contrast.lambda;
  auto [f1, f2] = detail::fpt_section(map, lam, order, k_tr);
  auto [g1, g2] = detail::fpt_section(map, lam, order, k_tr + std::max(order, 8));
  FptMatrix out{order, f1, f2, lam, map, 0.0};
  const double ref = std::max(f1.norm(), f2.norm());
  if (ref > 0.0)
    out.tail_sensitivity = std::max((g1 - f1).norm(), (g2 - f2).norm()) / ref;
  return out;
}

/// Change of basis from monomials to the Faber polynomials of the table:
///   F1 = P N1 P^T,  F2 = conj(P) N2 P^T,
/// with P the unit-lower-triangular coefficient block.
inline FptMatrix fpt_from_gpt(const GptMatrix& gpt, const FaberTable& faber) {
  if (faber.order < gpt.order)
    throw std::invalid_argument("fpt_from_gpt: table order below tensor order");
  const int m = gpt.order;
  const Eigen::MatrixXcd p = faber.block().topLeftCorner(m, m);
  FptMatrix out{m, {}, {}, gpt.lambda, faber.map, 0.0};
  out.f1 = p * gpt.n1 * p.transpose();
  out.f2 = p.conjugate() * gpt.n2 * p.transpose();
  return out;
}

/// Inverse basis change by triangular solves; exact up to rounding since P is
/// unit triangular.
inline GptMatrix gpt_from_fpt(const FptMatrix& fpt, const FaberTable& faber) {
  if (faber.order < fpt.order)
    throw std::invalid_argument("gpt_from_fpt: table order below tensor order");
  const int m = fpt.order;
  const Eigen::MatrixXcd p = faber.block().topLeftCorner(m, m);
  const Eigen::MatrixXcd pc = p.conjugate();
  const auto tp = p.triangularView<Eigen::UnitLower>();
  const auto tpc = pc.triangularView<Eigen::UnitLower>();
  GptMatrix out{m, {}, {}, fpt.lambda};
  const Eigen::MatrixXcd left1 = tp.solve(fpt.f1);
  out.n1 = tp.solve(left1.transpose()).transpose();
  const Eigen::MatrixXcd left2 = tpc.solve(fpt.f2);
  out.n2 = tp.solve(left2.transpose()).transpose();
  return out;
}

/// Coefficients of H = sum_m (alpha_m z^m + conj) in the Faber basis:
/// beta_n = sum_m alpha_m q_{mn} with q the inverse of the full triangular
/// coefficient table (the constant component does not contribute).
inline std::vector<cplx> faber_coefficients(const FaberTable& faber,
                                            const std::vector<cplx>& alpha) {
  if (int(alpha.size()) > faber.order)
    throw std::invalid_argument("faber_coefficients: more coefficients than table order");
  const Eigen::MatrixXcd q = faber.p.triangularView<Eigen::UnitLower>().solve(
      Eigen::MatrixXcd::Identity(faber.order + 1, faber.order + 1));
  std::vector<cplx> beta(faber.order, cplx{});
  for (int m = 1; m <= int(alpha.size()); ++m)
    for (int n = 1; n <= m; ++n) beta[n - 1] += alpha[m - 1] * q(m, n);
  return beta;
}

/// Geometric multipole expansion of u - H evaluated at the map coordinate w
/// (z = Psi(w)); valid everywhere outside the inclusion. beta[i] is the
/// coefficient of F_{i+1} in H = sum_m (beta_m F_m + conj(beta_m F_m)).
inline cplx geometric_multipole_field(const FptMatrix& fpt, const ExteriorMap& map,
                                      const std::vector<cplx>& beta, cplx w) {
  if (std::abs(w) <= map.gamma)
    throw std::domain_error("geometric_multipole_field: |w| > gamma required");
  const int m_max = int(beta.size());
  if (m_max > fpt.order)
    throw std::invalid_argument("geometric_multipole_field: more coefficients than order");
  const cplx iw = 1.0 / w;
  cplx wn = 1.0;
  cplx total = 0.0;
  for (int n = 1; n <= fpt.order; ++n) {
    wn *= iw;
    cplx s1 = 0.0, s2 = 0.0;
    for (int m = 1; m <= m_max; ++m) {
      const cplx b = beta[m - 1];
      s1 += b * fpt.f1(m - 1, n - 1) + std::conj(b) * fpt.f2(m - 1, n - 1);
      s2 += std::conj(b * fpt.f1(m - 1, n - 1)) + b * std::conj(fpt.f2(m - 1, n - 1));
    }
    total -= (s1 * wn + s2 * std::conj(wn)) / (4.0 * pi * double(n));
  }
  return total;
}

}  // namespace gpt2d
