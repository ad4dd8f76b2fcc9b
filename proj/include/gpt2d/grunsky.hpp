#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "gpt2d/exterior_map.hpp"

namespace gpt2d {

/// Grunsky coefficients c_{mk} of a map -- the negative-power coefficients of
/// F_m(Psi(w)) = w^m + sum_k c_{mk} w^{-k} -- and their symmetrization
/// g_{mk} = sqrt(k/m) c_{mk} / gamma^{m+k}. Storage is zero-based:
/// c(i, j) = c_{i+1, j+1}.
struct GrunskyMatrix {
  int order = 0;
  double gamma = 1.0;
  Eigen::MatrixXcd c;
  Eigen::MatrixXcd g;
};

/// Fills the table by the column recursion
///   c_{1k} = a_k,  c_{m1} = m a_m,
///   c_{m,k+1} = c_{m+1,k} - a_{m+k} + sum_{s<m} a_{m-s} c_{sk}
///                                   - sum_{s<k} a_{k-s} c_{ms}.
/// The recursion pulls entry (m, k+1) from row m+1 of column k, so the
/// working wedge is run at height 2*order to make every entry up to
/// (order, order) exact.
inline GrunskyMatrix grunsky(const ExteriorMap& map, int order) {
  if (order < 1) throw std::invalid_argument("grunsky: order >= 1 required");
  const int w = 2 * order;
  Eigen::MatrixXcd cw = Eigen::MatrixXcd::Zero(w + 1, w + 1);  // 1-based wedge
  for (int m = 1; m <= w; ++m) cw(m, 1) = double(m) * map.coeff(m);
  for (int k = 1; k <= w; ++k) cw(1, k) = map.coeff(k);
  for (int k = 1; k < w; ++k) {
    for (int m = 2; m <= w - k; ++m) {
      cplx v = cw(m + 1, k) - map.coeff(m + k);
      for (int s = 1; s < m; ++s) v += map.coeff(m - s) * cw(s, k);
      for (int s = 1; s < k; ++s) v -= map.coeff(k - s) * cw(m, s);
      cw(m, k + 1) = v;
    }
  }
  GrunskyMatrix out;
  out.order = order;
  out.gamma = map.gamma;
  out.c = cw.block(1, 1, order, order);
  out.g.resize(order, order);
  for (int m = 1; m <= order; ++m)
    for (int k = 1; k <= order; ++k)
      out.g(m - 1, k - 1) = std::sqrt(double(k) / double(m)) * out.c(m - 1, k - 1) /
                            std::pow(map.gamma, double(m + k));
  return out;
}

/// Spectral norm of the symmetrized finite section; strictly below 1 for a
/// Jordan boundary curve.
inline double grunsky_norm(const GrunskyMatrix& gm) {
  return gm.g.jacobiSvd().singularValues()(0);
}

}  // namespace gpt2d
