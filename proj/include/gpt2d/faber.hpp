#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

#include "gpt2d/exterior_map.hpp"

namespace gpt2d {

/// Coefficient table of the Faber polynomials F_0..F_M generated by a map:
/// p(m, n) is the z^n coefficient of F_m. Rows are monic, p(m, m) = 1, and
/// row m depends only on a0..a_{m-1}.
struct FaberTable {
  int order = 0;
  Eigen::MatrixXcd p;  ///< (order+1) x (order+1), lower triangular
  ExteriorMap map;     ///< generating map

  /// F_m(z) by Horner evaluation of row m.
  cplx eval(int m, cplx z) const {
    cplx acc = p(m, m);
    for (int n = m - 1; n >= 0; --n) acc = acc * z + p(m, n);
    return acc;
  }

  /// Unit-lower-triangular block p(m, n), 1 <= n <= m <= order, used for
  /// polarization-tensor basis changes.
  Eigen::MatrixXcd block() const { return p.bottomRightCorner(order, order); }
};

/// Builds the coefficient table from the recursion
///   F_{m+1}(z) = z F_m(z) - m a_m - sum_{k=0}^{m} a_k F_{m-k}(z),  F_0 = 1,
/// with coefficients missing from the map's tail treated as zero.
inline FaberTable faber_table(const ExteriorMap& map, int order) {
  if (order < 1) throw std::invalid_argument("faber_table: order >= 1 required");
  auto a = [&map](int k) { return k == 0 ? map.a0 : map.coeff(std::size_t(k)); };
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(order + 1, order + 1);
  p(0, 0) = 1.0;
  for (int m = 0; m < order; ++m) {
    for (int n = 0; n <= m + 1; ++n) {
      cplx v = (n >= 1) ? p(m, n - 1) : cplx{};
      if (n == 0) v -= double(m) * a(m);
      for (int k = 0; k <= m; ++k) v -= a(k) * p(m - k, n);
      p(m + 1, n) = v;
    }
  }
  return {order, std::move(p), map};
}

}  // namespace gpt2d
