#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gpt2d/types.hpp"

namespace gpt2d {

/// Exterior conformal map of a simply connected inclusion, normalized at
/// infinity:
///   Psi(w) = w + a0 + a1/w + a2/w^2 + ...   for |w| >= gamma.
/// The boundary curve is theta -> Psi(gamma e^{i theta}). Laurent
/// coefficients beyond the stored tail are exactly zero (all catalog shapes
/// are polynomial in 1/w).
struct ExteriorMap {
  double gamma = 1.0;        ///< conformal radius, > 0
  cplx a0{};                 ///< centering coefficient
  std::vector<cplx> coeffs;  ///< tail a1..aK

  /// a_k for k >= 1; zero beyond the stored tail.
  cplx coeff(std::size_t k) const {
    return (k >= 1 && k <= coeffs.size()) ? coeffs[k - 1] : cplx{};
  }

  cplx eval(cplx w) const {
    if (std::abs(w) < gamma * (1.0 - 1e-12))
      throw std::domain_error("ExteriorMap::eval: point inside |w| = gamma");
    const cplx iw = 1.0 / w;
    cplx sum = w + a0;
    cplx p = iw;
    for (const cplx& a : coeffs) {
      sum += a * p;
      p *= iw;
    }
    return sum;
  }

  /// Psi'(w) = 1 - sum_k k a_k w^{-k-1}
  cplx derivative(cplx w) const {
    const cplx iw = 1.0 / w;
    cplx sum = 1.0;
    cplx p = iw * iw;
    for (std::size_t k = 1; k <= coeffs.size(); ++k) {
      sum -= double(k) * coeffs[k - 1] * p;
      p *= iw;
    }
    return sum;
  }

  /// Psi''(w) = sum_k k (k+1) a_k w^{-k-2}
  cplx second_derivative(cplx w) const {
    const cplx iw = 1.0 / w;
    cplx sum = 0.0;
    cplx p = iw * iw * iw;
    for (std::size_t k = 1; k <= coeffs.size(); ++k) {
      sum += double(k * (k + 1)) * coeffs[k - 1] * p;
      p *= iw;
    }
    return sum;
  }

  cplx boundary_point(double theta) const { return eval(std::polar(gamma, theta)); }

  /// Scale factor h(theta) = |d Psi / d theta| = gamma |Psi'(gamma e^{i theta})|
  /// of the boundary parametrization.
  double scale_factor(double theta) const {
    return gamma * std::abs(derivative(std::polar(gamma, theta)));
  }
};

inline cplx eval_map(const ExteriorMap& map, cplx w) { return map.eval(w); }

inline ExteriorMap disk_map(double radius, cplx center = {}) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk_map: radius > 0 required");
  return {radius, center, {}};
}

/// Map w + e0 + e1/w; univalent outside |w| = gamma iff |e1| < gamma^2.
inline ExteriorMap ellipse_map(double gamma, cplx e0, cplx e1) {
  if (!(gamma > 0.0)) throw std::invalid_argument("ellipse_map: gamma > 0 required");
  if (!(std::abs(e1) < gamma * gamma))
    throw std::invalid_argument("ellipse_map: |e1| < gamma^2 required");
  if (e1 == cplx{}) return {gamma, e0, {}};
  return {gamma, e0, {e1}};
}

}  // namespace gpt2d
