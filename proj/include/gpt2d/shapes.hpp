#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gpt2d/exterior_map.hpp"

namespace gpt2d {

enum class ShapeKind { map, kite, straight, crescent };

/// Catalog of test boundary shapes. Map-defined shapes carry their exterior
/// map; the parametric ones are closed-form 2*pi-periodic curves.
///
/// The square-root parametrizations of `straight` and `crescent` degenerate
/// to exact rectangles (corner singularities, and negative sqrt arguments in
/// floating point) when `rounding` is zero; a small positive rounding keeps
/// the boundary smooth, which the spectral differentiation and the
/// curvature-based kernel limit require.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::map;
  ExteriorMap map;         ///< valid when kind == map
  double rounding = 0.02;  ///< corner rounding for straight/crescent

  static ShapeSpec kite() { return {ShapeKind::kite, {}, 0.0}; }

  /// Asymmetric blob: image of the unit circle under a rotated degree-6
  /// Laurent polynomial. Stored in normalized exterior-map form, with the
  /// rotation folded into the tail: a_k = rot^{k+1} b_k.
  static ShapeSpec asymmetric() {
    const cplx i{0.0, 1.0};
    const cplx rot = std::polar(1.0, pi / 5.0);
    const cplx b[6] = {(1.0 - 2.0 * i) / 7.0, (i - 1.0) / 6.0, i / 20.0,
                       1.0 / 20.0,            i / 20.0,        i / 50.0};
    ExteriorMap m;
    m.gamma = 1.0;
    m.a0 = 0.0;
    cplx r = rot;
    for (const cplx& bk : b) {
      r *= rot;  // rot^{k+1}
      m.coeffs.push_back(r * bk);
    }
    return from_map(std::move(m));
  }

  static ShapeSpec straight(double rounding = 0.02) {
    if (!(rounding > 0.0)) throw std::invalid_argument("straight: rounding > 0 required");
    return {ShapeKind::straight, {}, rounding};
  }

  static ShapeSpec crescent(double rounding = 0.02) {
    if (!(rounding > 0.0)) throw std::invalid_argument("crescent: rounding > 0 required");
    return {ShapeKind::crescent, {}, rounding};
  }

  static ShapeSpec ellipse(double gamma, cplx e0, cplx e1) {
    return from_map(ellipse_map(gamma, e0, e1));
  }

  static ShapeSpec disk(double radius, cplx center = {}) {
    return from_map(disk_map(radius, center));
  }

  static ShapeSpec from_map(ExteriorMap m) { return {ShapeKind::map, std::move(m), 0.0}; }

  bool is_map() const { return kind == ShapeKind::map; }

  cplx point(double theta) const {
    switch (kind) {
      case ShapeKind::map:
        return map.boundary_point(theta);
      case ShapeKind::kite:
        return cplx(0.311 + std::cos(theta) - 0.7 * std::cos(2.0 * theta), std::sin(theta));
      case ShapeKind::straight: {
        const cplx z0 = rounded_rectangle(theta, rounding);
        return std::polar(1.0, pi / 9.0) * z0;
      }
      case ShapeKind::crescent: {
        const cplx base = rounded_rectangle(theta, rounding);
        const cplx z0(15.0 * base.real(), 4.0 * base.imag());
        const cplx i{0.0, 1.0};
        return (5.0 * z0 - 20.0 * i) / (2.0 * z0 + 40.0 * i);
      }
    }
    throw std::logic_error("ShapeSpec::point: bad kind");
  }

 private:
  // sqrt(2 + u^2 - v^2 +- 2 sqrt(2) u + d) differences; traces the rectangle
  // [-2,2] x [-1/2,1/2] as d -> 0, with corners rounded on a scale ~ sqrt(d).
  static cplx rounded_rectangle(double t, double d) {
    const double u = std::cos(t), v = std::sin(t);
    const double s2 = 2.0 * std::sqrt(2.0);
    const double re = std::sqrt(2.0 + u * u - v * v + s2 * u + d) -
                      std::sqrt(2.0 + u * u - v * v - s2 * u + d);
    const double im = std::sqrt(2.0 - u * u + v * v + s2 * v + d) -
                      std::sqrt(2.0 - u * u + v * v - s2 * v + d);
    return {re, 0.25 * im};
  }
};

}  // namespace gpt2d
