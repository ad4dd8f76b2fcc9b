#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gpt2d/shapes.hpp"
#include "gpt2d/spectral.hpp"

namespace gpt2d {

/// Proper-crossing test for a closed polyline (adjacent segments excluded).
inline bool polyline_is_simple(const std::vector<cplx>& pts) {
  const int n = int(pts.size());
  auto cross = [](cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); };
  for (int i = 0; i < n; ++i) {
    const cplx p1 = pts[i], p2 = pts[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const cplx q1 = pts[j], q2 = pts[(j + 1) % n];
      const double d1 = cross(q2 - q1, p1 - q1);
      const double d2 = cross(q2 - q1, p2 - q1);
      const double d3 = cross(p2 - p1, q1 - p1);
      const double d4 = cross(p2 - p1, q2 - p1);
      if (d1 * d2 < 0.0 && d3 * d4 < 0.0) return false;
    }
  }
  return true;
}

/// Uniformly sampled closed boundary curve with spectrally computed tangent,
/// outward normal, curvature and parametrization speed. Orientation is always
/// counterclockwise (clockwise inputs are reversed at construction). The
/// quadrature weight of node j is jacobian[j] * (2 pi / n).
struct BoundaryFrame {
  int n = 0;
  std::vector<double> theta;
  std::vector<cplx> points;
  std::vector<cplx> tangent;       ///< unit, along increasing theta
  std::vector<cplx> normal;        ///< unit, outward
  std::vector<double> curvature;   ///< signed, 1/length
  std::vector<double> jacobian;    ///< |dz/dtheta|, length per radian
  std::vector<double> scale_factor;  ///< h(theta) when built from a map, else empty

  double weight(int j) const { return jacobian[j] * (2.0 * pi / double(n)); }

  double arclength() const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += weight(j);
    return s;
  }

  bool has_scale_factor() const { return !scale_factor.empty(); }
};

namespace detail {

inline BoundaryFrame make_frame(const std::function<cplx(double)>& curve, int n,
                                const ExteriorMap* map) {
  if (n < 64 || n % 2 != 0)
    throw std::invalid_argument("boundary_frame: n must be even and >= 64");

  BoundaryFrame fr;
  fr.n = n;
  fr.theta.resize(n);
  fr.points.resize(n);
  const double step = 2.0 * pi / double(n);
  for (int j = 0; j < n; ++j) {
    fr.theta[j] = step * j;
    fr.points[j] = curve(fr.theta[j]);
    if (!std::isfinite(fr.points[j].real()) || !std::isfinite(fr.points[j].imag()))
      throw ShapeError("boundary_frame: non-finite boundary sample");
  }

  // Shoelace orientation; reverse clockwise inputs keeping the base point.
  double area2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx a = fr.points[j], b = fr.points[(j + 1) % n];
    area2 += a.real() * b.imag() - a.imag() * b.real();
  }
  const bool reversed = area2 < 0.0;
  if (reversed) {
    std::vector<cplx> rev(n);
    for (int j = 0; j < n; ++j) rev[j] = fr.points[(n - j) % n];
    fr.points = std::move(rev);
  }

  if (!polyline_is_simple(fr.points))
    throw ShapeError("boundary_frame: sampled curve self-intersects");

  const std::vector<cplx> d1 = spectral_derivative(fr.points, 1);
  const std::vector<cplx> d2 = spectral_derivative(fr.points, 2);
  fr.tangent.resize(n);
  fr.normal.resize(n);
  fr.curvature.resize(n);
  fr.jacobian.resize(n);
  for (int j = 0; j < n; ++j) {
    const double speed = std::abs(d1[j]);
    if (!(speed > 1e-14))
      throw ShapeError("boundary_frame: degenerate parametrization (zero speed)");
    fr.jacobian[j] = speed;
    fr.tangent[j] = d1[j] / speed;
    fr.normal[j] = cplx(0.0, -1.0) * fr.tangent[j];
    fr.curvature[j] = (std::conj(d1[j]) * d2[j]).imag() / (speed * speed * speed);
  }

  if (map) {
    fr.scale_factor.resize(n);
    for (int j = 0; j < n; ++j) {
      const double t = reversed ? -fr.theta[j] : fr.theta[j];
      fr.scale_factor[j] = map->scale_factor(t);
    }
  }
  return fr;
}

}  // namespace detail

inline BoundaryFrame boundary_frame(const std::function<cplx(double)>& curve, int n) {
  return detail::make_frame(curve, n, nullptr);
}

inline BoundaryFrame boundary_frame(const ShapeSpec& shape, int n) {
  const ExteriorMap* map = shape.is_map() ? &shape.map : nullptr;
  return detail::make_frame([&shape](double t) { return shape.point(t); }, n, map);
}

}  // namespace gpt2d
