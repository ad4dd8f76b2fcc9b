#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gpt2d/boundary_frame.hpp"
#include "gpt2d/types.hpp"

namespace gpt2d {

/// Closed sampled curve plus ordered free-form header metadata, mirroring the
/// on-disk curve format.
struct Curve {
  std::vector<double> theta;
  std::vector<cplx> points;
  bool closed = true;
  std::vector<std::pair<std::string, std::string>> header;
};

inline Curve sample_curve(const std::function<cplx(double)>& fn, int n) {
  Curve c;
  c.theta.resize(n);
  c.points.resize(n);
  for (int j = 0; j < n; ++j) {
    c.theta[j] = 2.0 * pi * j / double(n);
    c.points[j] = fn(c.theta[j]);
  }
  return c;
}

inline double polygon_area(const std::vector<cplx>& pts) {
  double a2 = 0.0;
  const int n = int(pts.size());
  for (int j = 0; j < n; ++j) {
    const cplx p = pts[j], q = pts[(j + 1) % n];
    a2 += p.real() * q.imag() - p.imag() * q.real();
  }
  return 0.5 * a2;
}

inline double polygon_diameter(const std::vector<cplx>& pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d2 = std::max(d2, std::norm(pts[i] - pts[j]));
  return std::sqrt(d2);
}

namespace detail {

inline void scan_crossings(const std::vector<cplx>& poly, double y,
                           std::vector<double>& xs) {
  xs.clear();
  const int n = int(poly.size());
  for (int j = 0; j < n; ++j) {
    const cplx p = poly[j], q = poly[(j + 1) % n];
    const bool below_p = p.imag() <= y, below_q = q.imag() <= y;
    if (below_p != below_q) {
      const double t = (y - p.imag()) / (q.imag() - p.imag());
      xs.push_back(p.real() + t * (q.real() - p.real()));
    }
  }
  std::sort(xs.begin(), xs.end());
}

inline double xor_length(const std::vector<double>& xa, const std::vector<double>& xb) {
  double len = 0.0, x_prev = 0.0;
  bool in_a = false, in_b = false;
  std::size_t ia = 0, ib = 0;
  while (ia < xa.size() || ib < xb.size()) {
    const bool take_a = ib == xb.size() || (ia < xa.size() && xa[ia] <= xb[ib]);
    const double x = take_a ? xa[ia] : xb[ib];
    if (in_a != in_b) len += x - x_prev;
    if (take_a) {
      in_a = !in_a;
      ++ia;
    } else {
      in_b = !in_b;
      ++ib;
    }
    x_prev = x;
  }
  return len;
}

inline double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

inline double directed_hausdorff(const std::vector<cplx>& from,
                                 const std::vector<cplx>& to) {
  double worst = 0.0;
  const int m = int(to.size());
  for (const cplx& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j)
      best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % m]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace detail

/// Area of the symmetric difference of two closed simple polygons by even-odd
/// scanline integration (midpoint rule across the joint bounding box).
inline double symmetric_difference_area(const std::vector<cplx>& a,
                                        const std::vector<cplx>& b,
                                        int scanlines = 20000) {
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const cplx& p : a) {
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  for (const cplx& p : b) {
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  if (!(ymax > ymin)) return 0.0;
  const double dy = (ymax - ymin) / double(scanlines);
  double area = 0.0;
  std::vector<double> xa, xb;
  for (int i = 0; i < scanlines; ++i) {
    const double y = ymin + (i + 0.5) * dy;
    detail::scan_crossings(a, y, xa);
    detail::scan_crossings(b, y, xb);
    area += detail::xor_length(xa, xb) * dy;
  }
  return area;
}

/// Two-sided polyline Hausdorff distance (vertices against segments).
inline double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
}

struct CurveMetrics {
  double sym_diff_ratio = 0.0;  ///< symmetric-difference area / truth area
  double hausdorff = 0.0;       ///< two-sided Hausdorff / truth diameter
};

/// Validates both curves (closed and simple) and evaluates both shape-error
/// metrics of the reconstruction against the truth.
inline CurveMetrics evaluate_curves(const Curve& truth, const Curve& recon,
                                    int scanlines = 20000) {
  if (!truth.closed || !recon.closed)
    throw ShapeError("evaluate_curves: curves must be closed");
  if (truth.points.size() < 3 || recon.points.size() < 3)
    throw ShapeError("evaluate_curves: degenerate curve");
  if (!polyline_is_simple(truth.points) || !polyline_is_simple(recon.points))
    throw ShapeError("evaluate_curves: self-intersecting curve");
  const double area = std::abs(polygon_area(truth.points));
  const double diam = polygon_diameter(truth.points);
  if (!(area > 0.0) || !(diam > 0.0))
    throw ShapeError("evaluate_curves: degenerate truth curve");
  CurveMetrics m;
  m.sym_diff_ratio = symmetric_difference_area(truth.points, recon.points, scanlines) / area;
  m.hausdorff = hausdorff_distance(truth.points, recon.points) / diam;
  return m;
}

}  // namespace gpt2d
