#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "gpt2d/boundary_frame.hpp"
#include "gpt2d/faber.hpp"
#include "gpt2d/grunsky.hpp"
#include "gpt2d/shapes.hpp"
#include "gpt2d/spectral.hpp"

using gpt2d::cplx;
using gpt2d::ExteriorMap;
using gpt2d::pi;
using gpt2d::ShapeSpec;

namespace {

// Test-only oracle: adaptive Simpson quadrature, independent of the frame's
// trapezoidal/spectral path.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12) {
  // Seed the recursion on several panels so symmetric integrands cannot alias
  // the first Simpson stencil.
  const int panels = 13;
  double total = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double pa = a + (b - a) * j / double(panels);
    const double pb = a + (b - a) * (j + 1) / double(panels);
    const double pm = 0.5 * (pa + pb);
    total += adaptive_simpson(f, pa, pb, f(pa), f(pm), f(pb), tol / panels, 40);
  }
  return total;
}

ExteriorMap generic_map() {
  ExteriorMap m;
  m.gamma = 1.1;
  m.a0 = cplx(0.3, 0.2);
  m.coeffs = {cplx(0.25, -0.1), cplx(0.05, 0.12), cplx(-0.04, 0.02), cplx(0.02, 0.03),
              cplx(0.015, -0.01)};
  return m;
}

std::vector<ExteriorMap> map_catalog() {
  return {ShapeSpec::asymmetric().map, gpt2d::ellipse_map(1.0, cplx(0.2, 0.1), cplx(0.5, 0.0)),
          gpt2d::disk_map(1.3, cplx(0.4, -0.2)), generic_map()};
}

}  // namespace

TEST(ExteriorMap, DiskIsIdentity) {
  const ExteriorMap disk = gpt2d::disk_map(1.0);
  EXPECT_EQ(gpt2d::eval_map(disk, cplx(2.0, 0.0)), cplx(2.0, 0.0));
}

TEST(ExteriorMap, EllipseSemiAxes) {
  const ExteriorMap e = gpt2d::ellipse_map(1.0, 0.0, 0.5);
  double rmax = 0.0, rmin = 1e30;
  for (int j = 0; j < 4096; ++j) {
    const double r = std::abs(e.boundary_point(2.0 * pi * j / 4096.0));
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  EXPECT_NEAR(rmax, 1.5, 1e-6);
  EXPECT_NEAR(rmin, 0.5, 1e-6);
}

TEST(ExteriorMap, AsymmetricBoundaryPoint) {
  // The rotated parameter e^{i pi/5} lands on the published boundary point
  // rot * (1 + sum of the raw tail coefficients).
  const ExteriorMap m = ShapeSpec::asymmetric().map;
  const cplx i(0.0, 1.0);
  const cplx rot = std::polar(1.0, pi / 5.0);
  const cplx raw_sum = 1.0 + (1.0 - 2.0 * i) / 7.0 + (i - 1.0) / 6.0 + i / 20.0 +
                       1.0 / 20.0 + i / 20.0 + i / 50.0;
  const cplx expected = rot * raw_sum;
  const cplx actual = m.eval(rot);
  EXPECT_NEAR(std::abs(actual - expected), 0.0, 1e-14);
}

TEST(ExteriorMap, InsideDomainThrows) {
  const ExteriorMap e = gpt2d::ellipse_map(1.0, 0.0, 0.5);
  EXPECT_THROW(e.eval(cplx(0.5, 0.0)), std::domain_error);
}

TEST(Faber, FirstRows) {
  const ExteriorMap m = generic_map();
  const gpt2d::FaberTable t = gpt2d::faber_table(m, 4);
  // F_1 = z - a0
  EXPECT_NEAR(std::abs(t.p(1, 0) - (-m.a0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.p(1, 1) - 1.0), 0.0, 1e-15);
  // F_2 = z^2 - 2 a0 z + a0^2 - 2 a1
  EXPECT_NEAR(std::abs(t.p(2, 0) - (m.a0 * m.a0 - 2.0 * m.coeff(1))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.p(2, 1) - (-2.0 * m.a0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.p(2, 2) - 1.0), 0.0, 1e-15);
}

TEST(Faber, EllipseThirdRow) {
  const cplx a1(0.4, 0.15);
  const ExteriorMap e = gpt2d::ellipse_map(1.0, 0.0, a1);
  const gpt2d::FaberTable t = gpt2d::faber_table(e, 3);
  // F_3 = z^3 - 3 a1 z
  EXPECT_NEAR(std::abs(t.p(3, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.p(3, 1) - (-3.0 * a1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.p(3, 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.p(3, 3) - 1.0), 0.0, 1e-15);
}

TEST(Faber, MonicOnCatalog) {
  for (const ExteriorMap& m : map_catalog()) {
    const gpt2d::FaberTable t = gpt2d::faber_table(m, 12);
    for (int row = 0; row <= 12; ++row)
      EXPECT_NEAR(std::abs(t.p(row, row) - 1.0), 0.0, 1e-12);
  }
}

TEST(Grunsky, LowOrderClosedForms) {
  const ExteriorMap m = generic_map();
  const auto a = [&m](int k) { return m.coeff(k); };
  const gpt2d::GrunskyMatrix g = gpt2d::grunsky(m, 3);
  EXPECT_NEAR(std::abs(g.c(0, 0) - a(1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(g.c(1, 1) - (2.0 * a(3) + a(1) * a(1))), 0.0, 1e-14);
  const cplx c33 = 3.0 * a(5) + 3.0 * a(1) * a(3) + 3.0 * a(2) * a(2) + a(1) * a(1) * a(1);
  EXPECT_NEAR(std::abs(g.c(2, 2) - c33), 0.0, 1e-14);
}

TEST(Grunsky, EllipseIsDiagonal) {
  const cplx a1(0.35, 0.2);
  const gpt2d::GrunskyMatrix g = gpt2d::grunsky(gpt2d::ellipse_map(1.0, 0.0, a1), 8);
  for (int m = 1; m <= 8; ++m)
    for (int k = 1; k <= 8; ++k) {
      const cplx expected = (m == k) ? std::pow(a1, m) : cplx{};
      EXPECT_NEAR(std::abs(g.c(m - 1, k - 1) - expected), 0.0, 1e-13);
    }
}

TEST(Grunsky, DiskIsZero) {
  const gpt2d::GrunskyMatrix g = gpt2d::grunsky(gpt2d::disk_map(2.0, cplx(1.0, 1.0)), 6);
  EXPECT_NEAR(g.c.norm(), 0.0, 1e-15);
}

TEST(Grunsky, SymmetryIdentities) {
  for (const ExteriorMap& m : map_catalog()) {
    const gpt2d::GrunskyMatrix g = gpt2d::grunsky(m, 12);
    const double scale = g.c.cwiseAbs().maxCoeff() + 1e-300;
    for (int mm = 1; mm <= 12; ++mm)
      for (int kk = 1; kk <= 12; ++kk) {
        const cplx lhs = double(kk) * g.c(mm - 1, kk - 1);
        const cplx rhs = double(mm) * g.c(kk - 1, mm - 1);
        EXPECT_LT(std::abs(lhs - rhs), 1e-12 * 12.0 * scale);
      }
    EXPECT_LT((g.g - g.g.transpose()).cwiseAbs().maxCoeff(),
              1e-12 * (g.g.cwiseAbs().maxCoeff() + 1e-300));
  }
}

TEST(Grunsky, ContractionAndMonotoneNorm) {
  for (const ExteriorMap& m : map_catalog()) {
    double prev = 0.0;
    for (int order : {2, 4, 8, 12}) {
      const double norm = gpt2d::grunsky_norm(gpt2d::grunsky(m, order));
      EXPECT_LT(norm, 1.0);
      EXPECT_GE(norm, prev - 1e-13);
      prev = norm;
    }
  }
}

TEST(Grunsky, FaberCompositionConsistency) {
  // F_m(Psi(w)) = w^m + sum_k c_mk w^{-k} on |w| = 1.5 gamma.
  for (const ExteriorMap& m : {ShapeSpec::asymmetric().map,
                               gpt2d::ellipse_map(1.0, cplx(0.2, 0.1), cplx(0.5, 0.0))}) {
    const int k_tr = 40;
    const gpt2d::FaberTable table = gpt2d::faber_table(m, 8);
    const gpt2d::GrunskyMatrix g = gpt2d::grunsky(m, k_tr);
    for (int mm = 1; mm <= 8; ++mm) {
      for (int s = 0; s < 16; ++s) {
        const cplx w = std::polar(1.5 * m.gamma, 2.0 * pi * s / 16.0 + 0.1);
        cplx series = std::pow(w, mm);
        for (int k = 1; k <= k_tr; ++k) series += g.c(mm - 1, k - 1) * std::pow(w, -k);
        EXPECT_LT(std::abs(table.eval(mm, m.eval(w)) - series), 1e-8);
      }
    }
  }
}

TEST(Grunsky, MatchesLaurentCoefficientOracle) {
  // Independent route: numerical Laurent coefficients of F_m o Psi on a circle.
  const ExteriorMap m = ShapeSpec::asymmetric().map;
  const gpt2d::FaberTable table = gpt2d::faber_table(m, 6);
  const gpt2d::GrunskyMatrix g = gpt2d::grunsky(m, 6);
  const int n = 512;
  const double radius = 2.0;
  for (int mm = 1; mm <= 6; ++mm) {
    std::vector<cplx> samples(n);
    for (int j = 0; j < n; ++j)
      samples[j] = table.eval(mm, m.eval(std::polar(radius, 2.0 * pi * j / n)));
    const std::vector<cplx> spec = gpt2d::fourier_coefficients(samples);
    for (int k = 1; k <= 6; ++k) {
      const cplx oracle = spec[n - k] * std::pow(radius, k);
      EXPECT_LT(std::abs(g.c(mm - 1, k - 1) - oracle), 1e-10);
    }
  }
}

TEST(BoundaryFrame, DiskGeometry) {
  const auto frame = gpt2d::boundary_frame(ShapeSpec::disk(2.0), 128);
  ASSERT_TRUE(frame.has_scale_factor());
  for (int j = 0; j < frame.n; ++j) {
    EXPECT_NEAR(frame.curvature[j], 0.5, 1e-12);
    EXPECT_NEAR(frame.jacobian[j], 2.0, 1e-12);
    EXPECT_NEAR(frame.scale_factor[j], 2.0, 1e-12);
    // outward normal
    const cplx c = frame.points[j];
    EXPECT_GT(c.real() * frame.normal[j].real() + c.imag() * frame.normal[j].imag(), 0.0);
  }
  EXPECT_NEAR(frame.arclength(), 4.0 * pi, 1e-10);
}

TEST(BoundaryFrame, KiteBasePoint) {
  const auto frame = gpt2d::boundary_frame(ShapeSpec::kite(), 256);
  EXPECT_NEAR(frame.points[0].real(), 0.611, 1e-12);
  EXPECT_NEAR(frame.points[0].imag(), 0.0, 1e-12);
}

TEST(BoundaryFrame, ArclengthMatchesAdaptiveQuadrature) {
  {
    const ExteriorMap e = gpt2d::ellipse_map(1.0, 0.0, 0.5);
    const auto frame = gpt2d::boundary_frame(ShapeSpec::from_map(e), 256);
    const double oracle = adaptive_integral(
        [&e](double t) {
          const cplx w = std::polar(1.0, t);
          return std::abs(e.derivative(w) * cplx(0.0, 1.0) * w);
        },
        0.0, 2.0 * pi);
    EXPECT_NEAR(frame.arclength() / oracle, 1.0, 1e-8);
  }
  {
    const auto frame = gpt2d::boundary_frame(ShapeSpec::kite(), 256);
    const double oracle = adaptive_integral(
        [](double t) {
          const cplx d(-std::sin(t) + 1.4 * std::sin(2.0 * t), std::cos(t));
          return std::abs(d);
        },
        0.0, 2.0 * pi);
    EXPECT_NEAR(frame.arclength() / oracle, 1.0, 1e-8);
  }
}

TEST(BoundaryFrame, ClockwiseInputIsReversed) {
  const auto frame = gpt2d::boundary_frame(
      [](double t) { return std::polar(1.0, -t); }, 128);
  double area2 = 0.0;
  for (int j = 0; j < frame.n; ++j) {
    const cplx a = frame.points[j], b = frame.points[(j + 1) % frame.n];
    area2 += a.real() * b.imag() - a.imag() * b.real();
  }
  EXPECT_GT(area2, 0.0);
  for (int j = 0; j < frame.n; ++j) {
    const cplx c = frame.points[j];
    EXPECT_GT(c.real() * frame.normal[j].real() + c.imag() * frame.normal[j].imag(), 0.0);
  }
}

TEST(BoundaryFrame, SelfIntersectionRejected) {
  // Figure eight with a generic phase so the crossing falls mid-segment.
  EXPECT_THROW(gpt2d::boundary_frame(
                   [](double t) {
                     return cplx(std::sin(2.0 * t + 0.4), std::sin(t + 0.9));
                   },
                   128),
               gpt2d::ShapeError);
}

TEST(BoundaryFrame, SampleCountValidated) {
  EXPECT_THROW(gpt2d::boundary_frame(ShapeSpec::kite(), 32), std::invalid_argument);
  EXPECT_THROW(gpt2d::boundary_frame(ShapeSpec::kite(), 129), std::invalid_argument);
}

TEST(BoundaryFrame, RoundedShapesAreSpectrallyResolved) {
  for (const ShapeSpec& s : {ShapeSpec::straight(), ShapeSpec::crescent()}) {
    const auto frame = gpt2d::boundary_frame(s, 512);
    const std::vector<cplx> spec = gpt2d::fourier_coefficients(frame.points);
    double scale = 0.0, tail = 0.0;
    for (int j = 0; j < frame.n; ++j) scale = std::max(scale, std::abs(spec[j]));
    for (int k = frame.n / 2 - 8; k <= frame.n / 2 + 8; ++k)
      tail = std::max(tail, std::abs(spec[k]));
    EXPECT_LT(tail, 1e-12 * scale);
  }
}
