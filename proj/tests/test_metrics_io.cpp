#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gpt2d/curve_metrics.hpp"
#include "gpt2d/io.hpp"
#include "gpt2d/shapes.hpp"

using gpt2d::cplx;
using gpt2d::Curve;
using gpt2d::pi;

namespace {

Curve circle(double radius, cplx center, int n = 512) {
  return gpt2d::sample_curve(
      [radius, center](double t) { return center + std::polar(radius, t); }, n);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST(Metrics, IdenticalCurvesScoreZero) {
  const Curve a = circle(1.0, 0.0);
  const gpt2d::CurveMetrics m = gpt2d::evaluate_curves(a, a);
  EXPECT_EQ(m.sym_diff_ratio, 0.0);
  EXPECT_EQ(m.hausdorff, 0.0);
}

TEST(Metrics, ConcentricCircles) {
  const Curve truth = circle(1.0, 0.0);
  const Curve recon = circle(1.1, 0.0);
  const gpt2d::CurveMetrics m = gpt2d::evaluate_curves(truth, recon);
  // annulus area over disk area: (1.21 - 1) pi / pi
  EXPECT_NEAR(m.sym_diff_ratio, 0.21, 5e-4);
  // 0.1 gap over diameter 2
  EXPECT_NEAR(m.hausdorff, 0.05, 1e-4);
}

TEST(Metrics, ShiftedCircles) {
  const Curve truth = circle(1.0, 0.0);
  const Curve recon = circle(1.0, cplx(0.1, 0.0));
  const gpt2d::CurveMetrics m = gpt2d::evaluate_curves(truth, recon);
  EXPECT_NEAR(m.hausdorff, 0.05, 1e-4);
  // lens-complement area: 2 (pi r^2 - overlap) with standard overlap formula
  const double d = 0.1, r = 1.0;
  const double overlap =
      2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
  EXPECT_NEAR(m.sym_diff_ratio, 2.0 * (pi * r * r - overlap) / (pi * r * r), 1e-3);
}

TEST(Metrics, OpenCurveRejected) {
  const Curve truth = circle(1.0, 0.0);
  Curve open = truth;
  open.closed = false;
  EXPECT_THROW(gpt2d::evaluate_curves(truth, open), gpt2d::ShapeError);
}

TEST(Metrics, SelfIntersectingCurveRejected) {
  const Curve truth = circle(1.0, 0.0);
  const Curve eight = gpt2d::sample_curve(
      [](double t) { return cplx(std::sin(2.0 * t + 0.4), std::sin(t + 0.9)); }, 256);
  EXPECT_THROW(gpt2d::evaluate_curves(truth, eight), gpt2d::ShapeError);
}

TEST(Metrics, PolygonHelpers) {
  const Curve a = circle(2.0, cplx(5.0, -3.0), 2048);
  EXPECT_NEAR(gpt2d::polygon_area(a.points), 4.0 * pi, 1e-2);
  EXPECT_NEAR(gpt2d::polygon_diameter(a.points), 4.0, 1e-3);
}

TEST(Io, GptDocumentRoundTrip) {
  gpt2d::GptDocument doc;
  doc.gpt = gpt2d::gpt_forward(gpt2d::boundary_frame(gpt2d::ShapeSpec::kite(), 128),
                               gpt2d::Contrast::from_sigma(5.0), 3);
  doc.contrast = gpt2d::Contrast::from_sigma(5.0);
  doc.meta["shape"] = "kite";
  doc.meta["n_quad"] = "128";
  const auto path = temp_file("gpt2d_test_gpt.json");
  gpt2d::save_gpt(path.string(), doc);
  const gpt2d::GptDocument back = gpt2d::load_gpt(path.string());
  EXPECT_EQ(back.gpt.order, 3);
  EXPECT_EQ(back.contrast.sigma, 5.0);
  EXPECT_EQ(back.contrast.lambda, doc.contrast.lambda);
  EXPECT_EQ((back.gpt.n1 - doc.gpt.n1).norm(), 0.0);  // bit-exact through the file
  EXPECT_EQ((back.gpt.n2 - doc.gpt.n2).norm(), 0.0);
  EXPECT_EQ(back.meta.at("shape"), "kite");
  std::filesystem::remove(path);
}

TEST(Io, InfiniteSigmaSentinel) {
  gpt2d::GptDocument doc;
  doc.gpt = gpt2d::GptMatrix{2, Eigen::MatrixXcd::Identity(2, 2),
                             Eigen::MatrixXcd::Identity(2, 2), 0.5};
  doc.contrast = gpt2d::Contrast::from_sigma(std::numeric_limits<double>::infinity());
  const auto path = temp_file("gpt2d_test_inf.json");
  gpt2d::save_gpt(path.string(), doc);
  const std::string text = slurp(path.string());
  EXPECT_NE(text.find("\"inf\""), std::string::npos);
  const gpt2d::GptDocument back = gpt2d::load_gpt(path.string());
  EXPECT_TRUE(std::isinf(back.contrast.sigma));
  EXPECT_EQ(back.contrast.lambda, 0.5);
  std::filesystem::remove(path);
}

TEST(Io, CurveRoundTripAndValidation) {
  Curve c = circle(1.3, cplx(0.2, 0.1), 128);
  c.header.emplace_back("method", "conformal");
  c.header.emplace_back("gamma", "1.25");
  const auto path = temp_file("gpt2d_test_curve.txt");
  gpt2d::save_curve(path.string(), c);
  const Curve back = gpt2d::load_curve(path.string());
  ASSERT_EQ(back.points.size(), c.points.size());
  for (std::size_t j = 0; j < c.points.size(); ++j) {
    EXPECT_EQ(back.theta[j], c.theta[j]);
    EXPECT_EQ(back.points[j], c.points[j]);
  }
  EXPECT_TRUE(back.closed);
  EXPECT_EQ(back.header.size(), 2u);
  EXPECT_EQ(back.header[0].first, "method");
  EXPECT_EQ(back.header[0].second, "conformal");

  // theta must be strictly increasing in [0, 2 pi)
  std::ofstream bad(path);
  bad << "0.5 1 0\n0.4 0 1\n";
  bad.close();
  EXPECT_THROW(gpt2d::load_curve(path.string()), std::runtime_error);
  std::filesystem::remove(path);
}

TEST(Io, DeterministicBytes) {
  gpt2d::GptDocument doc;
  doc.gpt = gpt2d::GptMatrix{2, Eigen::MatrixXcd::Random(2, 2),
                             Eigen::MatrixXcd::Random(2, 2), 0.75};
  doc.contrast = gpt2d::Contrast::from_sigma(5.0);
  doc.meta["seed"] = "7";
  const auto p1 = temp_file("gpt2d_det_1.json");
  const auto p2 = temp_file("gpt2d_det_2.json");
  gpt2d::save_gpt(p1.string(), doc);
  gpt2d::save_gpt(p2.string(), doc);
  EXPECT_EQ(slurp(p1.string()), slurp(p2.string()));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Io, MetricsFile) {
  const auto path = temp_file("gpt2d_test_metrics.txt");
  gpt2d::save_metrics(path.string(), {0.03125, 0.015625});
  const std::string text = slurp(path.string());
  EXPECT_NE(text.find("sym_diff_ratio=0.03125"), std::string::npos);
  EXPECT_NE(text.find("hausdorff=0.015625"), std::string::npos);
  std::filesystem::remove(path);
}
