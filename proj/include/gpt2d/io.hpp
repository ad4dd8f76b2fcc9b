#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpt2d/curve_metrics.hpp"
#include "gpt2d/gpt.hpp"

namespace gpt2d {

/// On-disk polarization-tensor document: the tensors, the contrast they were
/// computed at, and free-form provenance metadata (shape, quadrature size,
/// noise parameters).
struct GptDocument {
  GptMatrix gpt;
  Contrast contrast;
  std::map<std::string, std::string> meta;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      rows.push_back({m(i, j).real(), m(i, j).imag()});
  return rows;
}

inline Eigen::MatrixXcd matrix_from_json(const nlohmann::json& rows, int order) {
  if (int(rows.size()) != order * order)
    throw std::runtime_error("gpt file: tensor entry count does not match order");
  Eigen::MatrixXcd m(order, order);
  int idx = 0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      m(i, j) = cplx(rows[idx][0].get<double>(), rows[idx][1].get<double>());
      ++idx;
    }
  return m;
}

}  // namespace detail

inline void save_gpt(const std::string& path, const GptDocument& doc) {
  nlohmann::json j;
  j["order"] = doc.gpt.order;
  if (std::isinf(doc.contrast.sigma))
    j["sigma"] = "inf";
  else
    j["sigma"] = doc.contrast.sigma;
  j["lambda"] = doc.contrast.lambda;
  j["n1"] = detail::matrix_to_json(doc.gpt.n1);
  j["n2"] = detail::matrix_to_json(doc.gpt.n2);
  j["meta"] = doc.meta;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_gpt: cannot open " + path);
  out << j.dump(1) << "\n";
}

inline GptDocument load_gpt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_gpt: cannot open " + path);
  nlohmann::json j;
  in >> j;
  GptDocument doc;
  doc.gpt.order = j.at("order").get<int>();
  doc.gpt.lambda = j.at("lambda").get<double>();
  if (j.at("sigma").is_string()) {
    if (j["sigma"].get<std::string>() != "inf")
      throw std::runtime_error("load_gpt: unknown sigma sentinel");
    doc.contrast.sigma = std::numeric_limits<double>::infinity();
  } else {
    doc.contrast.sigma = j.at("sigma").get<double>();
  }
  doc.contrast.lambda = doc.gpt.lambda;
  if (!(std::abs(doc.contrast.lambda) >= 0.5 - 1e-12))
    throw std::runtime_error("load_gpt: |lambda| >= 1/2 violated");
  doc.gpt.n1 = detail::matrix_from_json(j.at("n1"), doc.gpt.order);
  doc.gpt.n2 = detail::matrix_from_json(j.at("n2"), doc.gpt.order);
  if (j.contains("meta"))
    for (const auto& [k, v] : j["meta"].items()) doc.meta[k] = v.get<std::string>();
  return doc;
}

/// Curve files are columnar text: '#'-prefixed "key = value" header lines,
/// then one "theta x y" row per sample with theta strictly increasing in
/// [0, 2 pi).
inline void save_curve(const std::string& path, const Curve& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_curve: cannot open " + path);
  out << "# closed = " << (curve.closed ? 1 : 0) << "\n";
  for (const auto& [k, v] : curve.header) out << "# " << k << " = " << v << "\n";
  out << "# columns: theta x y\n";
  for (std::size_t j = 0; j < curve.points.size(); ++j)
    out << detail::format_double(curve.theta[j]) << " "
        << detail::format_double(curve.points[j].real()) << " "
        << detail::format_double(curve.points[j].imag()) << "\n";
}

inline Curve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_curve: cannot open " + path);
  Curve curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      std::string val = line.substr(eq + 1);
      auto trim = [](std::string& s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
      };
      trim(key);
      trim(val);
      if (key == "closed")
        curve.closed = val != "0";
      else
        curve.header.emplace_back(key, val);
      continue;
    }
    std::istringstream row(line);
    double t, x, y;
    if (!(row >> t >> x >> y)) throw std::runtime_error("load_curve: malformed row");
    curve.theta.push_back(t);
    curve.points.emplace_back(x, y);
  }
  for (std::size_t j = 0; j < curve.theta.size(); ++j) {
    if (curve.theta[j] < 0.0 || curve.theta[j] >= 2.0 * pi)
      throw std::runtime_error("load_curve: theta outside [0, 2 pi)");
    if (j > 0 && curve.theta[j] <= curve.theta[j - 1])
      throw std::runtime_error("load_curve: theta not strictly increasing");
  }
  return curve;
}

inline void save_metrics(const std::string& path, const CurveMetrics& metrics) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_metrics: cannot open " + path);
  out << "sym_diff_ratio=" << detail::format_double(metrics.sym_diff_ratio) << "\n";
  out << "hausdorff=" << detail::format_double(metrics.hausdorff) << "\n";
}

}  // namespace gpt2d
