#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gpt2d/io.hpp"
#include "gpt2d/recover.hpp"

namespace gpt2d {

enum class Method { disk, ellipse, conformal };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::disk: return "disk";
    case Method::ellipse: return "ellipse";
    case Method::conformal: return "conformal";
  }
  return "?";
}

inline Method method_from_name(const std::string& name) {
  if (name == "disk") return Method::disk;
  if (name == "ellipse") return Method::ellipse;
  if (name == "conformal") return Method::conformal;
  throw std::invalid_argument("unknown method: " + name);
}

/// One forward/recovery experiment cell.
struct ExperimentConfig {
  ShapeSpec shape;
  std::string shape_name = "shape";
  Contrast contrast;
  int order = 6;
  int n_quad = 1024;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  NoiseMode noise_mode = NoiseMode::absolute;
  Method method = Method::ellipse;
  int curve_samples = 512;

  void validate() const {
    if (order < 2) throw std::invalid_argument("config: order >= 2 required");
    if (n_quad < 8 * order)
      throw std::invalid_argument("config: n_quad >= 8 * order required");
    if (curve_samples < 3)
      throw std::invalid_argument("config: curve_samples >= 3 required");
  }
};

inline std::string sigma_text(double sigma) {
  if (std::isinf(sigma)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", sigma);
  return buf;
}

inline GptDocument run_forward(const ExperimentConfig& cfg) {
  cfg.validate();
  const BoundaryFrame frame = boundary_frame(cfg.shape, cfg.n_quad);
  GptDocument doc;
  doc.gpt = gpt_forward(frame, cfg.contrast, cfg.order);
  doc.gpt = add_noise(doc.gpt, cfg.snr_db, cfg.seed, cfg.noise_mode);
  doc.contrast = cfg.contrast;
  doc.meta["shape"] = cfg.shape_name;
  doc.meta["sigma"] = sigma_text(cfg.contrast.sigma);
  doc.meta["n_quad"] = std::to_string(cfg.n_quad);
  doc.meta["order"] = std::to_string(cfg.order);
  doc.meta["snr"] = std::isinf(cfg.snr_db) ? "inf" : detail::format_double(cfg.snr_db);
  doc.meta["seed"] = std::to_string(cfg.seed);
  doc.meta["noise_mode"] = cfg.noise_mode == NoiseMode::absolute ? "absolute" : "relative";
  return doc;
}

struct RecoveryOutput {
  Curve curve;
};

/// Dispatches one of the three analytic methods on a tensor document and
/// samples the reconstructed boundary; the recovered parameters are recorded
/// in the curve header.
inline RecoveryOutput run_recovery(const GptDocument& doc, Method method, int order,
                                   int curve_samples = 512) {
  if (doc.gpt.order < order)
    throw std::invalid_argument("recover: tensor file order below requested order");
  RecoveryOutput out;
  auto fmt_cplx = [](cplx z) {
    return detail::format_double(z.real()) + " " + detail::format_double(z.imag());
  };
  switch (method) {
    case Method::conformal: {
      const ExteriorMap map = recover_conformal(doc.gpt, doc.contrast, order);
      out.curve = sample_curve([&map](double t) { return map.boundary_point(t); },
                               curve_samples);
      out.curve.header.emplace_back("method", "conformal");
      out.curve.header.emplace_back("gamma", detail::format_double(map.gamma));
      out.curve.header.emplace_back("a0", fmt_cplx(map.a0));
      for (std::size_t k = 0; k < map.coeffs.size(); ++k)
        out.curve.header.emplace_back("a" + std::to_string(k + 1), fmt_cplx(map.coeffs[k]));
      break;
    }
    case Method::disk:
    case Method::ellipse: {
      const PerturbationResult res =
          method == Method::disk
              ? recover_disk(doc.gpt, doc.contrast, order)
              : recover_ellipse_perturbation(doc.gpt, doc.contrast, order);
      out.curve = sample_curve([&res](double t) { return res.curve_point(t); },
                               curve_samples);
      out.curve.header.emplace_back("method", method_name(method));
      out.curve.header.emplace_back(method == Method::disk ? "gamma_d" : "gamma_e",
                                    detail::format_double(res.base.gamma_e));
      out.curve.header.emplace_back("e0", fmt_cplx(res.base.e0));
      if (method == Method::ellipse)
        out.curve.header.emplace_back("e1", fmt_cplx(res.base.e1));
      for (std::size_t k = 0; k < res.fhat.size(); ++k)
        out.curve.header.emplace_back("fhat" + std::to_string(k), fmt_cplx(res.fhat[k]));
      break;
    }
  }
  return out;
}

inline Curve sample_truth(const ShapeSpec& shape, int samples, const std::string& name) {
  Curve c = sample_curve([&shape](double t) { return shape.point(t); }, samples);
  c.header.emplace_back("shape", name);
  return c;
}

struct DemoCell {
  std::string id;
  std::string shape;
  std::string sigma;
  std::string snr;
  std::uint64_t seed = 0;
  int order = 6;
  Method method = Method::ellipse;
  std::string gpt_file, truth_file, recon_file, metrics_file;
  CurveMetrics metrics;
  bool failed = false;
  std::string failure;
};

namespace detail {

struct DemoRow {
  Contrast contrast;
  int order = 6;
  double snr = std::numeric_limits<double>::infinity();
};

struct DemoPlan {
  std::string shape_name;
  ShapeSpec shape;
  std::vector<DemoRow> rows;
};

inline DemoPlan demo_plan(const std::string& figure) {
  const double inf = std::numeric_limits<double>::infinity();
  DemoPlan plan;
  auto row = [](double sigma, int order, double snr) {
    return DemoRow{Contrast::from_sigma(sigma), order, snr};
  };
  if (figure == "kite") {
    plan = {"kite", ShapeSpec::kite(), {row(5, 6, inf), row(50, 6, inf), row(inf, 6, inf)}};
  } else if (figure == "kite-orders") {
    plan = {"kite", ShapeSpec::kite(), {row(50, 2, inf), row(50, 4, inf)}};
  } else if (figure == "asymmetric") {
    plan = {"asymmetric", ShapeSpec::asymmetric(),
            {row(0.2, 6, inf), row(0.02, 6, inf), row(0, 6, inf)}};
  } else if (figure == "asymmetric-noise") {
    plan = {"asymmetric", ShapeSpec::asymmetric(),
            {row(0.02, 6, inf), row(0.02, 6, 5.0), row(0.02, 6, 2.0)}};
  } else if (figure == "straight") {
    plan = {"straight", ShapeSpec::straight(),
            {row(0.2, 6, inf), row(0.02, 6, inf), row(0, 6, inf)}};
  } else if (figure == "crescent") {
    plan = {"crescent", ShapeSpec::crescent(),
            {row(5, 6, inf), row(50, 6, inf), row(inf, 6, inf)}};
  } else {
    throw std::invalid_argument("unknown demo figure: " + figure);
  }
  return plan;
}

inline std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (c == '.' || c == '/') ? '_' : c;
  return out;
}

}  // namespace detail

/// Runs every (row x method) cell of a figure: forward tensors once per row
/// (reusing one discretization across contrasts), then all three recoveries
/// with truth/reconstruction curves, per-cell metrics, and a manifest.
/// Returns the cells; a cell whose method legitimately refuses (degenerate
/// configuration) is recorded as failed rather than aborting the figure.
inline std::vector<DemoCell> run_demo(const std::string& figure, const std::string& outdir,
                                      int n_quad = 1024, std::uint64_t seed = 0,
                                      int curve_samples = 512,
                                      NoiseMode noise_mode = NoiseMode::absolute) {
  namespace fs = std::filesystem;
  const detail::DemoPlan plan = detail::demo_plan(figure);
  fs::create_directories(outdir);

  const BoundaryFrame frame = boundary_frame(plan.shape, n_quad);
  const NpDiscretization disc = assemble(frame);
  const Curve truth = sample_truth(plan.shape, curve_samples, plan.shape_name);

  std::vector<DemoCell> cells;
  nlohmann::json manifest;
  manifest["figure"] = figure;
  manifest["cells"] = nlohmann::json::array();

  std::uint64_t row_seed = seed;
  for (const detail::DemoRow& row : plan.rows) {
    GptDocument doc;
    doc.gpt = gpt_forward(disc, row.contrast, row.order);
    doc.gpt = add_noise(doc.gpt, row.snr, row_seed, noise_mode);
    doc.contrast = row.contrast;
    doc.meta["shape"] = plan.shape_name;
    doc.meta["sigma"] = sigma_text(row.contrast.sigma);
    doc.meta["n_quad"] = std::to_string(n_quad);
    doc.meta["order"] = std::to_string(row.order);
    doc.meta["snr"] = std::isinf(row.snr) ? "inf" : detail::format_double(row.snr);
    doc.meta["seed"] = std::to_string(row_seed);
    doc.meta["noise_mode"] = noise_mode == NoiseMode::absolute ? "absolute" : "relative";

    std::string row_id = plan.shape_name + "_s" + detail::sanitize(sigma_text(row.contrast.sigma)) +
                         "_ord" + std::to_string(row.order);
    if (!std::isinf(row.snr))
      row_id += "_snr" + detail::sanitize(detail::format_double(row.snr));

    const std::string gpt_file = row_id + "_gpt.json";
    const std::string truth_file = row_id + "_truth.txt";
    save_gpt((fs::path(outdir) / gpt_file).string(), doc);
    save_curve((fs::path(outdir) / truth_file).string(), truth);

    for (Method method : {Method::disk, Method::ellipse, Method::conformal}) {
      DemoCell cell;
      cell.id = row_id + "_" + method_name(method);
      cell.shape = plan.shape_name;
      cell.sigma = doc.meta["sigma"];
      cell.snr = doc.meta["snr"];
      cell.seed = row_seed;
      cell.order = row.order;
      cell.method = method;
      cell.gpt_file = gpt_file;
      cell.truth_file = truth_file;
      cell.recon_file = cell.id + "_recon.txt";
      cell.metrics_file = cell.id + "_metrics.txt";
      try {
        const RecoveryOutput rec = run_recovery(doc, method, row.order, curve_samples);
        save_curve((fs::path(outdir) / cell.recon_file).string(), rec.curve);
        cell.metrics = evaluate_curves(truth, rec.curve);
        save_metrics((fs::path(outdir) / cell.metrics_file).string(), cell.metrics);
      } catch (const std::exception& e) {
        cell.failed = true;
        cell.failure = e.what();
      }
      nlohmann::json jc;
      jc["id"] = cell.id;
      jc["shape"] = cell.shape;
      jc["sigma"] = cell.sigma;
      jc["snr"] = cell.snr;
      jc["seed"] = cell.seed;
      jc["order"] = cell.order;
      jc["method"] = method_name(method);
      jc["gpt"] = cell.gpt_file;
      jc["truth"] = cell.truth_file;
      if (cell.failed) {
        jc["error"] = cell.failure;
      } else {
        jc["recon"] = cell.recon_file;
        jc["metrics_file"] = cell.metrics_file;
        jc["sym_diff_ratio"] = cell.metrics.sym_diff_ratio;
        jc["hausdorff"] = cell.metrics.hausdorff;
      }
      manifest["cells"].push_back(jc);
      cells.push_back(std::move(cell));
    }
    ++row_seed;
  }

  std::ofstream mf(fs::path(outdir) / "manifest.json");
  if (!mf) throw std::runtime_error("run_demo: cannot write manifest");
  mf << manifest.dump(1) << "\n";
  return cells;
}

}  // namespace gpt2d
