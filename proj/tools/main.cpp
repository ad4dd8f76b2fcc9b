// Command-line harness: forward tensor generation, noise injection, shape
// recovery by the three analytic methods, shape-error evaluation, and the
// canned figure demos.
//
// Exit status: 0 success, 1 usage error, 2 numerical/method error.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "gpt2d/gpt2d.hpp"

namespace {

using gpt2d::cplx;

double parse_sigma(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF")
    return std::numeric_limits<double>::infinity();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw CLI::ValidationError("--sigma", "zero denominator");
    return num / den;
  }
  return std::stod(text);
}

double parse_snr(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF")
    return std::numeric_limits<double>::infinity();
  return std::stod(text);
}

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

struct ShapeOptions {
  std::string name = "kite";
  double gamma = 1.0;
  std::string e0 = "0", e1 = "0", a0 = "0", center = "0";
  double radius = 1.0;
  std::vector<std::string> coeffs;
  double rounding = 0.02;
};

void add_shape_options(CLI::App* cmd, ShapeOptions& opt) {
  cmd->add_option("--shape", opt.name,
                  "kite | asymmetric | straight | crescent | ellipse | disk | map")
      ->required();
  cmd->add_option("--gamma", opt.gamma, "conformal radius (ellipse/map)");
  cmd->add_option("--e0", opt.e0, "ellipse center, 're,im'");
  cmd->add_option("--e1", opt.e1, "ellipse coefficient, 're,im'");
  cmd->add_option("--a0", opt.a0, "map centering coefficient, 're,im'");
  cmd->add_option("--coef", opt.coeffs, "map tail coefficient a_k, 're,im' (repeatable)");
  cmd->add_option("--radius", opt.radius, "disk radius");
  cmd->add_option("--center", opt.center, "disk center, 're,im'");
  cmd->add_option("--rounding", opt.rounding, "corner rounding (straight/crescent)");
}

gpt2d::ShapeSpec build_shape(const ShapeOptions& opt) {
  using gpt2d::ShapeSpec;
  if (opt.name == "kite") return ShapeSpec::kite();
  if (opt.name == "asymmetric") return ShapeSpec::asymmetric();
  if (opt.name == "straight") return ShapeSpec::straight(opt.rounding);
  if (opt.name == "crescent") return ShapeSpec::crescent(opt.rounding);
  if (opt.name == "ellipse")
    return ShapeSpec::ellipse(opt.gamma, parse_complex(opt.e0), parse_complex(opt.e1));
  if (opt.name == "disk") return ShapeSpec::disk(opt.radius, parse_complex(opt.center));
  if (opt.name == "map") {
    gpt2d::ExteriorMap map;
    map.gamma = opt.gamma;
    map.a0 = parse_complex(opt.a0);
    for (const std::string& c : opt.coeffs) map.coeffs.push_back(parse_complex(c));
    return ShapeSpec::from_map(std::move(map));
  }
  throw CLI::ValidationError("--shape", "unknown shape: " + opt.name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-D conductivity inclusions: polarization tensors and analytic "
               "shape recovery"};
  app.require_subcommand(1);

  // ---- forward ----------------------------------------------------------
  ShapeOptions fwd_shape;
  std::string fwd_sigma = "inf", fwd_snr = "inf", fwd_out = "gpt.json", fwd_truth_out;
  std::string fwd_noise_mode = "absolute";
  int fwd_order = 6, fwd_quad = 1024, fwd_curve_samples = 512;
  std::uint64_t fwd_seed = 0;
  CLI::App* fwd = app.add_subcommand("forward", "compute polarization tensors of a shape");
  add_shape_options(fwd, fwd_shape);
  fwd->add_option("--sigma", fwd_sigma, "conductivity: number, fraction, 0 or inf")
      ->required();
  fwd->add_option("--order", fwd_order, "tensor order");
  fwd->add_option("--quad-nodes", fwd_quad, "quadrature nodes");
  fwd->add_option("--snr", fwd_snr, "noise SNR in dB, inf = noiseless");
  fwd->add_option("--seed", fwd_seed, "noise seed");
  fwd->add_option("--noise-mode", fwd_noise_mode, "absolute | relative");
  fwd->add_option("--out", fwd_out, "output tensor file");
  fwd->add_option("--truth-out", fwd_truth_out, "also write the sampled boundary curve");
  fwd->add_option("--curve-samples", fwd_curve_samples, "samples for --truth-out");

  // ---- recover ----------------------------------------------------------
  std::string rec_gpt, rec_method = "ellipse", rec_out = "curve.txt";
  int rec_order = 0, rec_curve_samples = 512;
  CLI::App* rec = app.add_subcommand("recover", "recover a shape from a tensor file");
  rec->add_option("--gpt", rec_gpt, "input tensor file")->required();
  rec->add_option("--method", rec_method, "disk | ellipse | conformal")->required();
  rec->add_option("--order", rec_order, "orders to use (default: file order)");
  rec->add_option("--curve-samples", rec_curve_samples, "output curve samples");
  rec->add_option("--out", rec_out, "output curve file");

  // ---- evaluate ---------------------------------------------------------
  std::string ev_truth, ev_recon, ev_out;
  CLI::App* ev = app.add_subcommand("evaluate", "shape-error metrics of a reconstruction");
  ev->add_option("--truth", ev_truth, "truth curve file")->required();
  ev->add_option("--recon", ev_recon, "reconstruction curve file")->required();
  ev->add_option("--out", ev_out, "optional metrics file");

  // ---- demo -------------------------------------------------------------
  std::string demo_figure, demo_out, demo_noise_mode = "absolute";
  int demo_quad = 1024, demo_curve_samples = 512;
  std::uint64_t demo_seed = 0;
  CLI::App* demo = app.add_subcommand(
      "demo", "run a canned figure: every (contrast x method) cell plus metrics");
  demo->add_option("figure", demo_figure,
                   "kite | kite-orders | asymmetric | asymmetric-noise | straight | crescent")
      ->required();
  demo->add_option("--out", demo_out, "output directory (default demo_<figure>)");
  demo->add_option("--quad-nodes", demo_quad, "quadrature nodes");
  demo->add_option("--seed", demo_seed, "noise seed base");
  demo->add_option("--curve-samples", demo_curve_samples, "curve samples");
  demo->add_option("--noise-mode", demo_noise_mode, "absolute | relative");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fwd->parsed()) {
      gpt2d::ExperimentConfig cfg;
      cfg.shape = build_shape(fwd_shape);
      cfg.shape_name = fwd_shape.name;
      cfg.contrast = gpt2d::Contrast::from_sigma(parse_sigma(fwd_sigma));
      cfg.order = fwd_order;
      cfg.n_quad = fwd_quad;
      cfg.snr_db = parse_snr(fwd_snr);
      cfg.seed = fwd_seed;
      if (fwd_noise_mode != "relative" && fwd_noise_mode != "absolute")
        throw CLI::ValidationError("--noise-mode", "relative or absolute");
      cfg.noise_mode = fwd_noise_mode == "relative" ? gpt2d::NoiseMode::relative
                                                    : gpt2d::NoiseMode::absolute;
      const gpt2d::GptDocument doc = gpt2d::run_forward(cfg);
      gpt2d::save_gpt(fwd_out, doc);
      if (!fwd_truth_out.empty())
        gpt2d::save_curve(fwd_truth_out,
                          gpt2d::sample_truth(cfg.shape, fwd_curve_samples, cfg.shape_name));
      std::cout << "wrote " << fwd_out << "\n";
    } else if (rec->parsed()) {
      const gpt2d::GptDocument doc = gpt2d::load_gpt(rec_gpt);
      const int order = rec_order > 0 ? rec_order : doc.gpt.order;
      const gpt2d::RecoveryOutput out = gpt2d::run_recovery(
          doc, gpt2d::method_from_name(rec_method), order, rec_curve_samples);
      gpt2d::save_curve(rec_out, out.curve);
      std::cout << "wrote " << rec_out << "\n";
    } else if (ev->parsed()) {
      const gpt2d::Curve truth = gpt2d::load_curve(ev_truth);
      const gpt2d::Curve recon = gpt2d::load_curve(ev_recon);
      const gpt2d::CurveMetrics m = gpt2d::evaluate_curves(truth, recon);
      std::cout << "sym_diff_ratio=" << gpt2d::detail::format_double(m.sym_diff_ratio)
                << "\n"
                << "hausdorff=" << gpt2d::detail::format_double(m.hausdorff) << "\n";
      if (!ev_out.empty()) gpt2d::save_metrics(ev_out, m);
    } else if (demo->parsed()) {
      if (demo_noise_mode != "relative" && demo_noise_mode != "absolute")
        throw CLI::ValidationError("--noise-mode", "relative or absolute");
      const std::string outdir = demo_out.empty() ? "demo_" + demo_figure : demo_out;
      const auto cells = gpt2d::run_demo(demo_figure, outdir, demo_quad, demo_seed,
                                         demo_curve_samples,
                                         demo_noise_mode == "relative"
                                             ? gpt2d::NoiseMode::relative
                                             : gpt2d::NoiseMode::absolute);
      for (const auto& cell : cells) {
        std::cout << cell.id;
        if (cell.failed)
          std::cout << "  FAILED: " << cell.failure;
        else
          std::cout << "  sym_diff=" << cell.metrics.sym_diff_ratio
                    << "  hausdorff=" << cell.metrics.hausdorff;
        std::cout << "\n";
      }
      std::cout << "wrote " << outdir << "/manifest.json\n";
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
