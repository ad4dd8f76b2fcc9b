#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpt2d {

/// Conductivity contrast of an inclusion against a unit background,
///   lambda = (sigma + 1) / (2 (sigma - 1)),
/// so that |lambda| >= 1/2 always, with the extreme values lambda = +1/2
/// (perfectly conducting, sigma = inf) and lambda = -1/2 (insulating,
/// sigma = 0) represented exactly.
struct Contrast {
  double sigma = std::numeric_limits<double>::infinity();
  double lambda = 0.5;

  static Contrast from_sigma(double sigma) {
    if (std::isnan(sigma) || sigma < 0.0 || sigma == 1.0)
      throw std::invalid_argument("Contrast: sigma must lie in [0, inf], sigma != 1");
    if (std::isinf(sigma)) return {sigma, 0.5};
    if (sigma == 0.0) return {0.0, -0.5};
    return {sigma, (sigma + 1.0) / (2.0 * (sigma - 1.0))};
  }

  static Contrast from_lambda(double lambda) {
    if (!(std::abs(lambda) >= 0.5))
      throw std::invalid_argument("Contrast: |lambda| >= 1/2 required");
    if (lambda == 0.5) return {std::numeric_limits<double>::infinity(), 0.5};
    if (lambda == -0.5) return {0.0, -0.5};
    return {(2.0 * lambda + 1.0) / (2.0 * lambda - 1.0), lambda};
  }

  bool extreme() const { return lambda == 0.5 || lambda == -0.5; }
};

}  // namespace gpt2d
