#pragma once

#include <complex>
#include <stdexcept>

namespace gpt2d {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Raised when a sampled boundary curve is unusable: self-intersecting,
/// degenerate, non-finite, or violating a sampling precondition.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a recovery method or analytic formula hits a degenerate
/// configuration (vanishing denominator, non-univalent base ellipse,
/// inadmissible contrast, ill-conditioned finite section).
struct MethodError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gpt2d
