#pragma once

#include <stdexcept>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "gpt2d/types.hpp"

namespace gpt2d {

/// Trigonometric derivative of a 2*pi-periodic complex sequence sampled at n
/// uniform points (n even): multiply mode k by (ik)^times. The +-n/2 mode has
/// no well-defined derivative on the grid and is dropped.
inline std::vector<cplx> spectral_derivative(const std::vector<cplx>& samples, int times = 1) {
  const int n = int(samples.size());
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("spectral_derivative: even sample count required");
  Eigen::FFT<double> fft;
  std::vector<cplx> spec(n);
  fft.fwd(spec, samples);
  for (int j = 0; j < n; ++j) {
    if (j == n / 2) {
      spec[j] = 0.0;
      continue;
    }
    const int k = (j < n / 2) ? j : j - n;
    cplx factor = 1.0;
    for (int t = 0; t < times; ++t) factor *= cplx(0.0, double(k));
    spec[j] *= factor;
  }
  std::vector<cplx> out(n);
  fft.inv(out, spec);
  return out;
}

/// Fourier coefficients c_k of a periodic sequence, ordered
/// [k=0, 1, ..., n/2, -n/2+1, ..., -1].
inline std::vector<cplx> fourier_coefficients(const std::vector<cplx>& samples) {
  const int n = int(samples.size());
  Eigen::FFT<double> fft;
  std::vector<cplx> spec(n);
  fft.fwd(spec, samples);
  for (cplx& s : spec) s /= double(n);
  return spec;
}

}  // namespace gpt2d
