#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gpt2d/fpt.hpp"

namespace gpt2d {

/// Equivalent-ellipse data: the map w + e0 + e1/w on |w| = gamma_e.
struct EllipseParams {
  double gamma_e = 1.0;
  cplx e0{};
  cplx e1{};

  double aspect_ratio() const {
    const double g2 = gamma_e * gamma_e;
    return (g2 + std::abs(e1)) / (g2 - std::abs(e1));
  }
};

inline ExteriorMap to_map(const EllipseParams& e) {
  return ellipse_map(e.gamma_e, e.e0, e.e1);
}

/// Result of a perturbation-based recovery: a base ellipse (a disk when
/// e1 = 0) plus recovered modes eps*fhat_k. Only the product eps*fhat is
/// identifiable, so it is stored unseparated.
///
/// The two methods use different field normalizations, recorded in
/// h_normalized:
///  - true (ellipse method): the boundary is
///      w + e0 + e1/w + (w - e1/w) * 2 Re(sum_k eps*fhat_k e^{ik theta}),
///    i.e. the modes belong to the scale-factor-normalized field;
///  - false (disk method): the modes are plain Fourier coefficients of the
///    radial displacement, boundary e0 + (gamma + field) e^{i theta}.
struct PerturbationResult {
  EllipseParams base;
  std::vector<cplx> fhat;  ///< eps*fhat_k, k = 0..M-1
  bool h_normalized = true;

  double field(double theta) const {
    double s = 0.0;
    for (std::size_t k = 0; k < fhat.size(); ++k)
      s += 2.0 * (fhat[k] * std::polar(1.0, double(k) * theta)).real();
    return s;
  }

  cplx curve_point(double theta) const {
    if (h_normalized) {
      const cplx w = std::polar(base.gamma_e, theta);
      return w + base.e0 + base.e1 / w + (w - base.e1 / w) * field(theta);
    }
    return base.e0 + std::polar(base.gamma_e + field(theta), theta);
  }

  std::vector<cplx> sample(int n) const {
    std::vector<cplx> pts(n);
    for (int j = 0; j < n; ++j) pts[j] = curve_point(2.0 * pi * j / double(n));
    return pts;
  }
};

/// Componentwise spectral coefficients of the interior solutions on an
/// ellipse. (s_m, t_m) carry the normal derivatives of the single-basis
/// solutions and vanish per the usual degeneracies (t_m = 0 when e1 = 0 or
/// lambda = 1/2). (s_tan, t_tan) are the tangential-derivative companions,
/// with the opposite inner signs and the (lambda + 1/2) factor; they are
/// needed by the perturbed-ellipse mode extraction.
struct StCoefficients {
  std::vector<cplx> s, t;
  std::vector<cplx> s_tan, t_tan;
};

inline StCoefficients st_coefficients(const EllipseParams& e, const Contrast& contrast,
                                      int order) {
  const double g2 = e.gamma_e * e.gamma_e;
  if (!(std::abs(e.e1) < g2))
    throw MethodError("st_coefficients: non-univalent ellipse (|e1| >= gamma_e^2)");
  const double lam = contrast.lambda;
  StCoefficients out;
  out.s.resize(order);
  out.t.resize(order);
  out.s_tan.resize(order);
  out.t_tan.resize(order);
  for (int m = 1; m <= order; ++m) {
    const double g2m = std::pow(e.gamma_e, 2.0 * m);
    const double g4m = g2m * g2m;
    const double a2m = std::pow(std::abs(e.e1), 2.0 * m);
    const double den = g4m - a2m;
    const cplx e1m = std::pow(e.e1, double(m));
    out.s[m - 1] = (lam * g2m - a2m / (2.0 * g2m)) / den;
    out.t[m - 1] = e1m * (lam - 0.5) / den;
    out.s_tan[m - 1] = (lam * g2m + a2m / (2.0 * g2m)) / den;
    out.t_tan[m - 1] = e1m * (lam + 0.5) / den;
  }
  return out;
}

namespace detail {

/// First-order tensors of an ellipse in its own basis (diagonal entries of
/// the closed form at m = 1).
inline std::pair<cplx, cplx> ellipse_first_order(const EllipseParams& e, double lam) {
  const double g4 = std::pow(e.gamma_e, 4.0);
  const double a2 = std::norm(e.e1);
  const double num = g4 - a2;
  const double den = 4.0 * lam * lam * g4 - a2;
  return {4.0 * pi * e.e1 * num / den,
          8.0 * pi * lam * e.gamma_e * e.gamma_e * num / den};
}

/// Tensors re-expressed in the Faber basis of a pure shift z -> z - a0; used
/// to move the coordinate frame onto the recovered center.
inline void shift_tensors(const GptMatrix& gpt, cplx a0, int order, Eigen::MatrixXcd& n1,
                          Eigen::MatrixXcd& n2) {
  n1 = gpt.n1.topLeftCorner(order, order);
  n2 = gpt.n2.topLeftCorner(order, order);
  if (std::abs(a0) < 1e-14) return;
  ExteriorMap shift;
  shift.a0 = a0;
  const Eigen::MatrixXcd p = faber_table(shift, order).block();
  n1 = (p * n1 * p.transpose()).eval();
  n2 = (p.conjugate() * n2 * p.transpose()).eval();
}

inline double sigma_ratio(double sigma, double denom_shift, double g2) {
  // (sigma - 1) / (sigma + denom_shift * g2) with the sigma = inf limit 1.
  if (std::isinf(sigma)) return 1.0;
  return (sigma - 1.0) / (sigma + denom_shift * g2);
}

}  // namespace detail

/// Perturbed-disk recovery. Finds the disk matching the leading tensor
/// entries (radius from N2_11, center from N2_12), then reads the radial
/// perturbation modes off the first tensor column:
///   eps*fhat_{m-1} = lambda^2 (sigma-1) / (2 pi m gamma_D^{m-1} (sigma+gamma_D^2))
///                    * (N2_{m1}(Omega) - N2_{m1}(D)).
/// A nonzero center is handled by re-deriving the tensors in shifted
/// coordinates before applying the formula.
inline PerturbationResult recover_disk(const GptMatrix& gpt, const Contrast& contrast,
                                       int order) {
  if (gpt.order < order)
    throw std::invalid_argument("recover_disk: tensor order below requested order");
  const double lam = contrast.lambda;
  const cplx n2_11 = gpt.n2(0, 0);
  if (std::abs(n2_11) < 1e-300)
    throw MethodError("recover_disk: vanishing N2_11 (degenerate inclusion)");
  const cplx center = gpt.n2(0, 1) / (2.0 * n2_11);

  Eigen::MatrixXcd n1, n2;
  detail::shift_tensors(gpt, center, order, n1, n2);

  const double g2 = lam * n2(0, 0).real() / (2.0 * pi);
  if (!(g2 > 0.0))
    throw MethodError("recover_disk: nonpositive recovered disk radius");
  const double gamma_d = std::sqrt(g2);
  const double ratio = detail::sigma_ratio(contrast.sigma, 1.0, g2);

  PerturbationResult out;
  out.base = {gamma_d, center, cplx{}};
  out.h_normalized = false;
  out.fhat.resize(order);
  for (int k = 0; k < order; ++k) {
    const int m = k + 1;
    const cplx reference = (m == 1) ? cplx(2.0 * pi * g2 / lam) : cplx{};
    out.fhat[k] = lam * lam * ratio / (2.0 * pi * double(m) * std::pow(gamma_d, m - 1)) *
                  (n2(m - 1, 0) - reference);
  }
  return out;
}

/// Supplementary high-mode channel of the perturbed-disk recovery via the
/// conjugated first-kind column:
///   eps*fhat_{m+1} = lambda^2 (sigma-1) / (2 pi m gamma_D^{m-1} (sigma-gamma_D^2))
///                    * conj(N1_{m1}(Omega)),
/// the centered reference disk having N1 = 0. Returns modes indexed 0..M+1
/// with entries 2..M+1 filled. Refuses when sigma is close to gamma_D^2,
/// where the channel denominator degenerates.
inline std::vector<cplx> recover_disk_fplus(const GptMatrix& gpt, const Contrast& contrast,
                                            int order, double threshold = 0.1) {
  if (gpt.order < order)
    throw std::invalid_argument("recover_disk_fplus: tensor order below requested order");
  const double lam = contrast.lambda;
  const cplx n2_11 = gpt.n2(0, 0);
  if (std::abs(n2_11) < 1e-300)
    throw MethodError("recover_disk_fplus: vanishing N2_11");
  const cplx center = gpt.n2(0, 1) / (2.0 * n2_11);

  Eigen::MatrixXcd n1, n2;
  detail::shift_tensors(gpt, center, order, n1, n2);

  const double g2 = lam * n2(0, 0).real() / (2.0 * pi);
  if (!(g2 > 0.0)) throw MethodError("recover_disk_fplus: nonpositive disk radius");
  const double gamma_d = std::sqrt(g2);
  if (!std::isinf(contrast.sigma) &&
      std::abs(contrast.sigma - g2) <= threshold * std::max(contrast.sigma, g2))
    throw MethodError(
        "recover_disk_fplus: sigma too close to gamma_D^2; conjugate channel is "
        "ill-conditioned");
  const double ratio = detail::sigma_ratio(contrast.sigma, -1.0, g2);

  std::vector<cplx> modes(order + 2, cplx{});
  for (int m = 1; m <= order; ++m)
    modes[m + 1] = lam * lam * ratio /
                   (2.0 * pi * double(m) * std::pow(gamma_d, m - 1)) *
                   std::conj(n1(m - 1, 0));
  return modes;
}

/// Conformal-mapping recovery. Exact at extreme contrast and accurate to
/// O(|lambda| - 1/2) otherwise:
///   gamma^2 = N2_11 / (8 pi lambda),   a0 = N2_12 / (2 N2_11),
///   a_m    = (1 / 4 pi m) sum_{n<=m} p_{mn} N1_{n1},
/// where row m of the Faber table is rebuilt from the already recovered
/// a_0..a_{m-1} at each induction step.
inline ExteriorMap recover_conformal(const GptMatrix& gpt, const Contrast& contrast,
                                     int order) {
  if (gpt.order < order)
    throw std::invalid_argument("recover_conformal: tensor order below requested order");
  const double lam = contrast.lambda;
  const cplx n2_11 = gpt.n2(0, 0);
  if (std::abs(n2_11) < 1e-300)
    throw MethodError("recover_conformal: vanishing N2_11 (degenerate inclusion)");
  const double g2 = n2_11.real() / (8.0 * pi * lam);
  if (!(g2 > 0.0))
    throw MethodError("recover_conformal: nonpositive recovered gamma^2");

  ExteriorMap map;
  map.gamma = std::sqrt(g2);
  map.a0 = gpt.n2(0, 1) / (2.0 * n2_11);
  for (int m = 1; m <= order; ++m) {
    const FaberTable table = faber_table(map, m);  // needs a0..a_{m-1} only
    cplx sum = 0.0;
    for (int n = 1; n <= m; ++n) sum += table.p(m, n) * gpt.n1(n - 1, 0);
    map.coeffs.push_back(sum / (4.0 * pi * double(m)));
  }
  return map;
}

/// The unique ellipse matching the first-order tensors:
///   gamma_e^2 = (lambda N2_11 / 2 pi)
///               * (|N2_11|^2 - |N1_11|^2) / (|N2_11|^2 - 4 lambda^2 |N1_11|^2),
///   e0 = N2_12 / (2 N2_11),   e1 = 2 lambda gamma_e^2 N1_11 / N2_11.
inline EllipseParams equivalent_ellipse(const GptMatrix& gpt, const Contrast& contrast) {
  const double lam = contrast.lambda;
  const cplx n2_11 = gpt.n2(0, 0);
  const cplx n1_11 = gpt.n1(0, 0);
  const double p2 = std::norm(n2_11);
  const double p1 = std::norm(n1_11);
  if (std::abs(n2_11) < 1e-300)
    throw MethodError("equivalent_ellipse: vanishing N2_11 (degenerate inclusion)");
  const double den = p2 - 4.0 * lam * lam * p1;
  if (den < 1e-8 * p2)
    throw MethodError("equivalent_ellipse: degenerate denominator "
                      "|N2_11|^2 - 4 lambda^2 |N1_11|^2 ~ 0");
  const double g2 = lam * n2_11.real() / (2.0 * pi) * (p2 - p1) / den;
  if (!(g2 > 0.0))
    throw MethodError("equivalent_ellipse: nonpositive recovered gamma_e^2");
  EllipseParams out;
  out.gamma_e = std::sqrt(g2);
  out.e0 = gpt.n2(0, 1) / (2.0 * n2_11);
  out.e1 = 2.0 * lam * g2 * n1_11 / n2_11;
  if (!(std::abs(out.e1) < g2))
    throw MethodError("equivalent_ellipse: non-univalent result (|e1| >= gamma_e^2)");
  return out;
}

/// First columns of the tensor differences against the base ellipse in the
/// ellipse's Faber basis; entry index i is subscript m = i+1. Rows m >= 2 need
/// no subtraction (they vanish on the ellipse itself); row 1 subtracts the
/// ellipse's first-order values and is zero when the base is the equivalent
/// ellipse of the input.
struct DeltaColumns {
  Eigen::VectorXcd d1, d2;
};

inline DeltaColumns modified_gpt_delta(const GptMatrix& gpt, const EllipseParams& ellipse,
                                       int order) {
  if (order < 2) throw std::invalid_argument("modified_gpt_delta: order >= 2 required");
  if (gpt.order < order)
    throw std::invalid_argument("modified_gpt_delta: tensor order below requested order");
  ExteriorMap em;
  em.gamma = ellipse.gamma_e;
  em.a0 = ellipse.e0;
  if (ellipse.e1 != cplx{}) em.coeffs.push_back(ellipse.e1);
  const FaberTable table = faber_table(em, order);
  DeltaColumns out{Eigen::VectorXcd(order), Eigen::VectorXcd(order)};
  for (int m = 1; m <= order; ++m) {
    cplx s1 = 0.0, s2 = 0.0;
    for (int n = 1; n <= m; ++n) {
      s1 += table.p(m, n) * gpt.n1(n - 1, 0);
      s2 += std::conj(table.p(m, n)) * gpt.n2(n - 1, 0);
    }
    out.d1(m - 1) = s1;
    out.d2(m - 1) = s2;
  }
  const auto [e1_first, e2_first] = detail::ellipse_first_order(ellipse, gpt.lambda);
  out.d1(0) -= e1_first;
  out.d2(0) -= e2_first;
  return out;
}

/// Perturbed-ellipse recovery: equivalent ellipse, first-column tensor
/// differences in the ellipse's Faber basis, then mode extraction from the
/// linearized shape-derivative system. For each (m, n = 1) pair the two
/// tensor differences and their conjugates form a 4x4 linear system in
/// (eps*fhat_{m+1}, eps*fhat_{m-1}) and conjugates,
///   D1/Q = b+ x + a+ conj(x) - d- y - c- conj(y),
///   D2/Q = A2 y + B2 conj(y) - D2c x - C2 conj(x),
/// with Q = 2 pi m d_m d_1 / gamma_e^{m+1} and channel coefficients built
/// from (s, t) for the normal products and (s_tan, t_tan) for the tangential
/// ones:
///   a+ = W-(s_m s_1),  b+ = W-(t_m t_1),  c- = W-(s_m t_1),  d- = W-(s_1 t_m),
///   A2 = W+(s_m s_1),  B2 = W+(conj(t_m) t_1),
///   C2 = W+(conj(t_m) s_1),  D2c = W+(s_m t_1),
/// where W-+(X) = (sigma X -+ X_tan) / (sigma - 1) pair normal and
/// tangential channels (limits 1 * X at sigma = inf). The m - n component is
/// kept; the zeroth mode is not recovered (it is second order and would only
/// shift area already fixed by gamma_e).
inline PerturbationResult recover_ellipse_perturbation(const GptMatrix& gpt,
                                                       const Contrast& contrast,
                                                       int order) {
  if (order < 2)
    throw std::invalid_argument("recover_ellipse_perturbation: order >= 2 required");
  const EllipseParams ellipse = equivalent_ellipse(gpt, contrast);
  const DeltaColumns delta = modified_gpt_delta(gpt, ellipse, order);
  const StCoefficients st = st_coefficients(ellipse, contrast, order);
  const double lam = contrast.lambda;
  const double sigma = contrast.sigma;

  auto weight_minus = [sigma](cplx normal, cplx tangential) {
    if (std::isinf(sigma)) return normal;
    return (sigma * normal - tangential) / (sigma - 1.0);
  };
  auto weight_plus = [sigma](cplx normal, cplx tangential) {
    if (std::isinf(sigma)) return normal;
    return (sigma * normal + tangential) / (sigma - 1.0);
  };
  auto d_of = [&ellipse, lam](int m) {
    const double g4m = std::pow(ellipse.gamma_e, 4.0 * m);
    const double a2m = std::pow(std::abs(ellipse.e1), 2.0 * m);
    return (g4m - a2m) / (lam * lam - a2m / (4.0 * g4m));
  };

  PerturbationResult out;
  out.base = ellipse;
  out.h_normalized = true;
  out.fhat.assign(order, cplx{});
  const cplx s1 = st.s[0], t1 = st.t[0];
  const cplx s1t = st.s_tan[0], t1t = st.t_tan[0];
  const double d1c = d_of(1);
  for (int k = 1; k < order; ++k) {
    const int m = k + 1;
    const cplx sm = st.s[m - 1], tm = st.t[m - 1];
    const cplx smt = st.s_tan[m - 1], tmt = st.t_tan[m - 1];
    const cplx ap = weight_minus(sm * s1, smt * s1t);
    const cplx bp = weight_minus(tm * t1, tmt * t1t);
    const cplx cm = weight_minus(sm * t1, smt * t1t);
    const cplx dm = weight_minus(s1 * tm, s1t * tmt);
    const cplx a2 = weight_plus(sm * s1, smt * s1t);
    const cplx b2 = weight_plus(std::conj(tm) * t1, std::conj(tmt) * t1t);
    const cplx c2 = weight_plus(std::conj(tm) * s1, std::conj(tmt) * s1t);
    const cplx d2c = weight_plus(sm * t1, smt * t1t);

    const double q = 2.0 * pi * double(m) * d_of(m) * d1c /
                     std::pow(ellipse.gamma_e, m + 1);
    Eigen::Matrix4cd sys;
    // unknowns: x = eps*fhat_{m+1}, conj(x), y = eps*fhat_{m-1}, conj(y)
    sys << bp, ap, -dm, -cm,                                        //
        std::conj(ap), std::conj(bp), -std::conj(cm), -std::conj(dm),  //
        -d2c, -c2, a2, b2,                                          //
        -std::conj(c2), -std::conj(d2c), std::conj(b2), std::conj(a2);
    Eigen::Vector4cd rhs;
    rhs << delta.d1(m - 1) / q, std::conj(delta.d1(m - 1)) / q, delta.d2(m - 1) / q,
        std::conj(delta.d2(m - 1)) / q;
    const Eigen::Vector4cd modes = sys.partialPivLu().solve(rhs);
    out.fhat[k] = modes(2);
  }
  return out;
}

}  // namespace gpt2d
