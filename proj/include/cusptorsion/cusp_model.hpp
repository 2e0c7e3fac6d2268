#ifndef CUSPTORSION_CUSP_MODEL_HPP
#define CUSPTORSION_CUSP_MODEL_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "cusptorsion/weights.hpp"

namespace cusptorsion {

/// Parameters of the model cusp operator: dimension d = 2n+1, Dirichlet cut u,
/// heat time t, truncation height Y.
struct CuspModelParams {
  int d = 3;
  double u = 1.0;
  double t = 1.0;
  double Y = 10.0;

  void validate() const {
    if (d < 3 || d % 2 == 0) throw ValidationError("cusp model needs odd d >= 3");
    if (!(u > 0)) throw ValidationError("Dirichlet cut height u must be positive");
    if (!(t > 0)) throw ValidationError("heat time t must be positive");
    if (!(Y > u)) throw ValidationError("truncation height Y must exceed u");
    if ((d - 1) * std::log(Y) > 690.0)
      throw ValidationError("Y^(d-1) exceeds the floating-point range; lower Y");
  }
};

/// An M-type with its dimension and Casimir constant.
struct SigmaSpectrumEntry {
  HighestWeight sigma;
  Int dim;
  Rat casimir;
};

using SigmaSpectrum = std::vector<SigmaSpectrumEntry>;

/// Builds the spectrum table from M-types, so dim and c(sigma) satisfy their
/// defining formulas by construction.
inline SigmaSpectrum make_sigma_spectrum(const std::vector<HighestWeight>& sigmas) {
  if (sigmas.empty()) throw ValidationError("sigma spectrum must be nonempty");
  SigmaSpectrum spec;
  RootSystem d_n = build_root_system(sigmas.front().rank());
  for (const auto& s : sigmas) {
    if (s.rank() != d_n.rank) throw ValidationError("sigma spectrum entries have mixed ranks");
    spec.push_back({s, weyl_dimension(d_n, s), casimir_constant(s)});
  }
  return spec;
}

namespace quadrature {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double kronrod_nodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
inline constexpr double kronrod_weights[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
inline constexpr double gauss_weights[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct PanelResult {
  double value;
  double error;
};

inline PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double kron = 0, gauss = 0;
  for (int i = 0; i < 15; ++i) {
    double v = f(c + h * kronrod_nodes[i]);
    kron += kronrod_weights[i] * v;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * v;
  }
  return {kron * h, std::abs(kron - gauss) * h};
}

/// Adaptive bisection with a fixed absolute tolerance per panel.
inline double adaptive(const std::function<double(double)>& f, double a, double b,
                       double panel_tol = 1e-12, int max_depth = 48) {
  struct Rec {
    double a, b;
    int depth;
  };
  double total = 0;
  std::vector<Rec> stack{{a, b, 0}};
  while (!stack.empty()) {
    Rec r = stack.back();
    stack.pop_back();
    PanelResult p = gk15(f, r.a, r.b);
    if (p.error <= panel_tol || r.depth >= max_depth) {
      if (p.error > panel_tol)
        throw NumericsError("adaptive quadrature failed to converge");
      total += p.value;
      continue;
    }
    double m = 0.5 * (r.a + r.b);
    stack.push_back({r.a, m, r.depth + 1});
    stack.push_back({m, r.b, r.depth + 1});
  }
  return total;
}

}  // namespace quadrature

namespace cusp_detail {

/// Heat kernel of the half-line Dirichlet problem in the variable r = log y,
/// i.e. the kernel with the (y y')^{(d-1)/2} growth factor stripped.
inline double kernel_log(int d, double log_u, double t, double r1, double r2) {
  const double c = 0.25 * (d - 1) * (d - 1);
  const double direct = (r1 - r2) * (r1 - r2) / (4.0 * t);
  const double mirror = (r1 + r2 - 2.0 * log_u) * (r1 + r2 - 2.0 * log_u) / (4.0 * t);
  return std::exp(-t * c) / std::sqrt(4.0 * kPi * t) * (std::exp(-direct) - std::exp(-mirror));
}

}  // namespace cusp_detail

/// H^u(t,y,y') = e^{-t(d-1)^2/4} (y y')^{(d-1)/2} / sqrt(4 pi t)
///               (e^{-log^2(y'/y)/4t} - e^{-(log(y y') - 2 log u)^2/4t}).
inline double model_heat_kernel(const CuspModelParams& p, double y, double yp) {
  p.validate();
  if (y < p.u || yp < p.u)
    throw ValidationError("heat kernel arguments must lie above the cut height u");
  const double q = 0.5 * (p.d - 1);
  const double growth = q * (std::log(y) + std::log(yp));
  if (growth > 690.0) throw ValidationError("heat kernel arguments exceed the floating range");
  return std::exp(growth) *
         cusp_detail::kernel_log(p.d, std::log(p.u), p.t, std::log(y), std::log(yp));
}

/// Quadrature of the diagonal trace integral int_u^Y H^u(t,y,y) y^{-d} dy,
/// evaluated in the substituted variable r = log y where the integrand is
/// 1 - (Gaussian image term).
inline double truncated_trace(const CuspModelParams& p) {
  p.validate();
  const double u0 = std::log(p.u), y0 = std::log(p.Y);
  const double c = 0.25 * (p.d - 1) * (p.d - 1);
  const double front = std::exp(-p.t * c) / std::sqrt(4.0 * kPi * p.t);
  auto f = [&](double r) {
    double s = (r - u0) * (r - u0) / p.t;
    return front * (1.0 - std::exp(-s));
  };
  return quadrature::adaptive(f, u0, y0);
}

/// Closed form e^{-t(d-1)^2/4} (log Y / sqrt(4 pi t) - log u / sqrt(4 pi t) - 1/4).
inline double trace_asymptotic(const CuspModelParams& p) {
  p.validate();
  const double c = 0.25 * (p.d - 1) * (p.d - 1);
  return std::exp(-p.t * c) *
         ((std::log(p.Y) - std::log(p.u)) / std::sqrt(4.0 * kPi * p.t) - 0.25);
}

/// The Gaussian tail separating the truncated trace from its asymptotic form;
/// exact for this model: e^{-t(d-1)^2/4} erfc((log Y - log u)/sqrt t)/4.
inline double trace_tail_bound(const CuspModelParams& p) {
  p.validate();
  const double c = 0.25 * (p.d - 1) * (p.d - 1);
  const double L = std::log(p.Y) - std::log(p.u);
  return std::exp(-p.t * c) * std::erfc(L / std::sqrt(p.t)) / 4.0;
}

struct TraceComparison {
  double truncated;
  double asymptotic;
  double tail_bound;
};

inline TraceComparison compare_truncated_trace(const CuspModelParams& p) {
  return {truncated_trace(p), trace_asymptotic(p), trace_tail_bound(p)};
}

/// Difference between relative and regularized traces:
/// kappa sum_sigma e^{t c(sigma)} dim(sigma) (log u / sqrt(4 pi t) + 1/4).
inline double reg_rel_difference(double t, double u, int kappa, const SigmaSpectrum& spec) {
  if (!(t > 0) || !(u > 0)) throw ValidationError("reg_rel_difference needs t > 0 and u > 0");
  if (kappa < 1) throw ValidationError("kappa must be positive");
  double sum = 0;
  for (const auto& e : spec)
    sum += std::exp(t * to_double(e.casimir)) * to_double(e.dim);
  return kappa * sum * (std::log(u) / std::sqrt(4.0 * kPi * t) + 0.25);
}

/// Squared norm vol * Y^{2 lambda} / (2 |lambda|) of a unit harmonic form
/// extended over the truncated cusp; requires lambda < 0.
inline double harmonic_norm_sq(const Rat& lambda, double Y, double vol) {
  if (lambda >= 0)
    throw ValidationError("harmonic extension is square-integrable only for lambda < 0");
  if (!(Y > 0) || !(vol > 0)) throw ValidationError("harmonic_norm_sq needs Y > 0 and vol > 0");
  double lam = to_double(lambda);
  return vol * std::exp(2.0 * lam * std::log(Y)) / (2.0 * std::abs(lam));
}

/// Eigenvalues -(c(sigma) + (d-1)^2/4) of L(nu) on the sigma-isotypic pieces.
inline std::vector<Rat> L_nu_eigenvalues(const SigmaSpectrum& spec, int d) {
  if (d < 3 || d % 2 == 0) throw ValidationError("L_nu_eigenvalues needs odd d >= 3");
  std::vector<Rat> out;
  Rat shift = Rat((d - 1) * (d - 1), 4);
  for (const auto& e : spec) out.push_back(-(e.casimir + shift));
  return out;
}

/// Convolution int_u^infty H(t1,y,z) H(t2,z,y') z^{-d} dz, for the semigroup check.
inline double heat_semigroup_convolution(const CuspModelParams& p, double t1, double t2,
                                         double y, double yp) {
  p.validate();
  if (!(t1 > 0) || !(t2 > 0)) throw ValidationError("semigroup times must be positive");
  const double u0 = std::log(p.u);
  const double ry = std::log(y), ryp = std::log(yp);
  if (y < p.u || yp < p.u) throw ValidationError("semigroup arguments must lie above u");
  const double q = 0.5 * (p.d - 1);
  auto f = [&](double r) {
    return cusp_detail::kernel_log(p.d, u0, t1, ry, r) *
           cusp_detail::kernel_log(p.d, u0, t2, r, ryp);
  };
  // The z-dependent growth factors cancel against z^{-d} dz exactly; the
  // remaining integrand decays like a Gaussian around max(ry, ryp).
  double upper = std::max(ry, ryp) + 14.0 * std::sqrt(std::max(t1, t2)) + 5.0;
  double integral = quadrature::adaptive(f, u0, upper, 1e-14);
  return std::exp(q * (ry + ryp)) * integral;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_CUSP_MODEL_HPP
