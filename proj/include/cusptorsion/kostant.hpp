#ifndef CUSPTORSION_KOSTANT_HPP
#define CUSPTORSION_KOSTANT_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "cusptorsion/weights.hpp"

namespace cusptorsion {

/// One degree of nilpotent cohomology: cohomological degree l(w), the split-torus
/// weight lambda (e_1 coefficient of w(Lambda+rho_G)) and the M-type sigma.
struct KostantDatum {
  int length = 0;
  Rat lambda;
  HighestWeight sigma;

  bool operator==(const KostantDatum& o) const {
    return length == o.length && lambda == o.lambda && sigma == o.sigma;
  }
};

inline bool kostant_order(const KostantDatum& a, const KostantDatum& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.lambda != b.lambda) return a.lambda > b.lambda;
  return a.sigma.components > b.sigma.components;
}

inline std::vector<Rat> rho_g(int n) {
  std::vector<Rat> rho(n + 1);
  for (int j = 1; j <= n + 1; ++j) rho[j - 1] = n + 1 - j;
  return rho;
}

/// W^1 = {w : w^{-1} alpha > 0 for all positive roots alpha of m}; 2(n+1) elements.
/// The Weyl group is enumerated once per n and the filtered set memoized.
inline std::vector<WeylElement> compute_W1(int n) {
  if (n < 1 || n > 6) throw ResourceError("compute_W1 supports 1 <= n <= 6");
  static std::mutex mu;
  static std::map<int, std::vector<WeylElement>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // Positive roots of m = so(2n), living in coordinates 2..n+1 of the G weight space.
  std::vector<std::vector<Rat>> m_roots;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<Rat> minus(n + 1), plus(n + 1);
      minus[i] = 1;
      minus[j] = -1;
      plus[i] = 1;
      plus[j] = 1;
      m_roots.push_back(std::move(minus));
      m_roots.push_back(std::move(plus));
    }
  std::vector<WeylElement> w1;
  for (const auto& w : enumerate_weyl_group(n + 1)) {
    WeylElement winv = w.inverse();
    bool ok = std::all_of(m_roots.begin(), m_roots.end(), [&](const std::vector<Rat>& alpha) {
      return is_positive_vector(winv.apply(alpha));
    });
    if (ok) w1.push_back(w);
  }
  if (static_cast<int>(w1.size()) != 2 * (n + 1))
    throw ConsistencyError("W^1 does not have 2(n+1) elements");
  std::lock_guard<std::mutex> lock(mu);
  cache[n] = w1;
  return w1;
}

inline void require_g_weight(const HighestWeight& L, int n, const char* who) {
  if (L.context != WeightContext::G)
    throw ValidationError(std::string(who) + " requires a G-context weight");
  if (L.rank() != n + 1)
    throw ValidationError(std::string(who) + " requires a weight of rank n+1");
  if (!is_dominant(L.components, WeightContext::G))
    throw ValidationError(std::string(who) + " requires a dominant weight");
}

/// Kostant data by direct Weyl-group enumeration: for each w in W^1, the triple
/// (l(w), first coordinate of w(Lambda+rho_G), remaining coordinates minus rho_M).
inline std::vector<KostantDatum> kostant_data_enumerated(const HighestWeight& L, int n) {
  require_g_weight(L, n, "kostant_data_enumerated");
  RootSystem rs = build_root_system(n + 1);
  std::vector<Rat> v(L.components);
  const std::vector<Rat> rho = rho_g(n);
  for (int i = 0; i <= n; ++i) v[i] += rho[i];

  std::vector<KostantDatum> data;
  for (const auto& w : compute_W1(n)) {
    std::vector<Rat> u = w.apply(v);
    KostantDatum kd;
    kd.length = weyl_length(w, rs);
    kd.lambda = u[0];
    std::vector<Rat> sigma(u.begin() + 1, u.end());
    for (int j = 0; j < n; ++j) sigma[j] -= (n - 1 - j);  // subtract rho_M
    if (!is_dominant(sigma, WeightContext::M))
      throw ConsistencyError("enumerated Kostant sigma is not M-dominant");
    kd.sigma = HighestWeight{std::move(sigma), WeightContext::M};
    data.push_back(std::move(kd));
  }
  std::sort(data.begin(), data.end(), kostant_order);
  return data;
}

/// Kostant data in closed form: lambda_k = Lambda_{k+1} + n - k and
/// sigma_k = (Lambda_1+1, ..., Lambda_k+1, Lambda_{k+2}, ..., Lambda_{n+1}) for
/// k = 0..n, the +- split at k = n, and the w0-reflected upper half.
inline std::vector<KostantDatum> kostant_data_closed_form(const HighestWeight& L, int n) {
  require_g_weight(L, n, "kostant_data_closed_form");
  const std::vector<Rat>& c = L.components;

  auto sigma_low = [&](int k) {
    std::vector<Rat> s;
    for (int j = 1; j <= k; ++j) s.push_back(c[j - 1] + 1);
    for (int j = k + 2; j <= n + 1; ++j) s.push_back(c[j - 1]);
    if (!is_dominant(s, WeightContext::M))
      throw ConsistencyError("closed-form Kostant sigma is not M-dominant");
    return HighestWeight{std::move(s), WeightContext::M};
  };
  auto lambda_low = [&](int k) { return c[k] + (n - k); };

  std::vector<KostantDatum> data;
  for (int k = 0; k < n; ++k) data.push_back({k, lambda_low(k), sigma_low(k)});

  // Middle degree: the pair (lambda_n^+, sigma_n^+), (lambda_n^-, sigma_n^-).
  Rat lam_n = lambda_low(n);
  HighestWeight sig_n = sigma_low(n);
  if (c[n] >= 0) {
    data.push_back({n, lam_n, sig_n});
    data.push_back({n, -lam_n, w0_twist(sig_n)});
  } else {
    data.push_back({n, -lam_n, w0_twist(sig_n)});
    data.push_back({n, lam_n, sig_n});
  }

  for (int k = n + 1; k <= 2 * n; ++k)
    data.push_back({k, -lambda_low(2 * n - k), w0_twist(sigma_low(2 * n - k))});

  std::sort(data.begin(), data.end(), kostant_order);
  return data;
}

/// Per-degree boundary cohomology data: dim H^k, lambda_k, sigma_k, and the
/// +-/- split at the middle degree.
struct BoundaryProfile {
  int n = 1;
  int kappa = 1;
  bool strongly_acyclic = false;
  std::vector<Int> dims;              // k = 0..2n
  std::vector<Rat> lambdas;           // lambdas[n] = lambda_n^+
  std::vector<HighestWeight> sigmas;  // sigmas[n] = sigma_n^+
  Rat lambda_n_plus, lambda_n_minus;
  HighestWeight sigma_n_plus, sigma_n_minus;
};

/// dim H^k(boundary) = kappa dim(sigma_k) for k != n and 2 kappa dim(sigma_n) at k = n.
inline BoundaryProfile boundary_profile(const HighestWeight& L, int n, int kappa, Flavor flavor) {
  require_g_weight(L, n, "boundary_profile");
  if (kappa < 1) throw ValidationError("the number of cusps kappa must be positive");
  if (!all_integers(L.components) && flavor != Flavor::Spin)
    throw ValidationError("half-integral weights require the Spin flavor");

  std::vector<KostantDatum> data = kostant_data_closed_form(L, n);
  RootSystem d_n = build_root_system(n);

  BoundaryProfile p;
  p.n = n;
  p.kappa = kappa;
  p.strongly_acyclic = is_strongly_acyclic(L);
  p.dims.resize(2 * n + 1);
  p.lambdas.resize(2 * n + 1);
  p.sigmas.resize(2 * n + 1);

  for (const auto& kd : data) {
    int k = kd.length;
    Int dim_sigma = weyl_dimension(d_n, kd.sigma);
    if (k != n) {
      p.dims[k] = Int(kappa) * dim_sigma;
      p.lambdas[k] = kd.lambda;
      p.sigmas[k] = kd.sigma;
    }
  }

  // Middle degree: the two split pieces, dims asserted equal.
  std::vector<const KostantDatum*> mid;
  for (const auto& kd : data)
    if (kd.length == n) mid.push_back(&kd);
  if (mid.size() != 2) throw ConsistencyError("expected exactly two Kostant data at degree n");
  const KostantDatum* plus = mid[0]->lambda >= mid[1]->lambda ? mid[0] : mid[1];
  const KostantDatum* minus = mid[0]->lambda >= mid[1]->lambda ? mid[1] : mid[0];
  Int dim_plus = weyl_dimension(d_n, plus->sigma);
  Int dim_minus = weyl_dimension(d_n, minus->sigma);
  if (dim_plus != dim_minus)
    throw ConsistencyError("sigma_n^+ and sigma_n^- have different dimensions");
  p.dims[n] = Int(2) * kappa * dim_plus;
  p.lambda_n_plus = plus->lambda;
  p.lambda_n_minus = minus->lambda;
  p.sigma_n_plus = plus->sigma;
  p.sigma_n_minus = minus->sigma;
  p.lambdas[n] = plus->lambda;
  p.sigmas[n] = plus->sigma;

  // Profile invariants.
  Int euler = 0;
  for (int k = 0; k <= 2 * n; ++k) {
    if (p.dims[k] != p.dims[2 * n - k]) throw ConsistencyError("profile dims are not symmetric");
    euler += (k % 2 == 0 ? p.dims[k] : -p.dims[k]);
    if (k != n && p.lambdas[k] != -p.lambdas[2 * n - k])
      throw ConsistencyError("profile lambdas are not antisymmetric");
  }
  if (euler != 0) throw ConsistencyError("boundary Euler characteristic is nonzero");
  if (p.lambda_n_plus != -p.lambda_n_minus || p.lambda_n_plus < 0)
    throw ConsistencyError("middle-degree lambda split is inconsistent");
  if (p.strongly_acyclic) {
    for (int k = n + 1; k <= 2 * n; ++k)
      if (p.lambdas[k] >= 0) throw ConsistencyError("expected lambda_k < 0 above the middle degree");
    if (p.lambda_n_minus >= 0) throw ConsistencyError("expected lambda_n^- < 0");
  }
  return p;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_KOSTANT_HPP
