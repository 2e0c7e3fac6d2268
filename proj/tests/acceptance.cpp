// Acceptance suite: one line per criterion, exit nonzero on any failure.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>

#include "cusptorsion/assembler.hpp"
#include "cusptorsion/cusp_model.hpp"
#include "cusptorsion/nilcoh.hpp"
#include "cusptorsion/torsion.hpp"
#include "test_support.hpp"

using namespace cusptorsion;
namespace ts = test_support;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  double budget_seconds;
  explicit Criterion(std::string n, double budget) : name(std::move(n)), budget_seconds(budget) {
    start = std::chrono::steady_clock::now();
  }
  void finish(bool ok, const std::string& detail) {
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed < budget_seconds;
    bool pass = ok && in_budget;
    std::cout << (pass ? "PASS " : "FAIL ") << name << " (" << std::fixed
              << std::setprecision(2) << elapsed << "s of " << budget_seconds << "s)"
              << (detail.empty() ? "" : " - " + detail);
    if (!in_budget) std::cout << " [over budget]";
    std::cout << "\n";
    if (!pass) ++failures;
  }
  std::chrono::steady_clock::time_point start;
};

HighestWeight gw(std::vector<Rat> comps) {
  return HighestWeight{std::move(comps), WeightContext::G};
}

void criterion_1_kostant_cross_check() {
  Criterion c("criterion 1: Kostant enumeration vs closed form", 10.0);
  std::mt19937 rng(20260810);
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (int n = 1; n <= 5 && ok; ++n) {
    auto w1 = compute_W1(n);
    if (static_cast<int>(w1.size()) != 2 * (n + 1)) {
      ok = false;
      detail = "wrong |W^1| at n=" + std::to_string(n);
      break;
    }
    RootSystem rs = build_root_system(n + 1);
    std::multiset<int> lengths;
    for (const auto& w : w1) lengths.insert(weyl_length(w, rs));
    std::multiset<int> expected;
    for (int k = 0; k <= 2 * n; ++k) expected.insert(k);
    expected.insert(n);
    if (lengths != expected) {
      ok = false;
      detail = "wrong length multiset at n=" + std::to_string(n);
      break;
    }
    for (int t = 0; t < 25 && ok; ++t) {
      for (Flavor f : {Flavor::SO0, Flavor::Spin}) {
        auto L = ts::random_dominant_weight(rng, n, f);
        if (kostant_data_enumerated(L, n) != kostant_data_closed_form(L, n)) {
          ok = false;
          detail = "multiset mismatch at n=" + std::to_string(n);
          break;
        }
        ++checked;
      }
    }
  }
  if (ok) detail = std::to_string(checked) + " random weights, exact equality";
  c.finish(ok, detail);
}

void criterion_2_oracle_validation() {
  Criterion c("criterion 2: brute-force nilpotent cohomology vs Kostant", 60.0);
  bool ok = true;
  std::string detail;
  auto check = [&](int d, std::vector<Rat> comps) {
    if (!ok) return;
    int n = (d - 1) / 2;
    HighestWeight L = gw(comps);
    CohomologyReport got = nil_cohomology(build_rep(d, L));
    CohomologyReport want = kostant_prediction(L, n);
    bool match = got.dims == want.dims;
    for (size_t k = 0; match && k < got.weights.size(); ++k)
      match = got.weights[k] == want.weights[k];
    if (!match) {
      ok = false;
      detail = "mismatch at d=" + std::to_string(d);
    }
  };
  check(3, {Rat(0), Rat(0)});
  check(3, {Rat(1), Rat(0)});
  check(3, {Rat(2), Rat(0)});
  check(3, {Rat(1), Rat(1)});
  check(3, {Rat(2), Rat(1)});
  check(5, {Rat(0), Rat(0), Rat(0)});
  check(5, {Rat(1), Rat(0), Rat(0)});
  if (ok) detail = "7 modules, dims and torus weights exact";
  c.finish(ok, detail);
}

void criterion_3_torsion_multiplicativity() {
  Criterion c("criterion 3: torsion multiplicativity and base change", 60.0);
  std::mt19937 rng(424242);
  bool ok = true;
  std::string detail;
  std::uniform_int_distribution<int> counts(2, 4), q0s(-1, 2);
  for (int t = 0; t < 100 && ok; ++t) {
    auto triple = ts::random_exact_triple(rng, q0s(rng), counts(rng), 6);
    auto res = multiplicativity_check(triple.sub, triple.mid, triple.quot);
    if (!res.equal) {
      ok = false;
      detail = "multiplicativity failed at trial " + std::to_string(t);
    }
  }
  for (int t = 0; t < 100 && ok; ++t) {
    BasedCochainComplex cx = ts::random_complex(rng, 0, 4, 5);
    cx.cohomology_bases = torsion_detail::canonical_cohomology_bases(cx);
    TorsionScalar base = reidemeister_torsion(cx);
    BasedCochainComplex changed = cx;
    TorsionScalar factor = TorsionScalar::one();
    for (auto& [q, basis] : changed.cohomology_bases) {
      int h = static_cast<int>(basis.size());
      RatMat A;
      for (;;) {
        A = ts::random_matrix(rng, h, h);
        if (det(A) != 0) break;
      }
      std::vector<RatVec> nb(h, RatVec(cx.dim(q)));
      for (int j = 0; j < h; ++j)
        for (int i = 0; i < h; ++i)
          for (int x = 0; x < cx.dim(q); ++x) nb[j][x] += A.at(i, j) * basis[i][x];
      basis = nb;
      Rat da = boost::multiprecision::abs(det(A));
      factor = factor * TorsionScalar::rational(da).pow_pm1(q % 2 == 0 ? -1 : 1);
    }
    if (reidemeister_torsion(changed) != base * factor) {
      ok = false;
      detail = "base-change rule failed at trial " + std::to_string(t);
    }
  }
  if (ok) detail = "100 exact triples + 100 base changes, exact";
  c.finish(ok, detail);
}

void criterion_4_heat_trace() {
  Criterion c("criterion 4: model heat-trace asymptotics and semigroup", 30.0);
  bool ok = true;
  std::string detail;
  for (int d : {3, 5}) {
    for (double t : {0.25, 1.0, 4.0}) {
      for (double u : {1.0, 2.0}) {
        CuspModelParams p{d, u, t, u * std::exp(10.0 * std::sqrt(t))};
        TraceComparison cmp = compare_truncated_trace(p);
        double dev = std::abs(cmp.truncated - cmp.asymptotic);
        if (dev >= 1e-6 * std::abs(cmp.asymptotic) + cmp.tail_bound + 1e-15) {
          ok = false;
          detail = "trace deviation at d=" + std::to_string(d) + " t=" + std::to_string(t);
        }
      }
    }
  }
  CuspModelParams p{3, 1.0, 1.0, 100.0};
  for (auto [y, yp] : {std::pair{1.5, 2.5}, {2.0, 4.0}}) {
    double conv = heat_semigroup_convolution(p, 0.35, 0.65, y, yp);
    CuspModelParams psum = p;
    psum.t = 1.0;
    if (std::abs(conv - model_heat_kernel(psum, y, yp)) >= 1e-6) {
      ok = false;
      detail = "semigroup deviation";
    }
  }
  if (ok) detail = "12 parameter triples within tail bound; semigroup to 1e-6";
  c.finish(ok, detail);
}

void criterion_5_y_independence() {
  Criterion c("criterion 5: Y independence and cohomological collapse", 60.0);
  std::mt19937 rng(5151);
  bool ok = true;
  std::string detail;
  const std::vector<double> Ys = {1.0, std::exp(1.0), 10.0, 100.0};
  for (int n = 1; n <= 3 && ok; ++n) {
    for (int t = 0; t < 20 && ok; ++t) {
      auto L = ts::random_dominant_weight(rng, n, Flavor::SO0, /*acyclic=*/true);
      CuspGeometry geom{1, {1.0}, Ys};
      try {
        auto yi = y_independence_check(L, n, geom, Flavor::SO0, 1e-9);
        for (const auto& chk : yi.checks)
          if (std::abs(chk.combined - yi.correction) > 1e-9) ok = false;
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
  }
  // worked case: S = log(3)/2
  CuspGeometry geom{1, {1.0}, Ys};
  auto yi = y_independence_check(gw({Rat(2), Rat(1)}), 1, geom, Flavor::SO0, 1e-9);
  if (std::abs(yi.correction - 0.5 * std::log(3.0)) > 1e-12) {
    ok = false;
    detail = "worked case S != log(3)/2";
  }
  if (ok)
    detail = "60 random acyclic weights x 4 heights, constant to 1e-9; S = 0.5 log 3 = " +
             std::to_string(yi.correction);
  c.finish(ok, detail);
}

void criterion_6_anomaly() {
  Criterion c("criterion 6: anomaly constant and linearity", 10.0);
  bool ok = std::abs(anomaly_constant(1) - (-1.0 / (8.0 * kPi))) <= 1e-15;
  std::string detail = ok ? "c(1) = -1/(8 pi) to 1e-15; linear in kappa and volumes" : "c(1) off";
  HighestWeight L = gw({Rat(2), Rat(1)});
  CuspGeometry g1{1, {1.5}, {}};
  CuspGeometry g2{2, {1.5, 1.5}, {}};
  CuspGeometry g3{1, {3.0}, {}};
  double a1 = anomaly_term(1, L, g1, Flavor::SO0);
  if (std::abs(anomaly_term(1, L, g2, Flavor::SO0) - 2 * a1) > 1e-15 ||
      std::abs(anomaly_term(1, L, g3, Flavor::SO0) - 2 * a1) > 1e-15) {
    ok = false;
    detail = "linearity failed";
  }
  c.finish(ok, detail);
}

void criterion_7_profile_invariants() {
  Criterion c("criterion 7: boundary profile invariants", 30.0);
  std::mt19937 rng(7007);
  bool ok = true;
  std::string detail;
  int tested = 0;
  for (int n = 1; n <= 4 && ok; ++n) {
    for (int t = 0; t < 15 && ok; ++t) {
      Flavor f = t % 3 == 0 ? Flavor::Spin : Flavor::SO0;
      auto L = ts::random_dominant_weight(rng, n, f);
      auto p = boundary_profile(L, n, 1 + t % 3, f);
      Int euler = 0;
      for (int k = 0; k <= 2 * n; ++k) {
        if (p.dims[k] != p.dims[2 * n - k]) ok = false;
        euler += (k % 2 == 0 ? p.dims[k] : -p.dims[k]);
        if (k != n && p.lambdas[k] != -p.lambdas[2 * n - k]) ok = false;
      }
      if (euler != 0) ok = false;
      if (p.lambda_n_plus != -p.lambda_n_minus) ok = false;
      bool acyclic = L.components.back() != 0;
      if (p.strongly_acyclic != acyclic) ok = false;
      if ((p.lambda_n_plus != 0) != acyclic) ok = false;
      if (is_strongly_acyclic(L) != acyclic) ok = false;
      ++tested;
    }
  }
  if (ok) detail = std::to_string(tested) + " profiles: duality, antisymmetry, Euler, acyclicity";
  c.finish(ok, detail);
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";
  criterion_1_kostant_cross_check();
  criterion_2_oracle_validation();
  criterion_3_torsion_multiplicativity();
  criterion_4_heat_trace();
  criterion_5_y_independence();
  criterion_6_anomaly();
  criterion_7_profile_invariants();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
