#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "cusptorsion/kostant.hpp"
#include "test_support.hpp"

using namespace cusptorsion;

namespace {

HighestWeight gw(std::vector<Rat> comps) {
  return HighestWeight{std::move(comps), WeightContext::G};
}

std::multiset<int> length_multiset(const std::vector<KostantDatum>& data) {
  std::multiset<int> s;
  for (const auto& kd : data) s.insert(kd.length);
  return s;
}

}  // namespace

TEST_CASE("W^1 computation") {
  REQUIRE(compute_W1(1).size() == 4);
  REQUIRE(compute_W1(2).size() == 6);
  auto w1 = compute_W1(3);
  REQUIRE(w1.size() == 8);
  auto rs = build_root_system(4);
  std::multiset<int> lengths;
  for (const auto& w : w1) lengths.insert(weyl_length(w, rs));
  REQUIRE(lengths == std::multiset<int>({0, 1, 2, 3, 3, 4, 5, 6}));
  REQUIRE_THROWS_AS(compute_W1(7), ResourceError);
  REQUIRE_THROWS_AS(compute_W1(0), ResourceError);
}

TEST_CASE("enumerated Kostant data on worked weights") {
  SECTION("d = 3, weight (2,1)") {
    auto data = kostant_data_enumerated(gw({Rat(2), Rat(1)}), 1);
    REQUIRE(data.size() == 4);
    REQUIRE(data[0].length == 0);
    REQUIRE(data[0].lambda == 3);
    REQUIRE(data[0].sigma.components == std::vector<Rat>{1});
    REQUIRE(data[1].lambda == 1);
    REQUIRE(data[1].sigma.components == std::vector<Rat>{3});
    REQUIRE(data[2].lambda == -1);
    REQUIRE(data[2].sigma.components == std::vector<Rat>{-3});
    REQUIRE(data[3].lambda == -3);
  }
  SECTION("d = 5, weight (3,2,1)") {
    auto data = kostant_data_enumerated(gw({Rat(3), Rat(2), Rat(1)}), 2);
    REQUIRE(length_multiset(data) == std::multiset<int>({0, 1, 2, 2, 3, 4}));
    std::multiset<Rat> lambdas;
    for (const auto& kd : data) lambdas.insert(kd.lambda);
    REQUIRE(lambdas == std::multiset<Rat>({5, 3, 1, -1, -3, -5}));
  }
}

TEST_CASE("closed-form Kostant data") {
  SECTION("d = 5, weight (3,2,1): sigmas") {
    auto data = kostant_data_closed_form(gw({Rat(3), Rat(2), Rat(1)}), 2);
    REQUIRE(data[0].sigma.components == std::vector<Rat>{2, 1});   // k=0
    REQUIRE(data[1].sigma.components == std::vector<Rat>{4, 1});   // k=1
    REQUIRE(data[2].lambda == 1);                                  // k=2 plus
    REQUIRE(data[2].sigma.components == std::vector<Rat>{4, 3});
    REQUIRE(data[3].lambda == -1);                                 // k=2 minus
    REQUIRE(data[3].sigma.components == std::vector<Rat>{4, -3});
  }
  SECTION("d = 3, weight (2,1): lambda ladder") {
    auto data = kostant_data_closed_form(gw({Rat(2), Rat(1)}), 1);
    REQUIRE(data[0].lambda == 3);
    REQUIRE(data[1].lambda == 1);
    REQUIRE(data[2].lambda == -1);
    REQUIRE(data[3].lambda == -3);
  }
  SECTION("degenerate middle for (1,0)") {
    auto data = kostant_data_closed_form(gw({Rat(1), Rat(0)}), 1);
    REQUIRE(data[1].lambda == 0);
    REQUIRE(data[2].lambda == 0);
  }
  SECTION("zero weight: lambda_k = n - k, pinned by the enumeration") {
    for (int n = 1; n <= 3; ++n) {
      auto data = kostant_data_closed_form(gw(std::vector<Rat>(n + 1, Rat(0))), n);
      for (const auto& kd : data)
        if (kd.length < n) REQUIRE(kd.lambda == n - kd.length);
      REQUIRE(data == kostant_data_enumerated(gw(std::vector<Rat>(n + 1, Rat(0))), n));
    }
  }
  SECTION("negative last component flips the middle split") {
    auto data = kostant_data_closed_form(gw({Rat(2), Rat(-1)}), 1);
    REQUIRE(data[1].lambda == 1);
    REQUIRE(data[1].sigma.components == std::vector<Rat>{-3});
    REQUIRE(data[2].lambda == -1);
    REQUIRE(data[2].sigma.components == std::vector<Rat>{3});
  }
}

TEST_CASE("enumerated and closed form agree as ordered lists") {
  std::mt19937 rng(99);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 8; ++t) {
      auto L = test_support::random_dominant_weight(rng, n, Flavor::SO0);
      REQUIRE(kostant_data_enumerated(L, n) == kostant_data_closed_form(L, n));
    }
    for (int t = 0; t < 4; ++t) {
      auto L = test_support::random_dominant_weight(rng, n, Flavor::Spin);
      REQUIRE(kostant_data_enumerated(L, n) == kostant_data_closed_form(L, n));
    }
  }
}

TEST_CASE("boundary profile") {
  SECTION("d = 3, weight (2,1), one cusp") {
    auto p = boundary_profile(gw({Rat(2), Rat(1)}), 1, 1, Flavor::SO0);
    REQUIRE(p.dims == std::vector<Int>({1, 2, 1}));
    REQUIRE(p.lambdas[0] == 3);
    REQUIRE(p.lambda_n_plus == 1);
    REQUIRE(p.lambda_n_minus == -1);
    REQUIRE(p.lambdas[2] == -3);
    REQUIRE(p.strongly_acyclic);
  }
  SECTION("d = 5, weight (3,2,1), one cusp") {
    auto p = boundary_profile(gw({Rat(3), Rat(2), Rat(1)}), 2, 1, Flavor::SO0);
    REQUIRE(p.dims == std::vector<Int>({8, 24, 32, 24, 8}));
  }
  SECTION("kappa linearity") {
    auto p1 = boundary_profile(gw({Rat(3), Rat(2), Rat(1)}), 2, 1, Flavor::SO0);
    auto p3 = boundary_profile(gw({Rat(3), Rat(2), Rat(1)}), 2, 3, Flavor::SO0);
    for (int k = 0; k <= 4; ++k) REQUIRE(p3.dims[k] == Int(3) * p1.dims[k]);
  }
  SECTION("sum rule: boundary dims count the same modules as W^1") {
    std::mt19937 rng(5);
    for (int n = 1; n <= 3; ++n) {
      auto L = test_support::random_dominant_weight(rng, n, Flavor::SO0);
      auto p = boundary_profile(L, n, 1, Flavor::SO0);
      Int profile_total = 0;
      for (const auto& d : p.dims) profile_total += d;
      Int w1_total = 0;
      RootSystem d_n = build_root_system(n);
      for (const auto& kd : kostant_data_closed_form(L, n))
        w1_total += weyl_dimension(d_n, kd.sigma);
      REQUIRE(profile_total == w1_total);
    }
  }
  SECTION("profile invariants hold on random weights") {
    std::mt19937 rng(17);
    for (int n = 1; n <= 4; ++n)
      for (int t = 0; t < 10; ++t) {
        auto L = test_support::random_dominant_weight(rng, n, Flavor::SO0);
        auto p = boundary_profile(L, n, 1 + t % 3, Flavor::SO0);
        Int euler = 0;
        for (int k = 0; k <= 2 * n; ++k) {
          REQUIRE(p.dims[k] == p.dims[2 * n - k]);
          euler += (k % 2 == 0 ? p.dims[k] : -p.dims[k]);
          if (k != n) REQUIRE(p.lambdas[k] == -p.lambdas[2 * n - k]);
        }
        REQUIRE(euler == 0);
        REQUIRE(p.lambda_n_plus == -p.lambda_n_minus);
        REQUIRE(p.lambda_n_plus >= 0);
        REQUIRE(p.strongly_acyclic == (L.components.back() != 0));
        REQUIRE(p.strongly_acyclic == (p.lambda_n_plus != 0));
        REQUIRE(p.strongly_acyclic == is_strongly_acyclic(L));
      }
  }
  SECTION("half-integral weights need Spin") {
    auto spin = make_weight({Rat(3, 2), Rat(1, 2)}, WeightContext::G, Flavor::Spin);
    REQUIRE_NOTHROW(boundary_profile(spin, 1, 1, Flavor::Spin));
    REQUIRE_THROWS_AS(boundary_profile(spin, 1, 1, Flavor::SO0), ValidationError);
  }
  SECTION("invalid kappa") {
    REQUIRE_THROWS_AS(boundary_profile(gw({Rat(2), Rat(1)}), 1, 0, Flavor::SO0),
                      ValidationError);
  }
}
