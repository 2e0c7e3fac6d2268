#ifndef CUSPTORSION_TEST_SUPPORT_HPP
#define CUSPTORSION_TEST_SUPPORT_HPP

#include <random>

#include "cusptorsion/kostant.hpp"
#include "cusptorsion/torsion.hpp"

namespace test_support {

using namespace cusptorsion;

/// Desk-scale random dominant G-weight with components <= 4; when acyclic is
/// set the last component is nonzero. Spin flavor shifts to half-integers.
inline HighestWeight random_dominant_weight(std::mt19937& rng, int n, Flavor flavor,
                                            bool acyclic = false) {
  std::uniform_int_distribution<int> delta(0, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<int> k(n + 1);
  k[n] = delta(rng);
  if (acyclic && k[n] == 0) k[n] = 1;
  for (int i = n - 1; i >= 0; --i) k[i] = std::min(4, k[i + 1] + delta(rng));
  std::vector<Rat> comps(n + 1);
  for (int i = 0; i <= n; ++i) comps[i] = k[i];
  if (sign(rng)) comps[n] = -comps[n];
  if (flavor == Flavor::Spin)
    for (auto& c : comps) c += Rat(1, 2);
  // shifting by 1/2 keeps dominance except possibly |k_{n+1}|; repair
  if (comps[n] < 0 && n >= 1 && comps[n - 1] < -comps[n]) comps[n] = -comps[n];
  return make_weight(comps, WeightContext::G, flavor);
}

inline Rat random_small_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return Rat(num(rng), den(rng));
}

inline RatMat random_matrix(std::mt19937& rng, int rows, int cols) {
  RatMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_small_rat(rng);
  return m;
}

/// Random complex with exact d^2 = 0: each next differential factors through
/// the left annihilator of the previous one.
inline BasedCochainComplex random_complex(std::mt19937& rng, int degree_min, int count,
                                          int maxdim) {
  BasedCochainComplex c;
  c.degree_min = degree_min;
  std::uniform_int_distribution<int> dd(0, maxdim);
  for (int i = 0; i < count; ++i) c.dims.push_back(dd(rng));
  for (int i = 0; i + 1 < count; ++i) {
    if (i == 0) {
      c.differentials.push_back(random_matrix(rng, c.dims[1], c.dims[0]));
      continue;
    }
    RatMat dpT = c.differentials[i - 1].transpose();
    auto ker = kernel_basis(dpT);
    RatMat annihilator =
        ker.empty() ? RatMat(0, c.dims[i]) : RatMat::from_columns(ker, c.dims[i]).transpose();
    c.differentials.push_back(random_matrix(rng, c.dims[i + 1], annihilator.rows()) * annihilator);
  }
  c.validate();
  return c;
}

struct ExactTriple {
  BasedCochainComplex sub, mid, quot;
};

/// Random degreewise-exact triple in block form. The coupling mixes a strict
/// part (cocycle-valued, coboundary-killing, so the connecting map is usually
/// nonzero) with a homotopy part d'Z - Z d''.
inline ExactTriple random_exact_triple(std::mt19937& rng, int degree_min, int count,
                                       int maxdim) {
  ExactTriple t;
  t.sub = random_complex(rng, degree_min, count, maxdim);
  t.quot = random_complex(rng, degree_min, count, maxdim);

  std::vector<RatMat> Z(count);
  for (int i = 0; i < count; ++i) Z[i] = random_matrix(rng, t.sub.dims[i], t.quot.dims[i]);

  std::vector<RatMat> X(count - 1);
  for (int i = 0; i + 1 < count; ++i) {
    // cocycles of the sub complex in degree i+1
    RatMat d_up = i + 2 < count ? t.sub.differentials[i + 1] : RatMat(0, t.sub.dims[i + 1]);
    RatMat K;
    if (d_up.rows() == 0) {
      K = RatMat::identity(t.sub.dims[i + 1]);
    } else {
      auto kv = kernel_basis(d_up);
      K = kv.empty() ? RatMat(t.sub.dims[i + 1], 0)
                     : RatMat::from_columns(kv, t.sub.dims[i + 1]);
    }
    // row space annihilating the coboundaries of the quotient in degree i
    RatMat W;
    if (i == 0) {
      W = RatMat::identity(t.quot.dims[0]);
    } else {
      auto kw = kernel_basis(t.quot.differentials[i - 1].transpose());
      W = kw.empty() ? RatMat(0, t.quot.dims[i])
                     : RatMat::from_columns(kw, t.quot.dims[i]).transpose();
    }
    RatMat strict = K * random_matrix(rng, K.cols(), W.rows()) * W;
    X[i] = strict + t.sub.differentials[i] * Z[i] - Z[i + 1] * t.quot.differentials[i];
  }

  t.mid.degree_min = degree_min;
  for (int i = 0; i < count; ++i) t.mid.dims.push_back(t.sub.dims[i] + t.quot.dims[i]);
  for (int i = 0; i + 1 < count; ++i) {
    RatMat D(t.mid.dims[i + 1], t.mid.dims[i]);
    for (int r = 0; r < t.sub.dims[i + 1]; ++r) {
      for (int c = 0; c < t.sub.dims[i]; ++c) D.at(r, c) = t.sub.differentials[i].at(r, c);
      for (int c = 0; c < t.quot.dims[i]; ++c) D.at(r, t.sub.dims[i] + c) = X[i].at(r, c);
    }
    for (int r = 0; r < t.quot.dims[i + 1]; ++r)
      for (int c = 0; c < t.quot.dims[i]; ++c)
        D.at(t.sub.dims[i + 1] + r, t.sub.dims[i] + c) = t.quot.differentials[i].at(r, c);
    t.mid.differentials.push_back(std::move(D));
  }
  t.mid.validate();
  return t;
}

/// Two-term complex 0 -> Q^m -A-> Q^m -> 0.
inline BasedCochainComplex two_term(const RatMat& a, int degree_min = 0) {
  BasedCochainComplex c;
  c.degree_min = degree_min;
  c.dims = {a.cols(), a.rows()};
  c.differentials = {a};
  return c;
}

inline BasedCochainComplex scalar_two_term(const Rat& a, int degree_min = 0) {
  RatMat m(1, 1);
  m.at(0, 0) = a;
  return two_term(m, degree_min);
}

}  // namespace test_support

#endif  // CUSPTORSION_TEST_SUPPORT_HPP
