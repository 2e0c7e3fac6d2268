#ifndef CUSPTORSION_WEIGHTS_HPP
#define CUSPTORSION_WEIGHTS_HPP

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "cusptorsion/rational.hpp"

namespace cusptorsion {

enum class Flavor { SO0, Spin };

inline Flavor parse_flavor(const std::string& s) {
  if (s == "SO0" || s == "so0") return Flavor::SO0;
  if (s == "Spin" || s == "spin") return Flavor::Spin;
  throw ValidationError("unknown group flavor: " + s + " (expected SO0 or Spin)");
}

inline std::string flavor_name(Flavor f) { return f == Flavor::SO0 ? "SO0" : "Spin"; }

/// Which group a highest weight parametrizes. Ranks: G has n+1, K and M have n.
enum class WeightContext { G, K, M };

/// Odd dimension d = 2n+1 and the integrality flavor of the weight lattice.
struct GroupDatum {
  int d = 3;
  int n = 1;
  Flavor flavor = Flavor::SO0;

  static GroupDatum make(int d, Flavor flavor) {
    if (d < 3 || d % 2 == 0) throw ValidationError("dimension d must be odd and >= 3");
    return GroupDatum{d, (d - 1) / 2, flavor};
  }
};

/// Dominant weight (k_1,...,k_m) in e-coordinates.
struct HighestWeight {
  std::vector<Rat> components;
  WeightContext context = WeightContext::G;

  int rank() const { return static_cast<int>(components.size()); }

  bool operator==(const HighestWeight& o) const {
    return components == o.components && context == o.context;
  }
};

inline bool all_integers(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& r) { return is_integer(r); });
}

inline bool all_half_integers(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& r) { return is_half_integer(r); });
}

/// Dominance chain k_1 >= ... >= k_{m-1} >= |k_m| (K context additionally k_m >= 0).
inline bool is_dominant(const std::vector<Rat>& k, WeightContext ctx) {
  const int m = static_cast<int>(k.size());
  for (int i = 0; i + 2 < m; ++i)
    if (k[i] < k[i + 1]) return false;
  if (m >= 2 && k[m - 2] < boost::multiprecision::abs(k[m - 1])) return false;
  if (ctx == WeightContext::K && m >= 1 && k[m - 1] < 0) return false;
  return true;
}

/// Validated constructor: integrality class (half-integers only under Spin) and dominance.
inline HighestWeight make_weight(std::vector<Rat> comps, WeightContext ctx, Flavor flavor) {
  if (comps.empty()) throw ValidationError("weight must have at least one component");
  if (!all_integers(comps)) {
    if (!all_half_integers(comps))
      throw ValidationError("weight components must be all integers or all half-integers");
    if (flavor != Flavor::Spin)
      throw ValidationError("half-integral weights require the Spin flavor");
  }
  if (!is_dominant(comps, ctx)) throw ValidationError("weight is not dominant");
  return HighestWeight{std::move(comps), ctx};
}

/// Signed permutation with even sign-change count; acts by (w v)_{perm[i]} = signs[i] v_i.
struct WeylElement {
  std::vector<int> perm;   // 0-based images
  std::vector<int> signs;  // entries +1 / -1

  int rank() const { return static_cast<int>(perm.size()); }

  bool is_identity() const {
    for (int i = 0; i < rank(); ++i)
      if (perm[i] != i || signs[i] != 1) return false;
    return true;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != rank()) throw ValidationError("Weyl action rank mismatch");
    std::vector<Rat> out(v.size());
    for (int i = 0; i < rank(); ++i) out[perm[i]] = signs[i] * v[i];
    return out;
  }

  WeylElement inverse() const {
    WeylElement w;
    w.perm.resize(rank());
    w.signs.resize(rank());
    for (int i = 0; i < rank(); ++i) {
      w.perm[perm[i]] = i;
      w.signs[perm[i]] = signs[i];
    }
    return w;
  }

  WeylElement compose(const WeylElement& o) const {  // this after o
    WeylElement w;
    w.perm.resize(rank());
    w.signs.resize(rank());
    for (int i = 0; i < rank(); ++i) {
      w.perm[i] = perm[o.perm[i]];
      w.signs[i] = o.signs[i] * signs[o.perm[i]];
    }
    return w;
  }

  bool operator==(const WeylElement& o) const { return perm == o.perm && signs == o.signs; }
  bool operator<(const WeylElement& o) const {
    if (perm != o.perm) return perm < o.perm;
    return signs > o.signs;  // +1 sorts before -1
  }
};

/// Positive roots {e_i +- e_j : i < j} of D_rank with their half sum (rank-1, ..., 1, 0).
struct RootSystem {
  int rank = 0;
  std::vector<std::vector<Rat>> positive_roots;
  std::vector<Rat> half_sum;
};

inline RootSystem build_root_system(int rank) {
  if (rank <= 0) throw ValidationError("root system rank must be positive");
  RootSystem rs;
  rs.rank = rank;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      std::vector<Rat> minus(rank), plus(rank);
      minus[i] = 1;
      minus[j] = -1;
      plus[i] = 1;
      plus[j] = 1;
      rs.positive_roots.push_back(std::move(minus));
      rs.positive_roots.push_back(std::move(plus));
    }
  rs.half_sum.assign(rank, Rat(0));
  for (const auto& alpha : rs.positive_roots)
    for (int i = 0; i < rank; ++i) rs.half_sum[i] += alpha[i] / 2;
  return rs;
}

/// Enumeration cap; CUSPTORSION_MAX_RANK may lower it, hard ceiling 8.
inline int weyl_rank_cap() {
  int cap = 8;
  if (const char* s = std::getenv("CUSPTORSION_MAX_RANK")) {
    int v = std::atoi(s);
    if (v >= 1) cap = std::min(v, 8);
  }
  return cap;
}

/// All 2^{rank-1} rank! signed permutations with even sign-change count, in
/// lexicographic (permutation, signs) order.
inline std::vector<WeylElement> enumerate_weyl_group(int rank) {
  if (rank < 1 || rank > weyl_rank_cap())
    throw ResourceError("Weyl enumeration limited to rank in [1, " +
                        std::to_string(weyl_rank_cap()) + "], got " + std::to_string(rank));
  std::vector<int> perm(rank);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<WeylElement> out;
  do {
    for (unsigned mask = 0; mask < (1u << rank); ++mask) {
      if (__builtin_popcount(mask) % 2 != 0) continue;
      WeylElement w;
      w.perm = perm;
      w.signs.resize(rank);
      for (int i = 0; i < rank; ++i) w.signs[i] = (mask >> i) & 1 ? -1 : 1;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// A coordinate vector is a positive root vector iff its first nonzero entry is positive.
inline bool is_positive_vector(const std::vector<Rat>& v) {
  for (const Rat& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

/// Length = #{alpha > 0 : w(alpha) < 0}.
inline int weyl_length(const WeylElement& w, const RootSystem& rs) {
  if (w.rank() != rs.rank) throw ValidationError("Weyl element / root system rank mismatch");
  int len = 0;
  for (const auto& alpha : rs.positive_roots)
    if (!is_positive_vector(w.apply(alpha))) ++len;
  return len;
}

inline Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Weyl dimension formula prod <L+rho,alpha>/<rho,alpha>; exact positive integer.
inline Int weyl_dimension(const RootSystem& rs, const HighestWeight& L) {
  if (L.rank() != rs.rank) throw ValidationError("weight rank does not match root system");
  if (!is_dominant(L.components, WeightContext::G))
    throw ValidationError("weyl_dimension requires a dominant weight");
  std::vector<Rat> shifted(L.components);
  for (int i = 0; i < rs.rank; ++i) shifted[i] += rs.half_sum[i];
  Rat result = 1;
  for (const auto& alpha : rs.positive_roots) result *= dot(shifted, alpha) / dot(rs.half_sum, alpha);
  if (!is_integer(result) || result <= 0)
    throw ConsistencyError("Weyl dimension did not evaluate to a positive integer");
  return rat_num(result);
}

/// Highest weight of rho composed with the Cartan involution: flips k_{n+1}.
inline HighestWeight theta_twist(const HighestWeight& L) {
  if (L.context != WeightContext::G)
    throw ValidationError("theta_twist applies to G-context weights");
  HighestWeight t = L;
  t.components.back() = -t.components.back();
  return t;
}

/// rho differs from its theta twist iff the last component is nonzero.
inline bool is_strongly_acyclic(const HighestWeight& L) {
  if (L.context != WeightContext::G)
    throw ValidationError("is_strongly_acyclic applies to G-context weights");
  return L.components.back() != 0;
}

/// Action of the nontrivial restricted Weyl element on M-types: flips the last component.
inline HighestWeight w0_twist(const HighestWeight& sigma) {
  if (sigma.context != WeightContext::M)
    throw ValidationError("w0_twist applies to M-context weights");
  HighestWeight t = sigma;
  t.components.back() = -t.components.back();
  return t;
}

/// c(sigma) = sum_{j=2}^{n+1} (k_j + rho_j)^2 - sum_{j=1}^{n+1} rho_j^2 with rho_j = n+1-j.
inline Rat casimir_constant(const HighestWeight& sigma) {
  if (sigma.context != WeightContext::M)
    throw ValidationError("casimir_constant applies to M-context weights");
  const int n = sigma.rank();
  Rat s = 0;
  for (int j = 2; j <= n + 1; ++j) {
    Rat t = sigma.components[j - 2] + (n + 1 - j);
    s += t * t;
  }
  for (int j = 1; j <= n + 1; ++j) s -= Rat((n + 1 - j)) * (n + 1 - j);
  return s;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_WEIGHTS_HPP
