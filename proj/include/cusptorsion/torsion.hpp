#ifndef CUSPTORSION_TORSION_HPP
#define CUSPTORSION_TORSION_HPP

#include <map>
#include <optional>
#include <vector>

#include "cusptorsion/ratmat.hpp"

namespace cusptorsion {

/// Positive scalar in the form coeff * sqrt(radicand) with exact rational parts.
/// Rational inputs keep radicand = 1; Gram-volume style inputs may not.
struct TorsionScalar {
  Rat coeff = 1;
  Rat radicand = 1;

  static TorsionScalar one() { return {}; }

  static TorsionScalar rational(const Rat& r) {
    if (r <= 0) throw ValidationError("torsion scalars are positive");
    return {r, 1};
  }

  static TorsionScalar root(const Rat& r) {
    if (r <= 0) throw ValidationError("torsion radicand must be positive");
    return {1, r};
  }

  bool is_rational() const { return radicand == 1; }

  double value() const { return to_double(coeff) * std::sqrt(to_double(radicand)); }

  TorsionScalar operator*(const TorsionScalar& o) const {
    TorsionScalar r{coeff * o.coeff, radicand * o.radicand};
    r.normalize();
    return r;
  }

  TorsionScalar operator/(const TorsionScalar& o) const {
    TorsionScalar r{coeff / o.coeff, radicand / o.radicand};
    r.normalize();
    return r;
  }

  TorsionScalar pow_pm1(int exponent) const {  // exponent in {+1, -1}
    if (exponent == 1) return *this;
    return one() / *this;
  }

  bool operator==(const TorsionScalar& o) const {
    return coeff * coeff * radicand == o.coeff * o.coeff * o.radicand;
  }
  bool operator!=(const TorsionScalar& o) const { return !(*this == o); }

  /// Pulls perfect-square factors of the radicand into the coefficient.
  void normalize() {
    if (radicand == 1) return;
    auto extract = [](Int v) {
      Int square_part = 1;
      for (Int p = 2; p <= 1000 && p * p <= v; ++p)
        while (v % (p * p) == 0) {
          v /= p * p;
          square_part *= p;
        }
      Int s = boost::multiprecision::sqrt(v);
      if (s * s == v) {
        square_part *= s;
        v = 1;
      }
      return std::pair<Int, Int>(square_part, v);
    };
    auto [ns, nr] = extract(rat_num(radicand));
    auto [ds, dr] = extract(rat_den(radicand));
    coeff *= Rat(ns, ds);
    radicand = Rat(nr, dr);
  }

  std::string str() const {
    if (is_rational()) return format_rat(coeff);
    return format_rat(coeff) + "*sqrt(" + format_rat(radicand) + ")";
  }
};

/// Finite cochain complex over Q with chosen bases; differentials[i] maps
/// degree degree_min+i to degree_min+i+1. cohomology_bases hold cocycle
/// coordinate vectors whose classes form a basis of H^q.
struct BasedCochainComplex {
  int degree_min = 0;
  std::vector<int> dims;
  std::vector<RatMat> differentials;
  std::map<int, std::vector<RatVec>> cohomology_bases;

  int degree_count() const { return static_cast<int>(dims.size()); }
  int degree_max() const { return degree_min + degree_count() - 1; }

  /// d_q as a matrix, including the zero maps off both ends.
  RatMat d(int q) const {
    int i = q - degree_min;
    if (i < 0 || i >= degree_count()) return RatMat(0, 0);
    if (i == degree_count() - 1) return RatMat(0, dims[i]);
    return differentials[i];
  }

  int dim(int q) const {
    int i = q - degree_min;
    return (i < 0 || i >= degree_count()) ? 0 : dims[i];
  }

  void validate() const {
    if (dims.empty()) throw ValidationError("complex must have at least one degree");
    if (differentials.size() + 1 != dims.size())
      throw ValidationError("complex needs one differential per adjacent degree pair");
    for (int i = 0; i + 1 < degree_count(); ++i)
      if (differentials[i].rows() != dims[i + 1] || differentials[i].cols() != dims[i])
        throw ValidationError("differential shape does not match the graded dimensions");
    for (int i = 0; i + 2 < degree_count(); ++i)
      if (!(differentials[i + 1] * differentials[i]).is_zero())
        throw ValidationError("differential does not square to zero");
    for (const auto& [q, basis] : cohomology_bases) {
      RatMat dq = d(q);
      for (const auto& v : basis) {
        if (static_cast<int>(v.size()) != dim(q))
          throw ValidationError("cohomology basis vector has wrong length");
        if (dq.rows() > 0) {
          RatVec img = dq * v;
          for (const Rat& x : img)
            if (x != 0) throw ValidationError("cohomology basis vector is not a cocycle");
        }
      }
    }
  }
};

/// dim H^q = dim ker d_q - rank d_{q-1}, exactly.
inline std::vector<int> cohomology_dims(const BasedCochainComplex& c) {
  c.validate();
  std::vector<int> h(c.degree_count());
  int prev_rank = 0;
  for (int i = 0; i < c.degree_count(); ++i) {
    int rk = i + 1 < c.degree_count() ? rank(c.differentials[i]) : 0;
    h[i] = c.dims[i] - rk - prev_rank;
    if (h[i] < 0) throw ConsistencyError("negative cohomology dimension");
    prev_rank = rk;
  }
  return h;
}

namespace torsion_detail {

/// Standard-basis columns of d_q whose images are independent (a valid theta_q).
inline RatMat pivot_theta(const RatMat& dq, int dim_q) {
  RatMat r = dq;
  std::vector<int> pivots;
  rref(r, &pivots);
  RatMat theta(dim_q, static_cast<int>(pivots.size()));
  for (size_t k = 0; k < pivots.size(); ++k) theta.at(pivots[k], static_cast<int>(k)) = 1;
  return theta;
}

}  // namespace torsion_detail

/// The torsion scalar tau(C, omega, mu): each degree contributes
/// |det[d theta_{q-1} | theta_q | nu_q]|^{(-1)^{q+1}} against the standard basis,
/// with nu_q the chosen cocycle lifts of the cohomology basis. Convention: the
/// acyclic two-term complex 0 -> C^0 -A-> C^1 -> 0 has tau = |det A|.
/// `thetas` optionally overrides the theta_q choice (used by invariance tests).
inline TorsionScalar reidemeister_torsion(
    const BasedCochainComplex& c,
    const std::map<int, RatMat>* thetas = nullptr) {
  c.validate();
  TorsionScalar tau = TorsionScalar::one();
  RatMat prev_image(0, 0);  // d_{q-1} theta_{q-1} columns, in C^q coordinates

  for (int q = c.degree_min; q <= c.degree_max(); ++q) {
    const int m_q = c.dim(q);
    RatMat dq = c.d(q);
    if (m_q == 0) {
      prev_image = RatMat(c.dim(q + 1), 0);
      continue;
    }

    RatMat theta;
    if (thetas && thetas->count(q)) {
      theta = thetas->at(q);
      if (theta.rows() != m_q) throw ValidationError("theta has wrong ambient dimension");
      if (rank(dq * theta) != theta.cols())
        throw ValidationError("theta columns do not stay independent under d");
    } else {
      theta = torsion_detail::pivot_theta(dq, m_q);
    }
    const int b_q = theta.cols();
    const int b_prev = prev_image.cols();
    const int h_q = m_q - b_q - b_prev;
    if (h_q < 0) throw ConsistencyError("rank bookkeeping failed in torsion computation");

    RatMat nu(m_q, 0);
    if (h_q > 0) {
      auto it = c.cohomology_bases.find(q);
      if (it == c.cohomology_bases.end())
        throw ValidationError("cohomology basis required in degree " + std::to_string(q));
      if (static_cast<int>(it->second.size()) != h_q)
        throw ValidationError("cohomology basis in degree " + std::to_string(q) +
                              " has wrong cardinality");
      nu = RatMat::from_columns(it->second, m_q);
      if (rank(hstack(prev_image, nu)) != b_prev + h_q)
        throw ValidationError("cohomology classes in degree " + std::to_string(q) +
                              " are not linearly independent");
    }

    RatMat M = hstack(hstack(prev_image, theta), nu);
    if (M.rows() != M.cols())
      throw ConsistencyError("torsion chain matrix is not square");
    Rat dM = det(M);
    if (dM == 0) throw ConsistencyError("degenerate torsion chain matrix");
    Rat adM = boost::multiprecision::abs(dM);
    int exponent = ((q % 2 + 2) % 2 == 0) ? -1 : 1;  // (-1)^{q+1}
    tau = tau * TorsionScalar::rational(adM).pow_pm1(exponent);

    prev_image = dq * theta;
  }
  return tau;
}

/// Torsion of an acyclic complex (no cohomology data needed).
inline TorsionScalar les_torsion(const BasedCochainComplex& c) {
  for (int h : cohomology_dims(c))
    if (h != 0) throw ValidationError("les_torsion requires an acyclic complex");
  BasedCochainComplex stripped = c;
  stripped.cohomology_bases.clear();
  return reidemeister_torsion(stripped);
}

namespace torsion_detail {

/// Canonical cohomology bases: kernel vectors extending the image to the kernel.
inline std::map<int, std::vector<RatVec>> canonical_cohomology_bases(const BasedCochainComplex& c) {
  std::map<int, std::vector<RatVec>> bases;
  for (int q = c.degree_min; q <= c.degree_max(); ++q) {
    if (c.dim(q) == 0) continue;
    RatMat dq = c.d(q);
    std::vector<RatVec> ker = dq.rows() == 0
                                  ? [&] {
                                      std::vector<RatVec> full;
                                      for (int j = 0; j < c.dim(q); ++j) {
                                        RatVec e(c.dim(q));
                                        e[j] = 1;
                                        full.push_back(std::move(e));
                                      }
                                      return full;
                                    }()
                                  : kernel_basis(dq);
    RatMat dprev = c.d(q - 1);
    RatMat accum = dprev.cols() > 0 ? dprev : RatMat(c.dim(q), 0);
    int cur_rank = accum.cols() > 0 ? rank(accum) : 0;
    std::vector<RatVec> chosen;
    for (const auto& v : ker) {
      RatMat trial = hstack(accum, RatMat::from_columns({v}, c.dim(q)));
      if (rank(trial) > cur_rank) {
        chosen.push_back(v);
        accum = std::move(trial);
        ++cur_rank;
      }
    }
    if (!chosen.empty()) bases[q] = std::move(chosen);
  }
  return bases;
}

/// Coordinates of the class of cocycle w in the chosen basis of H^q.
inline RatVec class_coordinates(const BasedCochainComplex& c, int q, const RatVec& w) {
  const auto& basis = c.cohomology_bases.at(q);
  RatMat nu = RatMat::from_columns(basis, c.dim(q));
  RatMat im = c.d(q - 1);
  RatMat span = im.cols() > 0 ? hstack(nu, im) : nu;
  auto x = solve(span, w);
  if (!x) throw ConsistencyError("cocycle does not lie in the span of basis and coboundaries");
  return RatVec(x->begin(), x->begin() + basis.size());
}

}  // namespace torsion_detail

struct MultiplicativityResult {
  TorsionScalar tau_middle;    // tau(C)
  TorsionScalar tau_product;   // tau(C') tau(C'') tau(LES)
  bool equal = false;
  TorsionScalar tau_sub, tau_quot, tau_les;
  BasedCochainComplex les;
};

/// Checks tau(C) = tau(C') tau(C'') tau(H-LES) for a degreewise short exact
/// sequence in block form: C^q = C'^q + C''^q with d_C = [[d', X], [0, d'']].
/// Cohomology bases are taken from the complexes when present, canonical otherwise.
inline MultiplicativityResult multiplicativity_check(const BasedCochainComplex& sub,
                                                     const BasedCochainComplex& mid,
                                                     const BasedCochainComplex& quot) {
  BasedCochainComplex cs = sub, cm = mid, cq = quot;
  cs.validate();
  cm.validate();
  cq.validate();
  if (cs.degree_min != cm.degree_min || cq.degree_min != cm.degree_min ||
      cs.degree_count() != cm.degree_count() || cq.degree_count() != cm.degree_count())
    throw ValidationError("short exact sequence terms must share the degree range");
  for (int i = 0; i < cm.degree_count(); ++i)
    if (cs.dims[i] + cq.dims[i] != cm.dims[i])
      throw ValidationError("dimensions are not degreewise exact");

  // Verify the block structure and extract the coupling blocks X_q.
  std::vector<RatMat> coupling(cm.degree_count() > 0 ? cm.degree_count() - 1 : 0);
  for (int i = 0; i + 1 < cm.degree_count(); ++i) {
    const RatMat& D = cm.differentials[i];
    int rs = cs.dims[i + 1], cssz = cs.dims[i];
    RatMat X(rs, cq.dims[i]);
    for (int r = 0; r < D.rows(); ++r)
      for (int col = 0; col < D.cols(); ++col) {
        bool top = r < rs, left = col < cssz;
        Rat expected;
        if (top && left)
          expected = cs.differentials[i].at(r, col);
        else if (!top && !left)
          expected = cq.differentials[i].at(r - rs, col - cssz);
        if (top && !left)
          X.at(r, col - cssz) = D.at(r, col);
        else if (D.at(r, col) != expected)
          throw ValidationError("middle complex is not in compatible block form");
      }
    coupling[i] = std::move(X);
  }

  auto ensure_bases = [](BasedCochainComplex& c) {
    auto canonical = torsion_detail::canonical_cohomology_bases(c);
    for (auto& [q, basis] : canonical)
      if (!c.cohomology_bases.count(q)) c.cohomology_bases[q] = basis;
  };
  ensure_bases(cs);
  ensure_bases(cm);
  ensure_bases(cq);

  auto h_of = [](const BasedCochainComplex& c, int q) {
    auto it = c.cohomology_bases.find(q);
    return it == c.cohomology_bases.end() ? 0 : static_cast<int>(it->second.size());
  };

  // Long exact sequence as a based complex: H^q(C') at degree 3q, H^q(C) at
  // 3q+1, H^q(C'') at 3q+2; maps are induced inclusion, projection and the
  // connecting homomorphism z'' -> [X z''].
  BasedCochainComplex les;
  les.degree_min = 3 * cm.degree_min;
  std::vector<RatMat> les_maps;
  for (int q = cm.degree_min; q <= cm.degree_max(); ++q) {
    int hs = h_of(cs, q), hm = h_of(cm, q), hq = h_of(cq, q);
    les.dims.push_back(hs);
    les.dims.push_back(hm);
    les.dims.push_back(hq);

    RatMat incl(hm, hs);
    for (int j = 0; j < hs; ++j) {
      const RatVec& v = cs.cohomology_bases.at(q)[j];
      RatVec w(cm.dim(q));
      for (int i = 0; i < cs.dim(q); ++i) w[i] = v[i];
      RatVec coords = hm > 0 ? torsion_detail::class_coordinates(cm, q, w) : RatVec();
      for (int i = 0; i < hm; ++i) incl.at(i, j) = coords[i];
    }
    les_maps.push_back(std::move(incl));

    RatMat proj(hq, hm);
    for (int j = 0; j < hm; ++j) {
      const RatVec& v = cm.cohomology_bases.at(q)[j];
      RatVec w(v.begin() + cs.dim(q), v.end());
      RatVec coords = hq > 0 ? torsion_detail::class_coordinates(cq, q, w) : RatVec();
      for (int i = 0; i < hq; ++i) proj.at(i, j) = coords[i];
    }
    les_maps.push_back(std::move(proj));

    if (q < cm.degree_max()) {
      int hs_next = h_of(cs, q + 1);
      RatMat conn(hs_next, hq);
      for (int j = 0; j < hq; ++j) {
        const RatVec& z = cq.cohomology_bases.at(q)[j];
        RatVec w = coupling[q - cm.degree_min] * z;
        RatVec coords = hs_next > 0 ? torsion_detail::class_coordinates(cs, q + 1, w) : RatVec();
        for (int i = 0; i < hs_next; ++i) conn.at(i, j) = coords[i];
      }
      les_maps.push_back(std::move(conn));
    }
  }
  les.differentials = std::move(les_maps);

  MultiplicativityResult res;
  res.tau_sub = reidemeister_torsion(cs);
  res.tau_middle = reidemeister_torsion(cm);
  res.tau_quot = reidemeister_torsion(cq);
  res.tau_les = les_torsion(les);
  res.tau_product = res.tau_sub * res.tau_quot * res.tau_les;
  res.equal = res.tau_middle == res.tau_product;
  res.les = std::move(les);
  return res;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_TORSION_HPP
