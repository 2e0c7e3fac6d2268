#ifndef CUSPTORSION_NILCOH_HPP
#define CUSPTORSION_NILCOH_HPP

#include <map>
#include <utility>
#include <vector>

#include "cusptorsion/kostant.hpp"
#include "cusptorsion/ratmat.hpp"
#include "cusptorsion/weights.hpp"

namespace cusptorsion {

/// Explicit rational matrix model of a g-module restricted to the data the
/// nilpotent-cohomology computation needs: the abelian nilradical action, the
/// split torus generator H_1 and the Casimir.
struct MatrixRep {
  int n = 1;  // d = 2n+1, so n_action has 2n entries
  int dim_V = 0;
  std::vector<RatMat> n_action;
  RatMat a_action;
  RatMat casimir;
};

struct CohomologyPiece {
  Rat a_weight;
  Int multiplicity;
  bool operator==(const CohomologyPiece& o) const {
    return a_weight == o.a_weight && multiplicity == o.multiplicity;
  }
};

/// Cohomology dimensions per degree with the torus-weight decomposition.
struct CohomologyReport {
  std::vector<Int> dims;                              // degree 0..2n
  std::vector<std::vector<CohomologyPiece>> weights;  // per degree, sorted by weight
};

namespace nilcoh_detail {

/// Sparse row-major matrix; the Lie-algebra actions on tensor spaces have a
/// handful of entries per row.
struct SparseMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, Rat>>> entries;  // per row: (col, value)

  RatVec apply(const RatVec& v) const {
    RatVec out(rows);
    for (int i = 0; i < rows; ++i)
      for (const auto& [j, val] : entries[i])
        if (v[j] != 0) out[i] += val * v[j];
    return out;
  }
};

inline SparseMat sparse_from(const RatMat& m) {
  SparseMat s;
  s.rows = m.rows();
  s.cols = m.cols();
  s.entries.resize(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) s.entries[i].push_back({j, m.at(i, j)});
  return s;
}

/// Action of x on the m-fold tensor power of the standard space (dimension N^m),
/// i.e. sum over factor slots of 1 x ... x x ... x 1.
inline SparseMat tensor_action(const RatMat& x, int m) {
  const int N = x.rows();
  long long dim = 1;
  for (int t = 0; t < m; ++t) dim *= N;
  SparseMat s;
  s.rows = s.cols = static_cast<int>(dim);
  s.entries.resize(dim);
  // stride of slot t in the mixed-radix index (slot 0 is the most significant)
  std::vector<long long> stride(m, 1);
  for (int t = m - 2; t >= 0; --t) stride[t] = stride[t + 1] * N;
  for (long long idx = 0; idx < dim; ++idx) {
    for (int t = 0; t < m; ++t) {
      int digit = static_cast<int>((idx / stride[t]) % N);
      for (int i = 0; i < N; ++i) {
        const Rat& v = x.at(i, digit);
        if (v == 0) continue;
        long long target = idx + (static_cast<long long>(i) - digit) * stride[t];
        s.entries[target].push_back({static_cast<int>(idx), v});
      }
    }
  }
  return s;
}

/// Basis of the split form of so(N) adapted to the antidiagonal quadratic form;
/// the Cartan is diagonal and every weight computation stays rational.
struct SoSplitBasis {
  int N = 0;
  int rank = 0;
  std::vector<RatMat> cartan;  // H_1, ..., H_rank
  struct Root {
    std::vector<int> alpha;  // coordinates of the positive root
    RatMat pos, neg;         // X_alpha, X_{-alpha}
  };
  std::vector<Root> roots;
};

inline SoSplitBasis so_split_basis(int N) {
  SoSplitBasis b;
  b.N = N;
  b.rank = N / 2;
  auto bar = [N](int i) { return N - 1 - i; };  // 0-based index reflection
  auto unit = [N](int i, int j) {
    RatMat e(N, N);
    e.at(i, j) = 1;
    return e;
  };
  for (int a = 0; a < b.rank; ++a) {
    RatMat h(N, N);
    h.at(a, a) = 1;
    h.at(bar(a), bar(a)) = -1;
    b.cartan.push_back(std::move(h));
  }
  for (int a = 0; a < b.rank; ++a)
    for (int c = a + 1; c < b.rank; ++c) {
      SoSplitBasis::Root minus;  // e_a - e_c
      minus.alpha.assign(b.rank, 0);
      minus.alpha[a] = 1;
      minus.alpha[c] = -1;
      minus.pos = unit(a, c) - unit(bar(c), bar(a));
      minus.neg = unit(c, a) - unit(bar(a), bar(c));
      b.roots.push_back(std::move(minus));

      SoSplitBasis::Root plus;  // e_a + e_c
      plus.alpha.assign(b.rank, 0);
      plus.alpha[a] = 1;
      plus.alpha[c] = 1;
      plus.pos = unit(a, bar(c)) - unit(c, bar(a));
      plus.neg = unit(bar(c), a) - unit(bar(a), c);
      b.roots.push_back(std::move(plus));
    }
  return b;
}

/// Applies the Casimir, built from the trace-form dual basis and calibrated so
/// that the standard representation has eigenvalue <Lambda_std + 2 rho, Lambda_std> = d.
struct CasimirApplier {
  std::vector<SparseMat> cartan;
  std::vector<std::pair<SparseMat, SparseMat>> root_pairs;
  Rat scale = 1;

  RatVec apply(const RatVec& v) const {
    RatVec acc(v.size());
    auto add = [&acc](const RatVec& w, const Rat& c) {
      for (size_t i = 0; i < acc.size(); ++i)
        if (w[i] != 0) acc[i] += c * w[i];
    };
    for (const auto& h : cartan) add(h.apply(h.apply(v)), Rat(1, 2));
    for (const auto& [xp, xn] : root_pairs) {
      add(xp.apply(xn.apply(v)), Rat(1, 2));
      add(xn.apply(xp.apply(v)), Rat(1, 2));
    }
    RatVec out(v.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = scale * acc[i];
    return out;
  }
};

inline Rat casimir_calibration(const SoSplitBasis& b, int d) {
  CasimirApplier raw;
  for (const auto& h : b.cartan) raw.cartan.push_back(sparse_from(h));
  for (const auto& r : b.roots) raw.root_pairs.push_back({sparse_from(r.pos), sparse_from(r.neg)});
  RatVec e0(b.N);
  e0[0] = 1;
  RatVec w = raw.apply(e0);
  Rat c0 = w[0];
  if (c0 == 0) throw ConsistencyError("raw Casimir vanishes on the standard representation");
  // The standard rep must be a Casimir eigenvector basis-wide; spot-check all units.
  for (int j = 0; j < b.N; ++j) {
    RatVec ej(b.N);
    ej[j] = 1;
    RatVec wj = raw.apply(ej);
    for (int i = 0; i < b.N; ++i)
      if (wj[i] != (i == j ? c0 : Rat(0)))
        throw ConsistencyError("raw Casimir is not scalar on the standard representation");
  }
  return Rat(d) / c0;
}

inline std::vector<int> tensor_weight(long long idx, int m, int N) {
  const int rank = N / 2;
  std::vector<int> w(rank, 0);
  for (int t = m - 1; t >= 0; --t) {
    int digit = static_cast<int>(idx % N);
    idx /= N;
    if (digit < rank)
      w[digit] += 1;
    else
      w[N - 1 - digit] -= 1;
  }
  return w;
}

inline int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

/// Enumerates k-subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= m - (k - static_cast<int>(cur.size())); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// The positive root vector X_{e_1 + sign e_{j+1}} (j in 1..rank-1).
inline const RatMat& nilradical_root(const SoSplitBasis& b, int j, int sign) {
  for (const auto& r : b.roots)
    if (r.alpha[0] == 1 && r.alpha[j] == sign) return r.pos;
  throw ConsistencyError("nilradical root not found");
}

}  // namespace nilcoh_detail

inline void validate_matrix_rep(const MatrixRep& rep) {
  const int nn = 2 * rep.n;
  if (static_cast<int>(rep.n_action.size()) != nn)
    throw ConsistencyError("MatrixRep needs 2n nilradical generators");
  for (int i = 0; i < nn; ++i) {
    const RatMat& yi = rep.n_action[i];
    if (yi.rows() != rep.dim_V || yi.cols() != rep.dim_V)
      throw ConsistencyError("nilradical action has wrong shape");
    for (int j = i + 1; j < nn; ++j)
      if (!(yi * rep.n_action[j] - rep.n_action[j] * yi).is_zero())
        throw ConsistencyError("nilradical action matrices do not commute");
    RatMat p = yi;
    bool nil = p.is_zero();
    for (int k = 1; k <= rep.dim_V && !nil; ++k) {
      p = p * yi;
      nil = p.is_zero();
    }
    if (!nil) throw ConsistencyError("nilradical action matrix is not nilpotent");
    if (!(rep.a_action * yi - yi * rep.a_action - yi).is_zero())
      throw ConsistencyError("[H_1, Y] != Y for a nilradical generator");
  }
}

/// The (d+1)-dimensional standard representation with H_1 = diag(1, 0, ..., 0, -1)
/// and the 2n nilradical generators acting by rank-two nilpotents.
inline MatrixRep standard_rep(int d) {
  if (d % 2 == 0 || d < 3 || d > 7)
    throw ValidationError("standard_rep supports odd d with 3 <= d <= 7");
  const int n = (d - 1) / 2;
  const int N = d + 1;
  auto basis = nilcoh_detail::so_split_basis(N);

  MatrixRep rep;
  rep.n = n;
  rep.dim_V = N;
  // Nilradical = root spaces e_1 -+ e_j, j = 2..n+1, in a fixed interleaved order.
  for (int j = 1; j <= n; ++j) {
    rep.n_action.push_back(nilcoh_detail::nilradical_root(basis, j, -1));
    rep.n_action.push_back(nilcoh_detail::nilradical_root(basis, j, +1));
  }
  rep.a_action = basis.cartan[0];

  Rat scale = nilcoh_detail::casimir_calibration(basis, d);
  RatMat omega(N, N);
  for (const auto& h : basis.cartan) omega = omega + (h * h) * Rat(1, 2);
  for (const auto& r : basis.roots)
    omega = omega + (r.pos * r.neg + r.neg * r.pos) * Rat(1, 2);
  rep.casimir = omega * scale;
  validate_matrix_rep(rep);
  return rep;
}

/// Tensor model for an integral dominant weight: projects the Casimir eigenspace
/// of the m-fold tensor power of the standard rep, refining by extreme-weight
/// inspection when two summands share the Casimir eigenvalue.
inline MatrixRep build_rep(int d, const HighestWeight& L) {
  if (d != 3 && d != 5) throw ValidationError("build_rep supports d in {3, 5}");
  const int n = (d - 1) / 2;
  require_g_weight(L, n, "build_rep");
  if (!all_integers(L.components))
    throw ValidationError("build_rep supports integral weights only (no spinor model)");

  Int degree_big = 0;
  for (const Rat& k : L.components) degree_big += boost::multiprecision::abs(rat_num(k));
  if (degree_big > 4)
    throw ValidationError("build_rep is limited to weights of tensor degree <= 4");
  const int m = degree_big.convert_to<int>();

  if (m == 0) {  // trivial representation
    MatrixRep rep;
    rep.n = n;
    rep.dim_V = 1;
    rep.n_action.assign(2 * n, RatMat(1, 1));
    rep.a_action = RatMat(1, 1);
    rep.casimir = RatMat(1, 1);
    validate_matrix_rep(rep);
    return rep;
  }

  using namespace nilcoh_detail;
  const int N = d + 1;
  const auto basis = so_split_basis(N);
  const Rat scale = casimir_calibration(basis, d);
  long long dim_w = 1;
  for (int t = 0; t < m; ++t) dim_w *= N;

  CasimirApplier casimir;
  casimir.scale = scale;
  for (const auto& h : basis.cartan) casimir.cartan.push_back(tensor_action(h, m));
  std::vector<SparseMat> all_gens;  // full g-action, used for submodule closure
  for (const auto& h : basis.cartan) all_gens.push_back(tensor_action(h, m));
  for (const auto& r : basis.roots) {
    casimir.root_pairs.push_back({tensor_action(r.pos, m), tensor_action(r.neg, m)});
    all_gens.push_back(tensor_action(r.pos, m));
    all_gens.push_back(tensor_action(r.neg, m));
  }

  // Group tensor basis indices by Cartan weight; the Casimir preserves each group.
  std::map<std::vector<int>, std::vector<long long>> weight_spaces;
  for (long long idx = 0; idx < dim_w; ++idx)
    weight_spaces[tensor_weight(idx, m, N)].push_back(idx);

  const Rat target = [&] {
    std::vector<Rat> shifted(L.components);
    const std::vector<Rat> rho = rho_g(n);
    for (int i = 0; i <= n; ++i) shifted[i] += 2 * rho[i];
    return dot(shifted, L.components);
  }();

  std::vector<int> target_weight(n + 1);
  for (int i = 0; i <= n; ++i) target_weight[i] = static_cast<int>(rat_num(L.components[i]));

  // Casimir eigenspace, assembled weight space by weight space.
  std::vector<RatVec> eigenspace;
  std::vector<RatVec> eigenspace_at_top;  // the weight-Lambda slice
  for (const auto& [wvec, idxs] : weight_spaces) {
    const int g = static_cast<int>(idxs.size());
    RatMat block(g, g);
    for (int c = 0; c < g; ++c) {
      RatVec e(dim_w);
      e[idxs[c]] = 1;
      RatVec image = casimir.apply(e);
      for (int r = 0; r < g; ++r) block.at(r, c) = image[idxs[r]];
      block.at(c, c) -= target;
    }
    for (const RatVec& k : kernel_basis(block)) {
      RatVec full(dim_w);
      for (int c = 0; c < g; ++c) full[idxs[c]] = k[c];
      eigenspace.push_back(full);
      if (wvec == target_weight) eigenspace_at_top.push_back(eigenspace.back());
    }
  }

  const Int wd = weyl_dimension(build_root_system(n + 1), L);
  if (eigenspace.empty() || eigenspace_at_top.empty())
    throw ValidationError("weight is not reachable inside this tensor power; "
                          "choose a different tensor construction");

  std::vector<RatVec> module;
  if (Int(static_cast<long long>(eigenspace.size())) == wd) {
    module = eigenspace;
  } else {
    // Extreme-weight refinement: close a single weight-Lambda vector under g.
    // The span is kept in echelon form keyed by pivot position so membership
    // tests are a single reduction pass.
    std::map<long long, RatVec> echelon;
    auto insert_reduced = [&](RatVec v) -> bool {
      for (auto& [piv, row] : echelon)
        if (v[piv] != 0) {
          Rat f = v[piv];
          for (long long j = piv; j < dim_w; ++j)
            if (row[j] != 0) v[j] -= f * row[j];
        }
      long long piv = -1;
      for (long long j = 0; j < dim_w; ++j)
        if (v[j] != 0) {
          piv = j;
          break;
        }
      if (piv < 0) return false;
      Rat inv = Rat(1) / v[piv];
      for (long long j = piv; j < dim_w; ++j) v[j] *= inv;
      echelon[piv] = std::move(v);
      return true;
    };
    insert_reduced(eigenspace_at_top.front());
    std::vector<RatVec> frontier = {eigenspace_at_top.front()};
    while (!frontier.empty()) {
      std::vector<RatVec> next;
      for (const auto& v : frontier)
        for (const auto& gmat : all_gens) {
          RatVec w = gmat.apply(v);
          if (insert_reduced(w)) next.push_back(std::move(w));
        }
      frontier = std::move(next);
      if (Int(static_cast<long long>(echelon.size())) > wd)
        throw AmbiguousProjectionError(
            "Casimir eigenspace mixes non-isomorphic summands; "
            "choose a different tensor construction");
    }
    for (auto& [piv, row] : echelon) module.push_back(row);
  }

  if (Int(static_cast<long long>(module.size())) != wd)
    throw AmbiguousProjectionError(
        "projected subrepresentation does not match the Weyl dimension; "
        "choose a different tensor construction");

  // Restrict the needed generators to the module.
  RatMat B = RatMat::from_columns(module, static_cast<int>(dim_w));
  auto restrict_action = [&](const SparseMat& g) {
    RatMat gb(static_cast<int>(dim_w), B.cols());
    for (int c = 0; c < B.cols(); ++c) {
      RatVec img = g.apply(B.column(c));
      for (int r = 0; r < gb.rows(); ++r) gb.at(r, c) = img[r];
    }
    auto z = solve(B, gb);
    if (!z) throw ConsistencyError("projected space is not invariant under the action");
    return *z;
  };

  MatrixRep rep;
  rep.n = n;
  rep.dim_V = static_cast<int>(module.size());
  for (int j = 1; j <= n; ++j) {
    rep.n_action.push_back(restrict_action(tensor_action(nilradical_root(basis, j, -1), m)));
    rep.n_action.push_back(restrict_action(tensor_action(nilradical_root(basis, j, +1), m)));
  }
  rep.a_action = restrict_action(tensor_action(basis.cartan[0], m));
  {
    RatMat cb(static_cast<int>(dim_w), B.cols());
    for (int c = 0; c < B.cols(); ++c) {
      RatVec img = casimir.apply(B.column(c));
      for (int r = 0; r < cb.rows(); ++r) cb.at(r, c) = img[r];
    }
    auto z = solve(B, cb);
    if (!z) throw ConsistencyError("Casimir does not preserve the projected space");
    rep.casimir = *z;
  }
  validate_matrix_rep(rep);
  return rep;
}

/// Chevalley-Eilenberg cohomology of the abelian nilradical with coefficients in
/// rep, with exact dimensions and the generalized H_1-eigenvalue decomposition.
inline CohomologyReport nil_cohomology(const MatrixRep& rep) {
  using namespace nilcoh_detail;
  validate_matrix_rep(rep);
  const int nn = 2 * rep.n;
  const int dv = rep.dim_V;

  std::vector<std::vector<std::vector<int>>> subs(nn + 1);
  std::vector<std::map<std::vector<int>, int>> sub_index(nn + 1);
  for (int k = 0; k <= nn; ++k) {
    subs[k] = subsets(nn, k);
    for (size_t s = 0; s < subs[k].size(); ++s) sub_index[k][subs[k][s]] = static_cast<int>(s);
  }

  // Full differentials d_k : C^k -> C^{k+1} with d(e_S x v) = sum over i not in S
  // of (-1)^{pos(i)} e_{S+i} x (Y_i v).
  std::vector<RatMat> diff(nn + 1);
  for (int k = 0; k < nn; ++k) {
    RatMat d(static_cast<int>(subs[k + 1].size()) * dv, static_cast<int>(subs[k].size()) * dv);
    for (size_t s = 0; s < subs[k].size(); ++s) {
      const auto& S = subs[k][s];
      for (int i = 0; i < nn; ++i) {
        if (std::find(S.begin(), S.end(), i) != S.end()) continue;
        std::vector<int> T = S;
        T.insert(std::upper_bound(T.begin(), T.end(), i), i);
        int pos = static_cast<int>(std::lower_bound(T.begin(), T.end(), i) - T.begin());
        int sign = pos % 2 == 0 ? 1 : -1;
        int trow = sub_index[k + 1][T];
        const RatMat& yi = rep.n_action[i];
        for (int r = 0; r < dv; ++r)
          for (int c = 0; c < dv; ++c)
            if (yi.at(r, c) != 0)
              d.at(trow * dv + r, static_cast<int>(s) * dv + c) += sign * yi.at(r, c);
      }
    }
    diff[k] = std::move(d);
  }
  diff[nn] = RatMat(0, static_cast<int>(subs[nn].size()) * dv);

  for (int k = 0; k + 1 < nn; ++k)
    if (!(diff[k + 1] * diff[k]).is_zero())
      throw ConsistencyError("cochain differential does not square to zero");

  CohomologyReport report;
  report.dims.resize(nn + 1);
  report.weights.resize(nn + 1);
  std::vector<int> ranks(nn + 1, 0);
  for (int k = 0; k < nn; ++k) ranks[k] = rank(diff[k]);
  for (int k = 0; k <= nn; ++k) {
    int dim_ck = static_cast<int>(subs[k].size()) * dv;
    int ker = dim_ck - ranks[k];
    int im_prev = k == 0 ? 0 : ranks[k - 1];
    report.dims[k] = ker - im_prev;
  }

  // Generalized eigenspaces of the torus action on V; eigenvalues live in
  // (1/2)Z within the Gershgorin radius.
  Rat bound = 0;
  for (int i = 0; i < dv; ++i) {
    Rat row = 0;
    for (int j = 0; j < dv; ++j) row += boost::multiprecision::abs(rep.a_action.at(i, j));
    bound = std::max(bound, row);
  }
  std::map<Rat, RatMat> gen_eigenspace;
  int total = 0;
  // Scan the half-integer grid covering the Gershgorin disc.
  Int two_bound_ceil = rat_num(bound * 2) / rat_den(bound * 2) + 1;
  const Rat grid_edge = Rat(two_bound_ceil, 2);
  for (Rat mu = -grid_edge; mu <= grid_edge; mu += Rat(1, 2)) {
    RatMat shifted = rep.a_action;
    for (int i = 0; i < dv; ++i) shifted.at(i, i) -= mu;
    RatMat power = shifted;
    for (int t = 1; t < dv; ++t) power = power * shifted;
    auto kb = kernel_basis(power);
    if (kb.empty()) continue;
    gen_eigenspace[mu] = RatMat::from_columns(kb, dv);
    total += static_cast<int>(kb.size());
  }
  if (total != dv)
    throw ConsistencyError("torus action has spectrum outside (1/2)Z; cannot grade cohomology");

  // Transfer matrices: Y_i maps the weight-mu block into the weight-(mu+1) block.
  std::map<std::pair<int, Rat>, RatMat> transfer;
  for (int i = 0; i < nn; ++i)
    for (const auto& [mu, basis_mu] : gen_eigenspace) {
      RatMat img(dv, basis_mu.cols());
      bool zero = true;
      for (int c = 0; c < basis_mu.cols(); ++c) {
        RatVec v = rep.n_action[i] * basis_mu.column(c);
        for (int r = 0; r < dv; ++r) {
          img.at(r, c) = v[r];
          if (v[r] != 0) zero = false;
        }
      }
      auto up = gen_eigenspace.find(mu + 1);
      if (up == gen_eigenspace.end()) {
        if (!zero)
          throw ConsistencyError("nilradical action leaves the graded structure");
        transfer[{i, mu}] = RatMat(0, basis_mu.cols());
        continue;
      }
      auto z = solve(up->second, img);
      if (!z) throw ConsistencyError("nilradical action does not raise the torus weight by one");
      transfer[{i, mu}] = *z;
    }

  // For each total weight label mu0 the subcomplex has degree-k term
  // Lambda^k(n^*) x V_{mu0+k}, carrying H_1-eigenvalue mu0.
  std::map<Rat, std::vector<int>> block_dim_of;  // label -> per-degree block dims
  std::map<Rat, std::vector<int>> block_rank_of;
  for (const auto& [mu, basis_mu] : gen_eigenspace)
    for (int k = 0; k <= nn; ++k) {
      Rat label = mu - k;
      if (!block_dim_of.count(label)) {
        block_dim_of[label] = std::vector<int>(nn + 1, 0);
        block_rank_of[label] = std::vector<int>(nn + 1, 0);
      }
    }
  for (auto& [label, dims_k] : block_dim_of) {
    auto& ranks_k = block_rank_of[label];
    for (int k = 0; k <= nn; ++k) {
      auto it = gen_eigenspace.find(label + k);
      int gdim = it == gen_eigenspace.end() ? 0 : it->second.cols();
      dims_k[k] = static_cast<int>(subs[k].size()) * gdim;
      if (k == nn || gdim == 0) continue;
      auto up = gen_eigenspace.find(label + k + 1);
      int updim = up == gen_eigenspace.end() ? 0 : up->second.cols();
      if (updim == 0) continue;
      RatMat d(static_cast<int>(subs[k + 1].size()) * updim,
               static_cast<int>(subs[k].size()) * gdim);
      for (size_t s = 0; s < subs[k].size(); ++s) {
        const auto& S = subs[k][s];
        for (int i = 0; i < nn; ++i) {
          if (std::find(S.begin(), S.end(), i) != S.end()) continue;
          std::vector<int> T = S;
          T.insert(std::upper_bound(T.begin(), T.end(), i), i);
          int pos = static_cast<int>(std::lower_bound(T.begin(), T.end(), i) - T.begin());
          int sign = pos % 2 == 0 ? 1 : -1;
          int trow = sub_index[k + 1][T];
          const RatMat& tr = transfer.at({i, label + k});
          for (int r = 0; r < updim; ++r)
            for (int c = 0; c < gdim; ++c)
              if (tr.at(r, c) != 0)
                d.at(trow * updim + r, static_cast<int>(s) * gdim + c) += sign * tr.at(r, c);
        }
      }
      ranks_k[k] = rank(d);
    }
  }

  for (const auto& [label, dims_k] : block_dim_of) {
    const auto& ranks_k = block_rank_of[label];
    for (int k = 0; k <= nn; ++k) {
      int ker = dims_k[k] - ranks_k[k];
      int im_prev = k == 0 ? 0 : ranks_k[k - 1];
      int h = ker - im_prev;
      if (h > 0) report.weights[k].push_back({label, Int(h)});
    }
  }
  for (int k = 0; k <= nn; ++k) {
    std::sort(report.weights[k].begin(), report.weights[k].end(),
              [](const CohomologyPiece& a, const CohomologyPiece& b) { return a.a_weight < b.a_weight; });
    Int sum = 0;
    for (const auto& p : report.weights[k]) sum += p.multiplicity;
    if (sum != report.dims[k])
      throw ConsistencyError("graded cohomology dimensions do not sum to the total");
  }
  return report;
}

/// The Kostant-side prediction in the oracle's format: dims and the multiset of
/// torus weights lambda_w - n with multiplicity dim sigma_w, per degree.
inline CohomologyReport kostant_prediction(const HighestWeight& L, int n) {
  CohomologyReport pred;
  pred.dims.assign(2 * n + 1, Int(0));
  pred.weights.resize(2 * n + 1);
  RootSystem d_n = build_root_system(n);
  std::map<std::pair<int, Rat>, Int> agg;
  for (const auto& kd : kostant_data_closed_form(L, n)) {
    Int dim_sigma = weyl_dimension(d_n, kd.sigma);
    pred.dims[kd.length] += dim_sigma;
    agg[{kd.length, kd.lambda - n}] += dim_sigma;
  }
  for (const auto& [key, mult] : agg) pred.weights[key.first].push_back({key.second, mult});
  return pred;
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_NILCOH_HPP
