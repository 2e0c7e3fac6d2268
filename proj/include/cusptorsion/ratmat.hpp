#ifndef CUSPTORSION_RATMAT_HPP
#define CUSPTORSION_RATMAT_HPP

#include <optional>
#include <vector>

#include "cusptorsion/rational.hpp"

namespace cusptorsion {

using RatVec = std::vector<Rat>;

/// Dense matrix over exact rationals, row-major.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RatMat identity(int m) {
    RatMat r(m, m);
    for (int i = 0; i < m; ++i) r.at(i, i) = 1;
    return r;
  }

  static RatMat from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return RatMat(0, 0);
    RatMat r(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < r.rows(); ++i) {
      if (static_cast<int>(rows[i].size()) != r.cols())
        throw ValidationError("ragged matrix rows");
      for (int j = 0; j < r.cols(); ++j) r.at(i, j) = rows[i][j];
    }
    return r;
  }

  static RatMat from_columns(const std::vector<RatVec>& cols, int nrows) {
    RatMat r(nrows, static_cast<int>(cols.size()));
    for (int j = 0; j < r.cols(); ++j) {
      if (static_cast<int>(cols[j].size()) != nrows)
        throw ValidationError("column length mismatch");
      for (int i = 0; i < nrows; ++i) r.at(i, j) = cols[j][i];
    }
    return r;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  RatVec column(int j) const {
    RatVec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  RatVec row(int i) const {
    RatVec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  bool is_zero() const {
    for (const Rat& x : a_)
      if (x != 0) return false;
    return true;
  }

  RatMat transpose() const {
    RatMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  RatMat operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix product shape mismatch");
    RatMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& bkj = o.at(k, j);
          if (bkj != 0) r.at(i, j) += aik * bkj;
        }
      }
    return r;
  }

  RatVec operator*(const RatVec& v) const {
    if (cols_ != static_cast<int>(v.size())) throw ValidationError("matrix-vector shape mismatch");
    RatVec r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  RatMat operator+(const RatMat& o) const {
    require_same_shape(o);
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  RatMat operator-(const RatMat& o) const {
    require_same_shape(o);
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  RatMat operator*(const Rat& s) const {
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
  }

  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  void require_same_shape(const RatMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

inline RatMat hstack(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0)
    throw ValidationError("hstack row mismatch");
  int rows = a.cols() == 0 ? b.rows() : a.rows();
  RatMat r(rows, a.cols() + b.cols());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

/// In-place reduced row echelon form. Returns the rank; pivot column indices
/// are appended to *pivots when given.
inline int rref(RatMat& m, std::vector<int>* pivots = nullptr) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
    Rat inv = Rat(1) / m.at(rank, col);
    for (int j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == rank) continue;
      Rat f = m.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

namespace detail {

/// Clears denominators row by row; preserves rank.
inline std::vector<std::vector<Int>> integerized(const RatMat& m) {
  std::vector<std::vector<Int>> a(m.rows(), std::vector<Int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, rat_den(m.at(i, j)));
    for (int j = 0; j < m.cols(); ++j) a[i][j] = rat_num(m.at(i, j)) * (l / rat_den(m.at(i, j)));
  }
  return a;
}

}  // namespace detail

/// Rank by fraction-free (Bareiss) elimination on the denominator-cleared matrix.
inline int rank(const RatMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = detail::integerized(m);
  const int rows = m.rows(), cols = m.cols();
  Int prev = 1;
  int rk = 0;
  for (int col = 0; col < cols && rk < rows; ++col) {
    int piv = -1;
    for (int i = rk; i < rows; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rk) std::swap(a[piv], a[rk]);
    for (int i = rk + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        a[i][j] = (a[rk][col] * a[i][j] - a[i][col] * a[rk][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rk][col];
    ++rk;
  }
  return rk;
}

/// Exact determinant (square matrices only).
inline Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
  const int d = m.rows();
  if (d == 0) return 1;
  RatMat a = m;
  Rat result = 1;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int i = col; i < d; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < d; ++j) std::swap(a.at(piv, j), a.at(col, j));
      result = -result;
    }
    result *= a.at(col, col);
    Rat inv = Rat(1) / a.at(col, col);
    for (int i = col + 1; i < d; ++i) {
      Rat f = a.at(i, col) * inv;
      if (f == 0) continue;
      for (int j = col; j < d; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return result;
}

/// Basis of the kernel {x : m x = 0}, as column vectors.
inline std::vector<RatVec> kernel_basis(const RatMat& m) {
  RatMat r = m;
  std::vector<int> pivots;
  rref(r, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols());
    v[free] = 1;
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A X = B exactly; nullopt when inconsistent. When the kernel of A is
/// nontrivial the particular solution with zero free variables is returned.
inline std::optional<RatMat> solve(const RatMat& A, const RatMat& B) {
  if (A.rows() != B.rows()) throw ValidationError("solve shape mismatch");
  RatMat aug = hstack(A, B);
  std::vector<int> pivots;
  rref(aug, &pivots);
  for (int p : pivots)
    if (p >= A.cols()) return std::nullopt;  // pivot in the rhs block: inconsistent
  RatMat x(A.cols(), B.cols());
  for (size_t k = 0; k < pivots.size(); ++k)
    for (int j = 0; j < B.cols(); ++j) x.at(pivots[k], j) = aug.at(static_cast<int>(k), A.cols() + j);
  return x;
}

inline std::optional<RatVec> solve(const RatMat& A, const RatVec& b) {
  RatMat B(A.rows(), 1);
  for (int i = 0; i < A.rows(); ++i) B.at(i, 0) = b[i];
  auto x = solve(A, B);
  if (!x) return std::nullopt;
  return x->column(0);
}

}  // namespace cusptorsion

#endif  // CUSPTORSION_RATMAT_HPP
