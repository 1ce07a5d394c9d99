#pragma once
// Exact rational matrices and the small set of linear-algebra primitives the
// rest of the library is built on. Everything here is deterministic: pivots
// are always chosen as the leftmost usable column / topmost usable row.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toric_ic {

using Rational = mpq_class;
using Integer = mpz_class;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static QMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("QMatrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static QMatrix column(const std::vector<Rational>& v) {
    QMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

  std::vector<Rational> col(std::size_t j) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  QMatrix& operator+=(const QMatrix& o) {
    check_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  QMatrix& operator-=(const QMatrix& o) {
    check_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  QMatrix& operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
  friend QMatrix operator-(QMatrix a) { return a *= Rational(-1); }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("QMatrix product: shape mismatch " + a.shape() + " * " + b.shape());
    QMatrix c(a.rows_, b.cols_);
    if (a.cols_ == 0) return c;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Copies `block` into this matrix with its top-left corner at (r0, c0).
  void place(std::size_t r0, std::size_t c0, const QMatrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
      throw std::out_of_range("QMatrix::place: block does not fit");
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j) (*this)(r0 + i, c0 + j) = block(i, j);
  }
  void add_block(std::size_t r0, std::size_t c0, const QMatrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
      throw std::out_of_range("QMatrix::add_block: block does not fit");
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j) (*this)(r0 + i, c0 + j) += block(i, j);
  }
  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("QMatrix::block: out of range");
    QMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  QMatrix select_cols(const std::vector<std::size_t>& idx) const {
    QMatrix b(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const QMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("QMatrix ") + op + ": shape mismatch " + shape() + " vs " +
                                  o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  QMatrix m(a.rows(), a.cols() + b.cols());
  m.place(0, 0, a);
  m.place(0, a.cols(), b);
  return m;
}

inline QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  QMatrix m(a.rows() + b.rows(), a.cols());
  m.place(0, 0, a);
  m.place(a.rows(), 0, b);
  return m;
}

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Reduced row echelon form. `pivots` lists the pivot column of each nonzero row.
struct Echelon {
  QMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline Echelon rref(QMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

// Rank only; avoids back-substitution.
inline std::size_t rank(QMatrix m) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(row, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
    }
    ++row;
  }
  return row;
}

struct Decomposition {
  std::size_t rank = 0;
  QMatrix kernel_basis;  // cols x (cols - rank)
  QMatrix image_basis;   // rows x rank, the pivot columns of the input
};

inline Decomposition decompose(const QMatrix& m) {
  Echelon e = rref(m);
  Decomposition d;
  d.rank = e.pivots.size();
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  d.kernel_basis = QMatrix(n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    d.kernel_basis(free[k], k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) d.kernel_basis(e.pivots[r], k) = -e.reduced(r, free[k]);
  }
  d.image_basis = m.select_cols(e.pivots);
  return d;
}

inline QMatrix kernel(const QMatrix& m) { return decompose(m).kernel_basis; }

// Solves a * x = b. Returns nullopt when some column of b is outside the column
// space of a. When a has dependent columns the free variables are set to zero.
inline std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  Echelon e = rref(hstack(a, b));
  const std::size_t n = a.cols();
  QMatrix x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t p = e.pivots[r];
    if (p >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(r, n + j);
  }
  return x;
}

inline QMatrix solve_or_throw(const QMatrix& a, const QMatrix& b, const char* what) {
  auto x = solve(a, b);
  if (!x) throw std::logic_error(std::string(what) + ": right-hand side not in column space");
  return *x;
}

inline std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, QMatrix::identity(a.rows()));
}

inline Rational determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Completes the independent columns of `sub` to a basis of Q^ambient_dim with
// standard unit vectors, taken in increasing index order and skipping any that
// are dependent on what has been collected so far. Returns only the added
// columns.
inline QMatrix extend_basis(const QMatrix& sub, std::size_t ambient_dim) {
  if (sub.rows() != ambient_dim && !(sub.cols() == 0))
    throw std::invalid_argument("extend_basis: row count differs from ambient dimension");
  QMatrix current = sub.cols() == 0 ? QMatrix(ambient_dim, 0) : sub;
  if (rank(current) != current.cols()) throw std::invalid_argument("extend_basis: dependent input columns");
  std::vector<std::size_t> chosen;
  std::size_t have = current.cols();
  for (std::size_t i = 0; i < ambient_dim && have < ambient_dim; ++i) {
    QMatrix e(ambient_dim, 1);
    e(i, 0) = 1;
    QMatrix trial = hstack(current, e);
    if (rank(trial) == have + 1) {
      current = std::move(trial);
      chosen.push_back(i);
      ++have;
    }
  }
  QMatrix out(ambient_dim, chosen.size());
  for (std::size_t k = 0; k < chosen.size(); ++k) out(chosen[k], k) = 1;
  return out;
}

namespace detail {

inline bool is_integral(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

using IntMatrix = std::vector<std::vector<Integer>>;  // row-major

inline IntMatrix to_int(const QMatrix& m) {
  IntMatrix a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num();
  return a;
}

inline QMatrix from_int(const IntMatrix& a, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(a[i][j]);
  return m;
}

// Column-style Hermite normal form of the lattice spanned by the columns of
// `a` (rows x cols). Unimodular column operations only. Returns the nonzero
// columns: column k has its pivot in row p_k with p_0 < p_1 < ..., entries
// above the pivot are zero, the pivot is positive and the entries of earlier
// columns in a pivot row are reduced into [0, pivot).
inline IntMatrix column_hnf(IntMatrix a, std::size_t rows, std::size_t cols, std::size_t& out_cols) {
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {  // col_dst -= f * col_src
    for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
  };
  std::size_t next = 0;
  std::vector<std::size_t> pivot_rows;
  for (std::size_t r = 0; r < rows && next < cols; ++r) {
    // Euclid on row r over columns next..cols-1.
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = next; j < cols; ++j)
        if (sgn(a[r][j]) != 0 && (best == cols || abs(a[r][j]) < abs(a[r][best]))) best = j;
      if (best == cols) break;
      swap_cols(next, best);
      bool done = true;
      for (std::size_t j = next + 1; j < cols; ++j) {
        if (sgn(a[r][j]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][j].get_mpz_t(), a[r][next].get_mpz_t());
        col_op(j, next, q);
        if (sgn(a[r][j]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(a[r][next]) == 0) continue;
    if (sgn(a[r][next]) < 0)
      for (std::size_t i = 0; i < rows; ++i) a[i][next] = -a[i][next];
    pivot_rows.push_back(r);
    ++next;
  }
  // Reduce earlier columns modulo later pivots.
  for (std::size_t k = 0; k < next; ++k) {
    const std::size_t pr = pivot_rows[k];
    for (std::size_t j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[pr][j].get_mpz_t(), a[pr][k].get_mpz_t());
      if (sgn(q) != 0) col_op(j, k, q);
    }
  }
  out_cols = next;
  return a;
}

}  // namespace detail

// Canonical Z-basis (column HNF) of the saturated lattice Z^r cap span_Q(gens).
inline QMatrix hnf_lattice_basis(const QMatrix& gens) {
  const std::size_t r = gens.rows();
  if (gens.cols() == 0) return QMatrix(r, 0);
  if (!detail::is_integral(gens)) throw std::invalid_argument("hnf_lattice_basis: non-integer generators");
  // Saturation = integer kernel of a rational basis of the annihilator.
  const QMatrix annihilator = kernel(gens.transpose()).transpose();  // rows span span(gens)^perp
  const std::size_t d = r - annihilator.rows();
  if (d == 0) return QMatrix(r, 0);
  // Scale annihilator rows to integers, then compute an integer kernel basis by
  // column-reducing [W; I] with unimodular operations.
  QMatrix w = annihilator;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < r; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < r; ++j) w(i, j) *= Rational(l);
  }
  const std::size_t m = w.rows();
  detail::IntMatrix stacked(m + r, std::vector<Integer>(r));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < r; ++j) stacked[i][j] = w(i, j).get_num();
  for (std::size_t i = 0; i < r; ++i) stacked[m + i][i] = 1;
  // Column-echelon the top block only: run the HNF routine on the full stack,
  // pivots land in the top m rows first for the first rank(W) columns.
  std::size_t used = 0;
  detail::IntMatrix reduced = detail::column_hnf(stacked, m + r, r, used);
  // Columns whose top block is zero form a basis of the integer kernel. After
  // the echelon pass, the first rank(W) = m columns carry the top pivots.
  detail::IntMatrix kern(r, std::vector<Integer>(d));
  std::size_t k = 0;
  for (std::size_t j = 0; j < r && k < d; ++j) {
    bool top_zero = true;
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(reduced[i][j]) != 0) top_zero = false;
    if (!top_zero) continue;
    for (std::size_t i = 0; i < r; ++i) kern[i][k] = reduced[m + i][j];
    ++k;
  }
  if (k != d) throw std::logic_error("hnf_lattice_basis: kernel extraction failed");
  std::size_t out_cols = 0;
  detail::IntMatrix h = detail::column_hnf(kern, r, d, out_cols);
  if (out_cols != d) throw std::logic_error("hnf_lattice_basis: rank drop");
  return detail::from_int(h, r, d);
}

}  // namespace toric_ic
