#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "quonlab/errors.hpp"
#include "quonlab/scalar.hpp"

namespace quonlab {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), d_(rows * cols, ScalarOps<S>::zero()) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = ScalarOps<S>::one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  S& at(size_t r, size_t c) { return d_[r * cols_ + c]; }
  const S& at(size_t r, size_t c) const { return d_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }

  Matrix& operator+=(const Matrix& o) {
    check_shape(o);
    for (size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_shape(o);
    for (size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw StateError("matrix shape mismatch in *");
    Matrix out(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
      for (size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a.at(i, k);
        if (ScalarOps<S>::is_zero(aik)) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          const S& bkj = b.at(k, j);
          if (ScalarOps<S>::is_zero(bkj)) continue;
          out.at(i, j) += aik * bkj;
        }
      }
    }
    return out;
  }

  Matrix scaled(const S& s) const {
    Matrix out = *this;
    for (auto& v : out.d_) v = v * s;
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  bool is_zero() const {
    for (const auto& v : d_)
      if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : d_) m = std::max(m, std::fabs(ScalarOps<S>::to_double(v)));
    return m;
  }

 private:
  void check_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw StateError("matrix shape mismatch");
  }
  size_t rows_ = 0, cols_ = 0;
  std::vector<S> d_;
};

template <class S>
std::vector<S> mat_vec(const Matrix<S>& m, const std::vector<S>& v) {
  if (m.cols() != v.size()) throw StateError("matrix/vector shape mismatch");
  std::vector<S> out(m.rows(), ScalarOps<S>::zero());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t k = 0; k < m.cols(); ++k) {
      if (ScalarOps<S>::is_zero(m.at(i, k)) || ScalarOps<S>::is_zero(v[k]))
        continue;
      out[i] += m.at(i, k) * v[k];
    }
  return out;
}

/// Relative residual of A == B, normalized by max(1, |A|, |B|).
struct Residual {
  double relative = 0.0;
  bool exact_zero = true;
};

template <class S>
Residual matrix_residual(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> d = a - b;
  double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  return {d.max_abs() / scale, d.is_zero()};
}

template <class S>
Residual vector_residual(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.size() != b.size()) throw StateError("vector size mismatch");
  double ma = 0.0, mb = 0.0, md = 0.0;
  bool exact = true;
  for (size_t i = 0; i < a.size(); ++i) {
    S d = a[i] - b[i];
    ma = std::max(ma, std::fabs(ScalarOps<S>::to_double(a[i])));
    mb = std::max(mb, std::fabs(ScalarOps<S>::to_double(b[i])));
    md = std::max(md, std::fabs(ScalarOps<S>::to_double(d)));
    exact = exact && ScalarOps<S>::is_zero(d);
  }
  return {md / std::max({1.0, ma, mb}), exact};
}

template <class S>
size_t matrix_rank(Matrix<S> a, double rel_tol = 1e-10) {
  const double threshold = rel_tol * std::max(1.0, a.max_abs());
  size_t rank = 0;
  for (size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    size_t best = rank;
    bool found = false;
    if constexpr (ScalarOps<S>::exact) {
      for (size_t r = rank; r < a.rows(); ++r)
        if (!ScalarOps<S>::is_zero(a.at(r, col))) {
          best = r;
          found = true;
          break;
        }
    } else {
      double mx = 0.0;
      for (size_t r = rank; r < a.rows(); ++r) {
        double v = std::fabs(ScalarOps<S>::to_double(a.at(r, col)));
        if (v > mx) {
          mx = v;
          best = r;
        }
      }
      found = mx > threshold;
    }
    if (!found) continue;
    if (best != rank)
      for (size_t j = 0; j < a.cols(); ++j)
        std::swap(a.at(best, j), a.at(rank, j));
    for (size_t r = rank + 1; r < a.rows(); ++r) {
      S f = a.at(r, col);
      if (ScalarOps<S>::is_zero(f)) continue;
      if constexpr (ScalarOps<S>::exact) {
        // fraction-free update; scaling a row by the nonzero pivot keeps rank
        const S& p = a.at(rank, col);
        for (size_t j = col; j < a.cols(); ++j)
          a.at(r, j) = a.at(r, j) * p - a.at(rank, j) * f;
      } else {
        S f_over_p = f / a.at(rank, col);
        for (size_t j = col; j < a.cols(); ++j)
          a.at(r, j) -= f_over_p * a.at(rank, j);
      }
    }
    ++rank;
  }
  return rank;
}

/// Solve the (possibly overdetermined) system A x = rhs by Gauss elimination.
/// Exact backend pivots on the first structurally nonzero entry; the float
/// backend uses partial pivoting with a relative threshold.  Throws SolveError
/// when the system is inconsistent or the solution is not unique.
template <class S>
std::vector<S> solve_linear(Matrix<S> a, std::vector<S> rhs) {
  const size_t m = a.rows(), n = a.cols();
  if (rhs.size() != m) throw StateError("rhs size mismatch");
  double scale = std::max(1.0, a.max_abs());
  auto negligible = [&](const S& v) {
    if constexpr (ScalarOps<S>::exact)
      return ScalarOps<S>::is_zero(v);
    else
      return std::fabs(ScalarOps<S>::to_double(v)) <= 1e-12 * scale;
  };
  size_t row = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t best = row;
    bool found = false;
    if constexpr (ScalarOps<S>::exact) {
      for (size_t r = row; r < m; ++r)
        if (!ScalarOps<S>::is_zero(a.at(r, col))) {
          best = r;
          found = true;
          break;
        }
    } else {
      double mx = 0.0;
      for (size_t r = row; r < m; ++r) {
        double v = std::fabs(ScalarOps<S>::to_double(a.at(r, col)));
        if (v > mx) {
          mx = v;
          best = r;
        }
      }
      found = mx > 1e-12 * scale;
    }
    if (!found) continue;
    if (best != row) {
      for (size_t j = 0; j < n; ++j) std::swap(a.at(best, j), a.at(row, j));
      std::swap(rhs[best], rhs[row]);
    }
    S inv = ScalarOps<S>::one() / a.at(row, col);
    for (size_t j = col; j < n; ++j) a.at(row, j) = a.at(row, j) * inv;
    rhs[row] = rhs[row] * inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == row) continue;
      S f = a.at(r, col);
      if (ScalarOps<S>::is_zero(f)) continue;
      for (size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(row, j);
      rhs[r] -= f * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() < n)
    throw SolveError("linear system is underdetermined (rank " +
                     std::to_string(pivot_col.size()) + " of " +
                     std::to_string(n) + " unknowns)");
  for (size_t r = row; r < m; ++r)
    if (!negligible(rhs[r]))
      throw SolveError("linear system is inconsistent");
  std::vector<S> x(n, ScalarOps<S>::zero());
  for (size_t k = 0; k < n; ++k) x[pivot_col[k]] = rhs[k];
  return x;
}

}  // namespace quonlab
