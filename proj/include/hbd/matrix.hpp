#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "hbd/scalar.hpp"

namespace hbd {

/// Dense row-major matrix. Sizes here are tiny (2n <= 16), so nothing clever.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> col(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_col(std::size_t c, const std::vector<T>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }
  static Matrix from_col(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    m.set_col(0, v);
    return m;
  }
  static Matrix from_cols(std::size_t rows, const std::vector<std::vector<T>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
    return m;
  }

  Matrix cols_range(std::size_t c0, std::size_t c1) const {
    Matrix m(rows_, c1 - c0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = c0; c < c1; ++c) m(r, c - c0) = (*this)(r, c);
    return m;
  }
  Matrix rows_range(std::size_t r0, std::size_t r1) const {
    Matrix m(r1 - r0, cols_);
    for (std::size_t r = r0; r < r1; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r - r0, c) = (*this)(r, c);
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class S>
using Vec = std::vector<S>;

using IntMatrix = Matrix<long>;

/// [A | B]
template <class T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

template <class S>
Matrix<S> conj(const Matrix<S>& a) {
  Matrix<S> m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = Field<S>::conj(a(r, c));
  return m;
}

template <class S>
Vec<S> conj(const Vec<S>& v) {
  Vec<S> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Field<S>::conj(v[i]);
  return out;
}

template <class S>
Matrix<S> adjoint(const Matrix<S>& a) { return conj(a).transpose(); }

/// Embeds an integer matrix into either backend.
template <class S>
Matrix<S> from_int(const IntMatrix& a) {
  Matrix<S> m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = Field<S>::from_int(a(r, c));
  return m;
}

template <class S>
Matrix<S> from_gaussian(const Matrix<Gaussian>& a) {
  Matrix<S> m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = Field<S>::from_gaussian(a(r, c));
  return m;
}

template <class S>
Matrix<Complex> to_complex(const Matrix<S>& a) {
  Matrix<Complex> m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = Field<S>::to_complex(a(r, c));
  return m;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& a, double scale = 1.0) {
  for (const auto& x : a.data())
    if (!Field<S>::is_zero(x, scale)) return false;
  return true;
}

template <class S>
double max_abs(const Matrix<S>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, Field<S>::magnitude(x));
  return m;
}

template <class S>
bool approx_equal(const Matrix<S>& a, const Matrix<S>& b, double scale = 1.0) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return is_zero_matrix(Matrix<S>(a - b), scale);
}

/// Real matrix test: entries have zero imaginary part.
template <class S>
bool is_real(const Matrix<S>& a, double scale = 1.0) {
  for (const auto& x : a.data())
    if (!Field<S>::is_zero(Field<S>::im(x), scale)) return false;
  return true;
}

/// exp(M) for nilpotent M (series terminates; throws if M^{rows} != 0).
template <class S>
Matrix<S> nil_exp(const Matrix<S>& m) {
  std::size_t n = m.rows();
  Matrix<S> result = Matrix<S>::identity(n);
  Matrix<S> term = Matrix<S>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * m;
    if (is_zero_matrix(term, std::max(1.0, max_abs(m)))) return result;
    term *= Field<S>::one() / Field<S>::from_int(static_cast<long>(k));
    result += term;
  }
  term = term * m;
  if (!is_zero_matrix(term, std::max(1.0, max_abs(m)))) throw std::invalid_argument("nil_exp: matrix is not nilpotent");
  return result;
}

/// A·B − B·A
template <class S>
Matrix<S> bracket(const Matrix<S>& a, const Matrix<S>& b) { return a * b - b * a; }

}  // namespace hbd
