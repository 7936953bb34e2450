#include "hbd/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <utility>
#include <vector>

#include "hbd/errors.hpp"

namespace hbd {

namespace {

// ---------- exact backend ----------

struct Rref {
  Matrix<Gaussian> r;
  std::vector<std::size_t> pivots;
};

Rref rref(Matrix<Gaussian> m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < col_limit && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(row, k));
    Gaussian inv = Gaussian(1) / m(row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      Gaussian f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

Matrix<Gaussian> exact_kernel(const Matrix<Gaussian>& a) {
  Rref rr = rref(a, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<std::vector<Gaussian>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Gaussian> v(a.cols());
    v[f] = Gaussian(1);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.r(i, f);
    basis.push_back(std::move(v));
  }
  return Matrix<Gaussian>::from_cols(a.cols(), basis);
}

Matrix<Gaussian> exact_column_basis(const Matrix<Gaussian>& a) {
  Rref rr = rref(a.transpose(), a.rows());
  return rr.r.rows_range(0, rr.pivots.size()).transpose();
}

Inertia exact_inertia(Matrix<Gaussian> g) {
  const std::size_t n = g.rows();
  Inertia out;
  // Congruence A -> T^H A T performed as paired row/column operations.
  auto add_col = [&](std::size_t dst, std::size_t src, const Gaussian& c) {
    for (std::size_t r = 0; r < n; ++r) g(r, dst) += c * g(r, src);
    Gaussian cc = c.conj();
    for (std::size_t k = 0; k < n; ++k) g(dst, k) += cc * g(src, k);
  };
  auto swap_idx = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < n; ++r) std::swap(g(r, a), g(r, b));
    for (std::size_t k = 0; k < n; ++k) std::swap(g(a, k), g(b, k));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t j = k; j < n; ++j)
      if (!g(j, j).is_zero()) { piv = j; break; }
    if (piv == n) {
      // No usable diagonal: create one from a nonzero off-diagonal entry.
      bool found = false;
      for (std::size_t j = k; j < n && !found; ++j)
        for (std::size_t l = j + 1; l < n && !found; ++l) {
          if (g(j, l).is_zero()) continue;
          for (const Gaussian& c : {Gaussian(1), Gaussian(Rational(0), Rational(1))}) {
            add_col(j, l, c);
            if (!g(j, j).is_zero()) { found = true; break; }
            add_col(j, l, -c);
          }
          if (found) piv = j;
        }
      if (!found) {
        out.zero += static_cast<int>(n - k);
        return out;
      }
    }
    swap_idx(k, piv);
    const Gaussian d = g(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (g(i, k).is_zero()) continue;
      Gaussian f = g(i, k) / d;
      for (std::size_t c = 0; c < n; ++c) g(i, c) -= f * g(k, c);
      Gaussian fc = f.conj();
      for (std::size_t r = 0; r < n; ++r) g(r, i) -= fc * g(r, k);
    }
    int s = sgn(g(k, k).re);
    if (s > 0) ++out.pos;
    else if (s < 0) ++out.neg;
    else ++out.zero;
  }
  return out;
}

// ---------- float backend ----------

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const Matrix<Complex>& a) {
  EMat e(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) e(r, c) = a(r, c);
  return e;
}

Matrix<Complex> from_eigen(const EMat& e) {
  Matrix<Complex> a(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) a(r, c) = e(r, c);
  return a;
}

struct Svd {
  EMat u, v;
  Eigen::VectorXd s;
  std::size_t rank;
};

Svd svd(const Matrix<Complex>& a, double ref_scale) {
  Svd out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.u = EMat::Identity(a.rows(), a.rows());
    out.v = EMat::Identity(a.cols(), a.cols());
    out.rank = 0;
    return out;
  }
  Eigen::JacobiSVD<EMat> js(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.u = js.matrixU();
  out.v = js.matrixV();
  out.s = js.singularValues();
  double smax = out.s.size() ? out.s(0) : 0.0;
  double thr = epsilon() * std::max(smax, ref_scale);
  out.rank = 0;
  for (Eigen::Index i = 0; i < out.s.size(); ++i)
    if (out.s(i) > thr) ++out.rank;
  return out;
}

}  // namespace

// ---------- dispatch ----------

template <>
std::size_t rank(const Matrix<Gaussian>& a, double) {
  return rref(a, a.cols()).pivots.size();
}
template <>
std::size_t rank(const Matrix<Complex>& a, double ref_scale) {
  return svd(a, ref_scale).rank;
}

template <>
Matrix<Gaussian> kernel(const Matrix<Gaussian>& a, double) {
  if (a.rows() == 0) return Matrix<Gaussian>::identity(a.cols());
  return exact_kernel(a);
}
template <>
Matrix<Complex> kernel(const Matrix<Complex>& a, double ref_scale) {
  if (a.rows() == 0) return Matrix<Complex>::identity(a.cols());
  Svd s = svd(a, ref_scale);
  return from_eigen(s.v.rightCols(a.cols() - s.rank));
}

template <>
Matrix<Gaussian> column_basis(const Matrix<Gaussian>& a, double) {
  if (a.cols() == 0) return Matrix<Gaussian>(a.rows(), 0);
  return exact_column_basis(a);
}
template <>
Matrix<Complex> column_basis(const Matrix<Complex>& a, double ref_scale) {
  if (a.cols() == 0) return Matrix<Complex>(a.rows(), 0);
  Svd s = svd(a, ref_scale);
  return from_eigen(s.u.leftCols(s.rank));
}

template <>
Matrix<Gaussian> inverse(const Matrix<Gaussian>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::Singular, "inverse of a non-square matrix");
  Rref rr = rref(hcat(a, Matrix<Gaussian>::identity(a.rows())), a.cols());
  if (rr.pivots.size() != a.rows()) throw Error(Errc::Singular, "matrix is not invertible");
  return rr.r.cols_range(a.cols(), 2 * a.cols());
}
template <>
Matrix<Complex> inverse(const Matrix<Complex>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::Singular, "inverse of a non-square matrix");
  Svd s = svd(a, 0.0);
  if (s.rank != a.rows()) throw Error(Errc::Singular, "matrix is numerically singular");
  Eigen::FullPivLU<EMat> lu(to_eigen(a));
  return from_eigen(lu.inverse());
}

template <>
Matrix<Gaussian> solve(const Matrix<Gaussian>& a, const Matrix<Gaussian>& b) {
  Rref rr = rref(hcat(a, b), a.cols());
  const std::size_t k = rr.pivots.size();
  for (std::size_t r = k; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (!rr.r(r, a.cols() + c).is_zero()) throw Error(Errc::SolveFailed, "inconsistent linear system");
  Matrix<Gaussian> x(a.cols(), b.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(rr.pivots[i], c) = rr.r(i, a.cols() + c);
  return x;
}
template <>
Matrix<Complex> solve(const Matrix<Complex>& a, const Matrix<Complex>& b) {
  EMat ea = to_eigen(a), eb = to_eigen(b);
  Eigen::CompleteOrthogonalDecomposition<EMat> cod(ea);
  EMat x = cod.solve(eb);
  double scale = std::max(1.0, eb.cwiseAbs().maxCoeff());
  if ((ea * x - eb).cwiseAbs().maxCoeff() > epsilon() * scale)
    throw Error(Errc::SolveFailed, "inconsistent linear system");
  return from_eigen(x);
}

template <>
Gaussian determinant(const Matrix<Gaussian>& a) {
  Matrix<Gaussian> m = a;
  const std::size_t n = m.rows();
  Gaussian det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Gaussian(0);
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      Gaussian f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}
template <>
Complex determinant(const Matrix<Complex>& a) {
  return to_eigen(a).determinant();
}

template <>
Inertia hermitian_inertia(const Matrix<Gaussian>& g) {
  return exact_inertia(g);
}
template <>
Inertia hermitian_inertia(const Matrix<Complex>& g) {
  Inertia out;
  if (g.rows() == 0) return out;
  EMat e = to_eigen(g);
  EMat h = (e + e.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<EMat> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > epsilon() * scale) ++out.pos;
    else if (ev(i) < -epsilon() * scale) ++out.neg;
    else ++out.zero;
  }
  return out;
}

}  // namespace hbd
