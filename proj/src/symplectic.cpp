#include "hbd/symplectic.hpp"

#include <string>

#include "hbd/errors.hpp"

namespace hbd {

SympSpace::SympSpace(IntMatrix q) : q_(std::move(q)) {
  if (q_.rows() != q_.cols() || q_.rows() == 0 || q_.rows() % 2 != 0)
    throw Error(Errc::BadParam, "Gram matrix must be square of positive even size");
  for (std::size_t i = 0; i < q_.rows(); ++i)
    for (std::size_t j = 0; j < q_.cols(); ++j)
      if (q_(i, j) != -q_(j, i)) throw Error(Errc::BadParam, "Gram matrix is not antisymmetric");
  Gaussian det = determinant(from_int<Gaussian>(q_));
  if (det != Gaussian(1) && det != Gaussian(-1)) throw Error(Errc::BadParam, "Gram matrix is not unimodular");
  n_ = static_cast<int>(q_.rows() / 2);
}

SympSpace SympSpace::standard(int n) {
  if (n <= 0) throw Error(Errc::BadParam, "half-rank must be positive");
  IntMatrix q(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    q(i, n + i) = -1;
    q(n + i, i) = 1;
  }
  return SympSpace(q);
}

template <class S>
S form(const SympSpace& sp, const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != sp.dim() || y.size() != sp.dim())
    throw Error(Errc::AmbientMismatch, "vector length " + std::to_string(x.size()) + "/" + std::to_string(y.size()) +
                                           " against rank " + std::to_string(sp.dim()));
  S acc = Field<S>::zero();
  const IntMatrix& q = sp.q();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (q(i, j) != 0) acc += x[i] * Field<S>::from_int(q(i, j)) * y[j];
  return acc;
}

template <class S>
void check_ambient(const SympSpace& sp, const Subspace<S>& a) {
  if (a.ambient() != sp.dim())
    throw Error(Errc::AmbientMismatch, "subspace of ambient dimension " + std::to_string(a.ambient()) +
                                           " in a space of rank " + std::to_string(sp.dim()));
}

template <class S>
Subspace<S> Subspace<S>::span(const Matrix<S>& vectors) {
  double scale = Field<S>::exact ? 1.0 : std::max(1.0, max_abs(vectors));
  return Subspace(column_basis(vectors, scale));
}

template <class S>
Subspace<S> Subspace<S>::span(std::size_t ambient, const std::vector<Vec<S>>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient) throw Error(Errc::AmbientMismatch, "vector length differs from ambient dimension");
  return span(Matrix<S>::from_cols(ambient, vectors));
}

template <class S>
bool Subspace<S>::contains(const Vec<S>& x) const {
  if (x.size() != ambient()) throw Error(Errc::AmbientMismatch, "vector length differs from ambient dimension");
  return contains(Subspace::span(Matrix<S>::from_col(x)));
}

template <class S>
bool Subspace<S>::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(Errc::AmbientMismatch, "subspaces live in different ambients");
  if (other.dim() == 0) return true;
  if (other.dim() > dim()) return false;
  if constexpr (Field<S>::exact) {
    return rank(hcat(basis_, other.basis_)) == dim();
  } else {
    // Orthonormal bases: residual of the orthogonal projection.
    Matrix<S> resid = other.basis_ - basis_ * (adjoint(basis_) * other.basis_);
    return max_abs(resid) <= epsilon() * 10.0;
  }
}

template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw Error(Errc::AmbientMismatch, "sum of subspaces in different ambients");
  return Subspace<S>::span(hcat(a.basis(), b.basis()));
}

template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw Error(Errc::AmbientMismatch, "intersection of subspaces in different ambients");
  if (a.dim() == 0 || b.dim() == 0) return Subspace<S>::zero(a.ambient());
  Matrix<S> k = kernel(hcat(a.basis(), -b.basis()));
  if (k.cols() == 0) return Subspace<S>::zero(a.ambient());
  return Subspace<S>::span(a.basis() * k.rows_range(0, a.dim()));
}

template <class S>
Subspace<S> perp(const SympSpace& sp, const Subspace<S>& a) {
  check_ambient(sp, a);
  if (a.dim() == 0) return Subspace<S>::full(a.ambient());
  return Subspace<S>::span(kernel(Matrix<S>(a.basis().transpose() * sp.gram<S>())));
}

template <class S>
Subspace<S> conjugate(const Subspace<S>& a) {
  return Subspace<S>::span(conj(a.basis()));
}

template <class S>
Subspace<S> image(const Matrix<S>& m, const Subspace<S>& a) {
  if (m.cols() != a.ambient()) throw Error(Errc::AmbientMismatch, "matrix does not act on the subspace ambient");
  if (a.dim() == 0) return Subspace<S>::zero(m.rows());
  return Subspace<S>::span(m * a.basis());
}

template <class S>
bool independent(const std::vector<Subspace<S>>& parts) {
  if (parts.empty()) return true;
  std::size_t total = 0;
  Matrix<S> all(parts.front().ambient(), 0);
  for (const auto& p : parts) {
    total += p.dim();
    all = hcat(all, p.basis());
  }
  return rank(all) == total;
}

template <class S>
Subspace<S> sum_all(std::size_t ambient, const std::vector<Subspace<S>>& parts) {
  Matrix<S> all(ambient, 0);
  for (const auto& p : parts) all = hcat(all, p.basis());
  return Subspace<S>::span(all);
}

template <class S>
Matrix<S> hermitian_gram(const SympSpace& sp, const Matrix<S>& basis, const S& coeff, const Matrix<S>* twist) {
  Matrix<S> q = sp.gram<S>();
  if (twist) q = q * *twist;
  return coeff * Matrix<S>(basis.transpose() * q * conj(basis));
}

template <class S>
bool is_isotropic(const SympSpace& sp, const Subspace<S>& v) {
  check_ambient(sp, v);
  Matrix<S> g = v.basis().transpose() * sp.gram<S>() * v.basis();
  return is_zero_matrix(g);
}

template <class S>
Inertia signature(const SympSpace& sp, const Subspace<S>& v, const S& coeff) {
  check_ambient(sp, v);
  return hermitian_inertia(hermitian_gram(sp, v.basis(), coeff));
}

template <class S>
IsotropyReport isotropy_and_sign(const SympSpace& sp, const Subspace<S>& v) {
  IsotropyReport r;
  r.isotropic = is_isotropic(sp, v);
  r.signature = signature(sp, v, S(-Field<S>::imag_unit()));
  return r;
}

#define HBD_INSTANTIATE(S)                                                                                 \
  template S form(const SympSpace&, const Vec<S>&, const Vec<S>&);                                          \
  template class Subspace<S>;                                                                               \
  template void check_ambient(const SympSpace&, const Subspace<S>&);                                        \
  template Subspace<S> sum(const Subspace<S>&, const Subspace<S>&);                                         \
  template Subspace<S> intersect(const Subspace<S>&, const Subspace<S>&);                                   \
  template Subspace<S> perp(const SympSpace&, const Subspace<S>&);                                          \
  template Subspace<S> conjugate(const Subspace<S>&);                                                       \
  template Subspace<S> image(const Matrix<S>&, const Subspace<S>&);                                         \
  template bool independent(const std::vector<Subspace<S>>&);                                               \
  template Subspace<S> sum_all(std::size_t, const std::vector<Subspace<S>>&);                               \
  template Matrix<S> hermitian_gram(const SympSpace&, const Matrix<S>&, const S&, const Matrix<S>*);        \
  template bool is_isotropic(const SympSpace&, const Subspace<S>&);                                         \
  template Inertia signature(const SympSpace&, const Subspace<S>&, const S&);                               \
  template IsotropyReport isotropy_and_sign(const SympSpace&, const Subspace<S>&);

HBD_INSTANTIATE(Gaussian)
HBD_INSTANTIATE(Complex)

}  // namespace hbd
