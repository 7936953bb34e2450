#pragma once

#include <cstddef>

#include "hbd/linalg.hpp"
#include "hbd/matrix.hpp"

namespace hbd {

/// Rank-2n lattice with an integral alternating form <x, y> = x^T Q y.
class SympSpace {
 public:
  /// Validates Q: square of even size, antisymmetric, det = +-1.
  explicit SympSpace(IntMatrix q);
  /// Block form ((0, -I), (I, 0)).
  static SympSpace standard(int n);

  int n() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(2 * n_); }
  const IntMatrix& q() const { return q_; }

  template <class S>
  Matrix<S> gram() const { return from_int<S>(q_); }

  friend bool operator==(const SympSpace& a, const SympSpace& b) { return a.q_ == b.q_; }

 private:
  int n_ = 0;
  IntMatrix q_;
};

template <class S>
S form(const SympSpace& sp, const Vec<S>& x, const Vec<S>& y);

/// A linear subspace of H_C stored by a canonical basis (see column_basis).
template <class S>
class Subspace {
 public:
  Subspace() = default;
  /// Column span of `vectors` (need not be independent).
  static Subspace span(const Matrix<S>& vectors);
  static Subspace span(std::size_t ambient, const std::vector<Vec<S>>& vectors);
  static Subspace zero(std::size_t ambient) { return Subspace(Matrix<S>(ambient, 0)); }
  static Subspace full(std::size_t ambient) { return Subspace(Matrix<S>::identity(ambient)); }

  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix<S>& basis() const { return basis_; }

  bool contains(const Vec<S>& x) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient() == b.ambient() && a.dim() == b.dim() && a.contains(b);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  explicit Subspace(Matrix<S> canonical) : basis_(std::move(canonical)) {}
  Matrix<S> basis_;
};

template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b);
template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b);
template <class S>
Subspace<S> perp(const SympSpace& sp, const Subspace<S>& a);
template <class S>
Subspace<S> conjugate(const Subspace<S>& a);
template <class S>
Subspace<S> image(const Matrix<S>& m, const Subspace<S>& a);
/// True when the subspaces are independent (dim of sum = sum of dims).
template <class S>
bool independent(const std::vector<Subspace<S>>& parts);
template <class S>
Subspace<S> sum_all(std::size_t ambient, const std::vector<Subspace<S>>& parts);

/// Gram matrix G_jk = coeff * <b_j, conj(b_k)> of a basis.
template <class S>
Matrix<S> hermitian_gram(const SympSpace& sp, const Matrix<S>& basis, const S& coeff,
                         const Matrix<S>* twist = nullptr);

template <class S>
bool is_isotropic(const SympSpace& sp, const Subspace<S>& v);

struct IsotropyReport {
  bool isotropic = false;
  Inertia signature;
};

/// Isotropy of V and the signature of -i<v, conj w> restricted to V.
template <class S>
IsotropyReport isotropy_and_sign(const SympSpace& sp, const Subspace<S>& v);

/// Signature of coeff * <v, conj w> on V.
template <class S>
Inertia signature(const SympSpace& sp, const Subspace<S>& v, const S& coeff);

template <class S>
void check_ambient(const SympSpace& sp, const Subspace<S>& a);

}  // namespace hbd
