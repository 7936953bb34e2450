#pragma once

#include <cstddef>

#include "hbd/matrix.hpp"

namespace hbd {

// Rank-sensitive kernels. The exact backend row-reduces over Q(i); the float
// backend uses an SVD with threshold epsilon() * max(sigma_max, ref_scale).

template <class S>
std::size_t rank(const Matrix<S>& a, double ref_scale = 1.0);

/// Columns form a basis of {x : a x = 0}.
template <class S>
Matrix<S> kernel(const Matrix<S>& a, double ref_scale = 1.0);

/// Canonical basis of the column space: reduced column echelon form (exact)
/// or an orthonormal basis (float).
template <class S>
Matrix<S> column_basis(const Matrix<S>& a, double ref_scale = 1.0);

template <class S>
Matrix<S> inverse(const Matrix<S>& a);

/// Returns X with a X = b. Throws SolveFailed when b is not in the column space of a.
template <class S>
Matrix<S> solve(const Matrix<S>& a, const Matrix<S>& b);

template <class S>
S determinant(const Matrix<S>& a);

struct Inertia {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  friend bool operator==(const Inertia& a, const Inertia& b) {
    return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
  }
};

/// Sign counts of a Hermitian matrix (exact congruence / float eigenvalues).
template <class S>
Inertia hermitian_inertia(const Matrix<S>& g);

}  // namespace hbd
