#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hbd/case1111.hpp"
#include "hbd/errors.hpp"

// Small test-local helpers. Nothing here calls the routines under test except to build inputs.
namespace t {

using namespace hbd;
using G = Gaussian;
using C = Complex;

inline G q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return G(r, Rational(0));
}
inline G gi(long re, long im) { return G(Rational(re), Rational(im)); }
inline G gq(long a, long b, long c, long d) {
  Rational re(a, b), im(c, d);
  re.canonicalize();
  im.canonicalize();
  return G(re, im);
}

template <class S>
Vec<S> e(std::size_t i, std::size_t dim = 4) {
  Vec<S> v(dim, Field<S>::zero());
  v[i] = Field<S>::one();
  return v;
}

template <class S>
Subspace<S> span(std::initializer_list<Vec<S>> vs) {
  std::vector<Vec<S>> list(vs);
  return Subspace<S>::span(list.front().size(), list);
}

template <class S>
Filtration<S> flag_1111(const Vec<S>& f1, const Vec<S>& f0) {
  return filtration_from_flag(SympSpace::standard(2), HodgeNumbers::one_one_one_one(),
                              Matrix<S>::from_cols(4, {f1, f0}));
}

/// <x, y> = x^T Q y for the standard Q = ((0, -I), (I, 0)), written out by hand.
template <class S>
S std_form(const Vec<S>& x, const Vec<S>& y) {
  const std::size_t n = x.size() / 2;
  S acc = Field<S>::zero();
  for (std::size_t i = 0; i < n; ++i) acc += x[n + i] * y[i] - x[i] * y[n + i];
  return acc;
}

/// Determinant by permutation expansion.
inline G leibniz_det(const Matrix<G>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  G total = q(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    G term = q(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Throws an Error with the expected code, or fails the test.
template <class F>
void expect_errc(Errc code, F&& f) {
  try {
    f();
    FAIL(std::string("expected ").append(errc_name(code)));
  } catch (const Error& err) {
    CHECK(err.name() == std::string(errc_name(code)));
  }
}

inline double dist(const Subspace<C>& a, const Subspace<C>& b) {
  if (a.dim() != b.dim()) return 1e300;
  auto resid = [](const Matrix<C>& x, const Matrix<C>& y) {
    return max_abs(Matrix<C>(x - y * Matrix<C>(adjoint(y) * x)));
  };
  return std::max(resid(a.basis(), b.basis()), resid(b.basis(), a.basis()));
}

}  // namespace t
