#include "support.hpp"

#include "hbd/sampling.hpp"

using namespace t;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK_THROWS(parse_rational("1e3"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("Gaussian arithmetic") {
  G a = gi(1, 2), b = gi(3, -1);
  CHECK(a * b == gi(5, 5));
  CHECK((a / b) * b == a);
  CHECK(Field<G>::conj(a) == gi(1, -2));
  CHECK(a.norm() == Rational(5));
  expect_errc(Errc::Singular, [] { G z = gi(1, 1); z /= G(); });
}

TEST_CASE("epsilon is positive and scoped") {
  const double before = epsilon();
  CHECK_THROWS_AS(set_epsilon(0.0), std::invalid_argument);
  {
    EpsilonGuard g(1e-6);
    CHECK(epsilon() == 1e-6);
  }
  CHECK(epsilon() == before);
}

TEST_CASE("rank, kernel and inverse on constructed matrices") {
  sample::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 2 + trial % 4, cols = 2 + (trial / 4) % 4, k = 1 + trial % 3;
    // A product through a k-dimensional space has rank at most k.
    Matrix<G> a = from_int<G>(sample::int_matrix(rng, rows, k, 3)) * from_int<G>(sample::int_matrix(rng, k, cols, 3));
    const std::size_t r = rank(a);
    CHECK(r <= std::min({rows, cols, k}));
    Matrix<G> ker = kernel(a);
    CHECK(ker.cols() == cols - r);
    CHECK(is_zero_matrix(Matrix<G>(a * ker)));
    // Float agrees with exact on integer input.
    CHECK(rank(to_complex(a)) == r);
  }
  Matrix<G> m{{q(2), q(1), q(0)}, {q(1), q(3), q(1)}, {q(0), q(1), q(4)}};
  CHECK(m * inverse(m) == Matrix<G>::identity(3));
  expect_errc(Errc::Singular, [] { inverse(Matrix<G>{{q(1), q(2)}, {q(2), q(4)}}); });
}

TEST_CASE("determinant matches permutation expansion") {
  sample::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    Matrix<G> a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = sample::gaussian(rng, 4, 3);
    CHECK(determinant(a) == leibniz_det(a));
  }
}

TEST_CASE("solve reports inconsistent systems") {
  Matrix<G> a{{q(1), q(0)}, {q(0), q(0)}};
  Matrix<G> b{{q(2)}, {q(0)}};
  CHECK(a * solve(a, b) == b);
  expect_errc(Errc::SolveFailed, [&] { solve(a, Matrix<G>{{q(0)}, {q(1)}}); });
}

TEST_CASE("Hermitian inertia is a congruence invariant") {
  sample::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const int pos = trial % 3, neg = 1;
    Matrix<G> d(n, n);
    for (int i = 0; i < pos; ++i) d(i, i) = q(1 + i);
    for (int i = pos; i < pos + neg; ++i) d(i, i) = q(-2);
    Matrix<G> p = from_int<G>(sample::int_matrix(rng, n, n, 2));
    for (std::size_t i = 0; i < n; ++i) p(i, i) += gi(9, 1);  // diagonally dominant, invertible
    Matrix<G> g = adjoint(p) * d * p;
    Inertia in = hermitian_inertia(g);
    CHECK(in.pos == pos);
    CHECK(in.neg == neg);
    CHECK(in.zero == static_cast<int>(n) - pos - neg);
    CHECK(hermitian_inertia(to_complex(g)) == in);
  }
  Inertia hyperbolic = hermitian_inertia(Matrix<G>{{q(0), gi(0, 1)}, {gi(0, -1), q(0)}});
  CHECK(hyperbolic.pos == 1);
  CHECK(hyperbolic.neg == 1);
}

TEST_CASE("symplectic space validation") {
  CHECK(SympSpace::standard(2).dim() == 4);
  CHECK_THROWS(SympSpace(IntMatrix{{1, 0}, {0, 1}}));
  CHECK_THROWS(SympSpace(IntMatrix{{0, 2}, {-2, 0}}));
  CHECK_THROWS(SympSpace(IntMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}));
  CHECK_NOTHROW(SympSpace(IntMatrix{{0, 1}, {-1, 0}}));
}

TEST_CASE("the form agrees with its coordinate expression") {
  const SympSpace sp = SympSpace::standard(2);
  sample::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Vec<G> x(4), y(4);
    for (auto& c : x) c = sample::gaussian(rng, 3, 2);
    for (auto& c : y) c = sample::gaussian(rng, 3, 2);
    CHECK(form(sp, x, y) == std_form(x, y));
    CHECK(form(sp, x, y) == -form(sp, y, x));
  }
  CHECK(form(sp, e<G>(0), e<G>(2)) == q(-1));
  expect_errc(Errc::AmbientMismatch, [&] { form(sp, e<G>(0, 2), e<G>(0, 2)); });
}

TEST_CASE("subspace operations") {
  const SympSpace sp = SympSpace::standard(2);
  Subspace<G> a = span<G>({e<G>(0), e<G>(1), Vec<G>{q(1), q(1), q(0), q(0)}});
  CHECK(a.dim() == 2);
  CHECK(a.contains(Vec<G>{q(3), q(-2), q(0), q(0)}));
  CHECK_FALSE(a.contains(e<G>(2)));
  Subspace<G> b = span<G>({e<G>(1), e<G>(2)});
  CHECK(intersect(a, b) == span<G>({e<G>(1)}));
  CHECK(sum(a, b).dim() == 3);
  CHECK(perp(sp, a) == a);  // Lagrangian
  CHECK(is_isotropic(sp, a));
  CHECK_FALSE(is_isotropic(sp, span<G>({e<G>(0), e<G>(2)})));
  CHECK(independent<G>({span<G>({e<G>(0)}), span<G>({e<G>(2)})}));
  CHECK_FALSE(independent<G>({a, b}));
}

TEST_CASE("sign convention of isotropy_and_sign") {
  const SympSpace sp = SympSpace::standard(1);
  // v = e1 + i e2: <v, conj v> = 2i by hand, so -i<v, conj v> = 2 > 0.
  Subspace<G> v = span<G>({Vec<G>{q(1), gi(0, 1)}});
  CHECK(std_form(Vec<G>{q(1), gi(0, 1)}, Vec<G>{q(1), gi(0, -1)}) == gi(0, 2));
  IsotropyReport rep = isotropy_and_sign(sp, v);
  CHECK(rep.isotropic);
  CHECK(rep.signature.pos == 1);
  IsotropyReport bar = isotropy_and_sign(sp, conjugate(v));
  CHECK(bar.signature.neg == 1);
}

TEST_CASE("linear algebra properties over random subspaces") {
  sample::Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const std::size_t d = 2 * n;
    const SympSpace sp = SympSpace::standard(n);
    std::uniform_int_distribution<std::size_t> dims(0, d);
    Subspace<G> v = Subspace<G>::span(from_int<G>(sample::int_matrix(rng, d, dims(rng), 2)));
    Subspace<G> w = Subspace<G>::span(from_int<G>(sample::int_matrix(rng, d, dims(rng), 2)));
    CHECK(perp(sp, perp(sp, v)) == v);
    CHECK(v.dim() + perp(sp, v).dim() == d);
    CHECK(sum(v, w).dim() + intersect(v, w).dim() == v.dim() + w.dim());
    CHECK(conjugate(conjugate(v)) == v);
    Subspace<C> vf = Subspace<C>::span(to_complex(v.basis()));
    CHECK(vf.dim() == v.dim());
    CHECK(dist(perp(sp, vf), Subspace<C>::span(to_complex(perp(sp, v).basis()))) < 1e-9);
  }
}
