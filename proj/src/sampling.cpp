#include "hbd/sampling.hpp"

#include <array>

namespace hbd::sample {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Rational rational(Rng& rng, long num_max, long den_max) {
  Rational q(uniform(rng, -num_max, num_max), uniform(rng, 1, den_max));
  q.canonicalize();
  return q;
}

Rational positive_rational(Rng& rng, long num_max, long den_max) {
  Rational q(uniform(rng, 1, num_max), uniform(rng, 1, den_max));
  q.canonicalize();
  return q;
}

Gaussian gaussian(Rng& rng, long num_max, long den_max) {
  Rational re = rational(rng, num_max, den_max);
  return Gaussian(re, rational(rng, num_max, den_max));
}

Gaussian unit_disk(Rng& rng) {
  if (uniform(rng, 0, 3) == 0) {
    static const std::array<std::pair<long, long>, 4> pts{{{1, 0}, {3, 4}, {5, 12}, {8, 15}}};
    static const std::array<long, 4> hyp{1, 5, 13, 17};
    const long k = uniform(rng, 0, 3);
    Rational a(pts[k].first, hyp[k]), b(pts[k].second, hyp[k]);
    a.canonicalize();
    b.canonicalize();
    if (uniform(rng, 0, 1)) std::swap(a, b);
    if (uniform(rng, 0, 1)) a = -a;
    if (uniform(rng, 0, 1)) b = -b;
    return Gaussian(a, b);
  }
  while (true) {
    Rational a(uniform(rng, -8, 8), 8), b(uniform(rng, -8, 8), 8);
    a.canonicalize();
    b.canonicalize();
    if (a * a + b * b <= 1) return Gaussian(a, b);
  }
}

Gaussian upper_half_plane(Rng& rng) {
  Rational re = rational(rng, 6, 4);
  return Gaussian(re, positive_rational(rng, 6, 4));
}

Complex complex_box(Rng& rng, double half_width) {
  std::uniform_real_distribution<double> d(-half_width, half_width);
  double re = d(rng);
  return {re, d(rng)};
}

Type1Param<Gaussian> type1(Rng& rng) {
  Rational re = rational(rng, 4, 3);
  Gaussian v(re, -positive_rational(rng, 5, 3));
  return {v, gaussian(rng, 4, 3)};
}

Type2Param type2(Rng& rng) {
  static const std::array<long, 6> ms{1, 2, 3, 5, 6, 7};
  Type2Param p;
  p.m = ms[uniform(rng, 0, 5)];
  p.sign = uniform(rng, 0, 1) ? 1 : -1;
  p.w = complex_box(rng, 2.0);
  return p;
}

IntMatrix symplectic(Rng& rng, int n, int factors) {
  const std::size_t d = static_cast<std::size_t>(2 * n);
  IntMatrix g = IntMatrix::identity(d);
  for (int f = 0; f < factors; ++f) {
    IntMatrix h = IntMatrix::identity(d);
    const long kind = uniform(rng, 0, 2);
    if (kind < 2) {
      // [[I, S], [0, I]] or [[I, 0], [S, I]] with S symmetric.
      const std::size_t off_r = kind == 0 ? 0 : n, off_c = kind == 0 ? n : 0;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          long s = uniform(rng, -1, 1);
          h(off_r + i, off_c + j) = s;
          h(off_r + j, off_c + i) = s;
        }
    } else if (n > 1) {
      // diag(A, A^{-T}) with A = I + s e_ij.
      long i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 2);
      if (j >= i) ++j;
      long s = uniform(rng, 0, 1) ? 1 : -1;
      h(i, j) = s;
      h(n + j, n + i) = -s;
    } else {
      h(0, 0) = 0;
      h(0, 1) = -1;
      h(1, 0) = 1;
      h(1, 1) = 0;
    }
    g = g * h;
  }
  return g;
}

IntMatrix int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(rng, -bound, bound);
  return m;
}

}  // namespace hbd::sample
