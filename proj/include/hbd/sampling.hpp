#pragma once

#include <cstdint>
#include <random>

#include "hbd/case1111.hpp"

namespace hbd::sample {

using Rng = std::mt19937_64;

/// Numerator in [-num_max, num_max], denominator in [1, den_max].
Rational rational(Rng& rng, long num_max, long den_max);
Rational positive_rational(Rng& rng, long num_max, long den_max);
Gaussian gaussian(Rng& rng, long num_max, long den_max);
/// Closed unit disk; about a quarter of the draws lie on the circle.
Gaussian unit_disk(Rng& rng);
/// Rational point with Im z > 0.
Gaussian upper_half_plane(Rng& rng);
Complex complex_box(Rng& rng, double half_width);

/// Im v < 0.
Type1Param<Gaussian> type1(Rng& rng);
/// m in {1, 2, 3, 5, 6, 7}, random sign, w in a box.
Type2Param type2(Rng& rng);

/// Product of `factors` random generators (unipotent blocks with symmetric S, and diag(A, A^{-T})
/// with elementary A) of Sp(2n, Z) for the standard form.
IntMatrix symplectic(Rng& rng, int n, int factors = 4);

/// Integer matrix with entries in [-bound, bound].
IntMatrix int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);

}  // namespace hbd::sample
