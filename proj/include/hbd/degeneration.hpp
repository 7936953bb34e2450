#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hbd/hodge.hpp"

namespace hbd {

/// A nilpotent, infinitesimally symplectic endomorphism N (generator of a rank-1 cone).
template <class S>
struct NilDirection {
  Matrix<S> N;
  int index = 1;  // smallest k with N^k = 0

  /// Validates shape, nilpotency and <Nx, y> + <x, Ny> = 0. N must be real.
  static NilDirection make(const SympSpace& sp, Matrix<S> n);
  bool is_zero() const { return index <= 1; }
};

/// Increasing filtration W_k (centered at -1). Stored for k in [lo, hi]; below is 0, above is H_C.
template <class S>
struct WeightFiltration {
  std::size_t ambient = 0;
  std::map<int, Subspace<S>> W;
  Subspace<S> operator[](int k) const;
  int lo() const { return W.empty() ? 0 : W.begin()->first; }
  int hi() const { return W.empty() ? -1 : W.rbegin()->first; }
};

template <class S>
WeightFiltration<S> weight_filtration(const SympSpace& sp, const NilDirection<S>& n);

using Bidegree = std::pair<int, int>;

/// Deligne splitting {I^{p,q}}; only nonzero pieces are stored.
template <class S>
struct Bigrading {
  std::size_t ambient = 0;
  std::map<Bidegree, Subspace<S>> I;
  bool r_split = false;

  Subspace<S> at(int p, int q) const;
  /// Semisimple Y acting by p+q on I^{p,q}.
  Matrix<S> grading() const;
  /// Direct sum of the pieces with p+q = k.
  Subspace<S> weight_part(int k) const;
};

/// The Deligne formula. Throws NotDirectSum when the pieces fail to split H_C.
template <class S>
Bigrading<S> deligne_bigrading(const WeightFiltration<S>& w, const Filtration<S>& f);

struct LmhsReport {
  bool mhs = false;
  bool morphism = false;
  bool polarized = false;
  std::vector<std::string> notes;
  bool all() const { return mhs && morphism && polarized; }
};

/// Requires N^2 = 0 (IndexTooHigh otherwise).
template <class S>
LmhsReport is_lmhs(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

template <class S>
struct RSplitResult {
  Matrix<S> delta;
  Filtration<S> F_hat;
  Bigrading<S> bigrading;  // of (W, F_hat)
};

/// delta in L^{-1,-1}_R with (W, exp(-i delta) F) R-split. Throws SolveFailed.
template <class S>
RSplitResult<S> r_split_delta(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

template <class S>
struct Sl2Data {
  Matrix<S> N;
  Matrix<S> H;
  Matrix<S> Nplus;
  Matrix<S> X;
};

/// Throws NotRSplit, NoTriple, IndexTooHigh.
template <class S>
Sl2Data<S> sl2_complete(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f_hat);

struct XActionReport {
  bool pass = true;
  double max_deviation = 0.0;
  int vectors = 0;
  int samples = 0;
  std::vector<std::string> failures;
};

/// Checks X exp(iN)v = -exp(-iN)v, equality of norms, the 1-|z|^2 law and vanishing
/// cross-pairings for every v in a polarization-orthogonal basis of each I^{p,-p}.
template <class S>
XActionReport x_action_check(const SympSpace& sp, const Sl2Data<S>& data, const NilDirection<S>& n,
                             const Filtration<S>& f_hat, const std::vector<S>& zs);

template <class S>
struct Split123 {
  Subspace<S> H1, H2, H3;
};

/// H1 = I^{p,-p-1}, H2 = e^{zN} I^{p,-p}, H3 = e^{conj(z) N} I^{p+1,-p-1}, for Im z > 0.
template <class S>
std::map<int, Split123<S>> split_123(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f_hat,
                                     const S& z);

struct OrbitVerdict {
  bool verdict = false;
  bool horizontal = false;
  bool budget_exhausted = false;
  double y_star = 0.0;
};

/// Horizontality plus exp(iyN)F in D on the grid y = 2^k / 16, k = 0..40.
template <class S>
OrbitVerdict is_nilpotent_orbit(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

enum class Parity { even, odd, neither };
const char* parity_name(Parity p);

/// Throws NotAnOrbit. N = 0 (pure case) reports even.
template <class S>
Parity classify_parity(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

/// Y-grading test helper: the matrix acting by p+q on the given bigrading.
template <class S>
Matrix<S> grading_matrix(const std::map<Bidegree, Subspace<S>>& pieces, std::size_t ambient);

}  // namespace hbd
