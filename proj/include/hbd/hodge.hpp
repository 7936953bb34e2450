#pragma once

#include <map>
#include <string>
#include <vector>

#include "hbd/symplectic.hpp"

namespace hbd {

/// h(p) = h^{p,-p-1} for a weight -1 Hodge structure; symmetric under p <-> -1-p.
class HodgeNumbers {
 public:
  HodgeNumbers() = default;
  /// Validates nonnegativity and the symmetry h(p) = h(-1-p).
  explicit HodgeNumbers(std::map<int, int> h);
  /// h(0) = h(-1) = n.
  static HodgeNumbers siegel(int n);
  /// h(p) = 1 for p in {1, 0, -1, -2}.
  static HodgeNumbers one_one_one_one();

  int operator()(int p) const;
  int p_max() const;
  int p_min() const { return -1 - p_max(); }
  int total() const;
  /// dim F^p = sum_{r >= p} h(r).
  int f_dim(int p) const;
  const std::map<int, int>& values() const { return h_; }

 private:
  std::map<int, int> h_;
};

/// Decreasing filtration F^p of H_C. Pieces above the stored range are 0, below are H_C.
template <class S>
class Filtration {
 public:
  Filtration() = default;
  Filtration(std::size_t ambient, HodgeNumbers h, std::map<int, Subspace<S>> pieces);

  std::size_t ambient() const { return ambient_; }
  const HodgeNumbers& hodge_numbers() const { return h_; }
  const std::map<int, Subspace<S>>& pieces() const { return pieces_; }
  Subspace<S> operator[](int p) const;

  Filtration act(const Matrix<S>& g) const;
  Filtration conjugate() const;

  friend bool operator==(const Filtration& a, const Filtration& b) {
    if (a.ambient_ != b.ambient_) return false;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    for (int p = lo - 1; p <= hi + 1; ++p)
      if (a[p] != b[p]) return false;
    return true;
  }

  /// Bounds of the explicitly stored pieces (lo > hi when none stored).
  int lo() const { return pieces_.empty() ? 1 : pieces_.begin()->first; }
  int hi() const { return pieces_.empty() ? 0 : pieces_.rbegin()->first; }

 private:
  std::size_t ambient_ = 0;
  HodgeNumbers h_;
  std::map<int, Subspace<S>> pieces_;
};

struct CompactDualReport {
  bool ok = true;
  std::vector<std::string> reasons;
};

/// Monotone, dimensions matching h, and F^{-p} = (F^p)^perp.
template <class S>
CompactDualReport in_compact_dual(const SympSpace& sp, const Filtration<S>& f);

/// Second Hodge-Riemann relation: i^{2p+1}<v, conj v> > 0 on each H^{p,-p-1}.
/// Throws NotInCompactDual.
template <class S>
bool in_period_domain(const SympSpace& sp, const Filtration<S>& f);

/// H^{p,-p-1} = F^p ∩ conj(F^{-p-1}). Throws NotInPeriodDomain.
template <class S>
std::map<int, Subspace<S>> hodge_decomposition(const SympSpace& sp, const Filtration<S>& f);

/// Same intersections without any validity check (used by oracles and reports).
template <class S>
std::map<int, Subspace<S>> raw_hodge_components(const Filtration<S>& f);

struct FCounts {
  std::map<int, int> f_ev;
  std::map<int, int> f_od;
};

/// f_ev(p) = sum of h(r) over even r >= p; f_od likewise over odd r. Keys p_min..p_max+1.
FCounts f_counts(const HodgeNumbers& h);

/// Builds F^p from a flag given by nested spans of leading columns: F^{p_max - k} is spanned by
/// the first dims[k] vectors. Remaining pieces are completed by perps.
template <class S>
Filtration<S> filtration_from_flag(const SympSpace& sp, const HodgeNumbers& h, const Matrix<S>& columns);

}  // namespace hbd
