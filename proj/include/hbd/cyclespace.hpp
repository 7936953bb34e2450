#pragma once

#include <utility>

#include "hbd/degeneration.hpp"

namespace hbd {

/// Pair of complementary isotropic n-dimensional subspaces.
template <class S>
struct CyclePoint {
  Subspace<S> V;
  Subspace<S> W;
};

enum class CycleMembership { interior, closure, outside };
const char* membership_name(CycleMembership m);

/// Signature of i<v, conj w> on V. Even Hodge components are positive for it.
template <class S>
Inertia cycle_signature(const SympSpace& sp, const Subspace<S>& v);

/// Isotropic, n-dimensional, complementary.
template <class S>
bool is_valid_cycle_point(const SympSpace& sp, const CyclePoint<S>& c);

/// V = even part, W = odd part of the Hodge decomposition. Throws NotInPeriodDomain.
template <class S>
CyclePoint<S> base_cycle(const SympSpace& sp, const Filtration<S>& f);

template <class S>
CycleMembership in_cycle_space(const SympSpace& sp, const CyclePoint<S>& c);

/// exp(X) applied to the base cycle at F_0 = exp(iN) F_hat. N = 0 gives base_cycle(F).
template <class S>
CyclePoint<S> boundary_cycle(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

/// Limiting subspace U containing the real isotropic core W_{-2} = im N.
template <class S>
struct SatakePoint {
  Subspace<S> U;
  Subspace<S> core;
  bool conjugated = false;
};

/// Isotropic n-dim U, real core inside U, semidefinite with kernel core (sign by `conjugated`).
template <class S>
bool is_valid_satake_point(const SympSpace& sp, const SatakePoint<S>& pt);

/// Parity read off the LMHS (W(N), F). Throws NotAnOrbit when (W(N), F) is not a polarized LMHS.
template <class S>
Parity lmhs_parity(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

/// Throws WrongParity.
template <class S>
SatakePoint<S> p_even(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);
template <class S>
SatakePoint<S> p_odd(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f);

/// Orbit (N, exp(C N) F0) in the (conjugate) Siegel space. F_tilde is the R-split
/// representative; F0 = exp(i delta) F_tilde.
template <class S>
struct SiegelOrbit {
  NilDirection<S> N;
  Subspace<S> F0;
  Subspace<S> F_tilde;
  bool conjugated = false;
};

/// Two-step Siegel filtration F^0 = L, F^{-1} = H_C with h(0) = h(-1) = n.
template <class S>
Filtration<S> siegel_filtration(const SympSpace& sp, const Subspace<S>& l);

/// Throws WrongParity, CheckFailed when the result is not an R-split LMHS.
template <class S>
SiegelOrbit<S> f_tilde(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f, Parity parity);

template <class S>
SatakePoint<S> zeta(const SympSpace& sp, const SiegelOrbit<S>& orbit);

/// (g N g^{-1}, g F). Throws NotSymplectic.
template <class S>
std::pair<NilDirection<S>, Filtration<S>> gamma_act(const SympSpace& sp, const IntMatrix& g,
                                                    const NilDirection<S>& n, const Filtration<S>& f);

bool is_integral_symplectic(const SympSpace& sp, const IntMatrix& g);
/// g^{-1} = Q^{-1} g^T Q for symplectic g.
IntMatrix symplectic_inverse(const SympSpace& sp, const IntMatrix& g);

/// c with exp(cN) A = B. Throws CheckFailed when B is not on the orbit of A.
template <class S>
S orbit_parameter(const Matrix<S>& n, const Subspace<S>& a, const Subspace<S>& b);

/// tau = top * bottom^{-1} for a basis of an n-dimensional subspace. Throws Singular.
template <class S>
Matrix<S> period_matrix(const Subspace<S>& l);

}  // namespace hbd
