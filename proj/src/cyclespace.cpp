#include "hbd/cyclespace.hpp"

#include <string>

#include "hbd/errors.hpp"

namespace hbd {

const char* membership_name(CycleMembership m) {
  switch (m) {
    case CycleMembership::interior: return "interior";
    case CycleMembership::closure: return "closure";
    default: return "outside";
  }
}

template <class S>
Inertia cycle_signature(const SympSpace& sp, const Subspace<S>& v) {
  return signature(sp, v, Field<S>::imag_unit());
}

template <class S>
bool is_valid_cycle_point(const SympSpace& sp, const CyclePoint<S>& c) {
  const std::size_t n = static_cast<std::size_t>(sp.n());
  return c.V.dim() == n && c.W.dim() == n && is_isotropic(sp, c.V) && is_isotropic(sp, c.W) &&
         intersect(c.V, c.W).dim() == 0;
}

template <class S>
CyclePoint<S> base_cycle(const SympSpace& sp, const Filtration<S>& f) {
  auto comps = hodge_decomposition(sp, f);
  std::vector<Subspace<S>> ev, od;
  for (const auto& [p, c] : comps) (p % 2 == 0 ? ev : od).push_back(c);
  return {sum_all(sp.dim(), ev), sum_all(sp.dim(), od)};
}

template <class S>
CycleMembership in_cycle_space(const SympSpace& sp, const CyclePoint<S>& c) {
  Inertia v = cycle_signature(sp, c.V);
  Inertia w = cycle_signature(sp, c.W);
  if (v.pos == static_cast<int>(c.V.dim()) && w.neg == static_cast<int>(c.W.dim())) return CycleMembership::interior;
  if (v.neg == 0 && w.pos == 0) return CycleMembership::closure;
  return CycleMembership::outside;
}

template <class S>
CyclePoint<S> boundary_cycle(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  if (n.is_zero()) return base_cycle(sp, f);
  RSplitResult<S> rs = r_split_delta(sp, n, f);
  Sl2Data<S> sl2 = sl2_complete(sp, n, rs.F_hat);
  Filtration<S> f0 = rs.F_hat.act(nil_exp(Matrix<S>(Field<S>::imag_unit() * n.N)));
  CyclePoint<S> c0 = base_cycle(sp, f0);
  Matrix<S> ex = Matrix<S>::identity(sp.dim()) + sl2.X;
  return {image(ex, c0.V), image(ex, c0.W)};
}

template <class S>
bool is_valid_satake_point(const SympSpace& sp, const SatakePoint<S>& pt) {
  const std::size_t n = static_cast<std::size_t>(sp.n());
  if (pt.U.dim() != n || !is_isotropic(sp, pt.U)) return false;
  if (!pt.U.contains(pt.core) || conjugate(pt.core) != pt.core) return false;
  Inertia in = cycle_signature(sp, pt.U);
  const int semidef = pt.conjugated ? in.pos : in.neg;
  return semidef == 0 && in.zero == static_cast<int>(pt.core.dim());
}

template <class S>
Parity lmhs_parity(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  if (n.index > 2) return Parity::neither;
  if (n.is_zero()) {
    if (!in_period_domain(sp, f)) throw Error(Errc::NotAnOrbit, "N = 0 and F is not in D");
    return Parity::even;
  }
  LmhsReport rep = is_lmhs(sp, n, f);
  if (!rep.all()) throw Error(Errc::NotAnOrbit, rep.notes.empty() ? "not a polarized LMHS" : rep.notes.front());
  Bigrading<S> bg = deligne_bigrading(weight_filtration(sp, n), f);
  bool odd_empty = true, even_empty = true;
  for (const auto& [pq, s] : bg.I) {
    if (pq.first + pq.second != 0) continue;
    (pq.first % 2 == 0 ? even_empty : odd_empty) = false;
  }
  if (odd_empty) return Parity::even;
  if (even_empty) return Parity::odd;
  return Parity::neither;
}

namespace {

template <class S>
void require_parity(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f, Parity want) {
  Parity got = lmhs_parity(sp, n, f);
  if (n.is_zero()) return;  // pure case: both projections are defined
  if (got != want)
    throw Error(Errc::WrongParity, std::string("orbit is ") + parity_name(got) + ", map needs " + parity_name(want));
}

bool parity_match(int p, Parity parity) { return (p % 2 == 0) == (parity == Parity::even); }

template <class S>
SatakePoint<S> project(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f, Parity parity) {
  require_parity(sp, n, f, parity);
  SatakePoint<S> out;
  out.conjugated = parity == Parity::odd;
  if (n.is_zero()) {
    CyclePoint<S> c = base_cycle(sp, f);
    out.U = parity == Parity::even ? c.V : c.W;
    out.core = Subspace<S>::zero(sp.dim());
    return out;
  }
  RSplitResult<S> rs = r_split_delta(sp, n, f);
  out.core = Subspace<S>::span(n.N);
  std::vector<Subspace<S>> parts{out.core};
  for (const auto& [pq, s] : rs.bigrading.I)
    if (pq.first + pq.second == -1 && parity_match(pq.first, parity)) parts.push_back(s);
  out.U = sum_all(sp.dim(), parts);
  return out;
}

}  // namespace

template <class S>
SatakePoint<S> p_even(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  return project(sp, n, f, Parity::even);
}

template <class S>
SatakePoint<S> p_odd(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f) {
  return project(sp, n, f, Parity::odd);
}

template <class S>
Filtration<S> siegel_filtration(const SympSpace& sp, const Subspace<S>& l) {
  return Filtration<S>(sp.dim(), HodgeNumbers::siegel(sp.n()), {{0, l}});
}

template <class S>
SiegelOrbit<S> f_tilde(const SympSpace& sp, const NilDirection<S>& n, const Filtration<S>& f, Parity parity) {
  if (parity == Parity::neither) throw Error(Errc::WrongParity, "f_tilde needs even or odd parity");
  require_parity(sp, n, f, parity);
  SiegelOrbit<S> out;
  out.N = n;
  out.conjugated = parity == Parity::odd;
  if (n.is_zero()) {
    CyclePoint<S> c = base_cycle(sp, f);
    out.F_tilde = parity == Parity::even ? c.V : c.W;
    out.F0 = out.F_tilde;
    return out;
  }
  RSplitResult<S> rs = r_split_delta(sp, n, f);
  std::vector<Subspace<S>> parts;
  for (const auto& [pq, s] : rs.bigrading.I) {
    const int k = pq.first + pq.second;
    if (k == 0 || (k == -1 && parity_match(pq.first, parity))) parts.push_back(s);
  }
  out.F_tilde = sum_all(sp.dim(), parts);
  out.F0 = image(nil_exp(Matrix<S>(Field<S>::imag_unit() * rs.delta)), out.F_tilde);
  // (W(N), F~) (resp. (W(-N), conj F~)) must be an R-split LMHS for the Siegel Hodge numbers.
  Filtration<S> sf = siegel_filtration(sp, out.F_tilde);
  NilDirection<S> m = n;
  if (out.conjugated) {
    sf = sf.conjugate();
    m.N = -n.N;
  }
  CompactDualReport cd = in_compact_dual(sp, sf);
  if (!cd.ok) throw Error(Errc::CheckFailed, "F~ not in the Siegel compact dual: " + cd.reasons.front());
  LmhsReport rep = is_lmhs(sp, m, sf);
  if (!rep.all()) throw Error(Errc::CheckFailed, "F~ is not an LMHS: " + (rep.notes.empty() ? "" : rep.notes.front()));
  if (!deligne_bigrading(weight_filtration(sp, m), sf).r_split) throw Error(Errc::CheckFailed, "F~ is not R-split");
  return out;
}

template <class S>
SatakePoint<S> zeta(const SympSpace& sp, const SiegelOrbit<S>& orbit) {
  SatakePoint<S> out;
  out.conjugated = orbit.conjugated;
  if (orbit.N.is_zero()) {
    out.U = orbit.F0;
    out.core = Subspace<S>::zero(sp.dim());
    return out;
  }
  Filtration<S> sf = siegel_filtration(sp, orbit.F0);
  NilDirection<S> m = orbit.N;
  if (orbit.conjugated) {
    sf = sf.conjugate();
    m.N = -orbit.N.N;
  }
  WeightFiltration<S> w = weight_filtration(sp, m);
  Bigrading<S> bg = deligne_bigrading(w, sf);
  Subspace<S> u = sum(w[-2], bg.at(0, -1));
  out.U = orbit.conjugated ? conjugate(u) : u;
  out.core = Subspace<S>::span(orbit.N.N);
  return out;
}

bool is_integral_symplectic(const SympSpace& sp, const IntMatrix& g) {
  if (g.rows() != sp.dim() || g.cols() != sp.dim()) return false;
  return IntMatrix(g.transpose() * sp.q() * g) == sp.q();
}

IntMatrix symplectic_inverse(const SympSpace& sp, const IntMatrix& g) {
  // Q^{-1} = -Q for a unimodular alternating Q with Q^2 = -I; compute generally via exact inverse.
  Matrix<Gaussian> qi = inverse(from_int<Gaussian>(sp.q()));
  Matrix<Gaussian> gi = qi * from_int<Gaussian>(g.transpose()) * from_int<Gaussian>(sp.q());
  IntMatrix out(g.rows(), g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const Gaussian& x = gi(r, c);
      if (sgn(x.im) != 0 || x.re.get_den() != 1) throw Error(Errc::NotSymplectic, "inverse is not integral");
      out(r, c) = x.re.get_num().get_si();
    }
  return out;
}

template <class S>
std::pair<NilDirection<S>, Filtration<S>> gamma_act(const SympSpace& sp, const IntMatrix& g,
                                                    const NilDirection<S>& n, const Filtration<S>& f) {
  if (!is_integral_symplectic(sp, g)) throw Error(Errc::NotSymplectic, "g^T Q g != Q");
  Matrix<S> gs = from_int<S>(g);
  Matrix<S> gi = from_int<S>(symplectic_inverse(sp, g));
  NilDirection<S> m = NilDirection<S>::make(sp, Matrix<S>(gs * n.N * gi));
  return {m, f.act(gs)};
}

template <class S>
S orbit_parameter(const Matrix<S>& n, const Subspace<S>& a, const Subspace<S>& b) {
  if (a.dim() != b.dim()) throw Error(Errc::CheckFailed, "subspaces differ in dimension");
  // Rows of k annihilate B; require k (a + c N a) = 0 for every basis vector a.
  Matrix<S> k = kernel(Matrix<S>(b.basis().transpose())).transpose();
  Matrix<S> lhs = k * n * a.basis();
  Matrix<S> rhs = -(k * a.basis());
  std::size_t len = lhs.rows() * lhs.cols();
  Matrix<S> col(len, 1), target(len, 1);
  for (std::size_t i = 0; i < len; ++i) {
    col(i, 0) = lhs.data()[i];
    target(i, 0) = rhs.data()[i];
  }
  if (is_zero_matrix(col)) {
    if (!is_zero_matrix(target)) throw Error(Errc::CheckFailed, "B is not on the exp(CN)-orbit of A");
    return Field<S>::zero();
  }
  try {
    return solve(col, target)(0, 0);
  } catch (const Error&) {
    throw Error(Errc::CheckFailed, "B is not on the exp(CN)-orbit of A");
  }
}

template <class S>
Matrix<S> period_matrix(const Subspace<S>& l) {
  const std::size_t n = l.dim();
  if (l.ambient() != 2 * n) throw Error(Errc::BadParam, "period matrix needs an n-dimensional subspace of rank 2n");
  Matrix<S> top = l.basis().rows_range(0, n);
  Matrix<S> bottom = l.basis().rows_range(n, 2 * n);
  return top * inverse(bottom);
}

#define HBD_INSTANTIATE(S)                                                                                       \
  template Inertia cycle_signature(const SympSpace&, const Subspace<S>&);                                        \
  template bool is_valid_cycle_point(const SympSpace&, const CyclePoint<S>&);                                    \
  template CyclePoint<S> base_cycle(const SympSpace&, const Filtration<S>&);                                     \
  template CycleMembership in_cycle_space(const SympSpace&, const CyclePoint<S>&);                               \
  template CyclePoint<S> boundary_cycle(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);         \
  template bool is_valid_satake_point(const SympSpace&, const SatakePoint<S>&);                                  \
  template Parity lmhs_parity(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);                   \
  template SatakePoint<S> p_even(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);                \
  template SatakePoint<S> p_odd(const SympSpace&, const NilDirection<S>&, const Filtration<S>&);                 \
  template Filtration<S> siegel_filtration(const SympSpace&, const Subspace<S>&);                                \
  template SiegelOrbit<S> f_tilde(const SympSpace&, const NilDirection<S>&, const Filtration<S>&, Parity);       \
  template SatakePoint<S> zeta(const SympSpace&, const SiegelOrbit<S>&);                                         \
  template std::pair<NilDirection<S>, Filtration<S>> gamma_act(const SympSpace&, const IntMatrix&,               \
                                                               const NilDirection<S>&, const Filtration<S>&);    \
  template S orbit_parameter(const Matrix<S>&, const Subspace<S>&, const Subspace<S>&);                          \
  template Matrix<S> period_matrix(const Subspace<S>&);

HBD_INSTANTIATE(Gaussian)
HBD_INSTANTIATE(Complex)

}  // namespace hbd
