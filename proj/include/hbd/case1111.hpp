#pragma once

#include <string>
#include <vector>

#include "hbd/cyclespace.hpp"

namespace hbd {

// Rank-4 weight -1 structures with h(1) = h(0) = h(-1) = h(-2) = 1 and the standard form.

template <class S>
struct ChartPoint {
  Matrix<S> tau;  // 2x2 symmetric
  S lambda{};
};

/// F^1 = <c2 + lambda c1>, F^0 = <c2, c1>, F^{-1} = (F^1)^perp, with c1 = (tau11, tau21, 1, 0),
/// c2 = (tau12, tau22, 0, 1).
template <class S>
Filtration<S> chart_filtration(const ChartPoint<S>& pt);

/// Direct chart criterion: det(Im tau) < 0 and -i<w, conj w> > 0 on F^1. Independent of in_period_domain.
template <class S>
bool chart_criterion(const ChartPoint<S>& pt);

enum class NilType { I, II, III, invalid };
const char* nil_type_name(NilType t);

/// By nilpotency index and rank of a form-compatible N on the standard rank-4 lattice.
template <class S>
NilType classify_1111(const SympSpace& sp, const Matrix<S>& n);

/// N e3 = e1, zero elsewhere.
template <class S>
Matrix<S> type1_nil();
/// N e3 = -e1, N e4 = -m e2.
template <class S>
Matrix<S> type2_nil(long m);
/// N e1 = e3, N e2 = -e1, N e3 = e4: a principal nilpotent (N^3 != 0).
template <class S>
Matrix<S> type3_nil();

template <class S>
struct Type1Param {
  S v{};
  S w{};
};

struct Type2Param {
  long m = 1;
  int sign = 1;
  Complex w{};
};

/// F(v, w): F^1 = <xi1(v,w)>, F^0 = <xi1, xi0(w)>.
template <class S>
Filtration<S> type1_filtration(const Type1Param<S>& p);
Filtration<Complex> type2_filtration(const Type2Param& p);

template <class S>
struct Type1ClosedForms {
  Filtration<S> F;
  Filtration<S> F_hat;
  S gamma{};
  Vec<S> e_gen;
  Vec<S> e_hat;
  Subspace<S> p_even_subspace;
  Subspace<S> f_tilde;  // span{conj xi1, e_hat}
};

/// Throws BadParam unless Im v < 0.
template <class S>
Type1ClosedForms<S> type1_closed_forms(const Type1Param<S>& p);

/// [[z - gamma i Im w, conj w], [conj w, conj v]].
template <class S>
Matrix<S> type1_p_tilde_matrix(const Type1Param<S>& p, const S& z);

struct Type2ClosedForms {
  Filtration<Complex> F;
  Filtration<Complex> F_hat;
  double delta_coeff = 0.0;  // Im w / 2m
  Vec<Complex> xi_hat;
  Vec<Complex> omega_hat;
  Subspace<Complex> p_odd_subspace;
  Subspace<Complex> f_tilde;  // span{xi_hat, omega_hat}
};

Type2ClosedForms type2_closed_forms(const Type2Param& p);

/// [[-z, s], [s, Re w - m z]] with s = sign Im w / (2 sqrt m).
Matrix<Complex> type2_p_tilde_matrix(const Type2Param& p, Complex z);

bool is_square_free(long m);

enum class Family { I, II };

struct ContinuityConfig {
  Family family = Family::I;
  Complex v{0.0, -1.0};
  Complex w{0.0, 0.0};
  long m = 1;
  int sign = 1;
  int n_exp = 2;
  int m_exp = 1;
  int steps = 25;
  double radius = 0.5;  // t_k = radius * 2^-k
  double tolerance = 1e-6;
  double amplitude = 0.25;  // scale of the constrained coordinates
  double free_amplitude = 0.25;
  double theta = 0.7;        // arg z5
  bool violate = false;      // set constrained coordinates equal to z5
  bool zero_perturbation = false;
};

struct ContinuityReport {
  std::vector<double> deviations;  // +inf marks a point outside D
  int violations = 0;  // steps whose moved filtration is outside D
  double max_deviation = 0.0;  // over the last five steps
  bool converged = false;      // tail finite, below tolerance and non-increasing within tolerance
  double y_star = 0.0;
};

/// Walks z^(k) -> 0 with t_k = 2^-k inside the strong-topology neighborhood and compares
/// p(e^{l(z5)N} F(z)) with e^{l(z5)N} F~ in the Siegel chart.
ContinuityReport continuity_experiment(const ContinuityConfig& cfg);

}  // namespace hbd
