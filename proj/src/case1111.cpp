#include "hbd/case1111.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hbd/errors.hpp"

namespace hbd {

namespace {

const SympSpace& space4() {
  static const SympSpace sp = SympSpace::standard(2);
  return sp;
}

template <class S>
int im_sign(const S& x) {
  return Field<S>::real_sign(S(-Field<S>::imag_unit() * x));
}

template <class S>
Matrix<S> two_cols(const Vec<S>& a, const Vec<S>& b) {
  return Matrix<S>::from_cols(4, {a, b});
}

template <class S>
Vec<S> unit(std::size_t i) {
  Vec<S> v(4, Field<S>::zero());
  v[i] = Field<S>::one();
  return v;
}

}  // namespace

const char* nil_type_name(NilType t) {
  switch (t) {
    case NilType::I: return "I";
    case NilType::II: return "II";
    case NilType::III: return "III";
    default: return "invalid";
  }
}

template <class S>
Filtration<S> chart_filtration(const ChartPoint<S>& pt) {
  if (pt.tau.rows() != 2 || pt.tau.cols() != 2) throw Error(Errc::BadParam, "tau must be 2x2");
  if (!approx_equal(pt.tau(0, 1), pt.tau(1, 0))) throw Error(Errc::BadParam, "tau must be symmetric");
  const S one = Field<S>::one(), zero = Field<S>::zero();
  Vec<S> c1{pt.tau(0, 0), pt.tau(1, 0), one, zero};
  Vec<S> c2{pt.tau(0, 1), pt.tau(1, 1), zero, one};
  Vec<S> f1(4);
  for (int i = 0; i < 4; ++i) f1[i] = c2[i] + pt.lambda * c1[i];
  return filtration_from_flag(space4(), HodgeNumbers::one_one_one_one(), two_cols(f1, c1));
}

template <class S>
bool chart_criterion(const ChartPoint<S>& pt) {
  const Matrix<S>& t = pt.tau;
  S a = Field<S>::im(t(0, 0)), b = Field<S>::im(t(0, 1)), c = Field<S>::im(t(1, 0)), d = Field<S>::im(t(1, 1));
  S det = a * d - b * c;
  if (Field<S>::real_sign(det) >= 0) return false;
  Vec<S> w{t(0, 1) + pt.lambda * t(0, 0), t(1, 1) + pt.lambda * t(1, 0), pt.lambda, Field<S>::one()};
  S val = -Field<S>::imag_unit() * form(space4(), w, conj(w));
  return Field<S>::real_sign(val) > 0;
}

template <class S>
NilType classify_1111(const SympSpace& sp, const Matrix<S>& n) {
  if (sp.dim() != 4 || n.rows() != 4 || n.cols() != 4) return NilType::invalid;
  NilDirection<S> nd;
  try {
    nd = NilDirection<S>::make(sp, n);
  } catch (const Error&) {
    return NilType::invalid;
  }
  switch (nd.index) {
    case 2: {
      std::size_t r = rank(n);
      if (r == 1) return NilType::I;
      if (r == 2) return NilType::II;
      return NilType::invalid;
    }
    case 4: return NilType::III;
    default: return NilType::invalid;
  }
}

template <class S>
Matrix<S> type1_nil() {
  Matrix<S> n(4, 4);
  n(0, 2) = Field<S>::one();
  return n;
}

template <class S>
Matrix<S> type2_nil(long m) {
  Matrix<S> n(4, 4);
  n(0, 2) = -Field<S>::one();
  n(1, 3) = -Field<S>::from_int(m);
  return n;
}

template <class S>
Matrix<S> type3_nil() {
  Matrix<S> n(4, 4);
  n(2, 0) = Field<S>::one();
  n(0, 1) = -Field<S>::one();
  n(3, 2) = Field<S>::one();
  return n;
}

bool is_square_free(long m) {
  if (m <= 0) return false;
  for (long d = 2; d * d <= m; ++d)
    if (m % (d * d) == 0) return false;
  return true;
}

template <class S>
Filtration<S> type1_filtration(const Type1Param<S>& p) {
  const S one = Field<S>::one(), zero = Field<S>::zero();
  Vec<S> xi0{zero, p.w, one, zero};
  Vec<S> xi1{p.w, p.v, zero, one};
  return filtration_from_flag(space4(), HodgeNumbers::one_one_one_one(), two_cols(xi1, xi0));
}

Filtration<Complex> type2_filtration(const Type2Param& p) {
  if (!is_square_free(p.m)) throw Error(Errc::BadParam, "m must be a square-free positive integer");
  if (p.sign != 1 && p.sign != -1) throw Error(Errc::BadParam, "sign must be +1 or -1");
  const Complex r(0.0, p.sign * std::sqrt(static_cast<double>(p.m)));
  Vec<Complex> xi0{-1.0, r, 0.0, 0.0};
  Vec<Complex> xi1{0.0, p.w, r, 1.0};
  return filtration_from_flag(space4(), HodgeNumbers::one_one_one_one(), two_cols(xi1, xi0));
}

template <class S>
Type1ClosedForms<S> type1_closed_forms(const Type1Param<S>& p) {
  if (im_sign(p.v) >= 0) throw Error(Errc::BadParam, "type I needs Im v < 0");
  using F = Field<S>;
  const S one = F::one(), zero = F::zero(), iu = F::imag_unit();
  Type1ClosedForms<S> out;
  out.F = type1_filtration(p);
  out.gamma = F::im(p.w) / F::im(p.v);
  const S& g = out.gamma;
  Matrix<S> n = type1_nil<S>();
  out.F_hat = out.F.act(nil_exp(Matrix<S>(g * iu * F::im(p.w) * n)));
  out.e_gen = {-g * p.w, F::re(p.w) - g * F::re(p.v), one, -g};
  out.e_hat = {-g * F::re(p.w), F::re(p.w) - g * F::re(p.v), one, -g};
  Vec<S> x{zero, F::conj(p.v), zero, one};
  out.p_even_subspace = Subspace<S>::span(two_cols(unit<S>(0), x));
  Vec<S> xi1{p.w, p.v, zero, one};
  out.f_tilde = Subspace<S>::span(two_cols(conj(xi1), out.e_hat));
  return out;
}

template <class S>
Matrix<S> type1_p_tilde_matrix(const Type1Param<S>& p, const S& z) {
  using F = Field<S>;
  if (im_sign(z) <= 0) throw Error(Errc::BadParam, "needs Im z > 0");
  S g = F::im(p.w) / F::im(p.v);
  Matrix<S> m(2, 2);
  m(0, 0) = z - g * F::imag_unit() * F::im(p.w);
  m(0, 1) = F::conj(p.w);
  m(1, 0) = F::conj(p.w);
  m(1, 1) = F::conj(p.v);
  return m;
}

Type2ClosedForms type2_closed_forms(const Type2Param& p) {
  Type2ClosedForms out;
  out.F = type2_filtration(p);
  const double rm = std::sqrt(static_cast<double>(p.m));
  const Complex r(0.0, p.sign * rm), iu(0.0, 1.0);
  Vec<Complex> xi0{-1.0, r, 0.0, 0.0};
  Vec<Complex> xi1{0.0, p.w, r, 1.0};
  out.delta_coeff = p.w.imag() / (2.0 * static_cast<double>(p.m));
  Matrix<Complex> g = nil_exp(Matrix<Complex>(Complex(0.0, out.delta_coeff) * type2_nil<Complex>(p.m)));
  out.F_hat = out.F.act(g);
  out.xi_hat = g * xi1;
  Vec<Complex> omega(4);
  for (int i = 0; i < 4; ++i)
    omega[i] = -static_cast<double>(p.sign) * 2.0 * iu * rm * std::conj(xi1[i]) + 2.0 * iu * p.w.imag() * std::conj(xi0[i]);
  out.omega_hat = g * omega;
  out.p_odd_subspace = Subspace<Complex>::span(two_cols(unit<Complex>(0), unit<Complex>(1)));
  out.f_tilde = Subspace<Complex>::span(two_cols(out.xi_hat, out.omega_hat));
  return out;
}

Matrix<Complex> type2_p_tilde_matrix(const Type2Param& p, Complex z) {
  if (z.imag() <= 0.0) throw Error(Errc::BadParam, "needs Im z > 0");
  const double s = p.sign * p.w.imag() / (2.0 * std::sqrt(static_cast<double>(p.m)));
  return Matrix<Complex>{{-z, s}, {s, p.w.real() - static_cast<double>(p.m) * z}};
}

ContinuityReport continuity_experiment(const ContinuityConfig& cfg) {
  if (cfg.n_exp < 1 || cfg.m_exp < 1) throw Error(Errc::BadParam, "schedule exponents must be >= 1");
  if (cfg.steps < 10) throw Error(Errc::BadParam, "steps must be >= 10");
  if (!(cfg.radius > 0.0 && cfg.radius <= 1.0)) throw Error(Errc::BadParam, "radius must lie in (0, 1]");
  const SympSpace& sp = space4();
  const Complex iu(0.0, 1.0);
  Matrix<Complex> n;
  Vec<Complex> xi0, xi1;
  Filtration<Complex> base;
  Parity parity;
  if (cfg.family == Family::I) {
    if (cfg.v.imag() >= 0.0) throw Error(Errc::BadParam, "family I needs Im v < 0");
    n = type1_nil<Complex>();
    xi0 = {0.0, cfg.w, 1.0, 0.0};
    xi1 = {cfg.w, cfg.v, 0.0, 1.0};
    base = type1_filtration(Type1Param<Complex>{cfg.v, cfg.w});
    parity = Parity::even;
  } else {
    Type2Param p{cfg.m, cfg.sign, cfg.w};
    base = type2_filtration(p);
    n = type2_nil<Complex>(cfg.m);
    const Complex r(0.0, cfg.sign * std::sqrt(static_cast<double>(cfg.m)));
    xi0 = {-1.0, r, 0.0, 0.0};
    xi1 = {0.0, cfg.w, r, 1.0};
    parity = Parity::odd;
  }
  NilDirection<Complex> nd = NilDirection<Complex>::make(sp, n);
  NilDirection<Complex> zero_dir = NilDirection<Complex>::make(sp, Matrix<Complex>(4, 4));
  SiegelOrbit<Complex> orbit = f_tilde(sp, nd, base, parity);
  ContinuityReport rep;
  rep.y_star = is_nilpotent_orbit(sp, nd, base).y_star;
  const HodgeNumbers h = HodgeNumbers::one_one_one_one();
  for (int k = 1; k <= cfg.steps; ++k) {
    const double t = std::ldexp(cfg.radius, -k);
    const Complex z5 = std::polar(t, cfg.theta);
    const Complex ell = std::log(z5) / (2.0 * std::numbers::pi * iu);
    Complex z1, z2, z3, z4;
    Vec<Complex> th0(4, 0.0), th1(4, 0.0);
    if (!cfg.zero_perturbation) {
      const double a = cfg.amplitude, b = cfg.free_amplitude;
      if (cfg.family == Family::I) {
        z4 = cfg.violate ? z5 : a * std::pow(t, cfg.n_exp) * std::polar(1.0, 0.3);
        z1 = b * t;
        z2 = b * t * iu;
        z3 = b * t * Complex(-0.5, 0.2);
        th0 = {z1, z2, 0.0, 0.0};
        th1 = {z2, z3, 0.0, 0.0};
      } else {
        z1 = cfg.violate ? z5 : a * std::pow(t, cfg.n_exp) * std::polar(1.0, 0.3);
        z2 = cfg.violate ? z5 : a * std::pow(t, cfg.m_exp) * std::polar(1.0, -1.1);
        z3 = b * t * iu;
        z4 = b * t * Complex(0.4, -0.3);
        th0 = {0.0, z2, z1, 0.0};
        th1 = {0.0, z3, z2, 0.0};
      }
    }
    Vec<Complex> a0(4), a1(4);
    for (int i = 0; i < 4; ++i) {
      a0[i] = xi0[i] + th0[i];
      a1[i] = xi1[i] + th1[i] + z4 * a0[i];
    }
    Filtration<Complex> fz = filtration_from_flag(sp, h, two_cols(a1, a0));
    Matrix<Complex> g = Matrix<Complex>::identity(4) + ell * n;
    Filtration<Complex> moved = fz.act(g);
    if (!in_period_domain(sp, moved)) {
      rep.deviations.push_back(std::numeric_limits<double>::infinity());
      ++rep.violations;
      continue;
    }
    Subspace<Complex> got = f_tilde(sp, zero_dir, moved, parity).F0;
    Subspace<Complex> want = image(g, orbit.F0);
    rep.deviations.push_back(max_abs(Matrix<Complex>(period_matrix(got) - period_matrix(want))));
  }
  const std::size_t tail = std::min<std::size_t>(5, rep.deviations.size());
  bool monotone = true;
  for (std::size_t i = rep.deviations.size() - tail; i < rep.deviations.size(); ++i) {
    rep.max_deviation = std::max(rep.max_deviation, rep.deviations[i]);
    if (i > rep.deviations.size() - tail && rep.deviations[i] > rep.deviations[i - 1] + cfg.tolerance) monotone = false;
  }
  // Early steps may lie outside the neighborhood; they count as violations but only the tail decides.
  rep.converged = monotone && rep.max_deviation < cfg.tolerance;
  return rep;
}

#define HBD_INSTANTIATE(S)                                                              \
  template Filtration<S> chart_filtration(const ChartPoint<S>&);                        \
  template bool chart_criterion(const ChartPoint<S>&);                                  \
  template NilType classify_1111(const SympSpace&, const Matrix<S>&);                   \
  template Matrix<S> type1_nil<S>();                                                    \
  template Matrix<S> type2_nil<S>(long);                                                \
  template Matrix<S> type3_nil<S>();                                                    \
  template Filtration<S> type1_filtration(const Type1Param<S>&);                        \
  template Type1ClosedForms<S> type1_closed_forms(const Type1Param<S>&);                \
  template Matrix<S> type1_p_tilde_matrix(const Type1Param<S>&, const S&);

HBD_INSTANTIATE(Gaussian)
HBD_INSTANTIATE(Complex)

}  // namespace hbd
