#include "hbd/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hbd/errors.hpp"
#include "hbd/sampling.hpp"

namespace hbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kFamilyPoints = 50;

using sample::Rng;

// Subspace distance: largest residual of either orthonormal basis projected onto the other.
// Exact subspaces are either equal (0) or not (inf).
template <class S>
double gap(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient() || a.dim() != b.dim()) return kInf;
  if constexpr (Field<S>::exact) {
    return a == b ? 0.0 : kInf;
  } else {
    auto resid = [](const Matrix<Complex>& x, const Matrix<Complex>& y) {
      return max_abs(Matrix<Complex>(x - y * Matrix<Complex>(adjoint(y) * x)));
    };
    return std::max(resid(a.basis(), b.basis()), resid(b.basis(), a.basis()));
  }
}

template <class S>
double mat_gap(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return kInf;
  if constexpr (Field<S>::exact) return a == b ? 0.0 : kInf;
  else return max_abs(Matrix<S>(a - b));
}

/// Radical of coeff * <x, conj y> restricted to V.
template <class S>
Subspace<S> form_radical(const SympSpace& sp, const Subspace<S>& v, const S& coeff) {
  Matrix<S> g = hermitian_gram(sp, v.basis(), coeff);
  return Subspace<S>::span(Matrix<S>(v.basis() * conj(kernel(g))));
}

struct Tally {
  double worst = 0.0;
  int failures = 0;
  std::vector<std::string> notes;

  void dev(double d, double tol, const std::string& what) {
    worst = std::max(worst, d);
    if (!(d <= tol)) fail(what);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
  template <class F>
  void guarded(const std::string& where, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    } catch (const std::exception& e) {
      fail(where + ": " + e.what());
    }
  }
};

struct Families {
  std::vector<Type1Param<Gaussian>> t1;
  std::vector<Type2Param> t2;
};

Families make_families(std::uint64_t seed) {
  Rng rng(seed ^ 0x5eedf00dULL);
  Families f;
  for (int i = 0; i < kFamilyPoints; ++i) f.t1.push_back(sample::type1(rng));
  for (int i = 0; i < kFamilyPoints; ++i) f.t2.push_back(sample::type2(rng));
  return f;
}

const SympSpace& sp4() {
  static const SympSpace sp = SympSpace::standard(2);
  return sp;
}

std::string point_name(const Type1Param<Gaussian>& p) {
  std::ostringstream os;
  os << "type I v=" << p.v << " w=" << p.w;
  return os.str();
}

std::string point_name(const Type2Param& p) {
  std::ostringstream os;
  os << "type II m=" << p.m << (p.sign > 0 ? " +" : " -") << " w=" << p.w;
  return os.str();
}

CheckResult finish(const std::string& name, const Tally& t, double seconds, const std::string& extra = "") {
  CheckResult r;
  r.name = name;
  r.pass = t.failures == 0;
  r.max_deviation = t.worst;
  r.seconds = seconds;
  std::ostringstream os;
  os << t.failures << " failures";
  if (!extra.empty()) os << "; " << extra;
  for (const auto& n : t.notes) os << "; " << n;
  r.detail = os.str();
  return r;
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CheckResult check_type1(const Families& fam, std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x1ULL);
  const SympSpace& sp = sp4();
  double secs = timed([&] {
    for (const auto& p : fam.t1) {
      t.guarded(point_name(p), [&] {
        Type1ClosedForms<Gaussian> cf = type1_closed_forms(p);
        auto nd = NilDirection<Gaussian>::make(sp, type1_nil<Gaussian>());
        RSplitResult<Gaussian> rs = r_split_delta(sp, nd, cf.F);
        t.expect(rs.F_hat == cf.F_hat, "F_hat " + point_name(p));
        Bigrading<Gaussian> bg = deligne_bigrading(weight_filtration(sp, nd), cf.F);
        t.expect(bg.at(0, 0) == Subspace<Gaussian>::span(4, {cf.e_gen}), "I^{0,0} " + point_name(p));
        t.expect(p_even(sp, nd, cf.F).U == cf.p_even_subspace, "p_even " + point_name(p));
        SiegelOrbit<Gaussian> ft = f_tilde(sp, nd, cf.F, Parity::even);
        t.expect(ft.F_tilde == cf.f_tilde, "F~ " + point_name(p));
        Gaussian z = sample::upper_half_plane(rng);
        Matrix<Gaussian> moved = nil_exp(Matrix<Gaussian>(z * nd.N)) * ft.F_tilde.basis();
        t.expect(period_matrix(Subspace<Gaussian>::span(moved)) == type1_p_tilde_matrix(p, z),
                 "p~ matrix " + point_name(p));
      });
    }
  });
  t.expect(secs < 5.0, "runtime above 5 s");
  return finish("01-type1-closed-forms", t, secs, std::to_string(fam.t1.size()) + " points, exact");
}

CheckResult check_type2(const Families& fam, std::uint64_t seed, double tol) {
  Tally t;
  Rng rng(seed ^ 0x2ULL);
  const SympSpace& sp = sp4();
  double secs = timed([&] {
    for (const auto& p : fam.t2) {
      t.guarded(point_name(p), [&] {
        Type2ClosedForms cf = type2_closed_forms(p);
        auto nd = NilDirection<Complex>::make(sp, type2_nil<Complex>(p.m));
        RSplitResult<Complex> rs = r_split_delta(sp, nd, cf.F);
        // F_hat = exp(-i delta) F with delta = -(Im w / 2m) N.
        t.dev(mat_gap(rs.delta, Matrix<Complex>(-cf.delta_coeff * nd.N)), tol, "delta " + point_name(p));
        for (int q = -1; q <= 1; ++q) t.dev(gap(rs.F_hat[q], cf.F_hat[q]), tol, "F_hat " + point_name(p));
        Bigrading<Complex> bg = deligne_bigrading(weight_filtration(sp, nd), cf.F);
        t.dev(gap(bg.at(1, -1), Subspace<Complex>::span(4, {cf.F[1].basis().col(0)})), tol, "I^{1,-1} " + point_name(p));
        t.dev(gap(p_odd(sp, nd, cf.F).U, cf.p_odd_subspace), tol, "p_odd " + point_name(p));
        SiegelOrbit<Complex> ft = f_tilde(sp, nd, cf.F, Parity::odd);
        t.dev(gap(ft.F_tilde, cf.f_tilde), tol, "F~ " + point_name(p));
        Complex z = Field<Complex>::from_gaussian(sample::upper_half_plane(rng));
        Matrix<Complex> moved = nil_exp(Matrix<Complex>(z * nd.N)) * ft.F_tilde.basis();
        t.dev(mat_gap(period_matrix(Subspace<Complex>::span(moved)), type2_p_tilde_matrix(p, z)), tol,
              "p~ matrix " + point_name(p));
      });
    }
  });
  t.expect(secs < 5.0, "runtime above 5 s");
  return finish("02-type2-closed-forms", t, secs, std::to_string(fam.t2.size()) + " points, float");
}

template <class S>
void x_action_point(Tally& t, const NilDirection<S>& nd, const Filtration<S>& f, const std::vector<S>& zs,
                    const std::string& name) {
  const SympSpace& sp = sp4();
  RSplitResult<S> rs = r_split_delta(sp, nd, f);
  Sl2Data<S> sl2 = sl2_complete(sp, nd, rs.F_hat);
  XActionReport rep = x_action_check(sp, sl2, nd, rs.F_hat, zs);
  t.worst = std::max(t.worst, rep.max_deviation);
  t.expect(rep.pass, name + (rep.failures.empty() ? "" : ": " + rep.failures.front()));
}

CheckResult check_x_action(const Families& fam, std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x3ULL);
  double secs = timed([&] {
    for (const auto& p : fam.t1) {
      std::vector<Gaussian> zs;
      for (int i = 0; i < 50; ++i) zs.push_back(sample::unit_disk(rng));
      t.guarded(point_name(p), [&] {
        auto nd = NilDirection<Gaussian>::make(sp4(), type1_nil<Gaussian>());
        x_action_point(t, nd, type1_filtration(p), zs, point_name(p));
      });
    }
    for (const auto& p : fam.t2) {
      std::vector<Complex> zs;
      for (int i = 0; i < 50; ++i) zs.push_back(Field<Complex>::from_gaussian(sample::unit_disk(rng)));
      t.guarded(point_name(p), [&] {
        auto nd = NilDirection<Complex>::make(sp4(), type2_nil<Complex>(p.m));
        x_action_point(t, nd, type2_filtration(p), zs, point_name(p));
      });
    }
  });
  return finish("03-x-action", t, secs, "50 z per point");
}

// The degenerate side of the boundary cycle is semidefinite with radical exactly (im N)_C,
// the other side is definite, and the degenerate side agrees with the projection map.
template <class S>
void boundary_point(Tally& t, const NilDirection<S>& nd, const Filtration<S>& f, Parity parity, double tol,
                    const std::string& name) {
  const SympSpace& sp = sp4();
  CyclePoint<S> c = boundary_cycle(sp, nd, f);
  t.expect(is_valid_cycle_point(sp, c), "invalid cycle point " + name);
  t.expect(in_cycle_space(sp, c) == CycleMembership::closure, "not in the closure " + name);
  const bool even = parity == Parity::even;
  const Subspace<S>& deg = even ? c.V : c.W;
  const Subspace<S>& def = even ? c.W : c.V;
  Inertia di = cycle_signature(sp, deg), fi = cycle_signature(sp, def);
  t.expect((even ? di.neg : di.pos) == 0, "degenerate side not semidefinite " + name);
  t.expect((even ? fi.neg : fi.pos) == static_cast<int>(def.dim()), "other side not definite " + name);
  t.dev(gap(form_radical(sp, deg, Field<S>::imag_unit()), Subspace<S>::span(nd.N)), tol, "radical != im N " + name);
  SatakePoint<S> pt = even ? p_even(sp, nd, f) : p_odd(sp, nd, f);
  t.dev(gap(deg, pt.U), tol, "exp(X) H != projection " + name);
}

CheckResult check_boundary(const Families& fam, double tol) {
  Tally t;
  double secs = timed([&] {
    for (const auto& p : fam.t1)
      t.guarded(point_name(p), [&] {
        auto nd = NilDirection<Gaussian>::make(sp4(), type1_nil<Gaussian>());
        boundary_point(t, nd, type1_filtration(p), Parity::even, tol, point_name(p));
      });
    for (const auto& p : fam.t2)
      t.guarded(point_name(p), [&] {
        auto nd = NilDirection<Complex>::make(sp4(), type2_nil<Complex>(p.m));
        boundary_point(t, nd, type2_filtration(p), Parity::odd, tol, point_name(p));
      });
  });
  return finish("04-boundary-cycle", t, secs);
}

template <class S>
SatakePoint<S> project(const NilDirection<S>& nd, const Filtration<S>& f, Parity parity) {
  return parity == Parity::even ? p_even(sp4(), nd, f) : p_odd(sp4(), nd, f);
}

template <class S>
void invariance_point(Tally& t, Rng& rng, const Matrix<S>& n, const Filtration<S>& f, Parity parity, double tol,
                      const std::string& name) {
  const SympSpace& sp = sp4();
  auto nd = NilDirection<S>::make(sp, n);
  const Subspace<S> base = project(nd, f, parity).U;
  for (int i = 0; i < 20; ++i) {
    S c = Field<S>::from_gaussian(sample::gaussian(rng, 5, 4));
    Filtration<S> moved = f.act(nil_exp(Matrix<S>(c * n)));
    t.dev(gap(project(nd, moved, parity).U, base), tol, "exp(cN)F " + name);
  }
  for (int i = 0; i < 20; ++i) {
    S lambda = Field<S>::from_gaussian(Gaussian(sample::positive_rational(rng, 9, 4), Rational(0)));
    auto scaled = NilDirection<S>::make(sp, Matrix<S>(lambda * n));
    t.dev(gap(project(scaled, f, parity).U, base), tol, "lambda N " + name);
  }
}

CheckResult check_invariance(const Families& fam, std::uint64_t seed, double tol) {
  Tally t;
  Rng rng(seed ^ 0x5ULL);
  double secs = timed([&] {
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& p = fam.t1[i];
      t.guarded(point_name(p), [&] {
        invariance_point(t, rng, type1_nil<Gaussian>(), type1_filtration(p), Parity::even, tol, point_name(p));
      });
      const auto& q = fam.t2[i];
      t.guarded(point_name(q), [&] {
        invariance_point(t, rng, type2_nil<Complex>(q.m), type2_filtration(q), Parity::odd, tol, point_name(q));
      });
    }
  });
  return finish("05-projection-invariance", t, secs, "5 points per family, 20 c and 20 lambda each");
}

template <class S>
void zeta_point(Tally& t, const NilDirection<S>& nd, const Filtration<S>& f, Parity parity, double tol,
                const std::string& name) {
  SatakePoint<S> direct = project(nd, f, parity);
  SatakePoint<S> via = zeta(sp4(), f_tilde(sp4(), nd, f, parity));
  t.dev(gap(via.U, direct.U), tol, "U " + name);
  t.dev(gap(via.core, direct.core), tol, "core " + name);
  t.expect(via.conjugated == direct.conjugated, "conjugation flag " + name);
  t.expect(is_valid_satake_point(sp4(), via), "invalid Satake point " + name);
}

CheckResult check_zeta(const Families& fam, double tol) {
  Tally t;
  double secs = timed([&] {
    for (const auto& p : fam.t1)
      t.guarded(point_name(p), [&] {
        auto nd = NilDirection<Gaussian>::make(sp4(), type1_nil<Gaussian>());
        zeta_point(t, nd, type1_filtration(p), Parity::even, tol, point_name(p));
      });
    for (const auto& p : fam.t2)
      t.guarded(point_name(p), [&] {
        auto nd = NilDirection<Complex>::make(sp4(), type2_nil<Complex>(p.m));
        zeta_point(t, nd, type2_filtration(p), Parity::odd, tol, point_name(p));
      });
  });
  return finish("06-zeta-factorization", t, secs);
}

template <class S>
void equivariance_point(Tally& t, const IntMatrix& g, const Matrix<S>& n, const Filtration<S>& f, Parity parity,
                        double tol, const std::string& name) {
  const SympSpace& sp = sp4();
  auto nd = NilDirection<S>::make(sp, n);
  auto [gn, gf] = gamma_act(sp, g, nd, f);
  t.dev(gap(project(gn, gf, parity).U, image(from_int<S>(g), project(nd, f, parity).U)), tol, "p(gN, gF) " + name);
  t.expect(classify_parity(sp, gn, gf) == parity, "parity changed " + name);
}

CheckResult check_equivariance(const Families& fam, std::uint64_t seed, double tol) {
  Tally t;
  Rng rng(seed ^ 0x7ULL);
  double secs = timed([&] {
    for (int i = 0; i < 20; ++i) {
      IntMatrix g = sample::symplectic(rng, 2);
      t.expect(is_integral_symplectic(sp4(), g), "sampled g is not symplectic");
      const auto& p = fam.t1[static_cast<std::size_t>(i) % fam.t1.size()];
      t.guarded(point_name(p), [&] {
        equivariance_point(t, g, type1_nil<Gaussian>(), type1_filtration(p), Parity::even, tol, point_name(p));
      });
      const auto& q = fam.t2[static_cast<std::size_t>(i) % fam.t2.size()];
      t.guarded(point_name(q), [&] {
        equivariance_point(t, g, type2_nil<Complex>(q.m), type2_filtration(q), Parity::odd, tol, point_name(q));
      });
    }
  });
  return finish("07-gamma-equivariance", t, secs, "20 integral symplectic g");
}

CheckResult check_continuity() {
  Tally t;
  std::ostringstream extra;
  double secs = timed([&] {
    for (Family fam : {Family::I, Family::II}) {
      for (int n : {1, 2, 3}) {
        ContinuityConfig c;
        c.family = fam;
        c.n_exp = n;
        c.m_exp = n;
        if (fam == Family::II) c.w = Complex(0.5, 0.0);
        const std::string name = std::string("family ") + (fam == Family::I ? "I" : "II") + " n=" + std::to_string(n);
        t.guarded(name, [&] {
          ContinuityReport r = continuity_experiment(c);
          t.dev(r.max_deviation, c.tolerance, name + " tail deviation");
          t.expect(r.violations == 0, name + " left D");
          t.expect(r.converged, name + " not converged");
          extra << name << ": " << r.max_deviation << "  ";
        });
      }
    }
  });
  t.expect(secs < 30.0, "runtime above 30 s");
  return finish("08-continuity", t, secs, extra.str());
}

CheckResult check_classification(std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x9ULL);
  const SympSpace& sp = sp4();
  double secs = timed([&] {
    std::vector<std::pair<Matrix<Gaussian>, NilType>> reps{{type1_nil<Gaussian>(), NilType::I},
                                                           {type3_nil<Gaussian>(), NilType::III}};
    for (long m : {1L, 2L, 3L, 5L, 6L, 7L}) reps.emplace_back(type2_nil<Gaussian>(m), NilType::II);
    // Degenerate inputs: zero, semisimple, and nilpotent but not compatible with the form.
    Matrix<Gaussian> semisimple(4, 4), incompatible(4, 4);
    semisimple(0, 0) = semisimple(1, 1) = Gaussian(1);
    semisimple(2, 2) = semisimple(3, 3) = Gaussian(-1);
    incompatible(0, 1) = Gaussian(1);
    reps.emplace_back(Matrix<Gaussian>(4, 4), NilType::invalid);
    reps.emplace_back(semisimple, NilType::invalid);
    reps.emplace_back(incompatible, NilType::invalid);
    for (const auto& [n, want] : reps) {
      NilType got = classify_1111(sp, n);
      t.expect(got == want, std::string("representative classified as ") + nil_type_name(got));
    }
    for (int i = 0; i < 50; ++i) {
      IntMatrix g = sample::symplectic(rng, 2);
      Matrix<Gaussian> gs = from_int<Gaussian>(g), gi = from_int<Gaussian>(symplectic_inverse(sp, g));
      const auto& [n, want] = reps[static_cast<std::size_t>(i) % reps.size()];
      NilType got = classify_1111(sp, Matrix<Gaussian>(gs * n * gi));
      t.expect(got == want, std::string("conjugate classified as ") + nil_type_name(got));
    }
  });
  return finish("09-classification", t, secs, "50 conjugations");
}

Matrix<Gaussian> gaussian_int_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  IntMatrix re = sample::int_matrix(rng, rows, cols, 2), im = sample::int_matrix(rng, rows, cols, 2);
  Matrix<Gaussian> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Gaussian(Rational(re(r, c)), Rational(im(r, c)));
  return m;
}

CheckResult check_linear_algebra(std::uint64_t seed, double tol) {
  Tally t;
  Rng rng(seed ^ 0xAULL);
  double secs = timed([&] {
    for (int k = 0; k < 200; ++k) {
      const int n = 1 + k % 3;
      const std::size_t d = static_cast<std::size_t>(2 * n);
      const SympSpace sp = SympSpace::standard(n);
      const std::string name = "case " + std::to_string(k);
      t.guarded(name, [&] {
        std::uniform_int_distribution<std::size_t> dims(0, d);
        Subspace<Gaussian> v = Subspace<Gaussian>::span(gaussian_int_matrix(rng, d, dims(rng)));
        Subspace<Gaussian> w = Subspace<Gaussian>::span(gaussian_int_matrix(rng, d, dims(rng)));
        Subspace<Gaussian> pv = perp(sp, v);
        t.expect(perp(sp, pv) == v, "perp involution " + name);
        t.expect(v.dim() + pv.dim() == d, "dim V + dim V^perp " + name);
        t.expect(sum(v, w).dim() + intersect(v, w).dim() == v.dim() + w.dim(), "dimension formula " + name);
        // Signature does not depend on the basis.
        Matrix<Gaussian> change = gaussian_int_matrix(rng, v.dim(), v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) change(i, i) += Gaussian(7);  // diagonally dominant
        Matrix<Gaussian> other = v.basis() * change;
        const Gaussian iu = Field<Gaussian>::imag_unit();
        t.expect(rank(other) == v.dim(), "basis change is singular " + name);
        t.expect(hermitian_inertia(hermitian_gram(sp, other, iu)) == signature(sp, v, iu), "signature " + name);
        // The float backend agrees with the exact one.
        Subspace<Complex> vf = Subspace<Complex>::span(to_complex(v.basis()));
        Subspace<Complex> wf = Subspace<Complex>::span(to_complex(w.basis()));
        t.expect(vf.dim() == v.dim(), "float rank " + name);
        t.dev(gap(perp(sp, vf), Subspace<Complex>::span(to_complex(pv.basis()))), tol, "float perp " + name);
        t.dev(gap(intersect(vf, wf), Subspace<Complex>::span(to_complex(intersect(v, w).basis()))), tol,
              "float intersection " + name);
        t.expect(signature(sp, vf, Complex(0.0, 1.0)) == signature(sp, v, iu), "float signature " + name);
      });
    }
  });
  return finish("10-linear-algebra", t, secs, "200 cases");
}

}  // namespace

std::vector<CheckResult> run_battery(const BatteryOptions& opt) {
  if (!(opt.tolerance > 0.0)) throw Error(Errc::BadParam, "tolerance must be positive");
  const Families fam = make_families(opt.seed);
  std::vector<CheckResult> out;
  out.push_back(check_type1(fam, opt.seed));
  {
    EpsilonGuard eps(opt.tolerance);
    out.push_back(check_type2(fam, opt.seed, opt.tolerance));
    out.push_back(check_x_action(fam, opt.seed));
    out.push_back(check_boundary(fam, opt.tolerance));
    out.push_back(check_invariance(fam, opt.seed, opt.tolerance));
    out.push_back(check_zeta(fam, opt.tolerance));
    out.push_back(check_equivariance(fam, opt.seed, opt.tolerance));
  }
  out.push_back(check_continuity());
  out.push_back(check_classification(opt.seed));
  {
    EpsilonGuard eps(opt.tolerance);
    out.push_back(check_linear_algebra(opt.seed, opt.tolerance));
  }
  std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return out;
}

}  // namespace hbd
