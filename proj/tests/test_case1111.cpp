#include "support.hpp"

#include <cmath>

#include "hbd/sampling.hpp"

using namespace t;

namespace {

const SympSpace& sp4() {
  static const SympSpace sp = SympSpace::standard(2);
  return sp;
}

template <class S>
ChartPoint<S> random_chart(sample::Rng& rng);

template <>
ChartPoint<G> random_chart(sample::Rng& rng) {
  ChartPoint<G> pt;
  pt.tau = Matrix<G>(2, 2);
  pt.tau(0, 0) = sample::gaussian(rng, 3, 4);
  pt.tau(1, 1) = sample::gaussian(rng, 3, 4);
  pt.tau(0, 1) = pt.tau(1, 0) = sample::gaussian(rng, 3, 4);
  pt.lambda = sample::gaussian(rng, 3, 4);
  return pt;
}

template <>
ChartPoint<C> random_chart(sample::Rng& rng) {
  ChartPoint<C> pt;
  pt.tau = Matrix<C>(2, 2);
  pt.tau(0, 0) = sample::complex_box(rng, 3.0);
  pt.tau(1, 1) = sample::complex_box(rng, 3.0);
  pt.tau(0, 1) = pt.tau(1, 0) = sample::complex_box(rng, 3.0);
  pt.lambda = sample::complex_box(rng, 3.0);
  return pt;
}

template <class S>
void chart_agreement(std::uint64_t seed) {
  sample::Rng rng(seed);
  int inside = 0;
  for (int i = 0; i < 200; ++i) {
    ChartPoint<S> pt = random_chart<S>(rng);
    const bool want = in_period_domain(sp4(), chart_filtration(pt));
    CHECK(chart_criterion(pt) == want);
    inside += want;
  }
  // Both outcomes should be exercised.
  CHECK(inside > 10);
  CHECK(inside < 190);
}

Filtration<G> type3_point() { return flag_1111<G>(e<G>(1), e<G>(0)); }

ContinuityConfig lawful(Family fam, int n) {
  ContinuityConfig c;
  c.family = fam;
  c.n_exp = c.m_exp = n;
  if (fam == Family::II) c.w = C(0.5, 0.0);
  return c;
}

}  // namespace

TEST_CASE("chart criterion agrees with the period domain test") {
  chart_agreement<G>(101);
  chart_agreement<C>(102);
}

TEST_CASE("chart filtration validation") {
  ChartPoint<G> pt{Matrix<G>{{gi(0, 1), q(1)}, {q(0), gi(0, 1)}}, q(0)};
  expect_errc(Errc::BadParam, [&] { chart_filtration(pt); });
  ChartPoint<G> small{Matrix<G>(1, 1), q(0)};
  expect_errc(Errc::BadParam, [&] { chart_filtration(small); });
}

TEST_CASE("classification of nilpotent directions") {
  CHECK(classify_1111(sp4(), type1_nil<G>()) == NilType::I);
  for (long m : {1L, 2L, 3L, 6L}) CHECK(classify_1111(sp4(), type2_nil<G>(m)) == NilType::II);
  CHECK(classify_1111(sp4(), type3_nil<G>()) == NilType::III);
  CHECK(classify_1111(sp4(), Matrix<G>(4, 4)) == NilType::invalid);
  Matrix<G> semisimple(4, 4);
  semisimple(0, 0) = q(1);
  semisimple(2, 2) = q(-1);
  CHECK(classify_1111(sp4(), semisimple) == NilType::invalid);
  CHECK(classify_1111(SympSpace::standard(1), Matrix<G>(2, 2)) == NilType::invalid);
  CHECK(std::string(nil_type_name(NilType::II)) == "II");

  sample::Rng rng(103);
  const Matrix<G> reps[] = {type1_nil<G>(), type2_nil<G>(5), type3_nil<G>()};
  const NilType types[] = {NilType::I, NilType::II, NilType::III};
  for (int i = 0; i < 50; ++i) {
    IntMatrix g = sample::symplectic(rng, 2);
    Matrix<G> gs = from_int<G>(g), ginv = from_int<G>(symplectic_inverse(sp4(), g));
    CHECK(classify_1111(sp4(), Matrix<G>(gs * reps[i % 3] * ginv)) == types[i % 3]);
  }
}

TEST_CASE("a type III nilpotent orbit") {
  auto n3 = NilDirection<G>::make(sp4(), type3_nil<G>());
  OrbitVerdict v = is_nilpotent_orbit(sp4(), n3, type3_point());
  REQUIRE(v.verdict);
  CHECK(v.y_star == doctest::Approx(0.0625));
  for (long y : {1L, 4L, 16L}) {
    Matrix<G> moved = nil_exp(Matrix<G>(gi(0, y) * type3_nil<G>()));
    CHECK(in_period_domain(sp4(), type3_point().act(moved)));
  }
  auto neg = NilDirection<G>::make(sp4(), Matrix<G>(-type3_nil<G>()));
  CHECK_FALSE(is_nilpotent_orbit(sp4(), neg, type3_point()).verdict);
  CHECK(classify_parity(sp4(), n3, type3_point()) == Parity::neither);
}

TEST_CASE("type I closed forms") {
  Type1Param<G> p{gq(1, 2, -2, 1), gq(1, 3, 3, 4)};
  Type1ClosedForms<G> cf = type1_closed_forms(p);
  CHECK(cf.gamma == q(-3, 8));
  // e = (-gamma w, Re w - gamma Re v, 1, -gamma) with gamma = -3/8.
  CHECK(cf.e_gen == Vec<G>{gq(1, 8, 9, 32), gq(25, 48, 0, 1), q(1), q(3, 8)});
  CHECK(cf.e_hat == Vec<G>{q(1, 8), gq(25, 48, 0, 1), q(1), q(3, 8)});
  auto nd = NilDirection<G>::make(sp4(), type1_nil<G>());
  CHECK(cf.F_hat == r_split_delta(sp4(), nd, cf.F).F_hat);
  CHECK(cf.p_even_subspace == p_even(sp4(), nd, cf.F).U);
  CHECK(cf.f_tilde == f_tilde(sp4(), nd, cf.F, Parity::even).F_tilde);
  CHECK(cf.F[0].contains(span<G>({cf.e_gen})));
  CHECK(cf.F_hat[0].contains(span<G>({cf.e_hat})));

  sample::Rng rng(104);
  for (int i = 0; i < 20; ++i) {
    Type1Param<G> r = sample::type1(rng);
    Type1ClosedForms<G> c = type1_closed_forms(r);
    const G z = sample::upper_half_plane(rng);
    CHECK(type1_p_tilde_matrix(r, z) == period_matrix(image(nil_exp(Matrix<G>(z * type1_nil<G>())), c.f_tilde)));
  }
}

TEST_CASE("type II closed forms") {
  for (long m : {1L, 2L, 3L}) {
    Type2Param p{m, 1, C(0.0, 1.0)};
    Type2ClosedForms cf = type2_closed_forms(p);
    CHECK(cf.delta_coeff == doctest::Approx(1.0 / (2.0 * m)));
  }
  Matrix<C> at_i = type2_p_tilde_matrix(Type2Param{1, 1, C(0.0, 0.0)}, C(0.0, 1.0));
  CHECK(max_abs(Matrix<C>(at_i - Matrix<C>{{C(0, -1), 0.0}, {0.0, C(0, -1)}})) < 1e-15);

  sample::Rng rng(105);
  for (int i = 0; i < 20; ++i) {
    Type2Param p = sample::type2(rng);
    Type2ClosedForms cf = type2_closed_forms(p);
    auto nd = NilDirection<C>::make(sp4(), type2_nil<C>(p.m));
    CHECK(dist(cf.F_hat[0], r_split_delta(sp4(), nd, cf.F).F_hat[0]) < 1e-9);
    CHECK(dist(cf.F_hat[1], r_split_delta(sp4(), nd, cf.F).F_hat[1]) < 1e-9);
    CHECK(dist(cf.f_tilde, f_tilde(sp4(), nd, cf.F, Parity::odd).F_tilde) < 1e-9);
    CHECK(dist(cf.p_odd_subspace, p_odd(sp4(), nd, cf.F).U) < 1e-9);
    // The p~ image lies in the conjugate Siegel space: Im is negative definite.
    Matrix<C> pt = type2_p_tilde_matrix(p, C(0.0, 5.0));
    const double a = pt(0, 0).imag(), b = pt(0, 1).imag(), d = pt(1, 1).imag();
    CHECK(a < 0.0);
    CHECK(a * d - b * b > 0.0);
    const C z = Field<G>::to_complex(sample::upper_half_plane(rng));
    Matrix<C> via = period_matrix(image(nil_exp(Matrix<C>(z * type2_nil<C>(p.m))), cf.f_tilde));
    CHECK(max_abs(Matrix<C>(via - type2_p_tilde_matrix(p, z))) < 1e-9);
  }
}

TEST_CASE("parameter validation") {
  CHECK(is_square_free(1));
  CHECK(is_square_free(30));
  CHECK_FALSE(is_square_free(12));
  CHECK_FALSE(is_square_free(0));
  CHECK_FALSE(is_square_free(-3));
  expect_errc(Errc::BadParam, [] { type2_filtration(Type2Param{4, 1, C()}); });
  expect_errc(Errc::BadParam, [] { type2_filtration(Type2Param{2, 0, C()}); });
  expect_errc(Errc::BadParam, [] { type1_closed_forms(Type1Param<G>{gi(0, 1), q(0)}); });
  expect_errc(Errc::BadParam, [] { type1_p_tilde_matrix(Type1Param<G>{gi(0, -1), q(0)}, q(1)); });
  expect_errc(Errc::BadParam, [] { type2_p_tilde_matrix(Type2Param{}, C(1.0, -1.0)); });
  ContinuityConfig c;
  c.n_exp = 0;
  expect_errc(Errc::BadParam, [&] { continuity_experiment(c); });
  c = ContinuityConfig{};
  c.steps = 5;
  expect_errc(Errc::BadParam, [&] { continuity_experiment(c); });
  c = ContinuityConfig{};
  c.radius = 2.0;
  expect_errc(Errc::BadParam, [&] { continuity_experiment(c); });
  c = ContinuityConfig{};
  c.v = C(0.0, 1.0);
  expect_errc(Errc::BadParam, [&] { continuity_experiment(c); });
}

TEST_CASE("continuity along a pure z4 = t^2 schedule") {
  ContinuityConfig c;
  c.family = Family::I;
  c.v = C(0.0, -1.0);
  c.w = C(0.0, 0.0);
  c.n_exp = 2;
  c.steps = 20;
  c.amplitude = 1.0;
  c.free_amplitude = 0.0;
  c.radius = 1.0;
  ContinuityReport r = continuity_experiment(c);
  CHECK(r.deviations.size() == 20u);
  CHECK(r.converged);
  CHECK(r.max_deviation < 1e-6);
}

TEST_CASE("continuity without perturbation is exact up to rounding") {
  for (Family fam : {Family::I, Family::II}) {
    ContinuityConfig c = lawful(fam, 1);
    c.zero_perturbation = true;
    ContinuityReport r = continuity_experiment(c);
    CHECK(r.violations == 0);
    for (double d : r.deviations) CHECK(d < 1e-9);
  }
}

TEST_CASE("lawful schedules converge") {
  for (Family fam : {Family::I, Family::II})
    for (int n : {1, 2, 3}) {
      CAPTURE(n);
      ContinuityReport r = continuity_experiment(lawful(fam, n));
      CHECK(r.converged);
      CHECK(r.violations == 0);
      // Deviations shrink along the schedule.
      CHECK(r.deviations.back() < r.deviations.front());
    }
}

TEST_CASE("a schedule outside the neighborhood is reported, not rejected") {
  ContinuityConfig c = lawful(Family::I, 1);
  c.violate = true;
  ContinuityReport r = continuity_experiment(c);
  CHECK(r.deviations.size() == static_cast<std::size_t>(c.steps));
  CHECK(r.y_star > 0.0);
}
