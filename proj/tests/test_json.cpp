#include "support.hpp"

#include <fstream>

#include "hbd/json_io.hpp"
#include "hbd/sampling.hpp"

using namespace t;
using hbd::io::json;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(HBD_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

template <class F>
void expect_schema_error(F&& f) {
  CHECK_THROWS_AS(f(), hbd::io::SchemaError);
}

}  // namespace

TEST_CASE("scalar encodings") {
  CHECK(io::scalar_to_json(gq(1, 3, -3, 4)) == json{{"re", "1/3"}, {"im", "-3/4"}});
  CHECK(io::scalar_from_json<G>(json{{"re", "2/4"}, {"im", 0}}) == q(1, 2));
  CHECK(io::scalar_from_json<G>(json("5")) == q(5));
  CHECK(io::scalar_from_json<G>(json(7)) == q(7));
  CHECK(io::scalar_from_json<C>(json{{"re", 0.5}}) == C(0.5, 0.0));
  CHECK(io::scalar_from_json<C>(json(-1.25)) == C(-1.25, 0.0));
  expect_schema_error([] { io::scalar_from_json<G>(json{{"re", 0.5}}); });
  expect_schema_error([] { io::scalar_from_json<G>(json{{"re", "1/0"}}); });
  expect_schema_error([] { io::scalar_from_json<C>(json{{"re", "x"}}); });
}

TEST_CASE("exact and float documents are told apart") {
  CHECK(io::is_exact_document(json{{"a", {1, "1/2"}}}));
  CHECK_FALSE(io::is_exact_document(json{{"a", {1, 0.5}}}));
  CHECK(io::is_exact_document(load("type1_orbit.json")));
  CHECK_FALSE(io::is_exact_document(load("type2_orbit.json")));
}

TEST_CASE("matrix and subspace round trips") {
  sample::Rng rng(201);
  for (int i = 0; i < 20; ++i) {
    Matrix<G> m(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = sample::gaussian(rng, 9, 7);
    CHECK(io::matrix_from_json<G>(io::matrix_to_json(m)) == m);
    Subspace<G> s = Subspace<G>::span(m.transpose());
    CHECK(io::subspace_from_json<G>(io::subspace_to_json(s)) == s);
    Matrix<C> mc(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) mc(r, c) = sample::complex_box(rng, 10.0);
    // Doubles survive the text round trip bit for bit.
    CHECK(io::matrix_from_json<C>(json::parse(io::matrix_to_json(mc).dump())) == mc);
  }
  expect_schema_error([] { io::matrix_from_json<G>(json::array()); });
  expect_schema_error([] { io::matrix_from_json<G>(json{{1, 2}, {3}}); });
  expect_schema_error([] { io::subspace_from_json<G>(json{{"ambient_n", 0}, {"basis", json::array()}}); });
  expect_schema_error([] { io::subspace_from_json<G>(json{{"ambient_n", 3}, {"basis", {{1}, {0}}}}); });
}

TEST_CASE("orbit documents") {
  io::OrbitInput<G> in = io::orbit_from_json<G>(load("type1_orbit.json"));
  CHECK(in.N.N == type1_nil<G>());
  Filtration<G> want = type1_filtration(Type1Param<G>{gq(1, 2, -2, 1), gq(1, 3, 3, 4)});
  // The file lists only F^1 and F^0; F^{-1} and F^{-2} follow from the polarization.
  CHECK(in.F == want);
  CHECK(in.F[-1] == perp(in.space, want[1]));
  io::OrbitInput<G> again = io::orbit_from_json<G>(io::orbit_to_json(in.N.N, in.F));
  CHECK(again.F == in.F);
  CHECK(again.N.N == in.N.N);

  io::OrbitInput<C> in2 = io::orbit_from_json<C>(load("type2_orbit.json"));
  CHECK(classify_1111(in2.space, in2.N.N) == NilType::II);

  expect_schema_error([] { io::orbit_from_json<G>(load("malformed.json")); });
  CHECK_THROWS_AS(io::orbit_from_json<G>(load("non_nilpotent.json")), hbd::Error);
  json odd = load("type1_orbit.json");
  odd["N"] = json{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  expect_schema_error([&] { io::orbit_from_json<G>(odd); });
  json missing = load("type1_orbit.json");
  missing["F"]["pieces"].erase("0");
  expect_schema_error([&] { io::orbit_from_json<G>(missing); });
}

TEST_CASE("continuity configuration") {
  ContinuityConfig c = io::continuity_config_from_json(load("continuity_I.json"));
  CHECK(c.family == Family::I);
  CHECK(c.n_exp == 2);
  CHECK(c.m_exp == 2);
  ContinuityConfig d = io::continuity_config_from_json(json{{"family", "II"}, {"m", 3}, {"sign", "-"}, {"m_exp", 4}});
  CHECK(d.w == C(0.5, 0.0));
  CHECK(d.m == 3);
  CHECK(d.sign == -1);
  CHECK(d.n_exp == 2);
  CHECK(d.m_exp == 4);
  expect_schema_error([] { io::continuity_config_from_json(json{{"family", "III"}}); });
  expect_schema_error([] { io::continuity_config_from_json(json{{"sign", 1}}); });
  expect_schema_error([] { io::continuity_config_from_json(json{{"violate", "yes"}}); });
  expect_schema_error([] { io::continuity_config_from_json(json{{"steps", 2.5}}); });
  expect_schema_error([] { io::continuity_config_from_json(json::array()); });

  ContinuityReport r;
  r.deviations = {std::numeric_limits<double>::infinity(), 1e-3, -0.0};
  r.violations = 1;
  json out = io::continuity_report_to_json(r);
  CHECK(out["deviations"][0].is_null());
  CHECK(out["deviations"][2].dump() == "0.0");
  CHECK(out["violations"] == 1);
}

TEST_CASE("result encoders") {
  const SympSpace sp = SympSpace::standard(2);
  auto nd = NilDirection<G>::make(sp, type1_nil<G>());
  Filtration<G> f = type1_filtration(Type1Param<G>{gq(1, 2, -2, 1), gq(1, 3, 3, 4)});
  json w = io::weight_filtration_to_json(weight_filtration(sp, nd));
  CHECK(w.is_object());
  json b = io::bigrading_to_json(deligne_bigrading(weight_filtration(sp, nd), f));
  CHECK(b.dump().find("r_split") != std::string::npos);
  json s = io::satake_point_to_json(p_even(sp, nd, f));
  CHECK(io::subspace_from_json<G>(s["U"]) == p_even(sp, nd, f).U);
}
