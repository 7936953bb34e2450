#include "hbd/json_io.hpp"

#include <cmath>
#include <limits>

#include "hbd/errors.hpp"

namespace hbd::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long to_long(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long>();
}

Rational real_exact(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      bad(std::string("bad rational: ") + e.what());
    }
  }
  bad("exact scalar parts must be strings \"p/q\" or integers");
}

double real_float(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>()).get_d();
    } catch (const std::exception& e) {
      bad(std::string("bad number: ") + e.what());
    }
  }
  bad("float scalar parts must be numbers");
}

json finite_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x == 0.0 ? 0.0 : x;  // no negative zeros in reports
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

bool is_exact_document(const json& j) {
  if (j.is_number_float()) return false;
  if (j.is_array() || j.is_object())
    for (const auto& v : j)
      if (!is_exact_document(v)) return false;
  return true;
}

template <>
json scalar_to_json(const Gaussian& x) {
  return {{"re", format_rational(x.re)}, {"im", format_rational(x.im)}};
}

template <>
json scalar_to_json(const Complex& x) {
  return {{"re", finite_or_null(x.real())}, {"im", finite_or_null(x.imag())}};
}

template <>
Gaussian scalar_from_json(const json& j) {
  if (j.is_object()) {
    Rational im = j.contains("im") ? real_exact(j.at("im")) : Rational(0);
    return Gaussian(real_exact(field(j, "re")), im);
  }
  return Gaussian(real_exact(j), Rational(0));
}

template <>
Complex scalar_from_json(const json& j) {
  if (j.is_object()) {
    double im = j.contains("im") ? real_float(j.at("im")) : 0.0;
    return {real_float(field(j, "re")), im};
  }
  return {real_float(j), 0.0};
}

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Matrix<S> matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a nonempty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  Matrix<S> m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<S>(j[r][c]);
  }
  return m;
}

IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a nonempty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_long(j[r][c], "integer matrix entry");
  }
  return m;
}

template <class S>
json vector_to_json(const Vec<S>& v) {
  json out = json::array();
  for (const S& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class S>
Vec<S> vector_from_json(const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  Vec<S> v;
  for (const auto& x : j) v.push_back(scalar_from_json<S>(x));
  return v;
}

template <class S>
json subspace_to_json(const Subspace<S>& s) {
  json basis = json::array();
  const Matrix<S>& b = s.basis();
  for (std::size_t r = 0; r < s.ambient(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(scalar_to_json(b(r, c)));
    basis.push_back(std::move(row));
  }
  return {{"ambient_n", s.ambient()}, {"basis", basis}};
}

template <class S>
Subspace<S> subspace_from_json(const json& j) {
  const long n = to_long(field(j, "ambient_n"), "ambient_n");
  if (n <= 0) bad("ambient_n must be positive");
  const json& b = field(j, "basis");
  if (!b.is_array()) bad("basis must be a matrix");
  if (b.empty()) return Subspace<S>::zero(static_cast<std::size_t>(n));
  if (b.size() != static_cast<std::size_t>(n)) bad("basis must have ambient_n rows");
  Matrix<S> m = matrix_from_json<S>(b);
  if (m.cols() == 0) return Subspace<S>::zero(static_cast<std::size_t>(n));
  return Subspace<S>::span(m);
}

template <class S>
json filtration_to_json(const Filtration<S>& f) {
  json h = json::object(), pieces = json::object();
  for (const auto& [p, v] : f.hodge_numbers().values()) h[std::to_string(p)] = v;
  for (const auto& [p, s] : f.pieces()) pieces[std::to_string(p)] = subspace_to_json(s);
  return {{"h", h}, {"pieces", pieces}};
}

template <class S>
Filtration<S> filtration_from_json(const SympSpace& sp, const json& j) {
  const json& hj = field(j, "h");
  if (!hj.is_object()) bad("\"h\" must be an object {\"p\": h(p)}");
  std::map<int, int> hm;
  for (const auto& [k, v] : hj.items()) {
    try {
      hm[std::stoi(k)] = static_cast<int>(to_long(v, "Hodge number"));
    } catch (const std::invalid_argument&) {
      bad("Hodge number keys must be integers");
    }
  }
  HodgeNumbers h(hm);
  const json& pj = field(j, "pieces");
  if (!pj.is_object()) bad("\"pieces\" must be an object {\"p\": subspace}");
  std::map<int, Subspace<S>> pieces;
  for (const auto& [k, v] : pj.items()) {
    int p = 0;
    try {
      p = std::stoi(k);
    } catch (const std::invalid_argument&) {
      bad("piece keys must be integers");
    }
    Subspace<S> s = subspace_from_json<S>(v);
    if (s.ambient() != sp.dim()) throw Error(Errc::AmbientMismatch, "piece F^" + k + " has the wrong ambient dimension");
    pieces.emplace(p, std::move(s));
  }
  for (int p = 0; p <= h.p_max(); ++p)
    if (!pieces.count(p)) bad("missing piece F^" + std::to_string(p));
  for (int p = -1; p > h.p_min(); --p)
    if (!pieces.count(p)) pieces.emplace(p, perp(sp, pieces.at(-p)));
  return Filtration<S>(sp.dim(), h, std::move(pieces));
}

SympSpace space_from_json(const json& j, std::size_t dim) {
  if (j.is_object() && j.contains("Q")) {
    SympSpace sp(int_matrix_from_json(j.at("Q")));
    if (sp.dim() != dim) throw Error(Errc::AmbientMismatch, "Q does not match the size of N");
    return sp;
  }
  if (dim == 0 || dim % 2 != 0) bad("N must be a square matrix of even size");
  return SympSpace::standard(static_cast<int>(dim / 2));
}

template <class S>
OrbitInput<S> orbit_from_json(const json& j) {
  Matrix<S> n = matrix_from_json<S>(field(j, "N"));
  if (n.rows() != n.cols()) bad("N must be square");
  OrbitInput<S> out;
  out.space = space_from_json(j, n.rows());
  out.N = NilDirection<S>::make(out.space, n);
  out.F = filtration_from_json<S>(out.space, field(j, "F"));
  return out;
}

template <class S>
json orbit_to_json(const Matrix<S>& n, const Filtration<S>& f) {
  return {{"N", matrix_to_json(n)}, {"F", filtration_to_json(f)}};
}

template <class S>
json cycle_point_to_json(const CyclePoint<S>& c) {
  return {{"V", subspace_to_json(c.V)}, {"W", subspace_to_json(c.W)}};
}

template <class S>
json satake_point_to_json(const SatakePoint<S>& p) {
  return {{"U", subspace_to_json(p.U)}, {"core", subspace_to_json(p.core)}, {"conjugated", p.conjugated}};
}

template <class S>
json siegel_orbit_to_json(const SiegelOrbit<S>& o) {
  return {{"N", matrix_to_json(o.N.N)},
          {"F0", subspace_to_json(o.F0)},
          {"F_tilde", subspace_to_json(o.F_tilde)},
          {"conjugated", o.conjugated}};
}

template <class S>
json weight_filtration_to_json(const WeightFiltration<S>& w) {
  json out = json::object();
  for (const auto& [k, s] : w.W) out[std::to_string(k)] = subspace_to_json(s);
  return {{"W", out}};
}

template <class S>
json bigrading_to_json(const Bigrading<S>& b) {
  json parts = json::array();
  for (const auto& [pq, s] : b.I) parts.push_back({{"p", pq.first}, {"q", pq.second}, {"I", subspace_to_json(s)}});
  return {{"I", parts}, {"r_split", b.r_split}};
}

template <class S>
json sl2_to_json(const Sl2Data<S>& d) {
  return {{"N", matrix_to_json(d.N)},
          {"H", matrix_to_json(d.H)},
          {"Nplus", matrix_to_json(d.Nplus)},
          {"X", matrix_to_json(d.X)}};
}

ContinuityConfig continuity_config_from_json(const json& j) {
  if (!j.is_object()) bad("continuity config must be an object");
  ContinuityConfig c;
  if (j.contains("family")) {
    const json& f = j.at("family");
    if (f == "I") c.family = Family::I;
    else if (f == "II") c.family = Family::II;
    else bad("family must be \"I\" or \"II\"");
  }
  if (c.family == Family::II) c.w = Complex(0.5, 0.0);
  if (j.contains("v")) c.v = scalar_from_json<Complex>(j.at("v"));
  if (j.contains("w")) c.w = scalar_from_json<Complex>(j.at("w"));
  if (j.contains("m")) c.m = to_long(j.at("m"), "m");
  if (j.contains("sign")) {
    const json& s = j.at("sign");
    if (s == "+") c.sign = 1;
    else if (s == "-") c.sign = -1;
    else bad("sign must be \"+\" or \"-\"");
  }
  if (j.contains("n_exp")) c.n_exp = static_cast<int>(to_long(j.at("n_exp"), "n_exp"));
  c.m_exp = c.n_exp;
  if (j.contains("m_exp")) c.m_exp = static_cast<int>(to_long(j.at("m_exp"), "m_exp"));
  if (j.contains("steps")) c.steps = static_cast<int>(to_long(j.at("steps"), "steps"));
  if (j.contains("tolerance")) c.tolerance = number(j.at("tolerance"), "tolerance");
  if (j.contains("radius")) c.radius = number(j.at("radius"), "radius");
  if (j.contains("amplitude")) c.amplitude = number(j.at("amplitude"), "amplitude");
  if (j.contains("free_amplitude")) c.free_amplitude = number(j.at("free_amplitude"), "free_amplitude");
  if (j.contains("theta")) c.theta = number(j.at("theta"), "theta");
  if (j.contains("violate")) {
    if (!j.at("violate").is_boolean()) bad("violate must be a boolean");
    c.violate = j.at("violate").get<bool>();
  }
  return c;
}

json continuity_report_to_json(const ContinuityReport& r) {
  json devs = json::array();
  for (double d : r.deviations) devs.push_back(finite_or_null(d));
  return {{"deviations", devs},
          {"converged", r.converged},
          {"y_star", r.y_star},
          {"max_deviation", finite_or_null(r.max_deviation)},
          {"violations", r.violations}};
}

#define HBD_INSTANTIATE(S)                                                        \
  template json matrix_to_json(const Matrix<S>&);                                 \
  template Matrix<S> matrix_from_json<S>(const json&);                            \
  template json vector_to_json(const Vec<S>&);                                    \
  template Vec<S> vector_from_json<S>(const json&);                               \
  template json subspace_to_json(const Subspace<S>&);                             \
  template Subspace<S> subspace_from_json<S>(const json&);                        \
  template json filtration_to_json(const Filtration<S>&);                         \
  template Filtration<S> filtration_from_json<S>(const SympSpace&, const json&);  \
  template OrbitInput<S> orbit_from_json<S>(const json&);                         \
  template json orbit_to_json(const Matrix<S>&, const Filtration<S>&);            \
  template json cycle_point_to_json(const CyclePoint<S>&);                        \
  template json satake_point_to_json(const SatakePoint<S>&);                      \
  template json siegel_orbit_to_json(const SiegelOrbit<S>&);                      \
  template json weight_filtration_to_json(const WeightFiltration<S>&);            \
  template json bigrading_to_json(const Bigrading<S>&);                           \
  template json sl2_to_json(const Sl2Data<S>&);

HBD_INSTANTIATE(Gaussian)
HBD_INSTANTIATE(Complex)

}  // namespace hbd::io
