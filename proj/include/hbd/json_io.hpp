#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "hbd/case1111.hpp"

namespace hbd::io {

using nlohmann::json;

/// Malformed input: wrong shape, missing field, unparsable scalar.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True when no floating-point number occurs anywhere in the document.
bool is_exact_document(const json& j);

// Scalars: exact {"re": "p/q", "im": "p/q"}, float {"re": number, "im": number}.
// Readers also accept a bare real (string or number) and a missing "im".
template <class S>
json scalar_to_json(const S& x);
template <class S>
S scalar_from_json(const json& j);
template <>
json scalar_to_json(const Gaussian& x);
template <>
json scalar_to_json(const Complex& x);
template <>
Gaussian scalar_from_json(const json& j);
template <>
Complex scalar_from_json(const json& j);

/// Row-major array of rows.
template <class S>
json matrix_to_json(const Matrix<S>& m);
template <class S>
Matrix<S> matrix_from_json(const json& j);
IntMatrix int_matrix_from_json(const json& j);

template <class S>
json vector_to_json(const Vec<S>& v);
template <class S>
Vec<S> vector_from_json(const json& j);

/// {"ambient_n": 2n, "basis": matrix}; the basis vectors are the columns.
template <class S>
json subspace_to_json(const Subspace<S>& s);
template <class S>
Subspace<S> subspace_from_json(const json& j);

/// {"h": {"p": h(p)}, "pieces": {"p": subspace}}. Pieces F^p with p < 0 that are absent are
/// filled in as (F^{-p})^perp.
template <class S>
json filtration_to_json(const Filtration<S>& f);
template <class S>
Filtration<S> filtration_from_json(const SympSpace& sp, const json& j);

/// Optional "Q" (integer matrix) in an orbit document; the standard form of the right size otherwise.
SympSpace space_from_json(const json& j, std::size_t dim);

template <class S>
struct OrbitInput {
  SympSpace space = SympSpace::standard(1);
  NilDirection<S> N;
  Filtration<S> F;
};

/// {"N": matrix, "F": filtration, "Q"?: integer matrix}.
template <class S>
OrbitInput<S> orbit_from_json(const json& j);
template <class S>
json orbit_to_json(const Matrix<S>& n, const Filtration<S>& f);

template <class S>
json cycle_point_to_json(const CyclePoint<S>& c);
template <class S>
json satake_point_to_json(const SatakePoint<S>& p);
template <class S>
json siegel_orbit_to_json(const SiegelOrbit<S>& o);
template <class S>
json weight_filtration_to_json(const WeightFiltration<S>& w);
template <class S>
json bigrading_to_json(const Bigrading<S>& b);
template <class S>
json sl2_to_json(const Sl2Data<S>& d);

/// {"family", "v", "w", "m", "sign", "n_exp", "m_exp", "steps", "tolerance", "radius", "amplitude",
/// "free_amplitude", "theta", "violate"}; all optional. m_exp defaults to n_exp, w to 1/2 for family II.
ContinuityConfig continuity_config_from_json(const json& j);
json continuity_report_to_json(const ContinuityReport& r);

}  // namespace hbd::io
