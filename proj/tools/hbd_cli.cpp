#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hbd/battery.hpp"
#include "hbd/errors.hpp"
#include "hbd/json_io.hpp"

namespace {

using hbd::io::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kSchema = 2;
constexpr int kMath = 3;

const char* kSchemas = R"(Input and output schemas
  scalar      exact {"re": "p/q", "im": "p/q"} | float {"re": number, "im": number}; a bare real is accepted
  matrix      row-major array of rows of scalars
  subspace    {"ambient_n": 2n, "basis": matrix}  (basis vectors are the columns)
  filtration  {"h": {"p": h^p, ...}, "pieces": {"p": subspace, ...}}  (F^p for p < 0 default to (F^-p)^perp)
  orbit       {"N": matrix, "F": filtration, "Q": integer matrix (optional, standard form by default)}

  classify           orbit -> {"type", "parity", "is_orbit", "y_star"}
  weight-filtration  {"N": matrix, "Q"?} -> {"W": {"k": subspace}}
  deligne            orbit -> {"I": [{"p", "q", "I": subspace}], "r_split"}
  lmhs               orbit -> {"mhs", "morphism", "polarized", "notes"}
  rsplit             orbit -> {"delta": matrix, "F_hat": filtration}
  sl2                orbit -> {"N", "H", "Nplus", "X"}
  boundary-map       orbit -> p_ev/p_od: {"U", "core", "conjugated"};
                              p_tilde_ev/p_tilde_od: {"N", "F0", "F_tilde", "conjugated"}
  continuity         {"family": "I"|"II", "v", "w", "m", "sign": "+"|"-", "n_exp", "m_exp", "steps",
                      "tolerance", "radius", "amplitude", "free_amplitude", "theta", "violate"}
                      -> {"deviations", "converged", "y_star", "max_deviation", "violations"}
                      (a null deviation marks a point outside the period domain)
  verify-paper       no input -> {"pass", "checks": [{"name", "pass", "max_deviation", "detail"}]}

Exit codes: 0 success, 1 a check failed, 2 malformed input, 3 mathematical domain error.)";

struct Options {
  std::string input = "-";
  std::string output;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  bool exact = false;
  bool floating = false;
  std::string map;
};

json read_input(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw hbd::io::SchemaError("cannot open " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw hbd::io::SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

void write_output(const Options& o, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw std::runtime_error("cannot write " + o.output);
  out << text;
}

bool use_exact(const Options& o, const json& doc) {
  if (o.exact) return true;
  if (o.floating) return false;
  return hbd::io::is_exact_document(doc);
}

template <class S>
json classify(const json& doc) {
  auto in = hbd::io::orbit_from_json<S>(doc);
  json out;
  out["type"] = in.space.dim() == 4 ? json(hbd::nil_type_name(hbd::classify_1111(in.space, in.N.N))) : json(nullptr);
  hbd::OrbitVerdict v = hbd::is_nilpotent_orbit(in.space, in.N, in.F);
  out["is_orbit"] = v.verdict;
  out["parity"] = v.verdict ? json(hbd::parity_name(hbd::classify_parity(in.space, in.N, in.F))) : json(nullptr);
  out["y_star"] = v.y_star;
  if (v.budget_exhausted) out["budget_exhausted"] = true;
  return out;
}

template <class S>
json weight(const json& doc) {
  if (!doc.is_object() || !doc.contains("N")) throw hbd::io::SchemaError("missing field \"N\"");
  hbd::Matrix<S> n = hbd::io::matrix_from_json<S>(doc.at("N"));
  if (n.rows() != n.cols()) throw hbd::io::SchemaError("N must be square");
  hbd::SympSpace sp = hbd::io::space_from_json(doc, n.rows());
  return hbd::io::weight_filtration_to_json(hbd::weight_filtration(sp, hbd::NilDirection<S>::make(sp, n)));
}

template <class S>
json deligne(const json& doc) {
  auto in = hbd::io::orbit_from_json<S>(doc);
  return hbd::io::bigrading_to_json(hbd::deligne_bigrading(hbd::weight_filtration(in.space, in.N), in.F));
}

template <class S>
json lmhs(const json& doc) {
  auto in = hbd::io::orbit_from_json<S>(doc);
  hbd::LmhsReport r = hbd::is_lmhs(in.space, in.N, in.F);
  return {{"mhs", r.mhs}, {"morphism", r.morphism}, {"polarized", r.polarized}, {"notes", r.notes}};
}

template <class S>
json rsplit(const json& doc) {
  auto in = hbd::io::orbit_from_json<S>(doc);
  hbd::RSplitResult<S> r = hbd::r_split_delta(in.space, in.N, in.F);
  return {{"delta", hbd::io::matrix_to_json(r.delta)}, {"F_hat", hbd::io::filtration_to_json(r.F_hat)}};
}

template <class S>
json sl2(const json& doc) {
  auto in = hbd::io::orbit_from_json<S>(doc);
  hbd::RSplitResult<S> r = hbd::r_split_delta(in.space, in.N, in.F);
  return hbd::io::sl2_to_json(hbd::sl2_complete(in.space, in.N, r.F_hat));
}

template <class S>
json boundary_map(const json& doc, const std::string& which) {
  auto in = hbd::io::orbit_from_json<S>(doc);
  if (which == "p_ev") return hbd::io::satake_point_to_json(hbd::p_even(in.space, in.N, in.F));
  if (which == "p_od") return hbd::io::satake_point_to_json(hbd::p_odd(in.space, in.N, in.F));
  const hbd::Parity parity = which == "p_tilde_ev" ? hbd::Parity::even : hbd::Parity::odd;
  return hbd::io::siegel_orbit_to_json(hbd::f_tilde(in.space, in.N, in.F, parity));
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const hbd::io::SchemaError& e) {
    std::cerr << "SchemaError: " << e.what() << "\n";
    return kSchema;
  } catch (const hbd::Error& e) {
    std::cerr << e.what() << "\n";
    return kMath;
  } catch (const json::exception& e) {
    std::cerr << "SchemaError: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMath;
  }
}

// Runs an orbit-style subcommand on the backend chosen by the flags or the document.
template <template <class> class Cmd>
int run_doc(const Options& o) {
  return guarded([&] {
    json doc = read_input(o.input);
    hbd::EpsilonGuard eps(o.tolerance);
    json out = use_exact(o, doc) ? Cmd<hbd::Gaussian>{}(doc, o) : Cmd<hbd::Complex>{}(doc, o);
    write_output(o, out);
    return kOk;
  });
}

#define HBD_CMD(name, call)                                                     \
  template <class S>                                                            \
  struct name {                                                                 \
    json operator()(const json& doc, [[maybe_unused]] const Options& o) { return call; } \
  };

HBD_CMD(ClassifyCmd, classify<S>(doc))
HBD_CMD(WeightCmd, weight<S>(doc))
HBD_CMD(DeligneCmd, deligne<S>(doc))
HBD_CMD(LmhsCmd, lmhs<S>(doc))
HBD_CMD(RsplitCmd, rsplit<S>(doc))
HBD_CMD(Sl2Cmd, sl2<S>(doc))
HBD_CMD(BoundaryCmd, boundary_map<S>(doc, o.map))

int run_continuity(const Options& o) {
  return guarded([&] {
    json doc = read_input(o.input);
    hbd::EpsilonGuard eps(o.tolerance);
    write_output(o, hbd::io::continuity_report_to_json(hbd::continuity_experiment(hbd::io::continuity_config_from_json(doc))));
    return kOk;
  });
}

int run_verify(const Options& o) {
  return guarded([&] {
    hbd::BatteryOptions bo;
    bo.seed = o.seed;
    bo.tolerance = o.tolerance;
    json checks = json::array();
    bool all = true;
    for (const auto& r : hbd::run_battery(bo)) {
      std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "  max_deviation=" << r.max_deviation
                << "  seconds=" << r.seconds << "\n";
      checks.push_back({{"name", r.name},
                        {"pass", r.pass},
                        {"max_deviation", std::isfinite(r.max_deviation) ? json(r.max_deviation) : json(nullptr)},
                        {"detail", r.detail}});
      all = all && r.pass;
    }
    write_output(o, {{"pass", all}, {"checks", checks}});
    return all ? kOk : kCheckFailed;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary maps of degenerating polarized Hodge structures of weight -1"};
  app.footer(kSchemas);
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input) sub->add_option("input", o.input, "input JSON file, '-' for stdin")->capture_default_str();
    sub->add_option("--tolerance", o.tolerance, "float tolerance and rank threshold")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
    auto* ex = sub->add_flag("--exact", o.exact, "exact arithmetic over Q(i)");
    auto* fl = sub->add_flag("--float", o.floating, "double-precision arithmetic");
    ex->excludes(fl);
    sub->add_option("--output", o.output, "write the report here instead of stdout");
  };
  auto* classify = app.add_subcommand("classify", "type, parity and orbit verdict of (N, F)");
  auto* weight = app.add_subcommand("weight-filtration", "weight filtration W(N)");
  auto* deligne = app.add_subcommand("deligne", "Deligne bigrading of (W(N), F)");
  auto* lmhs = app.add_subcommand("lmhs", "check that (W(N), F) is a polarized mixed Hodge structure");
  auto* rsplit = app.add_subcommand("rsplit", "R-split correction delta and F_hat");
  auto* sl2 = app.add_subcommand("sl2", "sl2-triple and X of the R-split orbit");
  auto* boundary = app.add_subcommand("boundary-map", "boundary projection of a nilpotent orbit");
  auto* continuity = app.add_subcommand("continuity", "continuity experiment along a degenerating sequence");
  auto* verify = app.add_subcommand("verify-paper", "run the acceptance battery");
  for (auto* s : {classify, weight, deligne, lmhs, rsplit, sl2, boundary, continuity}) common(s, true);
  common(verify, false);
  boundary->add_option("--map", o.map, "which map")
      ->required()
      ->check(CLI::IsMember({"p_ev", "p_od", "p_tilde_ev", "p_tilde_od"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }

  if (*classify) return run_doc<ClassifyCmd>(o);
  if (*weight) return run_doc<WeightCmd>(o);
  if (*deligne) return run_doc<DeligneCmd>(o);
  if (*lmhs) return run_doc<LmhsCmd>(o);
  if (*rsplit) return run_doc<RsplitCmd>(o);
  if (*sl2) return run_doc<Sl2Cmd>(o);
  if (*boundary) return run_doc<BoundaryCmd>(o);
  if (*continuity) return run_continuity(o);
  return run_verify(o);
}
