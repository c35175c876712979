#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>

#include "entgeo/errors.hpp"
#include "entgeo/invsep.hpp"
#include "entgeo/json_io.hpp"
#include "expr.hpp"

namespace entgeo::cli {

namespace {

using json = nlohmann::json;

struct GlobalFlags {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string format;  // per-command default: csv for sweep, json otherwise
  std::string f_kind = "identity";
  std::string norm = "frobenius";
};

// Raised for non-finite results; maps to the validation exit code.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(const json& j, const std::string& path = "") {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw NumericalError("non-finite value in report field " + path);
  }
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) require_finite(it.value(), path + "/" + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "/" + std::to_string(i));
  }
}

MeasureConfig measure_config(const GlobalFlags& g) {
  MeasureConfig cfg;
  const auto f = parse_f_kind(g.f_kind);
  const auto n = parse_norm_kind(g.norm);
  if (!f) throw CLI::ValidationError("--f-kind", "expected identity, abs or square");
  if (!n) throw CLI::ValidationError("--norm", "expected frobenius, trace or max_abs");
  cfg.f_kind = *f;
  cfg.norm_kind = *n;
  return cfg;
}

json certificate_json(const SeparationCertificate& c) {
  return {{"normal", c.normal}, {"offset", c.offset}, {"margin", c.margin}};
}

// ---------------------------------------------------------------------------
// analyze

json analyze_quantum(const std::string& expr, const DensityMatrix& rho, const GlobalFlags& g, bool dump_state) {
  const MeasureConfig cfg = measure_config(g);
  const Marginals m = marginals(rho);
  const double min_eig = ppt_min_eigenvalue(rho);
  const PptVerdict verdict = ppt_verdict(rho);
  const bool css = is_css(singleton(rho), g.tol);

  json measures = json::array();
  for (FKind f : {FKind::Identity, FKind::Abs, FKind::Square})
    for (NormKind n : {NormKind::Frobenius, NormKind::Trace, NormKind::MaxAbs}) {
      measures.push_back({{"f", to_string(f)}, {"norm", to_string(n)}, {"value", g_measure(rho, {f, n})}});
    }

  json report = {
      {"state", expr},
      {"backend", "quantum"},
      {"dim_a", rho.split().dim_a},
      {"dim_b", rho.split().dim_b},
      {"purity", purity(rho)},
      {"marginal_purity_a", purity(m.a)},
      {"marginal_purity_b", purity(m.b)},
      {"pi_distance", norm(pi_map(rho).mat() - rho.mat(), NormKind::Frobenius)},
      {"measure", g_measure(rho, cfg)},
      {"measure_config", {{"f", to_string(cfg.f_kind)}, {"norm", to_string(cfg.norm_kind)}}},
      {"sm_frobenius", g_measure(rho, {FKind::Identity, NormKind::Frobenius})},
      {"sm_trace", g_measure(rho, {FKind::Identity, NormKind::Trace})},
      {"measures", std::move(measures)},
      {"ppt_min_eig", min_eig},
      {"verdict", to_string(verdict)},
      {"css", css},
      {"verdicts", {{"product", is_product(rho, g.tol)}, {"css_singleton", css}, {"ppt", to_string(verdict)}}},
  };
  if (dump_state) report["state_json"] = json_io::to_json(rho);
  return report;
}

json analyze_gpt(const std::string& expr, const GptState& s, const GlobalFlags& g) {
  const MeasureConfig cfg = measure_config(g);
  const bool member = max_tensor_membership(s.phi, max_tensor_constraints(s.model_a, s.model_b), g.tol);
  json report = {
      {"state", expr},
      {"backend", "gpt"},
      {"models", {s.model_a_name, s.model_b_name}},
      {"coords", s.phi.coords},
      {"max_tensor_member", member},
  };
  if (!member) {
    report["verdict"] = "invalid";
    return report;
  }
  const GptMarginals m = gpt_marginals(s.phi, s.model_a, s.model_b);
  const GptSeparability sep = gpt_separability(s.phi, s.model_a, s.model_b, g.tol);
  const VPolytope point{s.phi.coords.size(), {s.phi.coords}};
  report["marginal_a"] = m.a;
  report["marginal_b"] = m.b;
  report["measure"] = gpt_g_measure(s.phi, s.model_a, s.model_b, cfg);
  report["measure_config"] = {{"f", to_string(cfg.f_kind)}, {"norm", to_string(cfg.norm_kind)}};
  report["min_tensor_distance"] = sep.hull_distance;
  report["verdict"] = sep.separable ? "separable" : "entangled";
  report["css"] = gpt_is_css(point, s.model_a, s.model_b, g.tol);
  report["verdicts"] = {{"gpt_membership", sep.separable ? "separable" : "entangled"}};
  if (sep.certificate) report["certificate"] = certificate_json(*sep.certificate);
  return report;
}

void emit(const json& j, std::ostream& out) {
  require_finite(j);
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double p;
  double sm_frobenius;
  double sm_trace;
  double ppt_min_eig;
  PptVerdict verdict;
};

std::vector<SweepRow> werner_sweep(double start, double stop, std::size_t steps) {
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double p = i + 1 == steps ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const DensityMatrix rho = werner_state(p);
    rows.push_back({p, g_measure(rho, {FKind::Identity, NormKind::Frobenius}),
                    g_measure(rho, {FKind::Identity, NormKind::Trace}), ppt_min_eigenvalue(rho), ppt_verdict(rho)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// css-check

json css_check_file(const std::string& path, double tol) {
  const std::string content = read_file(path);
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    throw FormatError("\"" + path + "\" is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw FormatError("\"" + path + "\" must hold a JSON object");

  json report = {{"file", path}, {"tol", tol}};
  if (j.contains("terms")) {
    const Decomposition d = json_io::decomposition_from_json(j);
    const StatePolytope witness = css_from_decomposition(d);
    const double dist = css_distance(witness);
    const double residual = hull_residual(d.state(), witness);
    report["source"] = "decomposition";
    report["vertices"] = witness.vertices.size();
    report["css"] = dist <= tol;
    report["distance_summary"] = dist;
    report["state_residual"] = residual;
    report["contains_state"] = residual <= tol;
    return report;
  }
  if (j.contains("model_a") || j.contains("model_b")) {
    auto model = [&](const char* key) {
      if (!j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
      const json& m = j.at(key);
      return m.is_string() ? parse_model(m.get<std::string>()) : json_io::model_from_json(m);
    };
    const ComModel a = model("model_a");
    const ComModel b = model("model_b");
    const VPolytope c = json_io::polytope_from_json(j);
    const double dist = polytope_distance(gpt_lambda_tau(c, a, b), c);
    report["source"] = "gpt_polytope";
    report["vertices"] = c.vertices.size();
    report["css"] = dist <= tol;
    report["distance_summary"] = dist;
    return report;
  }
  const StatePolytope c = json_io::state_polytope_from_json(j);
  const double dist = css_distance(c);
  report["source"] = "polytope";
  report["vertices"] = c.vertices.size();
  report["css"] = dist <= tol;
  report["distance_summary"] = dist;
  return report;
}

// ---------------------------------------------------------------------------
// tensor

json tensor_summary(const std::string& ea, const std::string& eb, const std::string& which, bool dump) {
  const ComModel a = parse_model(ea);
  const ComModel b = parse_model(eb);
  const HPolytope h = max_tensor_constraints(a, b);
  const VPolytope omega_min = min_tensor(a, b);

  bool min_in_max = true;
  for (const auto& v : omega_min.vertices)
    min_in_max = min_in_max && max_tensor_membership({a.ambient_dim(), b.ambient_dim(), v}, h, 1e-9);

  json report = {{"model_a", ea},
                 {"model_b", eb},
                 {"ambient_dim", h.ambient_dim},
                 {"min_vertices", omega_min.vertices.size()},
                 {"min_subset_of_max", min_in_max}};
  if (dump) report["min"] = json_io::to_json(omega_min);
  if (which == "min") return report;

  const VPolytope omega_max = enumerate_max_vertices(h);
  json outside = json::array();
  for (const auto& v : omega_max.vertices)
    if (!hull_membership(v, omega_min, 1e-9)) outside.push_back(v);
  report["max_vertices"] = omega_max.vertices.size();
  report["equal"] = outside.empty() && min_in_max;
  report["outside"] = std::move(outside);
  if (dump) report["max"] = json_io::to_json(omega_max);
  return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric entanglement toolkit for quantum states and convex operational models", "entgeo"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--tol", g.tol, "Tolerance for membership, product and CSS checks")->capture_default_str();
  app.add_option("--format", g.format, "Output format (json|csv)")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--f-kind", g.f_kind, "Function applied before the norm")
      ->check(CLI::IsMember({"identity", "abs", "square"}))
      ->capture_default_str();
  app.add_option("--norm", g.norm, "Norm of the measure")
      ->check(CLI::IsMember({"frobenius", "trace", "max_abs"}))
      ->capture_default_str();

  std::string state_expr;
  bool dump_state = false;
  auto* analyze = app.add_subcommand("analyze", "Analyze one state");
  analyze->add_option("state", state_expr, "State expression, e.g. bell:phi+, werner:0.35, prbox")->required();
  analyze->add_flag("--dump-state", dump_state, "Include the state in JSON form");

  std::string family;
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 101;
  auto* sweep = app.add_subcommand("sweep", "Sweep a state family over a parameter grid");
  sweep->add_option("family", family, "State family")->required()->check(CLI::IsMember({"werner"}));
  sweep->add_option("--start", start, "First parameter")->capture_default_str();
  sweep->add_option("--stop", stop, "Last parameter")->capture_default_str();
  sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->capture_default_str();

  std::string model_a;
  std::string model_b;
  std::string which = "both";
  bool dump_polytopes = false;
  auto* tensor = app.add_subcommand("tensor", "Minimal and maximal tensor products of two models");
  tensor->add_option("model_a", model_a, "Model expression: classical:<n>, gbit, file:<path>")->required();
  tensor->add_option("model_b", model_b, "Model expression")->required();
  tensor->add_option("--which", which, "Products to compute")
      ->check(CLI::IsMember({"min", "max", "both"}))
      ->capture_default_str();
  tensor->add_flag("--dump", dump_polytopes, "Include vertex lists");

  std::string polytope_file;
  auto* css = app.add_subcommand("css-check", "Fixed-point test of a polytope under marginals-then-products");
  css->add_option("file", polytope_file, "Polytope or decomposition JSON")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("entgeo");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitParse;
  }

  if (g.format.empty()) g.format = *sweep ? "csv" : "json";

  try {
    if (*analyze) {
      const ParsedState parsed = parse_state(state_expr, g.seed);
      const json report = std::holds_alternative<DensityMatrix>(parsed)
                              ? analyze_quantum(state_expr, std::get<DensityMatrix>(parsed), g, dump_state)
                              : analyze_gpt(state_expr, std::get<GptState>(parsed), g);
      if (g.format == "csv") {
        require_finite(report);
        out << "state,verdict,measure,ppt_min_eig\n";
        out << state_expr << "," << report.value("verdict", "") << "," << fmt17(report.value("measure", 0.0)) << ","
            << (report.contains("ppt_min_eig") ? fmt17(report["ppt_min_eig"].get<double>()) : "") << "\n";
      } else {
        emit(report, out);
      }
    } else if (*sweep) {
      if (!(start >= 0.0 && start <= stop && stop <= 1.0) || steps < 2) {
        err << "entgeo: invalid grid: need 0 <= start <= stop <= 1 and steps >= 2\n";
        return kExitParse;
      }
      const auto rows = werner_sweep(start, stop, steps);
      if (g.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
          arr.push_back({{"p", r.p},
                         {"sm_frobenius", r.sm_frobenius},
                         {"sm_trace", r.sm_trace},
                         {"ppt_min_eig", r.ppt_min_eig},
                         {"verdict", to_string(r.verdict)}});
        }
        emit(arr, out);
      } else {
        std::ostringstream csv;
        csv << "p,sm_frobenius,sm_trace,ppt_min_eig,verdict\n";
        for (const auto& r : rows) {
          csv << fmt17(r.p) << ',' << fmt17(r.sm_frobenius) << ',' << fmt17(r.sm_trace) << ','
              << fmt17(r.ppt_min_eig) << ',' << to_string(r.verdict) << '\n';
        }
        out << csv.str();
      }
    } else if (*tensor) {
      emit(tensor_summary(model_a, model_b, which, dump_polytopes), out);
    } else if (*css) {
      emit(css_check_file(polytope_file, g.tol), out);
    }
  } catch (const ExprError& e) {
    err << "entgeo: parse error " << e.what() << "\n";
    return kExitParse;
  } catch (const FileError& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitParse;
  } catch (const FormatError& e) {
    err << "entgeo: malformed input: " << e.what() << "\n";
    return kExitParse;
  } catch (const CLI::ValidationError& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    err << "entgeo: malformed input: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    err << "entgeo: validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ShapeError& e) {
    err << "entgeo: validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "entgeo: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedError& e) {
    err << "entgeo: unsupported: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    err << "entgeo: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace entgeo::cli
