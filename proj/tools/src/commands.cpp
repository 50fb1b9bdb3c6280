#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cli_common.hpp"
#include "serialize.hpp"

namespace steerkit::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

std::vector<MeasurementScheme> parse_scheme_list(const std::string& csv) {
  std::vector<MeasurementScheme> schemes;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) schemes.push_back(parse_scheme(token));
  }
  return schemes;
}

std::vector<double> axis_values(const std::string& list, double lo, double hi,
                                double step, std::optional<double> single) {
  if (!list.empty()) return parse_list(list);
  if (step > 0.0 && hi >= lo) {
    std::vector<double> values;
    for (double v = lo; v <= hi + 1e-12; v += step) values.push_back(v);
    return values;
  }
  if (single) return {*single};
  return {};
}

const char* case_id(NetworkCase c) {
  switch (c) {
    case NetworkCase::Case1_AllMutual:
      return "case1";
    case NetworkCase::Case2_HubMutual:
      return "case2";
    case NetworkCase::Case3_HubOneWay:
      return "case3";
    case NetworkCase::Case4_NoSteering:
      return "case4";
    case NetworkCase::MixedUndecided:
      return "mixed";
  }
  return "unknown";
}

}  // namespace

int cmd_sweep(const SweepOptions& opt) {
  const ScenarioKind kind = parse_scenario_kind(opt.scenario);
  const Direction direction = parse_direction(opt.direction);
  const std::vector<MeasurementScheme> schemes = parse_scheme_list(opt.schemes);
  const std::vector<double> ns =
      axis_values(opt.ns, opt.n_min, opt.n_max, opt.n_step, opt.n);
  const std::vector<double> alphas =
      axis_values(opt.alphas, opt.alpha_min, opt.alpha_max, opt.alpha_step, opt.alpha);
  const std::vector<double> mus =
      axis_values(opt.mus, 0.0, 0.0, 0.0, opt.mu ? opt.mu : std::optional<double>(0.0));
  if (opt.format != "csv" && opt.format != "json") {
    throw InvalidScenario("format must be csv or json");
  }
  if (schemes.empty()) throw InvalidScenario("empty scheme list");
  if (ns.empty()) throw InvalidScenario("empty n range");
  if (alphas.empty()) throw InvalidScenario("empty alpha range");
  if (mus.empty()) throw InvalidScenario("empty mu list");

  struct Row {
    int scheme_index;
    Scenario sc;
    double lhs = kNaN, rhs = kNaN, margin = kNaN;
    std::string verdict;
    double concurrence = kNaN;
    double runtime_ms = 0.0;
    bool failed = false;
  };
  // Deterministic lexicographic grid order: scheme, n, alpha, mu.
  std::vector<Row> rows;
  for (int s = 0; s < static_cast<int>(schemes.size()); ++s) {
    for (const double n : ns) {
      for (const double alpha : alphas) {
        for (const double mu : mus) {
          Row row;
          row.scheme_index = s;
          row.sc = Scenario{kind, n, alpha, mu};
          row.sc.validate();  // fail the whole sweep up front (exit 2)
          rows.push_back(row);
        }
      }
    }
  }

  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    Row& row = rows[i];
    const double t0 = now_ms();
    try {
      const MeasurementScheme& scheme = schemes[row.scheme_index];
      const XStateParams x = reduced_pair_state(row.sc, Direction::AliceToBob);
      row.concurrence = concurrence(x);
      if (scheme.analytic()) {
        const CriterionReport report = steerable(x, scheme, direction);
        row.lhs = report.lhs;
        row.rhs = report.rhs;
        row.margin = report.margin;
        row.verdict = report.steerable ? "steerable" : "unsteerable";
      } else {
        const XStateParams oriented =
            direction == Direction::AliceToBob ? x : x.swapped();
        const SteeringVerdict verdict =
            classify_all_projective(oriented.to_state(), scheme.resolution);
        row.verdict = to_string(verdict.status);
      }
    } catch (const std::exception& e) {
      row.verdict = "error";
      row.failed = true;
    }
    row.runtime_ms = now_ms() - t0;
  });

  bool any_failed = false;
  std::string content;
  if (opt.format == "csv") {
    std::string csv =
        "scenario,n,alpha,mu,scheme,direction,lhs,rhs,margin,verdict,concurrence,"
        "runtime_ms\n";
    for (const Row& row : rows) {
      any_failed = any_failed || row.failed;
      csv += scenario_to_string(kind);
      csv += ',';
      csv += format_double(row.sc.n) + ',' + format_double(row.sc.alpha) + ',' +
             format_double(row.sc.mu) + ',';
      csv += scheme_to_string(schemes[row.scheme_index]) + ',';
      csv += direction_to_string(direction);
      csv += ',';
      csv += format_double(row.lhs) + ',' + format_double(row.rhs) + ',' +
             format_double(row.margin) + ',';
      csv += row.verdict + ',';
      csv += format_double(row.concurrence) + ',' + format_double(row.runtime_ms);
      csv += '\n';
    }
    content = std::move(csv);
  } else {
    json arr = json::array();
    for (const Row& row : rows) {
      any_failed = any_failed || row.failed;
      json rec{{"scenario", scenario_to_string(kind)},
               {"n", row.sc.n},
               {"alpha", row.sc.alpha},
               {"mu", row.sc.mu},
               {"scheme", scheme_to_string(schemes[row.scheme_index])},
               {"direction", direction_to_string(direction)},
               {"verdict", row.verdict},
               {"concurrence", row.concurrence},
               {"runtime_ms", row.runtime_ms}};
      if (std::isfinite(row.lhs)) rec["lhs"] = row.lhs;
      if (std::isfinite(row.rhs)) rec["rhs"] = row.rhs;
      if (std::isfinite(row.margin)) rec["margin"] = row.margin;
      arr.push_back(std::move(rec));
    }
    content = json{{"rows", std::move(arr)}}.dump(2) + "\n";
  }
  emit(opt.out, content);
  return any_failed ? kExitNumerical : kExitOk;
}

int cmd_threshold(const ThresholdOptions& opt) {
  const ScenarioKind kind = parse_scenario_kind(opt.scenario);
  const MeasurementScheme scheme = parse_scheme(opt.scheme);
  const Direction direction = parse_direction(opt.direction);
  ThresholdMethod method;
  if (opt.method == "auto") {
    method = ThresholdMethod::Auto;
  } else if (opt.method == "symbolic") {
    method = ThresholdMethod::Symbolic;
  } else if (opt.method == "bisection") {
    method = ThresholdMethod::Bisection;
  } else {
    throw InvalidScenario("method must be auto, symbolic or bisection");
  }
  if (opt.n.has_value() == opt.alpha.has_value()) {
    throw InvalidScenario("fix exactly one of --n (solve for alpha) or --alpha (solve for n)");
  }

  std::optional<double> value;
  const char* solve_for = opt.n ? "alpha" : "n";
  if (opt.n) {
    value = alpha_threshold(kind, *opt.n, scheme, direction, opt.mu, method);
  } else {
    value = n_threshold(kind, scheme, direction, *opt.alpha, opt.mu, method);
  }

  if (!value) {
    std::cout << "none\n";
  } else if (std::isinf(*value)) {
    std::cout << "inf\n";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", *value);
    std::cout << buf << "\n";
  }

  if (!opt.out.empty()) {
    json query{{"scenario", scenario_to_string(kind)},
               {"scheme", scheme_to_string(scheme)},
               {"direction", direction_to_string(direction)},
               {"mu", opt.mu},
               {"solve_for", solve_for},
               {"method", opt.method}};
    if (opt.n) query["n"] = *opt.n;
    if (opt.alpha) query["alpha"] = *opt.alpha;
    json record{{"query", std::move(query)}, {"version", kVersion}};
    if (value && std::isfinite(*value)) {
      record["result"] = *value;
    } else if (value) {
      record["result"] = "inf";
    } else {
      record["result"] = nullptr;
    }
    write_text_file(opt.out, record.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_classify(const ClassifyOptions& opt) {
  const Scenario sc{parse_scenario_kind(opt.scenario), opt.n, opt.alpha, opt.mu};
  const MeasurementScheme scheme = parse_scheme(opt.scheme);
  const SteeringGraph graph = pairwise_matrix(sc, scheme);
  const NetworkCase net_case = classify(graph);

  std::cout << case_id(net_case) << " " << to_string(net_case) << "\n";

  if (!opt.out.empty()) {
    json edges = json::array();
    for (const auto& [pair, verdict] : graph.edges) {
      edges.push_back(json{{"from", pair.first},
                           {"to", pair.second},
                           {"verdict", to_string(verdict)}});
    }
    json doc{{"scenario", scenario_to_string(sc.kind)},
             {"n", graph.n},
             {"alpha", sc.alpha},
             {"mu", sc.mu},
             {"scheme", scheme_to_string(scheme)},
             {"case", case_id(net_case)},
             {"label", to_string(net_case)},
             {"edges", std::move(edges)},
             {"version", kVersion}};
    write_text_file(opt.out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

namespace {

json polytope_json(const char* mode, int vertex_count, double covering) {
  return json{{"family", "icosphere"},
              {"mode", mode},
              {"resolution", vertex_count},
              {"covering_cosine", covering}};
}

json certificate_json(const SteeringVerdict& verdict) {
  switch (verdict.status) {
    case Verdict::Unsteerable:
      return model_to_json(*verdict.model);
    case Verdict::Steerable:
      return witness_to_json(*verdict.witness);
    case Verdict::Undecided:
      break;
  }
  json cert{{"type", "none"}};
  if (std::isfinite(verdict.inscribed_residual)) {
    cert["inscribed_residual"] = verdict.inscribed_residual;
  }
  if (std::isfinite(verdict.circumscribed_residual)) {
    cert["circumscribed_residual"] = verdict.circumscribed_residual;
  }
  return cert;
}

}  // namespace

int cmd_oracle(const OracleOptions& opt) {
  json input;
  TwoQubitState state{ComplexMatrix::Identity(4, 4) / 4.0};
  if (!opt.state_file.empty()) {
    state = state_from_file(opt.state_file);
    input["source"] = "state";
  } else {
    if (opt.scenario.empty()) {
      throw InvalidScenario("oracle needs --scenario parameters or --state file");
    }
    const Scenario sc{parse_scenario_kind(opt.scenario), opt.n, opt.alpha, opt.mu};
    const Direction direction = parse_direction(opt.direction);
    const XStateParams x = reduced_pair_state(sc, direction);
    state = x.to_state();
    input["source"] = "scenario";
    input["scenario"] = json{{"kind", scenario_to_string(sc.kind)},
                             {"n", sc.n},
                             {"alpha", sc.alpha},
                             {"mu", sc.mu},
                             {"direction", direction_to_string(direction)}};
  }
  input["matrix"] = matrix_to_json(state.rho);

  const MeasurementScheme scheme = parse_scheme(opt.scheme);
  input["scheme"] = scheme_to_string(scheme);

  SteeringVerdict verdict;
  if (scheme.analytic()) {
    const std::vector<Eigen::Vector3d> settings = scheme.directions();
    input["settings"] = directions_to_json(settings);
    input["target"] = "assemblage";
    const Assemblage assemblage = assemblage_from(state, settings, Party::A);

    const bool try_inscribed = opt.polytope != "circumscribed";
    const bool try_circumscribed = opt.polytope != "inscribed";
    if (!try_inscribed && !try_circumscribed) {
      throw InvalidScenario("polytope must be auto, inscribed or circumscribed");
    }
    SteeringVerdict inscribed_attempt;
    if (try_inscribed) {
      const BlochPolytope poly = icosphere(opt.resolution, PolytopeMode::Inscribed);
      inscribed_attempt = lhs_feasible(assemblage, poly);
      verdict = inscribed_attempt;
      input["polytope"] = polytope_json("inscribed", poly.size(), poly.covering_cosine);
    }
    if (verdict.status != Verdict::Unsteerable && try_circumscribed) {
      const BlochPolytope poly = icosphere(opt.resolution, PolytopeMode::Circumscribed);
      const SteeringVerdict circ = lhs_feasible(assemblage, poly);
      const double inscribed_residual = verdict.inscribed_residual;
      verdict = circ;
      verdict.inscribed_residual = inscribed_residual;
      input["polytope"] =
          polytope_json("circumscribed", poly.size(), poly.covering_cosine);
    }
  } else {
    verdict = classify_all_projective(state, scheme.resolution);
    const int net_resolution = snapped_icosphere_size(scheme.resolution);
    const int hidden_resolution = std::max(net_resolution, 162);
    const BlochPolytope net = icosphere(net_resolution, PolytopeMode::Inscribed);
    std::vector<Eigen::Vector3d> settings = antipodal_representatives(net);
    if (verdict.status == Verdict::Unsteerable) {
      for (auto& dir : settings) dir /= net.covering_cosine;
      input["target"] = "formal";
      input["polytope"] = polytope_json(
          "inscribed", hidden_resolution,
          icosphere(hidden_resolution, PolytopeMode::Inscribed).covering_cosine);
    } else {
      input["target"] = "assemblage";
      input["polytope"] = polytope_json(
          "circumscribed", hidden_resolution,
          icosphere(hidden_resolution, PolytopeMode::Circumscribed).covering_cosine);
    }
    input["settings"] = directions_to_json(settings);
    input["net"] = json{{"resolution", net_resolution},
                        {"covering_cosine", net.covering_cosine}};
  }

  std::cout << to_string(verdict.status) << "\n";

  json doc{{"input", std::move(input)},
           {"verdict", to_string(verdict.status)},
           {"certificate", certificate_json(verdict)},
           {"tolerances", tolerances_json()},
           {"version", kVersion}};
  const std::string text = doc.dump(2) + "\n";
  if (!opt.out.empty()) {
    write_text_file(opt.out, text);
  }
  return kExitOk;
}

int cmd_reduce(const ReduceOptions& opt) {
  const Scenario sc{parse_scenario_kind(opt.scenario), opt.n, opt.alpha, opt.mu};
  const Direction direction = parse_direction(opt.direction);
  const XStateParams x = reduced_pair_state(sc, direction);
  const double conc = concurrence(x);
  if (opt.format == "csv") {
    std::string csv =
        "scenario,n,alpha,mu,direction,a,b,t_x,t_y,t_z,t_perp,concurrence\n";
    csv += scenario_to_string(sc.kind);
    csv += ',';
    csv += format_double(sc.n) + ',' + format_double(sc.alpha) + ',' +
           format_double(sc.mu) + ',';
    csv += direction_to_string(direction);
    csv += ',';
    csv += format_double(x.a) + ',' + format_double(x.b) + ',' +
           format_double(x.t_x) + ',' + format_double(x.t_y) + ',' +
           format_double(x.t_z) + ',' + format_double(x.t_perp()) + ',' +
           format_double(conc) + '\n';
    emit(opt.out, csv);
  } else if (opt.format == "json") {
    json doc{{"scenario", scenario_to_string(sc.kind)},
             {"n", sc.n},
             {"alpha", sc.alpha},
             {"mu", sc.mu},
             {"direction", direction_to_string(direction)},
             {"a", x.a},
             {"b", x.b},
             {"t_x", x.t_x},
             {"t_y", x.t_y},
             {"t_z", x.t_z},
             {"t_perp", x.t_perp()},
             {"concurrence", conc},
             {"version", kVersion}};
    emit(opt.out, doc.dump(2) + "\n");
  } else {
    throw InvalidScenario("format must be csv or json");
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt) {
  std::ifstream in(opt.cert);
  if (!in) {
    std::cerr << "cannot open certificate '" << opt.cert << "'\n";
    return kExitUsage;
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    std::cerr << "certificate is not valid JSON: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const json& input = doc.at("input");
    const std::string verdict = doc.at("verdict").get<std::string>();
    if (verdict == "undecided") {
      std::cout << "verified (undecided carries no certificate)\n";
      return kExitOk;
    }
    const TwoQubitState state =
        TwoQubitState::from_matrix(matrix_from_json(input.at("matrix")));
    const std::vector<Eigen::Vector3d> settings =
        directions_from_json(input.at("settings"));
    const std::string target = input.at("target").get<std::string>();
    AssemblageCoords coords;
    if (target == "assemblage") {
      coords = coords_of(assemblage_from(state, settings, Party::A));
    } else if (target == "formal") {
      coords = formal_coords(pauli_decompose(state), settings);
    } else {
      std::cerr << "unknown target '" << target << "'\n";
      return kExitUsage;
    }
    const json& cert = doc.at("certificate");
    const std::string type = cert.at("type").get<std::string>();

    if (verdict == "unsteerable") {
      if (type != "lhs_model") {
        std::cerr << "unsteerable verdict needs an lhs_model certificate\n";
        return kExitUsage;
      }
      const LhsModel model = model_from_json(cert);
      for (const auto& entry : model.entries) {
        if (entry.weight < -1e-12) {
          std::cout << "verification failed: negative weight\n";
          return kExitNumerical;
        }
        if (entry.bloch.norm() > 1.0 + 1e-9) {
          std::cout << "verification failed: hidden state outside the Bloch ball\n";
          return kExitNumerical;
        }
        for (const double p : entry.p_plus) {
          if (p < -1e-12 || p > 1.0 + 1e-12) {
            std::cout << "verification failed: response probability outside [0,1]\n";
            return kExitNumerical;
          }
        }
      }
      const double err = model.reconstruction_error(coords);
      if (err <= tol::kReconstruction) {
        std::cout << "verified (reconstruction error " << format_double(err) << ")\n";
        return kExitOk;
      }
      std::cout << "verification failed: reconstruction error " << format_double(err)
                << "\n";
      return kExitNumerical;
    }

    if (verdict == "steerable") {
      if (type != "witness") {
        std::cerr << "steerable verdict needs a witness certificate\n";
        return kExitUsage;
      }
      const json& poly_spec = input.at("polytope");
      if (poly_spec.at("mode").get<std::string>() != "circumscribed") {
        std::cout << "verification failed: witness polytope must circumscribe the ball\n";
        return kExitNumerical;
      }
      const BlochPolytope poly = icosphere(poly_spec.at("resolution").get<int>(),
                                           PolytopeMode::Circumscribed);
      const SteeringWitness witness = witness_from_json(cert);
      const double margin = witness.verify(coords, poly.vertices);
      if (margin > 0.0) {
        std::cout << "verified (witness margin " << format_double(margin) << ")\n";
        return kExitOk;
      }
      std::cout << "verification failed: witness margin " << format_double(margin)
                << "\n";
      return kExitNumerical;
    }

    std::cerr << "unknown verdict '" << verdict << "'\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace steerkit::cli
