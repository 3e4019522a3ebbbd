#include "fbm/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "fbm/error.hpp"

namespace fbm {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

std::vector<double> number_or_list(const json& v, const char* key) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) config_error(std::string("'") + key + "' entries must be numbers");
      out.push_back(x.get<double>());
    }
  } else {
    config_error(std::string("'") + key + "' must be a number or a list of numbers");
  }
  if (out.empty()) config_error(std::string("'") + key + "' must not be empty");
  return out;
}

std::vector<double> coefficient_list(const json& obj, const char* key) {
  if (!obj.contains(key)) return {0.0};
  std::vector<double> out;
  for (const auto& x : obj.at(key)) {
    if (!x.is_number()) config_error(std::string("curve coefficient list '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

BoundaryCurve parse_curve(const json& v) {
  if (v.is_string()) return BoundaryCurve::from_name(v.get<std::string>());
  if (v.is_object())
    return BoundaryCurve(coefficient_list(v, "x1_cos"), coefficient_list(v, "x1_sin"), coefficient_list(v, "x2_cos"),
                         coefficient_list(v, "x2_sin"), v.value("name", std::string("fourier")));
  config_error("'curve' must be a name or an object of Fourier coefficients");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
  out << text;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<int> parse_range(const std::string& spec) {
  auto to_int = [&](const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) config_error("bad integer range '" + spec + "'");
    return v;
  };
  const auto dots = spec.find("..");
  if (dots == std::string::npos) return {to_int(spec)};
  const std::string rest = spec.substr(dots + 2);
  const auto colon = rest.find(':');
  const int lo = to_int(spec.substr(0, dots));
  const int hi = to_int(rest.substr(0, colon));
  const int step = colon == std::string::npos ? 1 : to_int(rest.substr(colon + 1));
  if (step <= 0 || hi < lo) config_error("range '" + spec + "' must be ascending with a positive step");
  std::vector<int> out;
  for (int n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) config_error("configuration must be a JSON object");
  ExperimentConfig cfg;
  if (doc.contains("curve")) cfg.curve = parse_curve(doc.at("curve"));
  if (doc.contains("k")) cfg.k_values = number_or_list(doc.at("k"), "k");
  if (doc.contains("delta")) cfg.delta_values = number_or_list(doc.at("delta"), "delta");
  if (doc.contains("eta")) cfg.eta = doc.at("eta").get<double>();
  if (doc.contains("tau0")) {
    const json& t = doc.at("tau0");
    if (t.is_string()) {
      if (t.get<std::string>() != "auto") config_error("'tau0' must be a number or \"auto\"");
    } else {
      cfg.tau0 = t.get<double>();
    }
  }
  if (doc.contains("seeds")) {
    cfg.seeds.clear();
    for (const auto& s : doc.at("seeds")) {
      if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
        config_error("'seeds' must be nonnegative integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  if (doc.contains("M_q")) {
    const json& m = doc.at("M_q");
    if (m.is_string()) {
      if (m.get<std::string>() != "auto") config_error("'M_q' must be an integer or \"auto\"");
    } else {
      if (!m.is_number_integer()) config_error("'M_q' must be an integer or \"auto\"");
      cfg.num_nodes = m.get<int>();
    }
  }
  if (doc.contains("grid_resolution")) cfg.grid_resolution = doc.at("grid_resolution").get<int>();
  if (doc.contains("direction")) {
    const auto d = doc.at("direction").get<std::vector<double>>();
    if (d.size() != 2) config_error("'direction' must have two components");
    cfg.direction = Point2(d[0], d[1]);
  }
  if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
  if (doc.contains("N")) cfg.N_override = doc.at("N").get<int>();
  if (doc.contains("alpha")) cfg.alpha_override = doc.at("alpha").get<double>();
  if (doc.contains("radii")) {
    const json& r = doc.at("radii");
    DomainRadii radii;
    radii.r_in_max = r.at("r_in_max").get<double>();
    radii.r_ex_min = r.at("r_ex_min").get<double>();
    if (!(radii.r_in_max > 0.0 && radii.r_ex_min >= radii.r_in_max))
      config_error("'radii' needs 0 < r_in_max <= r_ex_min");
    radii.tau_min = radii.r_ex_min / radii.r_in_max;
    cfg.radii_override = radii;
  }
  if (doc.contains("N_list")) cfg.N_list = doc.at("N_list").get<std::vector<int>>();

  for (double k : cfg.k_values)
    if (!(k > 0.0) || !std::isfinite(k)) config_error("every k must be positive");
  for (double d : cfg.delta_values)
    if (!(d >= 0.0 && d < 1.0)) config_error("every delta must lie in [0, 1)");
  if (!(cfg.eta > 1.0)) config_error("eta must exceed 1");
  if (cfg.seeds.empty()) config_error("seed list must not be empty");
  if (cfg.num_nodes && (*cfg.num_nodes < 8 || *cfg.num_nodes % 2 != 0)) config_error("M_q must be even and >= 8");
  if (cfg.grid_resolution < 32) config_error("grid_resolution must be at least 32");
  if (std::abs(cfg.direction.norm() - 1.0) > 1e-12) config_error("direction must be a unit vector");
  if (cfg.N_override && (*cfg.N_override < 0 || *cfg.N_override > kMaxBesselOrder))
    config_error("N override out of range");
  if (cfg.alpha_override && !(*cfg.alpha_override >= 0.0)) config_error("alpha override must be >= 0");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const json::exception& e) {
    config_error(std::string("config has a wrongly typed field: ") + e.what());
  }
}

double auto_tau0(const BoundaryCurve& curve, const DomainRadii& radii) {
  if (curve.name() == "kite" && 2.2 > radii.tau_min) return 2.2;
  return std::ceil(1.02 * radii.tau_min * 100.0) / 100.0;
}

ExperimentSetup prepare(const ExperimentConfig& config) {
  const DomainRadii computed = compute_radii(config.curve);
  ExperimentSetup setup;
  setup.config = config;
  setup.radii = config.radii_override ? *config.radii_override : computed;
  setup.radii_from_config = config.radii_override.has_value();
  setup.tau0 = config.tau0 ? *config.tau0 : auto_tau0(config.curve, setup.radii);
  if (!(setup.tau0 > setup.radii.tau_min))
    throw Error(ErrorKind::InvalidTau0, "tau0 = " + format_double(setup.tau0) +
                                            " must exceed tau_min = " + format_double(setup.radii.tau_min));
  // The grid box always comes from the true curve extent.
  setup.grid = build_interior_grid(config.curve, computed, config.grid_resolution);
  return setup;
}

SolverCase build_case(const ExperimentSetup& setup, double k, double delta) {
  const ExperimentConfig& cfg = setup.config;
  RegularizationPlan plan = select_parameters(k, delta, cfg.eta, setup.radii, setup.tau0);
  if (cfg.N_override) plan.N = *cfg.N_override;
  if (cfg.alpha_override) plan.alpha = *cfg.alpha_override;
  WaveProblem problem = make_wave_problem(k, cfg.curve, setup.radii, setup.tau0, plan.N);
  const int nodes = cfg.num_nodes ? *cfg.num_nodes : default_quadrature_size(plan.N);
  QuadratureRule rule = build_quadrature(cfg.curve, nodes);
  SingularSystem system = svd(assemble_operator(problem, rule));
  BoundaryData exact = plane_wave_data(problem, rule, cfg.direction);
  return {plan, std::move(problem), std::move(rule), std::move(system), std::move(exact)};
}

CaseResult solve_with_seed(const ExperimentSetup& setup, const SolverCase& sc, std::uint64_t seed) {
  CaseResult r;
  r.k = sc.problem.k;
  r.delta = sc.plan.delta;
  r.seed = seed;
  r.plan = sc.plan;
  r.M = sc.problem.M;
  r.r_in = sc.problem.r_in;
  r.r_ex = sc.problem.r_ex;
  r.M_overridden = sc.problem.M_overridden;
  r.num_nodes = sc.rule.size();
  r.mu_min = sc.system.mu_min();
  r.mu_max = sc.system.mu_max();
  const BoundaryData noisy = add_noise(sc.exact_data, sc.rule, sc.plan.delta, seed);
  r.coefficients = tikhonov_solve(sc.system, noisy, sc.plan.alpha);
  r.report = error_report(sc.problem, r.coefficients, plane_wave(r.k, setup.config.direction), setup.grid, sc.rule);
  return r;
}

CaseResult solve_case(const ExperimentSetup& setup, double k, double delta, std::uint64_t seed) {
  return solve_with_seed(setup, build_case(setup, k, delta), seed);
}

json case_to_json(const ExperimentSetup& setup, const CaseResult& r) {
  const ExperimentConfig& cfg = setup.config;
  json meta = {
      {"curve", cfg.curve.name()},
      {"k", r.k},
      {"delta", r.delta},
      {"delta_eff", r.plan.delta_eff},
      {"eta", r.plan.eta},
      {"tau0", r.plan.tau0},
      {"tau_min", r.plan.tau_min},
      {"r_in_max", setup.radii.r_in_max},
      {"r_ex_min", setup.radii.r_ex_min},
      {"radii_source", setup.radii_from_config ? "config" : "computed"},
      {"r_in", r.r_in},
      {"r_ex", r.r_ex},
      {"M", r.M},
      {"M_override", r.M_overridden},
      {"branch", to_string(r.plan.branch)},
      {"N", r.plan.N},
      {"N_capped", r.plan.N_capped},
      {"alpha", r.plan.alpha},
      {"lambda", r.plan.lambda},
      {"sigma", r.plan.branch == PlanBranch::LargeK ? json(r.plan.sigma) : json(nullptr)},
      {"M_q", r.num_nodes},
      {"grid_resolution", cfg.grid_resolution},
      {"grid_points", setup.grid.points.size()},
      {"grid_excluded_fraction", setup.grid.exclusion_fraction()},
      {"seed", r.seed},
      {"direction", {cfg.direction.x(), cfg.direction.y()}},
      {"column_order", "n=-N..N"},
      {"noise_model", "complex_gaussian_exact_norm"},
      {"N_overridden", cfg.N_override.has_value()},
      {"alpha_overridden", cfg.alpha_override.has_value()},
  };
  json out = {{"status", r.status}, {"metadata", meta}};
  if (r.ok()) {
    out["mu_min"] = r.mu_min;
    out["mu_max"] = r.mu_max;
    out["errors"] = {{"rel_l2_interior", r.report.rel_l2_interior},
                     {"rel_h1semi_interior", r.report.rel_h1semi_interior},
                     {"rel_l2_boundary", r.report.rel_l2_boundary},
                     {"rel_l2_normal_derivative", r.report.rel_l2_normal_derivative}};
  } else {
    out["message"] = r.message;
  }
  return out;
}

CaseResult run_solve(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const ExperimentSetup setup = prepare(config);
  CaseResult r = solve_case(setup, config.k_values.front(), config.delta_values.front(), config.seeds.front());
  write_text(out_dir / "report.json", case_to_json(setup, r).dump(2) + "\n");

  std::ostringstream coeffs;
  coeffs << "# k=" << format_double(r.k) << " delta=" << format_double(r.delta) << " eta=" << format_double(r.plan.eta)
         << " tau0=" << format_double(r.plan.tau0) << " N=" << r.plan.N << " alpha=" << format_double(r.plan.alpha)
         << " M_q=" << r.num_nodes << " grid_resolution=" << config.grid_resolution << " seed=" << r.seed
         << " M_override=" << bool_str(r.M_overridden) << " M=" << format_double(r.M) << "\n";
  coeffs << "n,re,im\n";
  for (int n = -r.plan.N; n <= r.plan.N; ++n)
    coeffs << n << "," << format_double(r.coefficients[n].real()) << "," << format_double(r.coefficients[n].imag())
           << "\n";
  write_text(out_dir / "coefficients.csv", coeffs.str());
  return r;
}

SweepTable sweep(const ExperimentSetup& setup) {
  const ExperimentConfig& cfg = setup.config;
  SweepTable table;
  for (double k : cfg.k_values) {
    for (double delta : cfg.delta_values) {
      std::optional<SolverCase> sc;
      std::string group_error, group_message;
      try {
        sc.emplace(build_case(setup, k, delta));
      } catch (const Error& e) {
        group_error = e.code();
        group_message = e.what();
      }
      std::vector<CaseResult> group;
      for (std::uint64_t seed : cfg.seeds) {
        CaseResult r;
        if (sc) {
          try {
            r = solve_with_seed(setup, *sc, seed);
          } catch (const Error& e) {
            r.status = e.code();
            r.message = e.what();
          }
        } else {
          r.status = group_error;
          r.message = group_message;
        }
        r.k = k;
        r.delta = delta;
        r.seed = seed;
        if (sc && !r.ok()) {
          r.plan = sc->plan;
          r.num_nodes = sc->rule.size();
        }
        group.push_back(r);
        table.rows.push_back(r);
      }

      CaseResult m;
      m.k = k;
      m.delta = delta;
      std::vector<double> l2, h1, bd, dn;
      for (const CaseResult& r : group) {
        if (!r.ok()) continue;
        l2.push_back(r.report.rel_l2_interior);
        h1.push_back(r.report.rel_h1semi_interior);
        bd.push_back(r.report.rel_l2_boundary);
        dn.push_back(r.report.rel_l2_normal_derivative);
        m.plan = r.plan;
        m.M = r.M;
        m.M_overridden = r.M_overridden;
        m.num_nodes = r.num_nodes;
        m.mu_min = r.mu_min;
        m.mu_max = r.mu_max;
      }
      if (l2.empty()) {
        m.status = group.front().status;
        m.message = "every seed failed";
      } else {
        m.report = {median(l2), median(h1), median(bd), median(dn)};
      }
      table.medians.push_back(m);
    }
  }
  return table;
}

std::string sweep_csv(const ExperimentSetup& setup, const SweepTable& table) {
  const ExperimentConfig& cfg = setup.config;
  std::ostringstream out;
  out << "# curve=" << cfg.curve.name() << " eta=" << format_double(cfg.eta) << " tau0=" << format_double(setup.tau0)
      << " tau_min=" << format_double(setup.radii.tau_min) << " grid_resolution=" << cfg.grid_resolution
      << " direction=" << format_double(cfg.direction.x()) << ";" << format_double(cfg.direction.y())
      << " noise_model=complex_gaussian_exact_norm column_order=n=-N..N\n";
  out << "kind,k,delta,seed,eta,tau0,N,alpha,M,M_override,M_q,grid_resolution,mu_min,"
         "rel_l2_interior,rel_h1semi_interior,rel_l2_boundary,rel_l2_normal_derivative,status\n";
  auto row = [&](const CaseResult& r, const std::string& kind, const std::string& seed) {
    out << kind << "," << format_double(r.k) << "," << format_double(r.delta) << "," << seed << ","
        << format_double(cfg.eta) << "," << format_double(setup.tau0) << ",";
    if (r.ok()) {
      out << r.plan.N << "," << format_double(r.plan.alpha) << "," << format_double(r.M) << ","
          << bool_str(r.M_overridden) << "," << r.num_nodes << "," << cfg.grid_resolution << ","
          << format_double(r.mu_min) << "," << format_double(r.report.rel_l2_interior) << ","
          << format_double(r.report.rel_h1semi_interior) << "," << format_double(r.report.rel_l2_boundary) << ","
          << format_double(r.report.rel_l2_normal_derivative) << ",ok\n";
    } else {
      out << ",,,,,," << cfg.grid_resolution << ",,,,,,error:" << r.status << "\n";
    }
  };
  for (const CaseResult& r : table.rows) row(r, "case", std::to_string(r.seed));
  for (const CaseResult& r : table.medians) row(r, "median", "median");
  return out.str();
}

std::string sweep_summary(const SweepTable& table) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%8s %8s %4s %10s %10s %10s %10s %10s\n", "k", "delta", "N", "alpha", "L2(D)",
                "H1semi(D)", "L2(G)", "dnu L2(G)");
  out << line;
  for (const CaseResult& m : table.medians) {
    if (!m.ok()) {
      std::snprintf(line, sizeof line, "%8.3g %8.1e  failed: %s\n", m.k, m.delta, m.status.c_str());
    } else {
      std::snprintf(line, sizeof line, "%8.3g %8.1e %4d %10.1e %10.1e %10.1e %10.1e %10.1e\n", m.k, m.delta, m.plan.N,
                    m.plan.alpha, m.report.rel_l2_interior, m.report.rel_h1semi_interior, m.report.rel_l2_boundary,
                    m.report.rel_l2_normal_derivative);
    }
    out << line;
  }
  return out.str();
}

SweepTable run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const ExperimentSetup setup = prepare(config);
  SweepTable table = sweep(setup);
  write_text(out_dir / "sweep.csv", sweep_csv(setup, table));
  return table;
}

SvdStudyResult svd_study(const ExperimentSetup& setup, const std::vector<int>& N_list) {
  const ExperimentConfig& cfg = setup.config;
  if (N_list.empty()) config_error("N list must not be empty");
  WaveProblem problem = make_wave_problem(cfg.k_values.front(), cfg.curve, setup.radii, setup.tau0, N_list.front());
  const int nodes = cfg.num_nodes ? *cfg.num_nodes : default_quadrature_size(N_list.back());
  SvdStudy study = svd_decay_study(problem, N_list, nodes);
  return {std::move(problem), std::move(study), nodes};
}

std::string svd_csv(const ExperimentSetup& setup, const SvdStudyResult& result) {
  const ExperimentConfig& cfg = setup.config;
  const WaveProblem& p = result.problem;
  std::ostringstream out;
  out << "# curve=" << cfg.curve.name() << " k=" << format_double(p.k) << " delta=n/a eta=" << format_double(cfg.eta)
      << " tau0=" << format_double(p.tau0) << " N=per-row alpha=n/a M_q=" << result.num_nodes
      << " grid_resolution=n/a seed=n/a M_override=" << bool_str(p.M_overridden) << " M=" << format_double(p.M)
      << " r_in=" << format_double(p.r_in) << " r_ex=" << format_double(p.r_ex) << "\n";
  out << "N,mu_min,bound_shape\n";
  for (const SvdStudyRow& row : result.study.rows)
    out << row.N << "," << format_double(row.mu_min) << "," << format_double(row.bound_shape) << "\n";
  out << "# slope=" << (std::isnan(result.study.slope) ? std::string("n/a") : format_double(result.study.slope))
      << " monotone=" << bool_str(result.study.monotone) << "\n";
  return out.str();
}

SvdStudyResult run_svd_study(const ExperimentConfig& config, const std::vector<int>& N_list,
                             const std::filesystem::path& out_dir) {
  ExperimentConfig cfg = config;
  cfg.grid_resolution = std::max(cfg.grid_resolution, 32);
  const ExperimentSetup setup = prepare(cfg);
  SvdStudyResult result = svd_study(setup, N_list);
  write_text(out_dir / "svd_study.csv", svd_csv(setup, result));
  return result;
}

double TracePlot::max_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) gap = std::max(gap, std::abs(exact_real[i] - numeric_real[i]));
  return gap;
}

TracePlot trace_plot(const ExperimentSetup& setup, double k, double delta, std::uint64_t seed) {
  const SolverCase sc = build_case(setup, k, delta);
  TracePlot plot;
  plot.result = solve_with_seed(setup, sc, seed);
  const ExactSolution exact = plane_wave(k, setup.config.direction);
  for (int i = 0; i < kTracePlotSamples; ++i) {
    const double t = 2.0 * std::numbers::pi * i / kTracePlotSamples;
    const Point2 x = curve_point(setup.config.curve, t);
    plot.t.push_back(t);
    plot.exact_real.push_back(exact.value(x).real());
    plot.numeric_real.push_back(evaluate_field(sc.problem, plot.result.coefficients, x).real());
  }
  return plot;
}

TracePlot run_trace_plot(const ExperimentConfig& config, double k, double delta, std::uint64_t seed,
                         const std::filesystem::path& out_dir) {
  const ExperimentSetup setup = prepare(config);
  TracePlot plot = trace_plot(setup, k, delta, seed);
  const CaseResult& r = plot.result;
  std::ostringstream header;
  header << "# k=" << format_double(k) << " delta=" << format_double(delta) << " eta=" << format_double(r.plan.eta)
         << " tau0=" << format_double(r.plan.tau0) << " N=" << r.plan.N << " alpha=" << format_double(r.plan.alpha)
         << " M_q=" << r.num_nodes << " grid_resolution=" << config.grid_resolution << " seed=" << seed
         << " M_override=" << bool_str(r.M_overridden) << "\n";
  auto dump = [&](const std::vector<double>& values, const char* label) {
    std::ostringstream out;
    out << header.str() << "# t " << label << "\n";
    for (std::size_t i = 0; i < plot.t.size(); ++i) out << format_double(plot.t[i]) << " " << format_double(values[i]) << "\n";
    return out.str();
  };
  write_text(out_dir / "trace_exact.dat", dump(plot.exact_real, "Re(u)"));
  write_text(out_dir / "trace_numeric.dat", dump(plot.numeric_real, "Re(u_N)"));
  return plot;
}

}  // namespace fbm
