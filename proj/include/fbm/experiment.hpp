#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbm/field_eval.hpp"

namespace fbm {

/// Parsed and validated experiment configuration. JSON schema: see README.
struct ExperimentConfig {
  BoundaryCurve curve = BoundaryCurve::kite();
  std::vector<double> k_values{1.0};
  std::vector<double> delta_values{0.0};
  double eta = 5.0;
  std::optional<double> tau0;  // empty means "auto"
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::optional<int> num_nodes;  // empty means "auto"
  int grid_resolution = 200;
  Point2 direction{0.5, 0.8660254037844386};
  std::filesystem::path output_dir = "fbm_out";
  std::optional<int> N_override;
  std::optional<double> alpha_override;
  std::vector<int> N_list;
  /// Replaces the computed extremal radii, e.g. to reproduce published parameter choices.
  std::optional<DomainRadii> radii_override;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// 1.02 tau_min rounded up to two decimals; 2.2 for the kite when that exceeds tau_min.
double auto_tau0(const BoundaryCurve& curve, const DomainRadii& radii);

/// Geometry shared by every case of one configuration.
struct ExperimentSetup {
  ExperimentConfig config;
  DomainRadii radii;
  double tau0 = 0.0;
  InteriorGrid grid;
  bool radii_from_config = false;
};

ExperimentSetup prepare(const ExperimentConfig& config);

/// One (k, delta, seed) case.
struct CaseResult {
  double k = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  RegularizationPlan plan;
  double M = 0.0;
  double r_in = 0.0;
  double r_ex = 0.0;
  bool M_overridden = false;
  int num_nodes = 0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  ErrorReport report;
  CoefficientVector coefficients;
  std::string status = "ok";  // or the error code of a failed case
  std::string message;

  bool ok() const { return status == "ok"; }
};

/// Plan, problem and factorized operator for one (k, delta); reused across seeds.
struct SolverCase {
  RegularizationPlan plan;
  WaveProblem problem;
  QuadratureRule rule;
  SingularSystem system;
  BoundaryData exact_data;
};

SolverCase build_case(const ExperimentSetup& setup, double k, double delta);
CaseResult solve_with_seed(const ExperimentSetup& setup, const SolverCase& sc, std::uint64_t seed);

/// Throws on failure.
CaseResult solve_case(const ExperimentSetup& setup, double k, double delta, std::uint64_t seed);

nlohmann::json case_to_json(const ExperimentSetup& setup, const CaseResult& result);

/// Single case with the first k, delta and seed; writes report.json and coefficients.csv.
CaseResult run_solve(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct SweepTable {
  std::vector<CaseResult> rows;
  std::vector<CaseResult> medians;  // one per (k, delta); seed unused
};

/// Every (k, delta, seed); failed cases are recorded and the sweep continues.
SweepTable sweep(const ExperimentSetup& setup);
std::string sweep_csv(const ExperimentSetup& setup, const SweepTable& table);
std::string sweep_summary(const SweepTable& table);
SweepTable run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// First k of the config, tau0 as configured; CSV with N, mu_min, bound_shape and a slope footer.
struct SvdStudyResult {
  WaveProblem problem;
  SvdStudy study;
  int num_nodes = 0;
};
SvdStudyResult svd_study(const ExperimentSetup& setup, const std::vector<int>& N_list);
std::string svd_csv(const ExperimentSetup& setup, const SvdStudyResult& result);
SvdStudyResult run_svd_study(const ExperimentConfig& config, const std::vector<int>& N_list,
                             const std::filesystem::path& out_dir);

/// Re u and Re u_N along the curve at 512 uniform parameter values.
struct TracePlot {
  std::vector<double> t;
  std::vector<double> exact_real;
  std::vector<double> numeric_real;
  CaseResult result;

  double max_gap() const;
};
inline constexpr int kTracePlotSamples = 512;
TracePlot trace_plot(const ExperimentSetup& setup, double k, double delta, std::uint64_t seed);
TracePlot run_trace_plot(const ExperimentConfig& config, double k, double delta, std::uint64_t seed,
                         const std::filesystem::path& out_dir);

/// "a..b:s", "a..b" or "a".
std::vector<int> parse_range(const std::string& spec);

/// Shortest round-trip decimal.
std::string format_double(double v);

}  // namespace fbm
