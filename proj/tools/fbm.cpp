// fbm: Fourier-Bessel solver for the 2D Helmholtz impedance problem.
//
//   fbm solve --config cfg.json [--out dir]
//   fbm sweep --config cfg.json [--out dir]
//   fbm svd   --config cfg.json --N 4..24:2 [--out dir]
//   fbm plot  --config cfg.json --k 7 --delta 0.01 --seed 1 [--out dir]
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical failure.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fbm/error.hpp"
#include "fbm/experiment.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int report_error(const std::string& code, const std::string& message, int exit_code) {
  const nlohmann::json record = {{"error", code}, {"message", message}, {"exit_code", exit_code}};
  std::cerr << record.dump() << "\n";
  return exit_code;
}

void configure_threads(std::optional<int> flag) {
  if (flag) {
    omp_set_num_threads(std::max(1, *flag));
    return;
  }
  if (const char* env = std::getenv("FBM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Bessel solver for the 2D Helmholtz impedance problem"};
  app.require_subcommand(1);

  std::optional<int> threads;
  app.add_option("--threads", threads, "Thread count (overrides FBM_THREADS)");

  std::string config_path;
  std::string out_dir;
  std::string n_range;
  double plot_k = 7.0;
  double plot_delta = 0.01;
  std::uint64_t plot_seed = 1;

  auto* solve = app.add_subcommand("solve", "Solve one (k, delta, seed) case and write report.json");
  auto* sweep = app.add_subcommand("sweep", "Run every (k, delta, seed) case and write sweep.csv");
  auto* svd = app.add_subcommand("svd", "Smallest singular value against N; writes svd_study.csv");
  auto* plot = app.add_subcommand("plot", "Write Re u and Re u_N along the boundary");
  for (auto* sub : {solve, sweep, svd, plot}) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (default: config output_dir)");
  }
  svd->add_option("--N", n_range, "Orders as a..b:step, a..b or a");
  plot->add_option("--k", plot_k, "Wavenumber");
  plot->add_option("--delta", plot_delta, "Relative noise level");
  plot->add_option("--seed", plot_seed, "Noise seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }
  configure_threads(threads);

  try {
    const fbm::ExperimentConfig config = fbm::load_config(config_path);
    const std::filesystem::path out = out_dir.empty() ? config.output_dir : std::filesystem::path(out_dir);

    if (solve->parsed()) {
      const fbm::CaseResult r = fbm::run_solve(config, out);
      if (r.plan.N_capped) std::cerr << "warning: N capped at " << fbm::kMaxBesselOrder << "\n";
      std::printf("N=%d alpha=%.3e mu_min=%.3e\n", r.plan.N, r.plan.alpha, r.mu_min);
      std::printf("rel L2(D)          %.2e\n", r.report.rel_l2_interior);
      std::printf("rel H1-semi(D)     %.2e\n", r.report.rel_h1semi_interior);
      std::printf("rel L2(Gamma)      %.2e\n", r.report.rel_l2_boundary);
      std::printf("rel dnu L2(Gamma)  %.2e\n", r.report.rel_l2_normal_derivative);
      std::printf("wrote %s\n", (out / "report.json").string().c_str());
    } else if (sweep->parsed()) {
      const fbm::SweepTable table = fbm::run_sweep(config, out);
      std::cout << fbm::sweep_summary(table);
      std::printf("wrote %s\n", (out / "sweep.csv").string().c_str());
    } else if (svd->parsed()) {
      std::vector<int> N_list = config.N_list;
      if (!n_range.empty()) N_list = fbm::parse_range(n_range);
      if (N_list.empty()) N_list = fbm::parse_range("4..24:2");
      const fbm::SvdStudyResult result = fbm::run_svd_study(config, N_list, out);
      for (const auto& row : result.study.rows) std::printf("N=%3d mu_min=%.3e\n", row.N, row.mu_min);
      std::printf("slope=%s\n", N_list.size() > 1 ? fbm::format_double(result.study.slope).c_str() : "n/a");
      std::printf("wrote %s\n", (out / "svd_study.csv").string().c_str());
    } else if (plot->parsed()) {
      const fbm::TracePlot p = fbm::run_trace_plot(config, plot_k, plot_delta, plot_seed, out);
      std::printf("max |Re u - Re u_N| on boundary: %.3e\n", p.max_gap());
      std::printf("wrote %s and %s\n", (out / "trace_exact.dat").string().c_str(),
                  (out / "trace_numeric.dat").string().c_str());
    }
  } catch (const fbm::Error& e) {
    return report_error(e.code(), e.what(),
                        fbm::is_validation_error(e.kind()) ? kExitValidation : kExitNumerical);
  } catch (const std::exception& e) {
    return report_error("internal_error", e.what(), kExitNumerical);
  }
  return 0;
}
