#include "fbm/regularized_solver.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "fbm/error.hpp"

namespace fbm {

SingularSystem svd(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() < matrix.cols()) throw Error(ErrorKind::Shape, "svd expects a tall matrix");
  if (!matrix.allFinite()) throw Error(ErrorKind::Domain, "svd input contains non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Convergence, "Jacobi SVD did not converge");
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

CoefficientVector tikhonov_solve(const SingularSystem& system, const Eigen::VectorXcd& weighted_rhs, double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorKind::Domain, "alpha must be nonnegative");
  if (weighted_rhs.size() != system.left_vectors.rows())
    throw Error(ErrorKind::Shape, "right-hand side length does not match operator rows");
  const Eigen::VectorXd& mu = system.singular_values;
  if (alpha == 0.0 && !(system.mu_min() > 1e-13 * system.mu_max()))
    throw Error(ErrorKind::Rank, "unregularized solve on a numerically rank-deficient operator");

  const Eigen::VectorXcd projections = system.left_vectors.adjoint() * weighted_rhs;
  Eigen::VectorXcd filtered(mu.size());
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double denom = alpha + mu(j) * mu(j);
    filtered(j) = denom > 0.0 ? projections(j) * (mu(j) / denom) : cdouble(0.0);
  }
  return {system.right_vectors * filtered};
}

const char* to_string(PlanBranch branch) { return branch == PlanBranch::SmallK ? "small_k" : "large_k"; }

RegularizationPlan select_parameters(double k, double delta, double eta, const DomainRadii& radii, double tau0) {
  if (!(k > 0.0)) throw Error(ErrorKind::Config, "wavenumber k must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(ErrorKind::Config, "delta must lie in [0, 1)");
  if (!(eta > 1.0)) throw Error(ErrorKind::Config, "eta must exceed 1");
  if (!(tau0 > radii.tau_min))
    throw Error(ErrorKind::InvalidTau0,
                "tau0 = " + std::to_string(tau0) + " must exceed tau_min = " + std::to_string(radii.tau_min));

  RegularizationPlan plan;
  plan.delta = delta;
  plan.delta_eff = std::max(delta, kDeltaFloor);
  plan.eta = eta;
  plan.tau0 = tau0;
  plan.tau_min = radii.tau_min;
  plan.lambda = eta * std::log(tau0);

  const double log_term = eta * std::log(std::fabs(std::log(plan.delta_eff)));
  double n_real = 0.0;
  if (k <= 1.0) {
    plan.branch = PlanBranch::SmallK;
    n_real = log_term;
  } else {
    plan.branch = PlanBranch::LargeK;
    const double geometric = 11.0 * std::log(k) / (2.0 * std::log(radii.tau_min));
    n_real = geometric + log_term;
    plan.sigma = 3.5 + 11.0 * std::log(tau0) / (2.0 * std::log(radii.tau_min));
  }
  plan.N = std::max(0, static_cast<int>(std::ceil(n_real)));
  if (plan.N > kMaxBesselOrder) {
    plan.N = kMaxBesselOrder;
    plan.N_capped = true;
  }
  const double decay = std::pow(tau0, -2.0 * plan.N);
  plan.alpha = (plan.branch == PlanBranch::SmallK ? k * k : 1.0 / k) * plan.delta_eff * decay;
  return plan;
}

double mu_min_bound(double k, double r_in, double r_ex, int N, double c) {
  return c * std::min(1.0, k) / (1.0 + std::sqrt(k)) * std::pow(r_in / r_ex, N);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += xs[i], my += ys[i];
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

SvdStudy svd_decay_study(const WaveProblem& problem, const std::vector<int>& N_list, int num_nodes) {
  if (N_list.empty()) throw Error(ErrorKind::Config, "N list is empty");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1]) throw Error(ErrorKind::Config, "N list must be strictly ascending");
  if (num_nodes <= 0) num_nodes = default_quadrature_size(N_list.back());
  const QuadratureRule rule = build_quadrature(problem.curve, num_nodes);

  SvdStudy study;
  study.rows.resize(N_list.size());
  const int count = static_cast<int>(N_list.size());
  // Errors cannot escape an OpenMP region; collect and rethrow.
  std::vector<std::string> failures(count);
  std::vector<ErrorKind> kinds(count, ErrorKind::Convergence);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      WaveProblem p = problem;
      p.N = N_list[i];
      const SingularSystem s = svd(assemble_operator(p, rule));
      study.rows[i] = {p.N, s.mu_min(), mu_min_bound(p.k, p.r_in, p.r_ex, p.N, 1.0)};
    } catch (const Error& e) {
      failures[i] = e.what();
      kinds[i] = e.kind();
    }
  }
  for (int i = 0; i < count; ++i)
    if (!failures[i].empty()) throw Error(kinds[i], failures[i]);

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    xs.push_back(study.rows[i].N);
    ys.push_back(std::log(study.rows[i].mu_min));
    if (i > 0 && study.rows[i].mu_min > study.rows[i - 1].mu_min * (1.0 + 1e-12)) study.monotone = false;
  }
  study.slope = fit_slope(xs, ys);
  return study;
}

}  // namespace fbm
