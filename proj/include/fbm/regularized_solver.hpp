#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fbm/trace_operator.hpp"

namespace fbm {

/// Thin SVD A = U diag(mu) V^*, singular values in descending order.
struct SingularSystem {
  Eigen::VectorXd singular_values;
  Eigen::MatrixXcd left_vectors;
  Eigen::MatrixXcd right_vectors;

  double mu_min() const { return singular_values(singular_values.size() - 1); }
  double mu_max() const { return singular_values(0); }
};

SingularSystem svd(const Eigen::MatrixXcd& matrix);
inline SingularSystem svd(const DiscreteTraceOperator& op) { return svd(op.matrix); }

/// Coefficients c_n, stored for n = -N..N at index n + N.
struct CoefficientVector {
  Eigen::VectorXcd coeffs;

  int order() const { return static_cast<int>((coeffs.size() - 1) / 2); }
  cdouble operator[](int n) const { return coeffs(n + order()); }
};

/// c = sum_j mu_j / (alpha + mu_j^2) <f, phi_j> d_j, which solves
/// (alpha I + A^* A) c = A^* f. alpha = 0 requires mu_min > 1e-13 mu_max.
CoefficientVector tikhonov_solve(const SingularSystem& system, const Eigen::VectorXcd& weighted_rhs, double alpha);
inline CoefficientVector tikhonov_solve(const SingularSystem& system, const BoundaryData& rhs, double alpha) {
  return tikhonov_solve(system, rhs.weighted, alpha);
}

enum class PlanBranch { SmallK, LargeK };
const char* to_string(PlanBranch branch);

/// Truncation order and Tikhonov parameter from the a-priori rule:
///   k <= 1: N = ceil(eta ln|ln d|),                          alpha = k^2 d tau0^(-2N)
///   k  > 1: N = ceil(11 ln k / (2 ln tau_min) + eta ln|ln d|), alpha = d / k * tau0^(-2N)
/// with d = max(delta, 1e-16).
struct RegularizationPlan {
  double delta = 0.0;
  double delta_eff = 0.0;
  double eta = 5.0;
  double tau0 = 0.0;
  double tau_min = 0.0;
  PlanBranch branch = PlanBranch::SmallK;
  int N = 0;
  double alpha = 0.0;
  bool N_capped = false;
  /// Bound exponents lambda = eta ln tau0 and sigma = 7/2 + 11 ln tau0 / (2 ln tau_min);
  /// sigma only applies to the large-k branch.
  double lambda = 0.0;
  double sigma = 0.0;
};

inline constexpr double kDeltaFloor = 1e-16;

RegularizationPlan select_parameters(double k, double delta, double eta, const DomainRadii& radii, double tau0);

/// c min(1,k) / (1 + sqrt k) (r_in / r_ex)^N.
double mu_min_bound(double k, double r_in, double r_ex, int N, double c);

struct SvdStudyRow {
  int N = 0;
  double mu_min = 0.0;
  double bound_shape = 0.0;  // mu_min_bound with c = 1
};

struct SvdStudy {
  std::vector<SvdStudyRow> rows;
  /// Least-squares slope of ln mu_min against N; NaN for fewer than two rows.
  double slope = 0.0;
  bool monotone = true;
};

/// Assembles and decomposes A_N for each N (ascending) on a fixed problem
/// template; the template's N is ignored. num_nodes <= 0 picks the default
/// quadrature size for the largest N.
SvdStudy svd_decay_study(const WaveProblem& problem, const std::vector<int>& N_list, int num_nodes = 0);

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace fbm
