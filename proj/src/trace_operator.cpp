#include "fbm/trace_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fbm/error.hpp"

namespace fbm {

WaveProblem make_wave_problem(double k, const BoundaryCurve& curve, const DomainRadii& radii, double tau0, int N) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::Config, "wavenumber k must be positive");
  if (N < 0 || N > kMaxBesselOrder)
    throw Error(ErrorKind::Config, "truncation order N must lie in [0, " + std::to_string(kMaxBesselOrder) + "]");
  if (!(tau0 > radii.tau_min))
    throw Error(ErrorKind::InvalidTau0, "tau0 = " + std::to_string(tau0) + " must exceed tau_min = " +
                                            std::to_string(radii.tau_min));
  WaveProblem p{k, curve, radii, tau0};
  p.N = N;
  p.r_in = std::min(radii.r_in_max, 1.0 / k);
  p.r_ex = tau0 * p.r_in;
  p.M = p.r_ex;
  if (p.r_ex <= radii.r_ex_min) {
    p.M = (1.0 + 1e-6) * radii.r_ex_min;
    p.M_overridden = true;
  }
  return p;
}

WaveProblem make_wave_problem(double k, const BoundaryCurve& curve, double tau0, int N) {
  return make_wave_problem(k, curve, compute_radii(curve), tau0, N);
}

int default_quadrature_size(int N) { return std::max(256, 16 * N + 64); }

namespace {

void check_shape(const WaveProblem& problem, const QuadratureRule& rule) {
  if (problem.num_coefficients() > rule.size())
    throw Error(ErrorKind::Shape, "2N+1 = " + std::to_string(problem.num_coefficients()) +
                                      " exceeds quadrature size " + std::to_string(rule.size()));
}

}  // namespace

DiscreteTraceOperator assemble_operator(const WaveProblem& problem, const QuadratureRule& rule) {
  check_shape(problem, rule);
  const int N = problem.N;
  const int rows = rule.size();
  const BasisContext ctx = problem.basis();
  const cdouble ik(0.0, problem.k);

  DiscreteTraceOperator op{Eigen::MatrixXcd(rows, 2 * N + 1), rule, N};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j) {
    const BasisRow row = basis_row(ctx, N, rule.points[j]);
    const Point2& nu = rule.normals[j];
    const double scale = rule.row_scale(j);
    for (int c = 0; c < 2 * N + 1; ++c) {
      const CVector2& g = row.gradient[c];
      op.matrix(j, c) = scale * (ik * row.value[c] + nu.x() * g.x() + nu.y() * g.y());
    }
  }
  return op;
}

DiscreteTraceOperator assemble_operator_serial(const WaveProblem& problem, const QuadratureRule& rule) {
  check_shape(problem, rule);
  const int N = problem.N;
  const BasisContext ctx = problem.basis();
  const cdouble ik(0.0, problem.k);

  DiscreteTraceOperator op{Eigen::MatrixXcd(rule.size(), 2 * N + 1), rule, N};
  for (int n = -N; n <= N; ++n) {
    for (int j = 0; j < rule.size(); ++j) {
      const Point2& x = rule.points[j];
      const CVector2 g = basis_gradient(ctx, n, x);
      const cdouble dn = rule.normals[j].x() * g.x() + rule.normals[j].y() * g.y();
      op.matrix(j, n + N) = rule.row_scale(j) * (ik * basis_value(ctx, n, x) + dn);
    }
  }
  return op;
}

BoundaryData make_boundary_data(const QuadratureRule& rule, Eigen::VectorXcd values) {
  if (values.size() != rule.size()) throw Error(ErrorKind::Shape, "boundary data size does not match rule");
  BoundaryData data{std::move(values), Eigen::VectorXcd(rule.size())};
  for (int j = 0; j < rule.size(); ++j) data.weighted(j) = rule.row_scale(j) * data.values(j);
  return data;
}

BoundaryData plane_wave_data(const WaveProblem& problem, const QuadratureRule& rule, const Point2& direction) {
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw Error(ErrorKind::Domain, "direction must be a unit vector");
  const double k = problem.k;
  Eigen::VectorXcd f(rule.size());
  for (int j = 0; j < rule.size(); ++j) {
    const double phase = k * rule.points[j].dot(direction);
    f(j) = cdouble(0.0, k) * (rule.normals[j].dot(direction) + 1.0) * std::polar(1.0, phase);
  }
  return make_boundary_data(rule, std::move(f));
}

BoundaryData add_noise(const BoundaryData& data, const QuadratureRule& rule, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::Domain, "noise level must be >= 0");
  if (delta == 0.0) return data;
  const double f_norm = data.weighted.norm();
  if (f_norm == 0.0) throw Error(ErrorKind::Degenerate, "cannot scale noise relative to zero data");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd e(rule.size());
  for (int j = 0; j < rule.size(); ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    e(j) = cdouble(re, im);
  }
  Eigen::VectorXcd e_weighted(rule.size());
  for (int j = 0; j < rule.size(); ++j) e_weighted(j) = rule.row_scale(j) * e(j);
  e *= delta * f_norm / e_weighted.norm();
  return make_boundary_data(rule, data.values + e);
}

}  // namespace fbm
