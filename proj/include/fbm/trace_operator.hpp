#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "fbm/geometry.hpp"

namespace fbm {

/// Impedance problem on a curve with the basis radii derived from tau0:
/// r_in = min(r_in_max, 1/k), r_ex = tau0 * r_in, M = r_ex.
/// When r_ex does not enclose the domain, M is raised to (1 + 1e-6) r_ex_min
/// and M_overridden is set; tau0 itself is left unchanged.
struct WaveProblem {
  double k = 1.0;
  BoundaryCurve curve;
  DomainRadii radii;
  double tau0 = 0.0;
  double r_in = 0.0;
  double r_ex = 0.0;
  double M = 0.0;
  bool M_overridden = false;
  int N = 0;

  BasisContext basis() const { return {k, M}; }
  int num_coefficients() const { return 2 * N + 1; }
};

WaveProblem make_wave_problem(double k, const BoundaryCurve& curve, const DomainRadii& radii, double tau0, int N);
WaveProblem make_wave_problem(double k, const BoundaryCurve& curve, double tau0, int N);

/// Default node count max(256, 16 N + 64).
int default_quadrature_size(int N);

/// Row j, column n + N holds sqrt(w_j |x'(t_j)|) (i k phi_n + nu . grad phi_n)(x_j).
struct DiscreteTraceOperator {
  Eigen::MatrixXcd matrix;
  QuadratureRule rule;
  int N = 0;
};

/// OpenMP kernel: rows are independent and each shares one Bessel sequence.
DiscreteTraceOperator assemble_operator(const WaveProblem& problem, const QuadratureRule& rule);

/// Serial reference assembly, entry by entry through basis_value/basis_gradient.
DiscreteTraceOperator assemble_operator_serial(const WaveProblem& problem, const QuadratureRule& rule);

/// Impedance data f at the quadrature nodes and its sqrt(w |x'|)-scaled copy.
struct BoundaryData {
  Eigen::VectorXcd values;
  Eigen::VectorXcd weighted;
};

BoundaryData make_boundary_data(const QuadratureRule& rule, Eigen::VectorXcd values);

/// f = i k (nu . d + 1) exp(i k x . d), the impedance trace of exp(i k x . d).
BoundaryData plane_wave_data(const WaveProblem& problem, const QuadratureRule& rule, const Point2& direction);

/// f + e, with e drawn from i.i.d. standard complex normals (seeded mt19937_64)
/// and rescaled so that ||e||_{L2(Gamma)} = delta ||f||_{L2(Gamma)} exactly.
BoundaryData add_noise(const BoundaryData& data, const QuadratureRule& rule, double delta, std::uint64_t seed);

}  // namespace fbm
