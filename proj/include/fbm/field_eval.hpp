#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fbm/regularized_solver.hpp"

namespace fbm {

/// u_N(x) = sum_n c_n phi_n(x).
cdouble evaluate_field(const WaveProblem& problem, const CoefficientVector& c, const Point2& point);
CVector2 evaluate_gradient(const WaveProblem& problem, const CoefficientVector& c, const Point2& point);

struct FieldSample {
  cdouble value;
  CVector2 gradient;
};
/// Value and gradient from a single basis row.
FieldSample evaluate_field_and_gradient(const WaveProblem& problem, const CoefficientVector& c, const Point2& point);

/// Reference solution with value and gradient anywhere in the plane.
struct ExactSolution {
  std::function<cdouble(const Point2&)> value;
  std::function<CVector2(const Point2&)> gradient;
};

/// u(x) = exp(i k x . d)
ExactSolution plane_wave(double k, const Point2& direction);

/// Cell midpoints of a uniform grid over [-r_ex_min, r_ex_min]^2 that lie
/// inside the curve and at least one cell diagonal away from it.
struct InteriorGrid {
  std::vector<Point2> points;
  double cell_area = 0.0;
  int resolution = 0;
  int excluded_near_boundary = 0;

  double exclusion_fraction() const {
    const double total = static_cast<double>(points.size()) + excluded_near_boundary;
    return total > 0.0 ? excluded_near_boundary / total : 0.0;
  }
};

InteriorGrid build_interior_grid(const BoundaryCurve& curve, const DomainRadii& radii, int resolution);

struct ErrorReport {
  double rel_l2_interior = 0.0;
  double rel_h1semi_interior = 0.0;
  double rel_l2_boundary = 0.0;
  double rel_l2_normal_derivative = 0.0;
};

/// Relative L2(D), H1-seminorm(D), L2(Gamma) and normal-derivative L2(Gamma)
/// errors. Grid points are evaluated in parallel and reduced by pairwise
/// summation in index order, so the result does not depend on thread count.
ErrorReport error_report(const WaveProblem& problem, const CoefficientVector& c, const ExactSolution& exact,
                         const InteriorGrid& grid, const QuadratureRule& rule);

/// Serial reference with plain left-to-right accumulation.
ErrorReport error_report_serial(const WaveProblem& problem, const CoefficientVector& c, const ExactSolution& exact,
                                const InteriorGrid& grid, const QuadratureRule& rule);

double pairwise_sum(std::span<const double> values);

}  // namespace fbm
