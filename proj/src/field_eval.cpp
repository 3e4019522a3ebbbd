#include "fbm/field_eval.hpp"

#include <cmath>
#include <numbers>

#include "fbm/error.hpp"

namespace fbm {

namespace {

void check_order(const WaveProblem& problem, const CoefficientVector& c) {
  if (c.coeffs.size() != problem.num_coefficients())
    throw Error(ErrorKind::Shape, "coefficient count does not match 2N+1");
}

double relative(double err2, double ref2) {
  if (!(std::sqrt(ref2) >= 1e-14)) throw Error(ErrorKind::Degenerate, "reference norm vanishes");
  return std::sqrt(err2 / ref2);
}

// Squared pointwise contributions for the four error norms.
struct Contributions {
  double interior_err = 0.0, interior_ref = 0.0;
  double grad_err = 0.0, grad_ref = 0.0;
};

Contributions interior_term(const WaveProblem& problem, const CoefficientVector& c, const ExactSolution& exact,
                            const Point2& x) {
  const FieldSample s = evaluate_field_and_gradient(problem, c, x);
  const cdouble u = exact.value(x);
  const CVector2 g = exact.gradient(x);
  return {std::norm(s.value - u), std::norm(u), (s.gradient - g).squaredNorm(), g.squaredNorm()};
}

Contributions boundary_term(const WaveProblem& problem, const CoefficientVector& c, const ExactSolution& exact,
                            const QuadratureRule& rule, int j) {
  const Point2& x = rule.points[j];
  const Point2& nu = rule.normals[j];
  const double w = rule.weights[j] * rule.speeds[j];
  const FieldSample s = evaluate_field_and_gradient(problem, c, x);
  const cdouble u = exact.value(x);
  const CVector2 g = exact.gradient(x);
  const cdouble dn_num = nu.x() * s.gradient.x() + nu.y() * s.gradient.y();
  const cdouble dn_ref = nu.x() * g.x() + nu.y() * g.y();
  return {w * std::norm(s.value - u), w * std::norm(u), w * std::norm(dn_num - dn_ref), w * std::norm(dn_ref)};
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

FieldSample evaluate_field_and_gradient(const WaveProblem& problem, const CoefficientVector& c, const Point2& point) {
  check_order(problem, c);
  const BasisRow row = basis_row(problem.basis(), problem.N, point);
  FieldSample s{0.0, CVector2::Zero()};
  for (Eigen::Index i = 0; i < c.coeffs.size(); ++i) {
    s.value += c.coeffs(i) * row.value[i];
    s.gradient += c.coeffs(i) * row.gradient[i];
  }
  return s;
}

cdouble evaluate_field(const WaveProblem& problem, const CoefficientVector& c, const Point2& point) {
  return evaluate_field_and_gradient(problem, c, point).value;
}

CVector2 evaluate_gradient(const WaveProblem& problem, const CoefficientVector& c, const Point2& point) {
  return evaluate_field_and_gradient(problem, c, point).gradient;
}

ExactSolution plane_wave(double k, const Point2& direction) {
  return {[k, direction](const Point2& x) { return std::polar(1.0, k * x.dot(direction)); },
          [k, direction](const Point2& x) {
            const cdouble u = std::polar(1.0, k * x.dot(direction));
            const cdouble iku = cdouble(0.0, k) * u;
            return CVector2(iku * direction.x(), iku * direction.y());
          }};
}

InteriorGrid build_interior_grid(const BoundaryCurve& curve, const DomainRadii& radii, int resolution) {
  if (resolution < 2) throw Error(ErrorKind::Size, "grid resolution must be at least 2");
  const double half = radii.r_ex_min;
  const double h = 2.0 * half / resolution;
  const double diagonal = h * std::numbers::sqrt2;
  const int total = resolution * resolution;

  // 0 = outside, 1 = kept, 2 = inside but within one cell diagonal of the curve.
  std::vector<unsigned char> status(total, 0);
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < total; ++idx) {
    const int i = idx % resolution;
    const int j = idx / resolution;
    const Point2 p(-half + (i + 0.5) * h, -half + (j + 0.5) * h);
    const PointLocation loc = locate(curve, p);
    if (loc.inside) status[idx] = loc.distance < diagonal ? 2 : 1;
  }

  InteriorGrid grid;
  grid.resolution = resolution;
  grid.cell_area = h * h;
  for (int idx = 0; idx < total; ++idx) {
    if (status[idx] == 1) {
      const int i = idx % resolution;
      const int j = idx / resolution;
      grid.points.emplace_back(-half + (i + 0.5) * h, -half + (j + 0.5) * h);
    } else if (status[idx] == 2) {
      ++grid.excluded_near_boundary;
    }
  }
  if (grid.points.empty()) throw Error(ErrorKind::Degenerate, "interior grid is empty");
  return grid;
}

ErrorReport error_report(const WaveProblem& problem, const CoefficientVector& c, const ExactSolution& exact,
                         const InteriorGrid& grid, const QuadratureRule& rule) {
  check_order(problem, c);
  const int n_in = static_cast<int>(grid.points.size());
  std::vector<double> ie(n_in), ir(n_in), ge(n_in), gr(n_in);
#pragma omp parallel for schedule(static)
  for (int p = 0; p < n_in; ++p) {
    const Contributions t = interior_term(problem, c, exact, grid.points[p]);
    ie[p] = t.interior_err;
    ir[p] = t.interior_ref;
    ge[p] = t.grad_err;
    gr[p] = t.grad_ref;
  }
  const int n_b = rule.size();
  std::vector<double> be(n_b), br(n_b), de(n_b), dr(n_b);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n_b; ++j) {
    const Contributions t = boundary_term(problem, c, exact, rule, j);
    be[j] = t.interior_err;
    br[j] = t.interior_ref;
    de[j] = t.grad_err;
    dr[j] = t.grad_ref;
  }
  // The uniform cell area cancels in each ratio.
  return {relative(pairwise_sum(ie), pairwise_sum(ir)), relative(pairwise_sum(ge), pairwise_sum(gr)),
          relative(pairwise_sum(be), pairwise_sum(br)), relative(pairwise_sum(de), pairwise_sum(dr))};
}

ErrorReport error_report_serial(const WaveProblem& problem, const CoefficientVector& c, const ExactSolution& exact,
                                const InteriorGrid& grid, const QuadratureRule& rule) {
  check_order(problem, c);
  Contributions in, bd;
  for (const Point2& x : grid.points) {
    const Contributions t = interior_term(problem, c, exact, x);
    in.interior_err += t.interior_err * grid.cell_area;
    in.interior_ref += t.interior_ref * grid.cell_area;
    in.grad_err += t.grad_err * grid.cell_area;
    in.grad_ref += t.grad_ref * grid.cell_area;
  }
  for (int j = 0; j < rule.size(); ++j) {
    const Contributions t = boundary_term(problem, c, exact, rule, j);
    bd.interior_err += t.interior_err;
    bd.interior_ref += t.interior_ref;
    bd.grad_err += t.grad_err;
    bd.grad_ref += t.grad_ref;
  }
  return {relative(in.interior_err, in.interior_ref), relative(in.grad_err, in.grad_ref),
          relative(bd.interior_err, bd.interior_ref), relative(bd.grad_err, bd.grad_ref)};
}

}  // namespace fbm
