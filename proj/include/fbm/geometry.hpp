#pragma once

#include <span>
#include <string>
#include <vector>

#include "fbm/special_fn.hpp"

namespace fbm {

/// Smooth closed curve given by truncated trigonometric series
///   x1(t) = sum_m x1_cos[m] cos(m t) + x1_sin[m] sin(m t)
///   x2(t) = sum_m x2_cos[m] cos(m t) + x2_sin[m] sin(m t),  t in [0, 2 pi).
/// Construction checks that the curve is regular, counterclockwise and winds
/// once around the origin.
class BoundaryCurve {
 public:
  BoundaryCurve(std::vector<double> x1_cos, std::vector<double> x1_sin, std::vector<double> x2_cos,
                std::vector<double> x2_sin, std::string name = "fourier");

  /// (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
  static BoundaryCurve kite();
  static BoundaryCurve circle(double radius);
  static BoundaryCurve ellipse(double a, double b);
  /// "kite", "circle:R" or "ellipse:a,b".
  static BoundaryCurve from_name(const std::string& spec);

  const std::vector<double>& x1_cos() const { return x1_cos_; }
  const std::vector<double>& x1_sin() const { return x1_sin_; }
  const std::vector<double>& x2_cos() const { return x2_cos_; }
  const std::vector<double>& x2_sin() const { return x2_sin_; }
  const std::string& name() const { return name_; }

  /// Closed polygon through the curve at uniform parameter values.
  const std::vector<Point2>& polygon() const { return polygon_; }

  /// 1/2 * integral of (x1 x2' - x2 x1') dt.
  double signed_area() const { return signed_area_; }

 private:
  std::vector<double> x1_cos_, x1_sin_, x2_cos_, x2_sin_;
  std::string name_;
  std::vector<Point2> polygon_;
  double signed_area_ = 0.0;
};

Point2 curve_point(const BoundaryCurve& curve, double t);
Point2 curve_derivative(const BoundaryCurve& curve, double t);

/// (x2'(t), -x1'(t)) / |x'(t)|; throws Regularity when |x'(t)| < 1e-9.
Point2 outward_normal(const BoundaryCurve& curve, double t);

/// Extremal origin-centred discs: r_in_max = min |x(t)|, r_ex_min = max |x(t)|.
struct DomainRadii {
  double r_in_max = 0.0;
  double r_ex_min = 0.0;
  double tau_min = 1.0;
};

DomainRadii compute_radii(const BoundaryCurve& curve, int grid_size = 4096);

/// Uniform periodic trapezoidal rule on the curve.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> speeds;
  std::vector<Point2> points;
  std::vector<Point2> normals;

  int size() const { return static_cast<int>(nodes.size()); }
  /// sqrt(w_j |x'(t_j)|), the row scaling for L2(Gamma) least squares.
  double row_scale(int j) const;
  double length() const;
  /// (sum_j w_j |x'(t_j)| |g_j|^2)^{1/2}
  double l2_norm(std::span<const cdouble> samples) const;
};

QuadratureRule build_quadrature(const BoundaryCurve& curve, int num_nodes);

/// Winding-number test against the curve's polygon.
bool is_interior(const BoundaryCurve& curve, const Point2& point);

/// Winding-number membership plus the distance to the polygon, in one pass.
struct PointLocation {
  bool inside = false;
  double distance = 0.0;
};
PointLocation locate(const BoundaryCurve& curve, const Point2& point);

}  // namespace fbm
