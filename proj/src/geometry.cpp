#include "fbm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "fbm/error.hpp"

namespace fbm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kValidationGrid = 4096;
constexpr int kPolygonSize = 2048;
constexpr double kMinSpeed = 1e-9;

double trig_series(const std::vector<double>& c, const std::vector<double>& s, double t) {
  double v = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) v += c[m] * std::cos(m * t);
  for (std::size_t m = 0; m < s.size(); ++m) v += s[m] * std::sin(m * t);
  return v;
}

double trig_series_derivative(const std::vector<double>& c, const std::vector<double>& s, double t) {
  double v = 0.0;
  for (std::size_t m = 1; m < c.size(); ++m) v -= m * c[m] * std::sin(m * t);
  for (std::size_t m = 1; m < s.size(); ++m) v += m * s[m] * std::cos(m * t);
  return v;
}

double cross(const Point2& a, const Point2& b, const Point2& p) {
  return (b.x() - a.x()) * (p.y() - a.y()) - (p.x() - a.x()) * (b.y() - a.y());
}

double segment_distance(const Point2& a, const Point2& b, const Point2& p) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? ab.dot(p - a) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * ab - p).norm();
}

int winding_number(const std::vector<Point2>& poly, const Point2& p) {
  int wn = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && cross(a, b, p) > 0.0) ++wn;
    } else {
      if (b.y() <= p.y() && cross(a, b, p) < 0.0) --wn;
    }
  }
  return wn;
}

// Minimizes f on [a, b] to parameter width tol.
double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void check_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorKind::Construction, "curve coefficients must be finite");
}

}  // namespace

BoundaryCurve::BoundaryCurve(std::vector<double> x1_cos, std::vector<double> x1_sin, std::vector<double> x2_cos,
                             std::vector<double> x2_sin, std::string name)
    : x1_cos_(std::move(x1_cos)),
      x1_sin_(std::move(x1_sin)),
      x2_cos_(std::move(x2_cos)),
      x2_sin_(std::move(x2_sin)),
      name_(std::move(name)) {
  check_finite(x1_cos_);
  check_finite(x1_sin_);
  check_finite(x2_cos_);
  check_finite(x2_sin_);

  double area = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kValidationGrid; ++i) {
    const double t = kTwoPi * i / kValidationGrid;
    const Point2 x = curve_point(*this, t);
    const Point2 dx = curve_derivative(*this, t);
    area += x.x() * dx.y() - x.y() * dx.x();
    min_speed = std::min(min_speed, dx.norm());
  }
  signed_area_ = 0.5 * area * kTwoPi / kValidationGrid;
  if (!(min_speed > kMinSpeed))
    throw Error(ErrorKind::Regularity, "curve is not regular: min |x'(t)| = " + std::to_string(min_speed));
  if (!(signed_area_ > 0.0))
    throw Error(ErrorKind::Construction, "curve must be counterclockwise (signed area " +
                                             std::to_string(signed_area_) + ")");

  polygon_.reserve(kPolygonSize);
  for (int i = 0; i < kPolygonSize; ++i) polygon_.push_back(curve_point(*this, kTwoPi * i / kPolygonSize));
  if (winding_number(polygon_, Point2::Zero()) != 1)
    throw Error(ErrorKind::Construction, "origin must lie inside the curve");
}

BoundaryCurve BoundaryCurve::kite() {
  return BoundaryCurve({-0.65, 1.0, 0.65}, {0.0}, {0.0}, {0.0, 1.5}, "kite");
}

BoundaryCurve BoundaryCurve::circle(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Construction, "circle radius must be positive");
  std::ostringstream name;
  name << "circle:" << radius;
  return BoundaryCurve({0.0, radius}, {0.0}, {0.0}, {0.0, radius}, name.str());
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::Construction, "ellipse semi-axes must be positive");
  std::ostringstream name;
  name << "ellipse:" << a << "," << b;
  return BoundaryCurve({0.0, a}, {0.0}, {0.0}, {0.0, b}, name.str());
}

BoundaryCurve BoundaryCurve::from_name(const std::string& spec) {
  auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::Config, "bad number in curve spec '" + spec + "'");
    return v;
  };
  if (spec == "kite") return kite();
  if (spec.rfind("circle:", 0) == 0) return circle(parse(spec.substr(7)));
  if (spec.rfind("ellipse:", 0) == 0) {
    const std::string rest = spec.substr(8);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::Config, "ellipse spec needs 'ellipse:a,b'");
    return ellipse(parse(rest.substr(0, comma)), parse(rest.substr(comma + 1)));
  }
  throw Error(ErrorKind::Config, "unknown curve '" + spec + "'");
}

Point2 curve_point(const BoundaryCurve& curve, double t) {
  return {trig_series(curve.x1_cos(), curve.x1_sin(), t), trig_series(curve.x2_cos(), curve.x2_sin(), t)};
}

Point2 curve_derivative(const BoundaryCurve& curve, double t) {
  return {trig_series_derivative(curve.x1_cos(), curve.x1_sin(), t),
          trig_series_derivative(curve.x2_cos(), curve.x2_sin(), t)};
}

Point2 outward_normal(const BoundaryCurve& curve, double t) {
  const Point2 d = curve_derivative(curve, t);
  const double speed = d.norm();
  if (speed < kMinSpeed) throw Error(ErrorKind::Regularity, "vanishing curve speed at t = " + std::to_string(t));
  return Point2(d.y(), -d.x()) / speed;
}

DomainRadii compute_radii(const BoundaryCurve& curve, int grid_size) {
  if (grid_size < 1024) throw Error(ErrorKind::Size, "compute_radii needs grid_size >= 1024");
  auto dist2 = [&](double t) { return curve_point(curve, t).squaredNorm(); };
  const double h = kTwoPi / grid_size;
  int i_min = 0, i_max = 0;
  double d_min = dist2(0.0), d_max = d_min;
  for (int i = 1; i < grid_size; ++i) {
    const double d = dist2(i * h);
    if (d < d_min) d_min = d, i_min = i;
    if (d > d_max) d_max = d, i_max = i;
  }
  constexpr double kParamTol = 1e-12;
  const double t_min = golden_section_min(dist2, (i_min - 1) * h, (i_min + 1) * h, kParamTol);
  const double t_max =
      golden_section_min([&](double t) { return -dist2(t); }, (i_max - 1) * h, (i_max + 1) * h, kParamTol);

  DomainRadii radii;
  radii.r_in_max = std::sqrt(std::min(d_min, dist2(t_min)));
  radii.r_ex_min = std::sqrt(std::max(d_max, dist2(t_max)));
  radii.tau_min = radii.r_ex_min / radii.r_in_max;
  return radii;
}

double QuadratureRule::row_scale(int j) const { return std::sqrt(weights[j] * speeds[j]); }

double QuadratureRule::length() const {
  double s = 0.0;
  for (int j = 0; j < size(); ++j) s += weights[j] * speeds[j];
  return s;
}

double QuadratureRule::l2_norm(std::span<const cdouble> samples) const {
  if (static_cast<int>(samples.size()) != size())
    throw Error(ErrorKind::Shape, "sample count does not match quadrature size");
  double s = 0.0;
  for (int j = 0; j < size(); ++j) s += weights[j] * speeds[j] * std::norm(samples[j]);
  return std::sqrt(s);
}

QuadratureRule build_quadrature(const BoundaryCurve& curve, int num_nodes) {
  if (num_nodes < 8 || num_nodes % 2 != 0)
    throw Error(ErrorKind::Size, "quadrature size must be even and >= 8, got " + std::to_string(num_nodes));
  QuadratureRule rule;
  rule.nodes.resize(num_nodes);
  rule.weights.assign(num_nodes, kTwoPi / num_nodes);
  rule.speeds.resize(num_nodes);
  rule.points.resize(num_nodes);
  rule.normals.resize(num_nodes);
  for (int j = 0; j < num_nodes; ++j) {
    const double t = kTwoPi * j / num_nodes;
    rule.nodes[j] = t;
    rule.points[j] = curve_point(curve, t);
    rule.speeds[j] = curve_derivative(curve, t).norm();
    rule.normals[j] = outward_normal(curve, t);
  }
  return rule;
}

bool is_interior(const BoundaryCurve& curve, const Point2& point) {
  return winding_number(curve.polygon(), point) != 0;
}

PointLocation locate(const BoundaryCurve& curve, const Point2& point) {
  const auto& poly = curve.polygon();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    d = std::min(d, segment_distance(poly[i], poly[(i + 1) % poly.size()], point));
  return {winding_number(poly, point) != 0, d};
}

}  // namespace fbm
