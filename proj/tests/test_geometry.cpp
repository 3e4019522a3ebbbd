#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fbm/error.hpp"
#include "fbm/geometry.hpp"

using fbm::BoundaryCurve;
using fbm::Point2;

namespace {

constexpr double kPi = std::numbers::pi;

bool near(const Point2& a, const Point2& b, double tol) { return (a - b).norm() <= tol; }

// Brute-force extremal distances on a 2^20-point grid.
std::pair<double, double> dense_radii(const BoundaryCurve& c) {
  const int n = 1 << 20;
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = fbm::curve_point(c, 2 * kPi * i / n).norm();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("curve_point examples") {
  const BoundaryCurve kite = BoundaryCurve::kite();
  CHECK(near(fbm::curve_point(kite, 0.0), Point2(1.0, 0.0), 1e-15));
  CHECK(near(fbm::curve_point(kite, kPi / 2), Point2(-1.3, 1.5), 1e-15));
  CHECK(near(fbm::curve_point(BoundaryCurve::circle(1.0), kPi), Point2(-1.0, 0.0), 1e-15));
  CHECK(near(fbm::curve_point(kite, 0.3), fbm::curve_point(kite, 0.3 + 2 * kPi), 1e-14));
}

TEST_CASE("curve_derivative examples and finite differences") {
  CHECK(near(fbm::curve_derivative(BoundaryCurve::circle(1.0), 0.0), Point2(0.0, 1.0), 1e-15));
  CHECK(near(fbm::curve_derivative(BoundaryCurve::kite(), 0.0), Point2(0.0, 1.5), 1e-15));

  const BoundaryCurve wobbly({0.1, 1.0, 0.0, 0.05}, {0.0, 0.0, 0.2}, {-0.1, 0.0, 0.1}, {0.0, 1.2, 0.0, -0.04});
  const double h = 1e-5;
  for (const BoundaryCurve& c : {BoundaryCurve::kite(), BoundaryCurve::ellipse(1.0, 1.5), wobbly})
    for (double t = 0.0; t < 2 * kPi; t += 0.1) {
      const Point2 fd = (fbm::curve_point(c, t + h) - fbm::curve_point(c, t - h)) / (2 * h);
      CHECK(near(fbm::curve_derivative(c, t), fd, 1e-8));
    }
}

TEST_CASE("outward_normal examples") {
  const BoundaryCurve circle = BoundaryCurve::circle(1.0);
  CHECK(near(fbm::outward_normal(circle, 0.0), Point2(1.0, 0.0), 1e-15));
  CHECK(near(fbm::outward_normal(circle, kPi / 2), Point2(0.0, 1.0), 1e-15));
}

TEST_CASE("kite normals are unit and point away from the interior centroid") {
  const BoundaryCurve kite = BoundaryCurve::kite();
  const fbm::QuadratureRule rule = fbm::build_quadrature(kite, 512);
  // Area centroid by Green's theorem: (1/A) * integral x1^2 x2' / 2 dt, etc.
  double cx = 0.0, cy = 0.0;
  for (int j = 0; j < rule.size(); ++j) {
    const Point2 x = rule.points[j];
    const Point2 d = fbm::curve_derivative(kite, rule.nodes[j]);
    cx += rule.weights[j] * 0.5 * x.x() * x.x() * d.y();
    cy -= rule.weights[j] * 0.5 * x.y() * x.y() * d.x();
  }
  const Point2 centroid(cx / kite.signed_area(), cy / kite.signed_area());
  CHECK(fbm::is_interior(kite, centroid));
  for (int j = 0; j < rule.size(); ++j) {
    CHECK(std::abs(rule.normals[j].norm() - 1.0) <= 1e-12);
    CHECK(rule.normals[j].dot(rule.points[j] - centroid) > 0.0);
  }
}

TEST_CASE("normals point outward from the origin on star-shaped curves") {
  for (const BoundaryCurve& c : {BoundaryCurve::circle(0.7), BoundaryCurve::ellipse(1.0, 1.5), BoundaryCurve::ellipse(3.0, 0.4)}) {
    const fbm::QuadratureRule rule = fbm::build_quadrature(c, 128);
    for (int j = 0; j < rule.size(); ++j) {
      CHECK(std::abs(rule.normals[j].norm() - 1.0) <= 1e-12);
      CHECK(rule.normals[j].dot(rule.points[j]) > 0.0);
    }
  }
}

TEST_CASE("compute_radii on circles and ellipses") {
  for (double R : {0.3, 1.0, 2.0, 7.5}) {
    const fbm::DomainRadii r = fbm::compute_radii(BoundaryCurve::circle(R));
    CHECK(std::abs(r.r_in_max - R) <= 1e-9);
    CHECK(std::abs(r.r_ex_min - R) <= 1e-9);
  }
  const fbm::DomainRadii e = fbm::compute_radii(BoundaryCurve::ellipse(1.0, 1.5));
  CHECK(std::abs(e.r_in_max - 1.0) <= 1e-9);
  CHECK(std::abs(e.r_ex_min - 1.5) <= 1e-9);
  CHECK(e.tau_min == doctest::Approx(1.5));
  CHECK_THROWS_AS(fbm::compute_radii(BoundaryCurve::kite(), 512), fbm::Error);
}

TEST_CASE("compute_radii on the kite matches a dense brute-force search") {
  const BoundaryCurve kite = BoundaryCurve::kite();
  const fbm::DomainRadii r = fbm::compute_radii(kite);
  const auto [lo, hi] = dense_radii(kite);
  CHECK(std::abs(r.r_in_max - lo) <= 1e-6);
  CHECK(std::abs(r.r_ex_min - hi) <= 1e-6);
  CHECK(r.r_in_max <= lo + 1e-15);
  CHECK(r.r_ex_min >= hi - 1e-15);
  // Frozen from the brute-force search above.
  CHECK(r.r_in_max == doctest::Approx(0.922814).epsilon(1e-6));
  CHECK(r.r_ex_min == doctest::Approx(2.065671).epsilon(1e-6));
  CHECK(std::abs(r.r_in_max - 0.923) <= 1e-3);
  CHECK(r.tau_min > 1.0);
}

TEST_CASE("quadrature basics") {
  const BoundaryCurve circle = BoundaryCurve::circle(1.0);
  for (int mq : {8, 64, 256, 1000}) {
    const fbm::QuadratureRule rule = fbm::build_quadrature(circle, mq);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(std::abs(wsum - 2 * kPi) <= 1e-12);
    CHECK(std::abs(rule.length() - 2 * kPi) <= 1e-12);
    const std::vector<fbm::cdouble> ones(mq, 1.0);
    CHECK(std::abs(rule.l2_norm(ones) - std::sqrt(2 * kPi)) <= 1e-12);
  }
  const fbm::QuadratureRule rule = fbm::build_quadrature(circle, 16);
  CHECK(rule.row_scale(3) == doctest::Approx(std::sqrt(2 * kPi / 16)));
  CHECK_THROWS_AS(fbm::build_quadrature(circle, 6), fbm::Error);
  CHECK_THROWS_AS(fbm::build_quadrature(circle, 65), fbm::Error);
  CHECK_THROWS_AS(rule.l2_norm(std::vector<fbm::cdouble>(15)), fbm::Error);
}

TEST_CASE("kite length self-convergence and spectral accuracy") {
  const BoundaryCurve kite = BoundaryCurve::kite();
  CHECK(std::abs(fbm::build_quadrature(kite, 256).length() - fbm::build_quadrature(kite, 512).length()) <= 1e-10);

  auto norm_e3 = [&](int mq) {
    const fbm::QuadratureRule rule = fbm::build_quadrature(kite, mq);
    std::vector<fbm::cdouble> g(mq);
    for (int j = 0; j < mq; ++j) g[j] = std::polar(1.0, 3.0 * rule.nodes[j]);
    return rule.l2_norm(g);
  };
  // The kite's speed has nearby complex singularities: 64 vs 128 nodes still differ by ~6e-8.
  CHECK(std::abs(norm_e3(64) - norm_e3(128)) <= 1e-7);
  for (int mq : {128, 256, 512}) CHECK(std::abs(norm_e3(mq) - norm_e3(2 * mq)) <= 1e-10);
}

TEST_CASE("is_interior examples") {
  const BoundaryCurve circle = BoundaryCurve::circle(1.0);
  CHECK(fbm::is_interior(circle, Point2(0.0, 0.0)));
  CHECK_FALSE(fbm::is_interior(circle, Point2(2.0, 0.0)));

  const BoundaryCurve kite = BoundaryCurve::kite();
  const Point2 p(0.5, 0.0);
  double dmin = 1e300;
  int crossings = 0;  // ray to +x: count sign changes of x2 with x1 > 0.5
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Point2 a = fbm::curve_point(kite, 2 * kPi * i / n);
    const Point2 b = fbm::curve_point(kite, 2 * kPi * (i + 1) / n);
    dmin = std::min(dmin, (a - p).norm());
    if ((a.y() <= 0.0) != (b.y() <= 0.0)) {
      const double x = a.x() + (b.x() - a.x()) * (0.0 - a.y()) / (b.y() - a.y());
      if (x > p.x()) ++crossings;
    }
  }
  CHECK(dmin > 0.0);
  CHECK(crossings % 2 == 1);
  CHECK(fbm::is_interior(kite, p));
  CHECK_FALSE(fbm::is_interior(kite, Point2(0.0, 1.6)));
  CHECK_FALSE(fbm::is_interior(kite, Point2(-1.5, 0.0)));  // the kite's notch is not part of D

  const fbm::PointLocation loc = fbm::locate(circle, Point2(0.5, 0.0));
  CHECK(loc.inside);
  CHECK(loc.distance == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("kite signed area") {
  const BoundaryCurve kite = BoundaryCurve::kite();
  // x1 x2' - x2 x1' integrates to 1.5 * 2 pi; area = 1.5 pi.
  CHECK(kite.signed_area() == doctest::Approx(1.5 * kPi).epsilon(1e-12));
  const fbm::QuadratureRule rule = fbm::build_quadrature(kite, 128);
  double a = 0.0;
  for (int j = 0; j < rule.size(); ++j) {
    const Point2 x = rule.points[j];
    const Point2 d = fbm::curve_derivative(kite, rule.nodes[j]);
    a += 0.5 * rule.weights[j] * (x.x() * d.y() - x.y() * d.x());
  }
  CHECK(a == doctest::Approx(kite.signed_area()).epsilon(1e-12));
  CHECK(a > 0.0);
}

TEST_CASE("curve construction errors") {
  auto kind_of = [](auto&& make) {
    try {
      make();
    } catch (const fbm::Error& e) {
      return e.kind();
    }
    return fbm::ErrorKind::Convergence;  // sentinel: nothing thrown
  };
  // clockwise circle
  CHECK(kind_of([] { return BoundaryCurve({0.0, 1.0}, {0.0}, {0.0}, {0.0, -1.0}); }) == fbm::ErrorKind::Construction);
  // origin outside
  CHECK(kind_of([] { return BoundaryCurve({3.0, 1.0}, {0.0}, {0.0}, {0.0, 1.0}); }) == fbm::ErrorKind::Construction);
  // degenerate segment has zero area and vanishing speed at two points
  CHECK_THROWS_AS(BoundaryCurve({0.0, 1.0}, {0.0}, {0.0}, {0.0}), fbm::Error);
  // astroid (cos^3 t, sin^3 t) has zero speed at its cusps
  CHECK(kind_of([] {
          return BoundaryCurve({0.0, 0.75, 0.0, 0.25}, {0.0}, {0.0}, {0.0, 0.75, 0.0, -0.25});
        }) == fbm::ErrorKind::Regularity);
  CHECK(kind_of([] { return BoundaryCurve::circle(-1.0); }) == fbm::ErrorKind::Construction);
  CHECK(kind_of([] { return BoundaryCurve({NAN, 1.0}, {0.0}, {0.0}, {0.0, 1.0}); }) == fbm::ErrorKind::Construction);
  CHECK(kind_of([] { return BoundaryCurve::from_name("square"); }) == fbm::ErrorKind::Config);
  CHECK(kind_of([] { return BoundaryCurve::from_name("circle:abc"); }) == fbm::ErrorKind::Config);
  CHECK(BoundaryCurve::from_name("ellipse:1,1.5").name() == "ellipse:1,1.5");
  CHECK(fbm::compute_radii(BoundaryCurve::from_name("circle:2")).r_ex_min == doctest::Approx(2.0));
}
