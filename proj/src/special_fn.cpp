#include "fbm/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fbm/error.hpp"

namespace fbm {

namespace {

// Below this argument the power series is summed directly; above it the
// series is only used for orders far beyond t (no cancellation there).
constexpr double kSeriesThreshold = 12.0;

bool use_series(int m, double t) { return t < kSeriesThreshold || 0.25 * t * t < m + 1; }

// S_m(t) = J_m(t) * m! / (t/2)^m, summed in extended precision.
long double normalized_series(int m, double t) {
  const long double x = 0.25L * t * t;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int p = 1; p < 1000; ++p) {
    term *= -x / (static_cast<long double>(p) * (m + p));
    sum += term;
    if (p * (m + p) > x && std::fabs(term) < 1e-21L * std::fabs(sum)) break;
  }
  return sum;
}

// (t/2)^m / m!
long double series_leading_term(int m, double t) {
  long double lead = 1.0L;
  const long double half = 0.5L * t;
  for (int j = 1; j <= m; ++j) lead *= half / j;
  return lead;
}

// J_0..J_nmax at t > 0 by backward recurrence, normalized with
// J_0 + 2 sum_k J_{2k} = 1.
std::vector<double> miller_sequence(int nmax, double t) {
  const int top = std::max(nmax, static_cast<int>(t));
  int start = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
  start += start % 2;

  std::vector<double> j(nmax + 1, 0.0);
  constexpr double kRescaleAbove = 1e250;
  constexpr double kRescaleBy = 1e-250;
  double above = 0.0;    // J_{m+1}
  double current = 1.0;  // J_m
  double norm = 0.0;
  for (int m = start; m >= 1; --m) {
    if (m <= nmax) j[m] = current;
    if (m % 2 == 0) norm += 2.0 * current;
    const double below = 2.0 * m / t * current - above;
    above = current;
    current = below;
    if (std::fabs(current) > kRescaleAbove) {
      current *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = std::max(m, 1); i <= nmax; ++i) j[i] *= kRescaleBy;
    }
  }
  j[0] = current;
  norm += current;
  for (double& v : j) v /= norm;
  return j;
}

// J_m(t) for m >= 0 without the public order cap (callers need m = cap + 1).
double bessel_j_nonneg(int m, double t) {
  if (t == 0.0) return m == 0 ? 1.0 : 0.0;
  if (use_series(m, t)) return static_cast<double>(series_leading_term(m, t) * normalized_series(m, t));
  return miller_sequence(m, t)[m];
}

double bessel_j_signed(int n, double t) {
  const int m = std::abs(n);
  const double v = bessel_j_nonneg(m, t);
  return (n < 0 && (m % 2 == 1)) ? -v : v;
}

void check_argument(int n, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw Error(ErrorKind::Domain, "Bessel argument must be finite and nonnegative, got " + std::to_string(t));
  if (std::abs(n) > kMaxBesselOrder)
    throw Error(ErrorKind::OrderCap, "Bessel order " + std::to_string(n) + " exceeds cap " +
                                         std::to_string(kMaxBesselOrder));
}

void check_context(const BasisContext& ctx) {
  if (!(ctx.k > 0.0) || !(ctx.M > 0.0) || !std::isfinite(ctx.k) || !std::isfinite(ctx.M))
    throw Error(ErrorKind::Domain, "basis context requires k > 0 and M > 0");
}

double sign_for_order(int n) { return (n < 0 && (-n) % 2 == 1) ? -1.0 : 1.0; }

// Ratio P_{|from|} / P_{|to|} for neighbouring orders, P_m = 2^m m! / (kM)^m.
double prefactor_ratio(const BasisContext& ctx, int from, int to) {
  const int m = std::abs(from);
  const int mt = std::abs(to);
  if (mt == m + 1) return ctx.k * ctx.M / (2.0 * (m + 1));
  return 2.0 * m / (ctx.k * ctx.M);
}

}  // namespace

double bessel_j(int n, double t) {
  check_argument(n, t);
  return bessel_j_signed(n, t);
}

double bessel_j_prime(int n, double t) {
  check_argument(n, t);
  return 0.5 * (bessel_j_signed(n - 1, t) - bessel_j_signed(n + 1, t));
}

std::vector<double> radial_factors(const BasisContext& ctx, int max_order, double r) {
  check_context(ctx);
  std::vector<double> out(max_order + 1, 0.0);
  if (r == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double t = ctx.k * r;

  int miller_top = -1;
  if (t >= kSeriesThreshold) miller_top = std::min(max_order, static_cast<int>(std::floor(0.25 * t * t - 1.0)));
  if (miller_top >= 0) {
    const std::vector<double> j = miller_sequence(miller_top, t);
    const double log_scale = std::log(2.0 / (ctx.k * ctx.M));
    for (int m = 0; m <= miller_top; ++m) {
      if (j[m] == 0.0) continue;
      const double mag = std::exp(m * log_scale + std::lgamma(m + 1.0) + std::log(std::fabs(j[m])));
      out[m] = std::copysign(mag, j[m]);
    }
  }
  const double ratio = r / ctx.M;
  for (int m = miller_top + 1; m <= max_order; ++m)
    out[m] = std::pow(ratio, m) * static_cast<double>(normalized_series(m, t));
  return out;
}

cdouble basis_value(const BasisContext& ctx, int n, const Point2& point) {
  check_argument(n, 0.0);
  const int m = std::abs(n);
  const double r = point.norm();
  const double theta = std::atan2(point.y(), point.x());
  const double radial = radial_factors(ctx, m, r)[m];
  return sign_for_order(n) * radial * std::polar(1.0, n * theta);
}

CVector2 basis_gradient(const BasisContext& ctx, int n, const Point2& point) {
  check_argument(n, 0.0);
  const int m = std::abs(n);
  const double r = point.norm();
  const double theta = std::atan2(point.y(), point.x());
  const std::vector<double> radial = radial_factors(ctx, m + 1, r);
  auto phi = [&](int order) {
    return sign_for_order(order) * radial[std::abs(order)] * std::polar(1.0, order * theta);
  };
  const cdouble lower = prefactor_ratio(ctx, n, n - 1) * phi(n - 1);
  const cdouble upper = prefactor_ratio(ctx, n, n + 1) * phi(n + 1);
  const double half_k = 0.5 * ctx.k;
  return {half_k * (lower - upper), cdouble(0.0, half_k) * (lower + upper)};
}

BasisRow basis_row(const BasisContext& ctx, int order, const Point2& point) {
  if (order < 0 || order > kMaxBesselOrder)
    throw Error(ErrorKind::OrderCap, "basis order " + std::to_string(order) + " out of range");
  const double r = point.norm();
  const double theta = std::atan2(point.y(), point.x());
  const std::vector<double> radial = radial_factors(ctx, order + 1, r);

  // phi for n = -(order+1)..(order+1), offset order+1.
  const int width = 2 * order + 3;
  std::vector<cdouble> extended(width);
  for (int n = -(order + 1); n <= order + 1; ++n)
    extended[n + order + 1] = sign_for_order(n) * radial[std::abs(n)] * std::polar(1.0, n * theta);

  BasisRow row;
  row.value.resize(2 * order + 1);
  row.gradient.resize(2 * order + 1);
  const double half_k = 0.5 * ctx.k;
  for (int n = -order; n <= order; ++n) {
    const cdouble lower = prefactor_ratio(ctx, n, n - 1) * extended[n + order];
    const cdouble upper = prefactor_ratio(ctx, n, n + 1) * extended[n + order + 2];
    row.value[n + order] = extended[n + order + 1];
    row.gradient[n + order] = CVector2(half_k * (lower - upper), cdouble(0.0, half_k) * (lower + upper));
  }
  return row;
}

}  // namespace fbm
