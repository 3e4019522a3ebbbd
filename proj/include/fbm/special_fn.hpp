#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace fbm {

using cdouble = std::complex<double>;
using Point2 = Eigen::Vector2d;
using CVector2 = Eigen::Vector2cd;

/// Largest |n| accepted by the public Bessel and basis functions.
inline constexpr int kMaxBesselOrder = 128;

/// Wavenumber and scaling radius of the Fourier-Bessel basis
///   phi_n(x) = 2^|n| |n|! / (k M)^|n| * J_n(k r) * exp(i n theta).
struct BasisContext {
  double k = 1.0;
  double M = 1.0;
};

/// Bessel function of the first kind J_n(t), t >= 0, |n| <= kMaxBesselOrder.
/// Negative orders use J_{-n} = (-1)^n J_n.
double bessel_j(int n, double t);

/// Derivative J_n'(t) = (J_{n-1}(t) - J_{n+1}(t)) / 2. Finite at t = 0.
double bessel_j_prime(int n, double t);

/// Scaled radial factors R_m = 2^m m! / (k M)^m * J_m(k r) for m = 0..max_order.
/// The prefactor and the Bessel value are combined in log space (or via the
/// normalized power series when k r is small relative to m), so R_m stays
/// finite and accurate when either factor alone would overflow or underflow.
std::vector<double> radial_factors(const BasisContext& ctx, int max_order, double r);

/// phi_n at a Cartesian point.
cdouble basis_value(const BasisContext& ctx, int n, const Point2& point);

/// Cartesian gradient of phi_n. Uses the ladder identities
///   (d_x + i d_y) [J_n e^{in theta}] = -k J_{n+1} e^{i(n+1) theta}
///   (d_x - i d_y) [J_n e^{in theta}] =  k J_{n-1} e^{i(n-1) theta}
/// which are regular at the origin.
CVector2 basis_gradient(const BasisContext& ctx, int n, const Point2& point);

/// Values and gradients of phi_n for n = -order..order at a single point,
/// sharing one Bessel sequence. Index n + order.
struct BasisRow {
  std::vector<cdouble> value;
  std::vector<CVector2> gradient;
};
BasisRow basis_row(const BasisContext& ctx, int order, const Point2& point);

}  // namespace fbm
