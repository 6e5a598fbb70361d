#include <array>
#include <cmath>
#include <numbers>

#include "zmeta/errors.hpp"
#include "zmeta/numerics.hpp"
#include "zmeta/specfun.hpp"

namespace zmeta {

namespace {

using std::numbers::pi;

constexpr int kMaxBernoulli = 60;

// B_{2k} / (2k)! for k = 1..kMaxBernoulli, from (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
const std::array<double, kMaxBernoulli + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, kMaxBernoulli + 1> b{};
    for (int k = 1; k <= kMaxBernoulli; ++k) {
      double zeta2k;
      if (k == 1) {
        zeta2k = pi * pi / 6.0;
      } else if (k == 2) {
        zeta2k = std::pow(pi, 4) / 90.0;
      } else {
        numerics::CompensatedSum<double> acc;
        for (int n = 60; n >= 2; --n) acc.add(std::pow(static_cast<double>(n), -2.0 * k));
        acc.add(1.0);
        zeta2k = acc.value();
      }
      const double mag = 2.0 * zeta2k * std::pow(2.0 * pi, -2.0 * k);
      b[k] = (k % 2 == 1) ? mag : -mag;
    }
    return b;
  }();
  return table;
}

// Riemann-Siegel remainder kernel and its Taylor coefficients about p, from a
// trapezoidal Cauchy integral on a circle that avoids the real axis (the kernel
// is entire; its singularities on the real line are removable).
Complex rs_kernel(Complex p) {
  return std::cos(2.0 * pi * (p * p - p - 1.0 / 16.0)) / std::cos(2.0 * pi * p);
}

constexpr int kTaylorOrder = 12;
constexpr int kCauchyNodes = 64;
constexpr double kCauchyRadius = 0.5;

std::array<double, kTaylorOrder + 1> rs_kernel_derivatives(double p) {
  struct Nodes {
    std::array<Complex, kCauchyNodes> z{};
    // twiddle[k][j] = exp(-i k phi_j)
    std::array<std::array<Complex, kCauchyNodes>, kTaylorOrder + 1> twiddle{};
  };
  static const Nodes nodes = [] {
    Nodes n;
    for (int j = 0; j < kCauchyNodes; ++j) {
      const double phi = 2.0 * pi * (j + 0.5) / kCauchyNodes;
      n.z[j] = std::polar(1.0, phi);
      for (int k = 0; k <= kTaylorOrder; ++k) n.twiddle[k][j] = std::polar(1.0, -k * phi);
    }
    return n;
  }();
  std::array<Complex, kCauchyNodes> values{};
  for (int j = 0; j < kCauchyNodes; ++j) values[j] = rs_kernel(p + kCauchyRadius * nodes.z[j]);

  std::array<double, kTaylorOrder + 1> d{};
  double factorial = 1.0;
  double rpow = 1.0;
  for (int k = 0; k <= kTaylorOrder; ++k) {
    if (k > 0) {
      factorial *= k;
      rpow *= kCauchyRadius;
    }
    numerics::CompensatedSum<Complex> acc;
    for (int j = 0; j < kCauchyNodes; ++j) {
      acc.add(values[j] * nodes.twiddle[k][j]);
    }
    const double coeff = acc.value().real() / (kCauchyNodes * rpow);
    d[k] = coeff * factorial;
  }
  return d;
}

}  // namespace

double hardy_z_riemann_siegel(double t) {
  const double a = std::sqrt(t / (2.0 * pi));
  const int n_terms = static_cast<int>(std::floor(a));
  const double p = a - n_terms;
  const double th = riemann_siegel_theta(t);

  numerics::CompensatedSum<double> main;
  for (int n = n_terms; n >= 1; --n) {
    const double nd = n;
    main.add(std::cos(th - t * std::log(nd)) / std::sqrt(nd));
  }

  const auto d = rs_kernel_derivatives(p);
  const double pi2 = pi * pi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  const double c0 = d[0];
  const double c1 = -d[3] / (96.0 * pi2);
  const double c2 = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4);
  const double c3 = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6);
  const double c4 = d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) +
                    11.0 * d[8] / (5898240.0 * pi6) + d[12] / (2038431744.0 * pi8);
  const double ia = 1.0 / a;
  const double series = c0 + ia * (c1 + ia * (c2 + ia * (c3 + ia * c4)));
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return 2.0 * main.value() + sign * series / std::sqrt(a);
}

Complex zeta_euler_maclaurin(Complex s) {
  if (!(s.real() > 0.0)) throw DomainError("zeta_euler_maclaurin: requires Re s > 0");
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1", Complex(1.0, 0.0), 0.0);
  const int n = 10 + static_cast<int>(std::ceil(std::abs(s.imag()) / pi));
  const double nd = n;

  numerics::CompensatedSum<Complex> acc;
  for (int j = n - 1; j >= 1; --j) acc.add(std::exp(-s * std::log(static_cast<double>(j))));
  const Complex n_pow = std::exp(-s * std::log(nd));  // N^{-s}
  acc.add(n_pow * nd / (s - 1.0));
  acc.add(0.5 * n_pow);

  const auto& b = bernoulli_over_factorial();
  // k = 1 term: B_2/2! * s * N^{-s-1}
  Complex poch = s;  // s (s+1) ... (s+2k-2)
  Complex npow = n_pow / nd;
  for (int k = 1; k <= kMaxBernoulli; ++k) {
    if (k > 1) {
      poch *= (s + (2.0 * k - 3.0)) * (s + (2.0 * k - 2.0));
      npow /= nd * nd;
    }
    const Complex term = b[k] * poch * npow;
    acc.add(term);
    if (std::abs(term) <= 1e-18 * std::abs(acc.value())) break;
  }
  return acc.value();
}

double riemann_siegel_theta(double t) {
  const Complex lg = log_gamma(Complex(0.25, 0.5 * t));
  return lg.imag() - 0.5 * t * std::log(pi);
}

double hardy_z_euler_maclaurin(double t) {
  const Complex zeta = zeta_euler_maclaurin(Complex(0.5, t));
  const Complex rot = std::polar(1.0, riemann_siegel_theta(t));
  return (rot * zeta).real();
}

double hardy_z(double t) {
  if (!(t >= 0.0)) throw DomainError("hardy_z: requires t >= 0");
  if (t >= kRiemannSiegelSwitch) return hardy_z_riemann_siegel(t);
  return hardy_z_euler_maclaurin(t);
}

}  // namespace zmeta
