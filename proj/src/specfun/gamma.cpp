#include <cmath>
#include <numbers>

#include "zmeta/errors.hpp"
#include "zmeta/specfun.hpp"

namespace zmeta {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10.
constexpr double kStirling[] = {
    1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,  1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

constexpr double kStirlingMinModulus = 12.0;

Complex stirling_series(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex term = inv;
  Complex tail = 0.0;
  for (double c : kStirling) {
    tail += c * term;
    term *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + tail;
}

// sin(pi z) with the integer part of Re z removed exactly.
Complex sin_pi(Complex z) {
  const double m = std::nearbyint(z.real());
  const Complex r(z.real() - m, z.imag());
  Complex s = std::sin(std::numbers::pi * r);
  if (std::fmod(std::abs(m), 2.0) == 1.0) s = -s;
  return s;
}

void check_pole(Complex s) {
  const double m = std::nearbyint(s.real());
  if (m <= 0.0) {
    const double d = std::abs(s - Complex(m, 0.0));
    if (d < kPoleRadius) {
      throw PoleError("gamma: argument within pole exclusion radius", Complex(m, 0.0), d);
    }
  }
}

// Gamma(s) for Re s >= 1/2: Stirling after shifting |s| up, product undone.
Complex gamma_right(Complex s) {
  Complex w = s;
  Complex prod = 1.0;
  while (std::abs(w) < kStirlingMinModulus) {
    prod *= w;
    w += 1.0;
  }
  return std::exp(stirling_series(w)) / prod;
}

Complex recip_gamma_right(Complex s) {
  Complex w = s;
  Complex prod = 1.0;
  while (std::abs(w) < kStirlingMinModulus) {
    prod *= w;
    w += 1.0;
  }
  return std::exp(-stirling_series(w)) * prod;
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!(z.real() > 0.0)) throw DomainError("log_gamma: requires Re z > 0");
  Complex w = z;
  Complex logs = 0.0;
  while (std::abs(w) < kStirlingMinModulus) {
    logs += std::log(w);
    w += 1.0;
  }
  return stirling_series(w) - logs;
}

Complex gamma_complex(ComplexPoint sp) {
  const Complex s = sp.value();
  check_pole(s);
  if (s.real() >= 0.5) return gamma_right(s);
  return std::numbers::pi / (sin_pi(s) * gamma_right(1.0 - s));
}

Complex recip_gamma(ComplexPoint sp) {
  const Complex s = sp.value();
  if (s.real() >= 0.5) return recip_gamma_right(s);
  if (s.imag() == 0.0 && s.real() == std::nearbyint(s.real())) return 0.0;
  return sin_pi(s) * gamma_right(1.0 - s) / std::numbers::pi;
}

}  // namespace zmeta
