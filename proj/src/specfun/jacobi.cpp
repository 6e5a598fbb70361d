#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "zmeta/errors.hpp"
#include "zmeta/specfun.hpp"

namespace zmeta {

namespace {

constexpr double kLandenTol = 1e-8;
constexpr int kMaxLanden = 32;

double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (an == a && bn == b) break;
    if (std::abs(an - bn) <= 1e-17 * an) {
      a = an;
      b = bn;
      break;
    }
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

struct RealTriple {
  double sn;
  double cn;
  double dn;
};

// Descending Landen (AGM) scheme for real argument; modulus k, complement kc.
RealTriple sncndn_real(double u, double k, double kc) {
  std::array<double, kMaxLanden + 1> a{};
  std::array<double, kMaxLanden + 1> c{};
  a[0] = 1.0;
  double b = kc;
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > kLandenTol && n < kMaxLanden) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  // n == 0: k below the Landen tolerance, closed trig forms.
  double phi = u;
  if (n > 0) {
    phi = std::ldexp(a[n], n) * u;
    for (int j = n; j >= 1; --j) phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn from sn or cn directly, whichever is better conditioned
  // (cn / cos(phi_1 - phi_0) loses everything near u = K).
  const double dn = (std::abs(sn) < 0.5) ? std::sqrt(1.0 - k * k * sn * sn)
                                         : std::sqrt(kc * kc + k * k * cn * cn);
  return {sn, cn, dn};
}

double reduce(double x, double period) { return x - period * std::nearbyint(x / period); }

}  // namespace

EllipticModulus::EllipticModulus(double k) : k_(k), kc_(std::sqrt((1.0 - k) * (1.0 + k))) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("elliptic modulus must satisfy 0 < k < 1, got " + std::to_string(k));
  }
}

double elliptic_k(EllipticModulus k) { return std::numbers::pi / (2.0 * agm(1.0, k.kc())); }

double elliptic_k_complement(EllipticModulus k) {
  return std::numbers::pi / (2.0 * agm(1.0, k.k()));
}

double jacobi_pole_distance(Complex u, EllipticModulus k) {
  const double big_k = elliptic_k(k);
  const double big_kp = elliptic_k_complement(k);
  const double dx = reduce(u.real(), 2.0 * big_k);
  const double dy = reduce(u.imag() - big_kp, 2.0 * big_kp);
  return std::hypot(dx, dy);
}

JacobiTriple jacobi_sncndn(ComplexPoint up, EllipticModulus k) {
  const Complex u = up.value();
  const double big_k = elliptic_k(k);
  const double big_kp = elliptic_k_complement(k);
  {
    const double dx = reduce(u.real(), 2.0 * big_k);
    const double dy = reduce(u.imag() - big_kp, 2.0 * big_kp);
    const double d = std::hypot(dx, dy);
    if (d < kPoleRadius) {
      const Complex pole(u.real() - dx, u.imag() - dy);
      throw PoleError("jacobi elliptic: argument within pole exclusion radius", pole, d);
    }
  }
  // 4K and 4iK' are periods of all three functions.
  const double x = reduce(u.real(), 4.0 * big_k);
  const double y = reduce(u.imag(), 4.0 * big_kp);

  const RealTriple r = sncndn_real(x, k.k(), k.kc());
  if (y == 0.0) return {r.sn, r.cn, r.dn};
  // Jacobi's imaginary transformation: functions of iy with modulus k are
  // expressed through functions of y with the complementary modulus.
  const RealTriple q = sncndn_real(y, k.kc(), k.k());
  const double m = k.k2();
  const double den = q.cn * q.cn + m * r.sn * r.sn * q.sn * q.sn;
  const Complex sn(r.sn * q.dn, r.cn * r.dn * q.sn * q.cn);
  const Complex cn(r.cn * q.cn, -r.sn * r.dn * q.sn * q.dn);
  const Complex dn(r.dn * q.cn * q.dn, -m * r.sn * r.cn * q.sn);
  return {sn / den, cn / den, dn / den};
}

Complex jacobi_elliptic(JacobiKind kind, ComplexPoint u, EllipticModulus k) {
  const JacobiTriple t = jacobi_sncndn(u, k);
  switch (kind) {
    case JacobiKind::SN:
      return t.sn;
    case JacobiKind::CN:
      return t.cn;
    case JacobiKind::DN:
      return t.dn;
  }
  return t.sn;
}

}  // namespace zmeta
