#pragma once

// Classical functions needed by the level-curve loci: Hardy's Z on the critical
// line, complex Gamma, integer-order Bessel J of complex argument, Jacobi
// elliptic functions of complex argument and the complete elliptic integral K.
//
// All functions are pure and deterministic; binary64 throughout.

#include <array>
#include <complex>

namespace zmeta {

using Complex = std::complex<double>;

// A finite complex number. Construction rejects NaN and infinities.
class ComplexPoint {
 public:
  ComplexPoint(double re, double im = 0.0);
  explicit ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  Complex value() const noexcept { return z_; }
  operator Complex() const noexcept { return z_; }

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

 private:
  Complex z_;
};

// Jacobi modulus k with 0 < k < 1. The complementary modulus is computed once
// from k (as sqrt((1-k)(1+k)) to avoid cancellation near k = 1).
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);

  double k() const noexcept { return k_; }
  double k2() const noexcept { return k_ * k_; }
  double kc() const noexcept { return kc_; }

  friend bool operator==(const EllipticModulus& a, const EllipticModulus& b) {
    return a.k_ == b.k_;
  }

 private:
  double k_;
  double kc_;
};

struct BesselOrder {
  int p = 0;
  friend bool operator==(const BesselOrder&, const BesselOrder&) = default;
};

enum class JacobiKind { SN, CN, DN };

// Hardy's function Z(t) = exp(i*theta(t)) * zeta(1/2 + it), real for real t, with
// |Z(t)| = |zeta(1/2 + it)|. Euler-Maclaurin below kRiemannSiegelSwitch,
// Riemann-Siegel with five correction terms above. Throws DomainError for t < 0.
double hardy_z(double t);

// The Riemann-Siegel theta function, Im log Gamma(1/4 + it/2) - (t/2) log(pi).
double riemann_siegel_theta(double t);

// zeta(s) by Euler-Maclaurin summation for Re s > 0, s != 1.
Complex zeta_euler_maclaurin(Complex s);

// The two evaluation routes of hardy_z, callable directly for cross-checks.
// The Riemann-Siegel route requires t >= 2 pi.
double hardy_z_euler_maclaurin(double t);
double hardy_z_riemann_siegel(double t);

// Where hardy_z changes method.
inline constexpr double kRiemannSiegelSwitch = 2500.0;

// Principal log Gamma for Re z > 0 (continuous branch, Stirling with upward shift).
Complex log_gamma(Complex z);

// Gamma(s) with reflection for Re s < 1/2. Throws PoleError within kPoleRadius
// of a nonpositive integer.
Complex gamma_complex(ComplexPoint s);

// 1/Gamma(s), entire; exactly zero at the nonpositive integers.
Complex recip_gamma(ComplexPoint s);

// J_p(s) for integer p. Power series with compensated summation for |s| <= 12,
// Miller backward recurrence otherwise.
Complex bessel_j(BesselOrder p, ComplexPoint s);

// Values J_0(s) ... J_n(s) from a single backward recurrence (any |s|).
// Exposed for cross-checking the series path.
Complex bessel_j_recurrence(int n, Complex s);
Complex bessel_j_series(int n, Complex s);

// sn, cn or dn(u, k). Throws PoleError within kPoleRadius of i K' (mod 2K, 2iK').
Complex jacobi_elliptic(JacobiKind kind, ComplexPoint u, EllipticModulus k);

struct JacobiTriple {
  Complex sn;
  Complex cn;
  Complex dn;
};
JacobiTriple jacobi_sncndn(ComplexPoint u, EllipticModulus k);

// Distance from u to the nearest point of the common pole lattice
// i K' + 2mK + 2n i K'.
double jacobi_pole_distance(Complex u, EllipticModulus k);

// Complete elliptic integral of the first kind K(k) by the AGM.
double elliptic_k(EllipticModulus k);

// K'(k) = K(k'), computed from AGM(1, k) directly.
double elliptic_k_complement(EllipticModulus k);

inline constexpr double kPoleRadius = 1e-6;

}  // namespace zmeta
