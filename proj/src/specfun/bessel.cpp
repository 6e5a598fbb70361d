#include <cmath>
#include <vector>

#include "zmeta/errors.hpp"
#include "zmeta/numerics.hpp"
#include "zmeta/specfun.hpp"

namespace zmeta {

namespace {

constexpr double kSeriesRadius = 12.0;
constexpr double kRescale = 1e250;

}  // namespace

Complex bessel_j_series(int n, Complex s) {
  if (n < 0) throw DomainError("bessel_j_series: order must be nonnegative");
  const Complex half = 0.5 * s;
  // (s/2)^n / n!
  Complex lead = 1.0;
  for (int j = 1; j <= n; ++j) lead *= half / static_cast<double>(j);
  if (s == Complex(0.0, 0.0)) return n == 0 ? Complex(1.0) : Complex(0.0);

  const Complex q = -half * half;
  numerics::CompensatedSum<Complex> acc;
  Complex term = 1.0;
  acc.add(term);
  double max_term = 1.0;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * static_cast<double>(m + n));
    acc.add(term);
    max_term = std::max(max_term, std::abs(term));
    if (m > std::abs(half) && std::abs(term) <= 1e-18 * max_term) break;
  }
  return lead * acc.value();
}

Complex bessel_j_recurrence(int n, Complex s) {
  if (n < 0) throw DomainError("bessel_j_recurrence: order must be nonnegative");
  if (s == Complex(0.0, 0.0)) return n == 0 ? Complex(1.0) : Complex(0.0);
  const double r = std::abs(s);
  const double top = std::max<double>(n, r);
  int start = static_cast<int>(top + 30.0 + 10.0 * std::sqrt(top));
  start += start % 2;

  // Normalise with exp(-+ i s) = J_0 + 2 sum_{m>=1} (-+i)^m J_m, taking the
  // sign for which the left side is exp(|Im s|).
  const Complex unit = (s.imag() >= 0.0) ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
  const Complex target = std::exp(unit * s);

  Complex next = 0.0;    // J_{m+1}
  Complex cur = 1e-300;  // J_m, m = start
  Complex wanted = 0.0;
  numerics::CompensatedSum<Complex> norm;
  std::vector<Complex> unit_pow(static_cast<std::size_t>(start) + 1);
  unit_pow[0] = 1.0;
  for (int m = 1; m <= start; ++m) {
    const int k = m % 4;
    unit_pow[m] = (k == 0) ? Complex(1.0) : (k == 1) ? unit : (k == 2) ? Complex(-1.0) : -unit;
  }
  // The recurrence runs in a scaled frame; everything accumulated so far is
  // rescaled together whenever the magnitudes grow too large.
  const Complex two_over_s = 2.0 / s;
  for (int m = start; m >= 0; --m) {
    if (m == n) wanted = cur;
    norm.add((m == 0 ? 1.0 : 2.0) * unit_pow[m] * cur);
    if (m == 0) break;
    const Complex prev = static_cast<double>(m) * two_over_s * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > kRescale) {
      const double f = 1.0 / kRescale;
      cur *= f;
      next *= f;
      wanted *= f;
      const Complex v = norm.value() * f;
      norm = {};
      norm.add(v);
    }
  }
  return wanted * (target / norm.value());
}

Complex bessel_j(BesselOrder order, ComplexPoint sp) {
  const Complex s = sp.value();
  const int n = std::abs(order.p);
  const Complex v =
      (std::abs(s) <= kSeriesRadius) ? bessel_j_series(n, s) : bessel_j_recurrence(n, s);
  return (order.p < 0 && n % 2 == 1) ? -v : v;
}

}  // namespace zmeta
