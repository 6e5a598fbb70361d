#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>

namespace zmeta::numerics {

#ifdef __FAST_MATH__
#error "compensated summation is defeated by -ffast-math"
#endif

// Neumaier's variant of Kahan summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const noexcept { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

template <typename T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<T> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // sum of per-panel Kronrod-Gauss differences
  int panels = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-11;
  int max_depth = 40;
  int max_panels = 1 << 16;
};

// Single 15-point Kronrod panel; `gauss` receives the embedded 7-point result.
double kronrod15(const std::function<double(double)>& f, double a, double b,
                 double* gauss = nullptr);

// Adaptive bisection with Gauss-Kronrod 7/15 panels. The splitting is fixed
// (midpoints only) and the reduction ordered left to right, so the result is a
// pure function of (f, a, b, options). Throws AccuracyError when a panel hits
// max_depth without meeting its share of the tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Bisection on a sign-changing bracket down to adjacent doubles, then up to a
// few Newton steps (numerical derivative) that are kept only while they stay
// inside the final bracket and reduce |f|. Returns nullopt if f(lo), f(hi) do
// not straddle zero.
std::optional<RootResult> bracketed_root(const std::function<double(double)>& f, double lo,
                                         double hi);

// Same, with known endpoint values.
std::optional<RootResult> bracketed_root(const std::function<double(double)>& f, double lo,
                                         double hi, double f_lo, double f_hi);

}  // namespace zmeta::numerics
