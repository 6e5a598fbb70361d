#pragma once

// Mean values of |zeta(1/2+it)|^2 over a lifted segment of the critical line,
// and the three-term abscissa construction built on top of them.

#include <array>
#include <functional>
#include <string>

#include "zmeta/numerics.hpp"

namespace zmeta {

// Points on the t-axis with 0 <= lo <= hi.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;

  Segment() = default;
  Segment(double lo, double hi);

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

inline constexpr int kMinL = 10;

// [pi L, pi L + U]; requires 0 < U < pi/4 and L >= kMinL.
Segment base_segment(double U, int L);

enum class LadderKind { ASYMPTOTIC, AFFINE };

// phi_1: ASYMPTOTIC is T - (1 - gamma) T / ln T, AFFINE(delta) is T - delta.
struct LadderModel {
  LadderKind kind = LadderKind::ASYMPTOTIC;
  double delta = 0.0;

  static LadderModel asymptotic() { return {LadderKind::ASYMPTOTIC, 0.0}; }
  static LadderModel affine(double delta) { return {LadderKind::AFFINE, delta}; }

  std::string describe() const;
  friend bool operator==(const LadderModel&, const LadderModel&) = default;
};

// Throws DomainError for T <= e^2 (ASYMPTOTIC) or T <= 0.
double ladder_phi1(double T, const LadderModel& model);
double ladder_phi1_derivative(double T, const LadderModel& model);
// phi_1(T + tau) - phi_1(T), accurate for small tau.
double ladder_phi1_increment(double T, double tau, const LadderModel& model);

// Preimage of seg under phi_1. Throws SearchError if no bracket is found.
Segment reverse_iterate(const Segment& seg, const LadderModel& model);

// Integral of Z(t)^2 over seg. Throws AccuracyError on non-convergence.
double hl_integral(const Segment& seg, double rel_tol = 1e-11);

// f_1 = sin^2, f_2 = cos^2, f_3 = cos 2t.
enum class WeightKind { SIN2 = 1, COS2 = 2, COS2T = 3 };
double weight(WeightKind l, double t);
// f_l(anchor + offset) by the addition formulas; for large anchors and small
// offsets this keeps the offset's full relative accuracy.
double weight_at(WeightKind l, double anchor, double offset);
inline constexpr std::array<WeightKind, 3> kWeights{WeightKind::SIN2, WeightKind::COS2,
                                                    WeightKind::COS2T};

struct MeanValuePoint {
  double alpha = 0.0;     // abscissa with g(alpha) = mean
  double mean = 0.0;      // integral / length
  double integral = 0.0;
  bool flagged = false;   // no crossing: alpha is the midpoint
  int cells = 0;          // scan resolution that produced alpha
};

// Mean-value point of an arbitrary integrand: leftmost sign change of
// g - mean on a uniform scan, refined by bisection.
MeanValuePoint mean_value_crossing(const std::function<double(double)>& g, const Segment& seg,
                                   int cells = 1024, double rel_tol = 1e-11);

// Mean-value point of G_l(t) = Z(t)^2 f_l(phi_1(t)) over the lifted segment.
MeanValuePoint mean_value_abscissa(WeightKind l, const Segment& lifted, const LadderModel& model,
                                   int cells = 1024, double rel_tol = 1e-11);

enum class MotherMode { EXACT, ASYMPTOTIC };

struct MotherInstance {
  double U = 0.0;
  int L = 0;
  LadderModel model;
  MotherMode mode = MotherMode::EXACT;
  Segment base;
  Segment lifted;
  std::array<double, 3> alpha1{};
  std::array<double, 3> alpha0{};
  std::array<double, 3> c{};  // |Z(alpha1)|
  std::array<double, 3> g{};  // f_l(alpha0)
  std::array<double, 3> a{};  // c^2 g
  std::array<double, 3> mean_defect{};  // |G(alpha1)|lifted| - int G| / |int G|
  std::array<bool, 3> flagged{};
  double theta = 0.0;  // (a1 + a3) / a2

  // |a1 - a2 + a3| / max a_l
  double three_term_residual() const;
};

// EXACT: alpha1 is the mean-value point of Z^2 f_l(phi_1(t)), so a_l is the
// exact mean and theta = 1 up to quadrature error (certified; ConstructionError
// otherwise). ASYMPTOTIC: alpha1 is the mean-value point of Z^2 f_l(t - d)
// with d the offset of the lifted segment, and alpha0 = phi_1(alpha1); theta
// then differs from 1 by the ladder's departure from a translation.
MotherInstance build_mother_instance(double U, int L, const LadderModel& model, MotherMode mode,
                                     double quad_rel_tol = 1e-11);

}  // namespace zmeta
