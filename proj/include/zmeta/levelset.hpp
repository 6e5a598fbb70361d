#pragma once

// Points on level curves |F(s)| = v for the five function families used by
// the transmutations, and arcs along those curves.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "zmeta/specfun.hpp"
#include "zmeta/zeta_line.hpp"

namespace zmeta {

enum class FamilyKind { COSINE, POWER, RECIP_GAMMA, BESSEL, JACOBI };

struct LevelFamily {
  FamilyKind kind = FamilyKind::COSINE;
  int n = 1;                          // POWER
  BesselOrder p{};                    // BESSEL
  JacobiKind jacobi = JacobiKind::SN;  // JACOBI
  EllipticModulus k{0.5};             // JACOBI

  static LevelFamily cosine();
  static LevelFamily power(int n);
  static LevelFamily recip_gamma();
  static LevelFamily bessel(BesselOrder p);
  static LevelFamily jacobi_kind(JacobiKind kind, EllipticModulus k);

  Complex value(Complex s) const;
  Complex derivative(Complex s) const;
  // Distance to the nearest excluded pole (Gamma poles for RECIP_GAMMA, the
  // lattice for JACOBI); infinity for the other families.
  double pole_distance(Complex s) const;
  std::string name() const;
};

enum class Generation { FIRST, SECOND };

struct Slot {
  int n = 3;  // 3..12
  int l = 1;  // 1..3
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct LevelCurveSpec {
  LevelFamily family;
  double target = 1.0;
  Generation generation = Generation::SECOND;
  Slot slot{};
};

struct LevelPoint {
  LevelCurveSpec spec;
  ComplexPoint s{0.0};
  double residual = 0.0;  // ||F(s)| - v|
  std::string method;     // closed-form, path:<name> or grid
};

inline double level_tolerance(double v) { return 1e-10 * std::max(1.0, v); }

// ||F(s)| - v| for the spec's family.
double level_residual(const LevelCurveSpec& spec, Complex s);

// Closed form or canonical path first, grid search second. Throws SearchError
// when nothing certifies, DomainError for a nonpositive target.
LevelPoint level_point(const LevelCurveSpec& spec);

// The grid search on its own: 64 x 64 cells over [-R, R]^2, R = 4, 16, 64, 256.
// Among certified candidates the minimum of (|s|, Re s, Im s) wins.
LevelPoint level_point_grid(const LevelCurveSpec& spec);

struct LevelArc {
  std::vector<ComplexPoint> vertices;  // starts with the start point
  std::vector<double> residuals;
  bool truncated = false;
  std::string reason;
};

// Predictor-corrector walk of `count` vertices along |F(s)| = v with arc
// step `step`. Every vertex is re-certified to 1e-9 max(1, v).
LevelArc trace_level_arc(const LevelCurveSpec& spec, const LevelPoint& start, double step,
                         int count);

struct ParameterSet {
  std::array<int, 6> n{1, 1, 1, 1, 1, 1};
  std::array<int, 6> p{0, 1, 2, 0, 1, 2};
  std::array<double, 6> k{0.3, 0.5, 0.7, 0.4, 0.6, 0.8};

  // Throws DomainError unless n >= 1 and 0 < k < 1 componentwise.
  void validate() const;
  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

inline constexpr std::array<JacobiKind, 3> kJacobiByWeight{JacobiKind::SN, JacobiKind::CN,
                                                           JacobiKind::DN};

// Family for slot (n, l): 3/8 cosine, 4/9 power, 5/10 recip gamma, 6/11
// Bessel, 7/12 Jacobi, parameters index l for n <= 7 and l + 3 above.
LevelFamily slot_family(Slot slot, const ParameterSet& params);

// First-generation targets: |sin alpha0_1|, |cos alpha0_2|, cos 2 alpha0_3.
std::array<double, 3> first_generation_targets(const MotherInstance& inst);

struct LevelAssignment {
  std::array<std::array<LevelPoint, 3>, 10> points;  // [n - 3][l - 1]

  const LevelPoint& at(int n, int l) const { return points.at(n - 3).at(l - 1); }
};

// Throws SearchError annotated with the slot on failure.
LevelAssignment build_level_assignments(const MotherInstance& inst, const ParameterSet& params);

}  // namespace zmeta
