#include "zmeta/zeta_line.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "zmeta/errors.hpp"
#include "zmeta/specfun.hpp"

namespace zmeta {

namespace {

constexpr double kDegenerateC = 1e-12;
constexpr int kDegenerateRetries = 3;
constexpr double kExactTol = 1e-8;

numerics::QuadratureOptions quad_options(double rel_tol) {
  numerics::QuadratureOptions o;
  o.rel_tol = rel_tol;
  return o;
}

double z2(double t) {
  const double z = hardy_z(t);
  return z * z;
}

// phi_1(x) = target for x in [target, ...), widening the bracket upward.
double preimage(double target, const LadderModel& model) {
  double lo = target;
  double hi = 2.0 * target;
  if (model.kind == LadderKind::AFFINE) {
    // Exact, but solved the same way so both models share the residual check.
    lo = target + model.delta - 1.0;
    hi = target + model.delta + 1.0;
  }
  const auto f = [&](double x) { return ladder_phi1(x, model) - target; };
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo <= 0.0 && fhi >= 0.0) {
      if (flo == 0.0) return lo;
      if (fhi == 0.0) return hi;
      const auto root = numerics::bracketed_root(f, lo, hi, flo, fhi);
      if (root && std::abs(root->fx) <= 1e-10 * target) return root->x;
      break;
    }
    hi = lo + 2.0 * (hi - lo);
  }
  std::ostringstream msg;
  msg << "reverse iteration: no preimage bracket for " << target << " under "
      << model.describe();
  throw SearchError(msg.str());
}

}  // namespace

Segment::Segment(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo >= 0.0 && lo <= hi)) {
    std::ostringstream msg;
    msg << "segment requires 0 <= lo <= hi, got [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

Segment base_segment(double U, int L) {
  if (!(U > 0.0 && U < std::numbers::pi / 4)) {
    throw DomainError("U must lie in (0, pi/4), got " + std::to_string(U));
  }
  if (L < kMinL) {
    throw DomainError("L must be at least " + std::to_string(kMinL) + ", got " +
                      std::to_string(L));
  }
  const double lo = std::numbers::pi * L;
  return Segment(lo, lo + U);
}

std::string LadderModel::describe() const {
  if (kind == LadderKind::ASYMPTOTIC) return "asymptotic";
  std::ostringstream s;
  s.precision(17);
  s << "affine:" << delta;
  return s.str();
}

double ladder_phi1(double T, const LadderModel& model) {
  if (model.kind == LadderKind::AFFINE) {
    if (!(T > 0.0)) throw DomainError("ladder: T must be positive");
    return T - model.delta;
  }
  if (!(T > std::exp(2.0))) throw DomainError("ladder: asymptotic model needs T > e^2");
  return T - (1.0 - std::numbers::egamma) * T / std::log(T);
}

double ladder_phi1_derivative(double T, const LadderModel& model) {
  if (model.kind == LadderKind::AFFINE) return 1.0;
  if (!(T > std::exp(2.0))) throw DomainError("ladder: asymptotic model needs T > e^2");
  const double lt = std::log(T);
  return 1.0 - (1.0 - std::numbers::egamma) * (lt - 1.0) / (lt * lt);
}

double ladder_phi1_increment(double T, double tau, const LadderModel& model) {
  if (model.kind == LadderKind::AFFINE) return tau;
  if (!(T > std::exp(2.0) && T + tau > std::exp(2.0))) {
    throw DomainError("ladder: asymptotic model needs T > e^2");
  }
  // (T+tau)/ln(T+tau) - T/ln T without cancelling the leading terms.
  const double lt = std::log(T);
  const double d = std::log1p(tau / T);
  const double dh = (tau * lt - T * d) / (lt * (lt + d));
  return tau - (1.0 - std::numbers::egamma) * dh;
}

Segment reverse_iterate(const Segment& seg, const LadderModel& model) {
  return Segment(preimage(seg.lo, model), preimage(seg.hi, model));
}

double hl_integral(const Segment& seg, double rel_tol) {
  if (seg.lo == seg.hi) return 0.0;
  return numerics::integrate(z2, seg.lo, seg.hi, quad_options(rel_tol)).value;
}

double weight(WeightKind l, double t) {
  switch (l) {
    case WeightKind::SIN2: {
      const double s = std::sin(t);
      return s * s;
    }
    case WeightKind::COS2: {
      const double c = std::cos(t);
      return c * c;
    }
    case WeightKind::COS2T:
      return std::cos(2.0 * t);
  }
  return 0.0;
}

double weight_at(WeightKind l, double anchor, double offset) {
  if (l == WeightKind::COS2T) {
    const double a2 = 2.0 * anchor;
    const double x2 = 2.0 * offset;
    return std::cos(a2) * std::cos(x2) - std::sin(a2) * std::sin(x2);
  }
  const double s = std::sin(anchor) * std::cos(offset) + std::cos(anchor) * std::sin(offset);
  const double c = std::cos(anchor) * std::cos(offset) - std::sin(anchor) * std::sin(offset);
  return (l == WeightKind::SIN2) ? s * s : c * c;
}

MeanValuePoint mean_value_crossing(const std::function<double(double)>& g, const Segment& seg,
                                   int cells, double rel_tol) {
  if (!(seg.lo < seg.hi)) throw DomainError("mean value: empty segment");
  if (cells < 1) throw DomainError("mean value: need at least one scan cell");
  MeanValuePoint out;
  out.cells = cells;
  out.integral = numerics::integrate(g, seg.lo, seg.hi, quad_options(rel_tol)).value;
  out.mean = out.integral / seg.length();

  const double h = seg.length() / cells;
  std::vector<double> d(static_cast<std::size_t>(cells) + 1);
  double scale = 0.0;
  for (int i = 0; i <= cells; ++i) {
    const double t = (i == cells) ? seg.hi : seg.lo + i * h;
    const double v = g(t);
    d[i] = v - out.mean;
    scale = std::max(scale, std::abs(v));
  }
  const auto dev = std::max_element(d.begin(), d.end(),
                                    [](double x, double y) { return std::abs(x) < std::abs(y); });
  const bool constant = std::abs(*dev) <= 1e-13 * scale;

  const auto f = [&](double t) { return g(t) - out.mean; };
  if (!constant) {
    for (int i = 0; i < cells; ++i) {
      const double a = (i == 0) ? seg.lo : seg.lo + i * h;
      const double b = (i + 1 == cells) ? seg.hi : seg.lo + (i + 1) * h;
      if (i > 0 && d[i] == 0.0) {
        out.alpha = a;
        return out;
      }
      if ((d[i] < 0.0 && d[i + 1] > 0.0) || (d[i] > 0.0 && d[i + 1] < 0.0)) {
        const auto root = numerics::bracketed_root(f, a, b, d[i], d[i + 1]);
        if (root && root->x > seg.lo && root->x < seg.hi) {
          out.alpha = root->x;
          return out;
        }
      }
    }
  }
  out.alpha = 0.5 * (seg.lo + seg.hi);
  out.flagged = true;
  return out;
}

MeanValuePoint mean_value_abscissa(WeightKind l, const Segment& lifted, const LadderModel& model,
                                   int cells, double rel_tol) {
  const double anchor = ladder_phi1(lifted.lo, model);
  const auto g = [&](double t) {
    return z2(t) * weight_at(l, anchor, ladder_phi1_increment(lifted.lo, t - lifted.lo, model));
  };
  return mean_value_crossing(g, lifted, cells, rel_tol);
}

double MotherInstance::three_term_residual() const {
  const double m = std::max({a[0], a[1], a[2]});
  return std::abs(a[0] - a[1] + a[2]) / m;
}

MotherInstance build_mother_instance(double U, int L, const LadderModel& model, MotherMode mode,
                                     double quad_rel_tol) {
  MotherInstance inst;
  inst.U = U;
  inst.L = L;
  inst.model = model;
  inst.mode = mode;
  inst.base = base_segment(U, L);
  inst.lifted = reverse_iterate(inst.base, model);
  // phi_1(t) and the translation surrogate, both as base.lo + offset(t) so
  // the weights stay well conditioned when the offset is small.
  const double T0 = inst.lifted.lo;
  const double phi_offset0 = ladder_phi1(T0, model) - inst.base.lo;
  const auto ladder_offset = [&](double t) {
    return phi_offset0 + ladder_phi1_increment(T0, t - T0, model);
  };
  const auto shift_offset = [&](double t) { return t - T0; };

  for (int i = 0; i < 3; ++i) {
    const WeightKind l = kWeights[i];
    std::function<double(double)> g;
    if (mode == MotherMode::EXACT) {
      g = [&](double t) { return z2(t) * weight_at(l, inst.base.lo, ladder_offset(t)); };
    } else {
      g = [&](double t) { return z2(t) * weight_at(l, inst.base.lo, shift_offset(t)); };
    }
    MeanValuePoint mv;
    double c = 0.0;
    int cells = 1024;
    for (int attempt = 0; attempt <= kDegenerateRetries; ++attempt, cells *= 2) {
      mv = mean_value_crossing(g, inst.lifted, cells, quad_rel_tol);
      c = std::abs(hardy_z(mv.alpha));
      if (c >= kDegenerateC) break;
    }
    if (c < kDegenerateC) {
      std::ostringstream msg;
      msg << "mother instance: abscissa " << mv.alpha << " for weight " << (i + 1)
          << " sits on a zero of zeta after " << kDegenerateRetries << " retries";
      throw ConstructionError(msg.str());
    }
    inst.alpha1[i] = mv.alpha;
    const double x0 = ladder_offset(mv.alpha);
    inst.alpha0[i] = inst.base.lo + x0;
    inst.c[i] = c;
    inst.g[i] = weight_at(l, inst.base.lo, x0);
    inst.a[i] = c * c * inst.g[i];
    inst.flagged[i] = mv.flagged;
    inst.mean_defect[i] =
        std::abs(g(mv.alpha) * inst.lifted.length() - mv.integral) / std::abs(mv.integral);

    if (!(x0 > 0.0 && x0 < U && inst.alpha0[i] > inst.base.lo && inst.alpha0[i] < inst.base.hi)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "mother instance: alpha0 for weight " << (i + 1) << " = " << inst.alpha0[i]
          << " outside (" << inst.base.lo << ", " << inst.base.hi << ")";
      throw ConstructionError(msg.str());
    }
  }
  inst.theta = (inst.a[0] + inst.a[2]) / inst.a[1];

  if (mode == MotherMode::EXACT) {
    if (inst.three_term_residual() > kExactTol || std::abs(inst.theta - 1.0) > kExactTol) {
      std::ostringstream msg;
      msg << "mother instance: exact mode certification failed (three-term residual "
          << inst.three_term_residual() << ", theta - 1 = " << inst.theta - 1.0 << ")";
      throw ConstructionError(msg.str());
    }
  }
  return inst;
}

}  // namespace zmeta
