#include "zmeta/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>

#include "zmeta/errors.hpp"
#include "zmeta/numerics.hpp"

namespace zmeta {

namespace {

constexpr double kGammaMinimum = 1.4616321449683623;  // argmin of Gamma on (0, inf)
constexpr int kPathSamples = 64;
constexpr int kGridCells = 64;
constexpr std::array<double, 4> kGridRadii{4.0, 16.0, 64.0, 256.0};

Complex ipow(Complex s, int n) {
  Complex r = 1.0;
  Complex b = s;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

bool lex_less(Complex a, Complex b) {
  return std::make_tuple(std::abs(a), a.real(), a.imag()) <
         std::make_tuple(std::abs(b), b.real(), b.imag());
}

// |F| - v, or nullopt where F is excluded (pole disk) or not finite.
std::optional<double> gap(const LevelCurveSpec& spec, Complex s) {
  if (spec.family.pole_distance(s) < kPoleRadius) return std::nullopt;
  try {
    const double m = std::abs(spec.family.value(s));
    if (!std::isfinite(m)) return std::nullopt;
    return m - spec.target;
  } catch (const PoleError&) {
    return std::nullopt;
  }
}

std::optional<LevelPoint> certify(const LevelCurveSpec& spec, Complex s, std::string method) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return std::nullopt;
  const auto d = gap(spec, s);
  if (!d || std::abs(*d) > level_tolerance(spec.target)) return std::nullopt;
  LevelPoint p;
  p.spec = spec;
  p.s = ComplexPoint(s);
  p.residual = std::abs(*d);
  p.method = std::move(method);
  return p;
}

struct Path {
  std::string name;
  std::function<Complex(double)> at;
  double lo;
  double hi;
};

// Leftmost sign change of |F(path(tau))| - v on a uniform sample of the path.
std::optional<LevelPoint> solve_on_path(const LevelCurveSpec& spec, const Path& path) {
  const auto f = [&](double tau) {
    const auto d = gap(spec, path.at(tau));
    return d ? *d : std::numeric_limits<double>::quiet_NaN();
  };
  const double h = (path.hi - path.lo) / kPathSamples;
  double prev_tau = path.lo;
  double prev = f(prev_tau);
  if (prev == 0.0) return certify(spec, path.at(prev_tau), "path:" + path.name);
  for (int i = 1; i <= kPathSamples; ++i) {
    const double tau = (i == kPathSamples) ? path.hi : path.lo + i * h;
    const double cur = f(tau);
    if (cur == 0.0) return certify(spec, path.at(tau), "path:" + path.name);
    if (std::isfinite(prev) && std::isfinite(cur) && ((prev < 0.0) != (cur < 0.0))) {
      const auto root = numerics::bracketed_root(f, prev_tau, tau, prev, cur);
      if (root) {
        if (auto p = certify(spec, path.at(root->x), "path:" + path.name)) return p;
      }
    }
    prev_tau = tau;
    prev = cur;
  }
  return std::nullopt;
}

// First maximum of |J_p| on the positive real axis, to sample resolution.
double bessel_first_peak(BesselOrder p) {
  const int n = std::abs(p.p);
  if (n == 0) return 2.404825557695773;  // J_0 decreases to its first zero
  double best_x = 0.0;
  double best = 0.0;
  for (double x = 0.0; x <= n + 10.0; x += 1.0 / 64) {
    const double v = std::abs(bessel_j(p, x));
    if (v < best) break;
    best = v;
    best_x = x;
  }
  return best_x;
}

std::vector<Path> canonical_paths(const LevelCurveSpec& spec) {
  const LevelFamily& fam = spec.family;
  const double v = spec.target;
  std::vector<Path> paths;
  const auto real_axis = [](double x) { return Complex(x, 0.0); };
  const auto imag_axis = [](double y) { return Complex(0.0, y); };
  switch (fam.kind) {
    case FamilyKind::COSINE:
      if (v <= 1.0) {
        paths.push_back({"real", real_axis, 0.0, std::numbers::pi / 2});
      } else {
        paths.push_back({"imaginary", imag_axis, 0.0, std::acosh(v) + 1.0});
      }
      break;
    case FamilyKind::POWER:
      break;  // closed form
    case FamilyKind::RECIP_GAMMA:
      // 1/Gamma rises from 0 to 1/Gamma(x_min) on (0, x_min]; on 1/2 + iy it
      // rises from 1/sqrt(pi) without bound.
      paths.push_back({"real", real_axis, 0.0, kGammaMinimum});
      paths.push_back({"critical",
                       [](double y) { return Complex(0.5, y); }, 0.0,
                       std::log(2.0 * std::numbers::pi * v * v + 2.0) / std::numbers::pi + 1.0});
      break;
    case FamilyKind::BESSEL: {
      paths.push_back({"real", real_axis, 0.0, bessel_first_peak(fam.p)});
      // I_p(y) ~ e^y / sqrt(2 pi y)
      const double y_hi = std::max(4.0, std::log(v + 1.0) + 0.5 * std::log(2.0 * std::numbers::pi *
                                                                          (std::log(v + 1.0) + 1.0)) +
                                            std::abs(fam.p.p) + 2.0);
      paths.push_back({"imaginary", imag_axis, 0.0, y_hi});
      break;
    }
    case FamilyKind::JACOBI: {
      const double big_k = elliptic_k(fam.k);
      const double big_kp = elliptic_k_complement(fam.k);
      const double stop = big_kp - 2.0 * kPoleRadius;
      if (fam.jacobi == JacobiKind::DN) {
        paths.push_back({"real", real_axis, 0.0, big_k});
        paths.push_back({"vertical", [big_k](double y) { return Complex(big_k, y); }, 0.0, big_kp});
        paths.push_back({"imaginary", imag_axis, 0.0, stop});
      } else {
        paths.push_back({"real", real_axis, 0.0, big_k});
        paths.push_back({"imaginary", imag_axis, 0.0, stop});
      }
      break;
    }
  }
  return paths;
}

std::optional<LevelPoint> closed_form(const LevelCurveSpec& spec) {
  if (spec.family.kind != FamilyKind::POWER) return std::nullopt;
  const int n = spec.family.n;
  const double v = spec.target;
  const double r = (n == 1) ? v : (n == 2) ? std::sqrt(v) : (n == 3) ? std::cbrt(v)
                                                                    : std::pow(v, 1.0 / n);
  return certify(spec, Complex(r, 0.0), "closed-form");
}

}  // namespace

LevelFamily LevelFamily::cosine() { return {}; }

LevelFamily LevelFamily::power(int n) {
  if (n < 1) throw DomainError("power family needs n >= 1, got " + std::to_string(n));
  LevelFamily f;
  f.kind = FamilyKind::POWER;
  f.n = n;
  return f;
}

LevelFamily LevelFamily::recip_gamma() {
  LevelFamily f;
  f.kind = FamilyKind::RECIP_GAMMA;
  return f;
}

LevelFamily LevelFamily::bessel(BesselOrder p) {
  LevelFamily f;
  f.kind = FamilyKind::BESSEL;
  f.p = p;
  return f;
}

LevelFamily LevelFamily::jacobi_kind(JacobiKind kind, EllipticModulus k) {
  LevelFamily f;
  f.kind = FamilyKind::JACOBI;
  f.jacobi = kind;
  f.k = k;
  return f;
}

Complex LevelFamily::value(Complex s) const {
  switch (kind) {
    case FamilyKind::COSINE:
      return std::cos(s);
    case FamilyKind::POWER:
      return ipow(s, n);
    case FamilyKind::RECIP_GAMMA:
      return zmeta::recip_gamma(ComplexPoint(s));
    case FamilyKind::BESSEL:
      return bessel_j(p, ComplexPoint(s));
    case FamilyKind::JACOBI:
      return jacobi_elliptic(jacobi, ComplexPoint(s), k);
  }
  return 0.0;
}

Complex LevelFamily::derivative(Complex s) const {
  switch (kind) {
    case FamilyKind::COSINE:
      return -std::sin(s);
    case FamilyKind::POWER:
      return static_cast<double>(n) * ipow(s, n - 1);
    case FamilyKind::RECIP_GAMMA: {
      const double h = 1e-5 * std::max(1.0, std::abs(s));
      const auto f = [](Complex z) { return zmeta::recip_gamma(ComplexPoint(z)); };
      return (8.0 * (f(s + h) - f(s - h)) - (f(s + 2.0 * h) - f(s - 2.0 * h))) / (12.0 * h);
    }
    case FamilyKind::BESSEL:
      return 0.5 * (bessel_j({p.p - 1}, ComplexPoint(s)) - bessel_j({p.p + 1}, ComplexPoint(s)));
    case FamilyKind::JACOBI: {
      const JacobiTriple t = jacobi_sncndn(ComplexPoint(s), k);
      switch (jacobi) {
        case JacobiKind::SN:
          return t.cn * t.dn;
        case JacobiKind::CN:
          return -t.sn * t.dn;
        case JacobiKind::DN:
          return -k.k2() * t.sn * t.cn;
      }
      return 0.0;
    }
  }
  return 0.0;
}

double LevelFamily::pole_distance(Complex s) const {
  if (kind == FamilyKind::JACOBI) return jacobi_pole_distance(s, k);
  if (kind == FamilyKind::RECIP_GAMMA && s.real() < 0.5) {
    const double m = std::min(0.0, std::nearbyint(s.real()));
    return std::abs(s - Complex(m, 0.0));
  }
  return std::numeric_limits<double>::infinity();
}

std::string LevelFamily::name() const {
  std::ostringstream s;
  switch (kind) {
    case FamilyKind::COSINE:
      s << "cos";
      break;
    case FamilyKind::POWER:
      s << "pow" << n;
      break;
    case FamilyKind::RECIP_GAMMA:
      s << "rgamma";
      break;
    case FamilyKind::BESSEL:
      s << "J" << p.p;
      break;
    case FamilyKind::JACOBI:
      s << (jacobi == JacobiKind::SN ? "sn" : jacobi == JacobiKind::CN ? "cn" : "dn");
      s.precision(17);
      s << "(k=" << k.k() << ")";
      break;
  }
  return s.str();
}

double level_residual(const LevelCurveSpec& spec, Complex s) {
  return std::abs(std::abs(spec.family.value(s)) - spec.target);
}

LevelPoint level_point_grid(const LevelCurveSpec& spec) {
  if (!(spec.target > 0.0 && std::isfinite(spec.target))) {
    throw DomainError("level target must be positive and finite");
  }
  for (double radius : kGridRadii) {
    const int m = kGridCells + 1;
    const double h = 2.0 * radius / kGridCells;
    std::vector<std::optional<double>> d(static_cast<std::size_t>(m * m));
    const auto node = [&](int i, int j) {
      return Complex(-radius + i * h, -radius + j * h);
    };
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) d[j * m + i] = gap(spec, node(i, j));
    }
    std::optional<LevelPoint> best;
    const auto consider = [&](int i0, int j0, int i1, int j1) {
      const auto& a = d[j0 * m + i0];
      const auto& b = d[j1 * m + i1];
      if (!a || !b || ((*a < 0.0) == (*b < 0.0))) return;
      const Complex za = node(i0, j0);
      const Complex zb = node(i1, j1);
      const auto f = [&](double tau) {
        const auto g = gap(spec, za + tau * (zb - za));
        return g ? *g : std::numeric_limits<double>::quiet_NaN();
      };
      const auto root = numerics::bracketed_root(f, 0.0, 1.0, *a, *b);
      if (!root) return;
      auto p = certify(spec, za + root->x * (zb - za), "grid");
      if (p && (!best || lex_less(p->s, best->s))) best = std::move(p);
    };
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        if (d[j * m + i] && *d[j * m + i] == 0.0) {
          auto p = certify(spec, node(i, j), "grid");
          if (p && (!best || lex_less(p->s, best->s))) best = std::move(p);
        }
        if (i + 1 < m) consider(i, j, i + 1, j);
        if (j + 1 < m) consider(i, j, i, j + 1);
      }
    }
    if (best) return *best;
  }
  std::ostringstream msg;
  msg << "level search: no point with |" << spec.family.name() << "| = " << spec.target
      << " after " << kGridRadii.size() - 1 << " region expansions";
  throw SearchError(msg.str());
}

LevelPoint level_point(const LevelCurveSpec& spec) {
  if (!(spec.target > 0.0 && std::isfinite(spec.target))) {
    throw DomainError("level target must be positive and finite");
  }
  if (auto p = closed_form(spec)) return *p;
  for (const Path& path : canonical_paths(spec)) {
    if (auto p = solve_on_path(spec, path)) return *p;
  }
  return level_point_grid(spec);
}

LevelArc trace_level_arc(const LevelCurveSpec& spec, const LevelPoint& start, double step,
                         int count) {
  if (!(step > 1e-4 && step < 1e-1)) throw DomainError("arc step must lie in (1e-4, 1e-1)");
  LevelArc arc;
  if (count <= 0) return arc;
  const double v = spec.target;
  const double cert = 1e-9 * std::max(1.0, v);
  const double tight = 1e-14 * std::max(1.0, v);

  // log-modulus gradient direction at s: conj(F'/F).
  const auto grad = [&](Complex s) -> std::optional<Complex> {
    if (spec.family.pole_distance(s) < kPoleRadius) return std::nullopt;
    try {
      const Complex f = spec.family.value(s);
      const Complex w = spec.family.derivative(s) / f;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
      return std::conj(w);
    } catch (const PoleError&) {
      return std::nullopt;
    }
  };
  // Newton along a fixed normal direction.
  const auto correct = [&](Complex s, Complex normal) -> std::optional<Complex> {
    for (int it = 0; it < 12; ++it) {
      const auto d = gap(spec, s);
      if (!d) return std::nullopt;
      if (std::abs(*d) <= tight) return s;
      const auto g = grad(s);
      if (!g) return std::nullopt;
      const double slope = (*d + v) * (std::real(*g) * normal.real() + std::imag(*g) * normal.imag());
      if (slope == 0.0 || !std::isfinite(slope)) break;
      s -= (*d / slope) * normal;
    }
    const auto d = gap(spec, s);
    if (d && std::abs(*d) <= cert) return s;
    return std::nullopt;
  };

  Complex s = start.s;
  arc.vertices.push_back(start.s);
  arc.residuals.push_back(level_residual(spec, s));
  Complex heading = 0.0;
  while (static_cast<int>(arc.vertices.size()) < count) {
    const auto g = grad(s);
    if (!g) {
      arc.truncated = true;
      arc.reason = "pole exclusion zone";
      break;
    }
    std::optional<Complex> next;
    const double gnorm = std::abs(*g);
    if (gnorm > 1e-8) {
      Complex tangent = Complex(0.0, 1.0) * *g / gnorm;
      if (heading != 0.0 && (tangent.real() * heading.real() + tangent.imag() * heading.imag()) < 0.0) {
        tangent = -tangent;
      }
      next = correct(s + step * tangent, *g / gnorm);
      if (next) heading = *next - s;
    } else {
      // Critical point of F: several branches cross. Take the first of 16
      // directions (counterclockwise from the previous heading) that corrects.
      const double base = (heading == 0.0) ? 0.0 : std::arg(heading);
      for (int q = 0; q < 16 && !next; ++q) {
        const Complex dir = std::polar(1.0, base + q * std::numbers::pi / 8);
        const Complex trial = s + step * dir;
        const auto gt = grad(trial);
        if (!gt || std::abs(*gt) == 0.0) continue;
        next = correct(trial, *gt / std::abs(*gt));
      }
      if (next) heading = *next - s;
    }
    if (!next) {
      arc.truncated = true;
      arc.reason = "corrector did not converge";
      break;
    }
    if (spec.family.pole_distance(*next) < 10.0 * kPoleRadius) {
      arc.truncated = true;
      arc.reason = "pole exclusion zone";
      break;
    }
    s = *next;
    arc.vertices.push_back(ComplexPoint(s));
    arc.residuals.push_back(level_residual(spec, s));
  }
  return arc;
}

void ParameterSet::validate() const {
  for (int i = 0; i < 6; ++i) {
    if (n[i] < 1) throw DomainError("n" + std::to_string(i + 1) + " must be a positive integer");
    if (!(k[i] > 0.0 && k[i] < 1.0)) {
      throw DomainError("k" + std::to_string(i + 1) + " must satisfy 0 < k^2 < 1");
    }
  }
}

LevelFamily slot_family(Slot slot, const ParameterSet& params) {
  if (slot.n < 3 || slot.n > 12 || slot.l < 1 || slot.l > 3) {
    throw DomainError("slot out of range: (" + std::to_string(slot.n) + ", " +
                      std::to_string(slot.l) + ")");
  }
  const bool second = slot.n >= 8;
  const int idx = slot.l - 1 + (second ? 3 : 0);
  switch (second ? slot.n - 5 : slot.n) {
    case 3:
      return LevelFamily::cosine();
    case 4:
      return LevelFamily::power(params.n[idx]);
    case 5:
      return LevelFamily::recip_gamma();
    case 6:
      return LevelFamily::bessel({params.p[idx]});
    default:
      return LevelFamily::jacobi_kind(kJacobiByWeight[slot.l - 1], EllipticModulus(params.k[idx]));
  }
}

std::array<double, 3> first_generation_targets(const MotherInstance& inst) {
  return {std::sqrt(inst.g[0]), std::sqrt(inst.g[1]), inst.g[2]};
}

LevelAssignment build_level_assignments(const MotherInstance& inst, const ParameterSet& params) {
  params.validate();
  const auto h = first_generation_targets(inst);
  LevelAssignment out;
  for (int n = 3; n <= 12; ++n) {
    for (int l = 1; l <= 3; ++l) {
      LevelCurveSpec spec;
      spec.slot = {n, l};
      spec.family = slot_family(spec.slot, params);
      spec.generation = n <= 7 ? Generation::FIRST : Generation::SECOND;
      spec.target = n <= 7 ? h[l - 1] : inst.c[l - 1];
      try {
        out.points[n - 3][l - 1] = level_point(spec);
      } catch (const SearchError& e) {
        throw SearchError("slot (" + std::to_string(n) + ", " + std::to_string(l) +
                          "): " + e.what());
      }
    }
  }
  return out;
}

}  // namespace zmeta
