// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles/oracles.hpp"
#include "zmeta/equations.hpp"
#include "zmeta/errors.hpp"
#include "zmeta/harness.hpp"
#include "zmeta/levelset.hpp"
#include "zmeta/specfun.hpp"
#include "zmeta/zeta_line.hpp"

namespace {

using namespace zmeta;
using std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const double kGridU[] = {pi / 16, pi / 8, pi / 5};
const int kGridL[] = {20, 100, 500};

Outcome special_function_identities() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto box = [&](double r) { return Complex(r * (2 * u(rng) - 1), r * (2 * u(rng) - 1)); };

  double jac = 0.0;
  int jac_n = 0, jac_poles = 0;
  while (jac_n < 10000) {
    const EllipticModulus k(std::sqrt(0.05 + 0.9 * u(rng)));
    const Complex z = box(3.0);
    try {
      const auto t = jacobi_sncndn(ComplexPoint(z), k);
      const double scale = std::max({1.0, std::norm(t.sn), std::norm(t.cn), std::norm(t.dn)});
      jac = std::max(jac, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) / scale);
      jac = std::max(jac, std::abs(t.dn * t.dn + k.k2() * t.sn * t.sn - 1.0) / scale);
      ++jac_n;
    } catch (const PoleError&) {
      ++jac_poles;
    }
  }

  double rec = 0.0, refl = 0.0;
  int gam_n = 0;
  while (gam_n < 1000) {
    const Complex s = box(6.0);
    try {
      const Complex g = gamma_complex(ComplexPoint(s));
      const Complex g1 = gamma_complex(ComplexPoint(s + 1.0));
      const Complex gr = gamma_complex(ComplexPoint(1.0 - s));
      rec = std::max(rec, std::abs(g1 - s * g) / std::abs(g1));
      const Complex rhs = pi / std::sin(pi * s);
      refl = std::max(refl, std::abs(g * gr - rhs) / std::abs(rhs));
      ++gam_n;
    } catch (const PoleError&) {
    }
  }

  double bes = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int p = static_cast<int>(rng() % 13) - 6;
    Complex s = box(20.0);
    if (std::abs(s) < 1e-3) s += 1.0;
    const Complex jm = bessel_j({p - 1}, ComplexPoint(s));
    const Complex j0 = bessel_j({p}, ComplexPoint(s));
    const Complex jp = bessel_j({p + 1}, ComplexPoint(s));
    const Complex mid = 2.0 * p / s * j0;
    const double scale = std::max({std::abs(jm), std::abs(jp), std::abs(mid)});
    bes = std::max(bes, std::abs(jm + jp - mid) / scale);
  }

  Outcome o;
  o.pass = jac <= 1e-10 && rec <= 1e-10 && refl <= 1e-10 && bes <= 1e-9;
  o.detail = "jacobi " + sci(jac) + " (" + std::to_string(jac_n) + " samples, " +
             std::to_string(jac_poles) + " pole rejections), gamma recurrence " + sci(rec) +
             ", reflection " + sci(refl) + ", bessel recurrence " + sci(bes);
  return o;
}

Outcome critical_line_cross_validation() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const double z = hardy_z(t);
    const double ref = static_cast<double>(oracle::zeta_abs2_em(t));
    worst = std::max(worst, std::abs(z * z - ref) / ref);
  }
  return {worst <= 1e-8, "max relative deviation " + sci(worst) + " over 1000 points"};
}

Outcome mother_formula_exact() {
  double res = 0.0, theta = 0.0;
  bool contained = true;
  for (double U : kGridU) {
    for (int L : kGridL) {
      const auto m = build_mother_instance(U, L, LadderModel::asymptotic(), MotherMode::EXACT);
      const double amax = std::max({m.a[0], m.a[1], m.a[2]});
      res = std::max(res, std::abs(m.a[0] - m.a[1] + m.a[2]) / amax);
      theta = std::max(theta, std::abs(m.theta - 1.0));
      for (double x : m.alpha0) contained = contained && x > pi * L && x < pi * L + U;
    }
  }
  return {res <= 1e-8 && theta <= 1e-8 && contained,
          "max |a1 - a2 + a3| / max a " + sci(res) + ", max |theta - 1| " + sci(theta) +
              (contained ? ", all points inside" : ", a point lies outside its segment")};
}

struct GridRun {
  int transmutations = 0;
  int equations = 0;
  double term_defect = 0.0;
  std::vector<double> residuals;
  std::string error;
};

GridRun certify_grid(const LadderModel& ladder) {
  GridRun g;
  const auto draws = draw_parameter_sets(1, 3);
  for (double U : kGridU) {
    for (int L : kGridL) {
      const auto m = build_mother_instance(U, L, ladder, MotherMode::ASYMPTOTIC);
      for (const auto& ps : draws) {
        try {
          const auto gen = second_generation(m, build_level_assignments(m, ps), 1.0);
          for (const auto& t : gen.transmutations) {
            ++g.transmutations;
            for (double d : t.term_defect) g.term_defect = std::max(g.term_defect, d);
          }
          for (const auto& e : gen.equations) {
            ++g.equations;
            g.residuals.push_back(e.residual);
          }
        } catch (const std::exception& e) {
          if (g.error.empty()) g.error = e.what();
        }
      }
    }
  }
  return g;
}

Outcome transmutation_certification() {
  const auto g = certify_grid(LadderModel::asymptotic());
  Outcome o;
  o.pass = g.error.empty() && g.transmutations == 135 && g.term_defect <= 1e-8;
  o.detail = std::to_string(g.transmutations) + " instances, max |b - a| / a " + sci(g.term_defect);
  if (!g.error.empty()) o.detail += "; " + g.error;
  return o;
}

Outcome theorem_certification() {
  const auto a = certify_grid(LadderModel::asymptotic());
  const auto b = certify_grid(LadderModel::affine(3.0));
  double worst = 0.0, swap = 0.0;
  for (double r : a.residuals) worst = std::max(worst, r);
  const bool same_count = a.residuals.size() == b.residuals.size();
  for (std::size_t i = 0; same_count && i < a.residuals.size(); ++i) {
    swap = std::max(swap, std::abs(a.residuals[i] - b.residuals[i]));
  }
  Outcome o;
  o.pass = a.error.empty() && b.error.empty() && a.equations == 270 && same_count &&
           worst <= 1e-8 && swap <= 1e-10;
  o.detail = std::to_string(a.equations) + " equations, max residual " + sci(worst) +
             ", max change under ladder swap " + sci(swap);
  if (!a.error.empty()) o.detail += "; " + a.error;
  if (!b.error.empty()) o.detail += "; " + b.error;
  return o;
}

Outcome generic_crossbreeding() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double theta = std::exp(6.0 * u(rng) - 3.0);
    const double a2 = std::exp(10.0 * u(rng) - 5.0);
    const double b2 = std::exp(10.0 * u(rng) - 5.0);
    const double sa = u(rng), sb = u(rng);
    const std::array<double, 3> a{sa * theta * a2, a2, (1 - sa) * theta * a2};
    const std::array<double, 3> b{sb * theta * b2, b2, (1 - sb) * theta * b2};
    worst = std::max(worst, crossbreed_values(a, b).residual);
  }
  return {worst <= 1e-12, "max relative residual " + sci(worst) + " over 100000 triples"};
}

std::string solve_level_targets(int& solved, int& search_errors, std::string& bad) {
  const std::vector<LevelFamily> families{
      LevelFamily::cosine(),
      LevelFamily::power(3),
      LevelFamily::recip_gamma(),
      LevelFamily::bessel({1}),
      LevelFamily::jacobi_kind(JacobiKind::SN, EllipticModulus(0.6)),
      LevelFamily::jacobi_kind(JacobiKind::CN, EllipticModulus(0.6)),
      LevelFamily::jacobi_kind(JacobiKind::DN, EllipticModulus(0.6)),
  };
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  std::ostringstream log;
  log.precision(17);
  solved = search_errors = 0;
  for (const auto& f : families) {
    for (int i = 0; i < 100; ++i) {
      LevelCurveSpec spec;
      spec.family = f;
      spec.target = std::pow(10.0, e(rng));
      try {
        const auto p = level_point(spec);
        log << f.name() << " " << spec.target << " " << p.s.re() << " " << p.s.im() << " "
            << p.residual << "\n";
        if (p.residual <= level_tolerance(spec.target)) {
          ++solved;
        } else if (bad.empty()) {
          bad = f.name() + " v=" + sci(spec.target) + " residual " + sci(p.residual);
        }
      } catch (const SearchError& err) {
        ++search_errors;
        log << f.name() << " " << spec.target << " search error: " << err.what() << "\n";
      }
    }
  }
  return log.str();
}

Outcome level_solver_certification() {
  int solved = 0, errors = 0;
  std::string bad;
  const std::string first = solve_level_targets(solved, errors, bad);
  int solved2 = 0, errors2 = 0;
  std::string bad2;
  const std::string second = solve_level_targets(solved2, errors2, bad2);
  const bool identical = first == second;
  Outcome o;
  o.pass = bad.empty() && identical && solved + errors == 700;
  o.detail = std::to_string(solved) + " certified, " + std::to_string(errors) +
             " typed search errors out of 700" +
             (identical ? ", repeat run identical" : ", repeat run differs");
  if (!bad.empty()) o.detail += "; " + bad;
  return o;
}

Outcome scaling_study_check() {
  RunConfig c;
  c.L_list = {100, 1000, 10000};
  const auto r = scaling_study(c);
  std::string rows;
  for (const auto& row : r.rows) rows += " L=" + std::to_string(row.L) + ":" + sci(row.ratio);
  return {r.within_bound, "fitted C " + sci(r.fitted_constant) + ", max upper ratio " +
                              sci(r.max_upper_ratio) + " vs 2C " + sci(2 * r.fitted_constant) +
                              "; ratios" + rows};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"special-function identities", special_function_identities},
      {"critical-line cross-validation", critical_line_cross_validation},
      {"mother formula, exact mode", mother_formula_exact},
      {"transmutation term equality", transmutation_certification},
      {"meta-equations and ladder independence", theorem_certification},
      {"generic crossbreeding", generic_crossbreeding},
      {"level solver", level_solver_certification},
      {"scaling study", scaling_study_check},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %d [PRIMARY] %s: %s (%.2f s) %s\n", index, o.pass ? "PASS" : "FAIL",
                name, secs, o.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
