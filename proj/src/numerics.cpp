#include "zmeta/numerics.hpp"

#include <array>
#include <utility>
#include <vector>

#include "zmeta/errors.hpp"

namespace zmeta::numerics {

namespace {

// Kronrod abscissae (descending, center last); even indices 1,3,5 are the
// Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double kronrod;
  double gauss;
  int depth;
};

}  // namespace

double kronrod15(const std::function<double(double)>& f, double a, double b, double* gauss) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  if (gauss != nullptr) *gauss = resg * half;
  return resk * half;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult out;
  if (a == b) return out;
  const double width = b - a;

  // A first pass over 8 panels fixes the absolute budget.
  std::vector<Panel> stack;
  double coarse = 0.0;
  constexpr int kInitial = 8;
  std::vector<Panel> initial;
  for (int i = 0; i < kInitial; ++i) {
    const double pa = a + width * i / kInitial;
    const double pb = (i + 1 == kInitial) ? b : a + width * (i + 1) / kInitial;
    double g = 0.0;
    const double k = kronrod15(f, pa, pb, &g);
    coarse += std::abs(k);
    initial.push_back({pa, pb, k, g, 0});
  }
  const double budget = options.rel_tol * coarse;

  // Depth-first, left to right.
  for (auto it = initial.rbegin(); it != initial.rend(); ++it) stack.push_back(*it);
  CompensatedSum<double> sum;
  CompensatedSum<double> err;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double share = budget * (p.b - p.a) / std::abs(width);
    const double e = std::abs(p.kronrod - p.gauss);
    if (e <= share || budget == 0.0) {
      sum.add(p.kronrod);
      err.add(e);
      ++out.panels;
      continue;
    }
    if (p.depth >= options.max_depth || out.panels + static_cast<int>(stack.size()) >=
                                            options.max_panels) {
      sum.add(p.kronrod);
      err.add(e);
      for (const auto& q : stack) {
        sum.add(q.kronrod);
        err.add(std::abs(q.kronrod - q.gauss));
      }
      throw AccuracyError("adaptive quadrature did not converge", sum.value(), err.value());
    }
    const double mid = 0.5 * (p.a + p.b);
    double gl = 0.0;
    double gr = 0.0;
    const double kl = kronrod15(f, p.a, mid, &gl);
    const double kr = kronrod15(f, mid, p.b, &gr);
    stack.push_back({mid, p.b, kr, gr, p.depth + 1});
    stack.push_back({p.a, mid, kl, gl, p.depth + 1});
  }
  out.value = sum.value();
  out.abs_error = err.value();
  return out;
}

std::optional<RootResult> bracketed_root(const std::function<double(double)>& f, double lo,
                                         double hi) {
  return bracketed_root(f, lo, hi, f(lo), f(hi));
}

std::optional<RootResult> bracketed_root(const std::function<double(double)>& f, double lo,
                                         double hi, double f_lo, double f_hi) {
  if (lo > hi) {
    std::swap(lo, hi);
    std::swap(f_lo, f_hi);
  }
  if (f_lo == 0.0) return RootResult{lo, 0.0, 0};
  if (f_hi == 0.0) return RootResult{hi, 0.0, 0};
  if ((f_lo < 0.0) == (f_hi < 0.0)) return std::nullopt;

  RootResult best{std::abs(f_lo) < std::abs(f_hi) ? lo : hi,
                  std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi, 0};
  int iter = 0;
  for (; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (std::abs(fm) < std::abs(best.fx)) best = {mid, fm, iter};
    if (fm == 0.0) {
      best = {mid, 0.0, iter};
      return best;
    }
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  // Newton polish inside [lo, hi]; kept only if it improves the residual.
  double x = best.x;
  double fx = best.fx;
  for (int k = 0; k < 3 && fx != 0.0; ++k) {
    const double h = std::max(std::abs(x), 1.0) * 1e-7;
    const double d = (f(x + h) - f(x - h)) / (2.0 * h);
    if (!(std::abs(d) > 0.0) || !std::isfinite(d)) break;
    const double xn = x - fx / d;
    if (!(xn >= lo && xn <= hi)) break;
    const double fn = f(xn);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = xn;
    fx = fn;
  }
  best.x = x;
  best.fx = fx;
  best.iterations = iter;
  return best;
}

}  // namespace zmeta::numerics
