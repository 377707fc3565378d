#include "fracsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracsim {

double rgamma(double x) noexcept {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) {
    // Gamma overflows past ~171.6; its reciprocal underflows to zero.
    return 0.0;
  }
  // tgamma is accurate to ~2 ulp across the non-pole range; the reciprocal
  // keeps that accuracy because Gamma is well away from zero off the poles.
  return 1.0 / std::tgamma(x);
}

double trapezoid(const std::vector<double>& f, double h) noexcept {
  if (f.size() < 2) return 0.0;
  KahanSum s;
  s.add(0.5 * f.front());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s.add(f[i]);
  s.add(0.5 * f.back());
  return s.value() * h;
}

namespace {

// One tanh-sinh level: nodes t = k*h, abscissae c +- d*tanh((pi/2) sinh t).
// The distance to the nearer endpoint is carried as em = d*(1 - tanh) =
// 2d/(e^{2s}+1), which stays exact down to denormals; an endpoint at zero is
// therefore resolved to machine range even where c - d*tanh would collapse.
double ts_level_sum(const std::function<double(double)>& f, double a, double b,
                    double h, bool odd_only, double& l1) {
  KahanSum s;
  KahanSum s_abs;
  const int k_start = odd_only ? 1 : 0;
  const int k_step = odd_only ? 2 : 1;
  int tiny_run = 0;
  for (int k = k_start;; k += k_step) {
    const double t = h * static_cast<double>(k);
    const double sh = 0.5 * kPi * std::sinh(t);
    const double ch = std::cosh(sh);
    const double w = 0.5 * kPi * std::cosh(t) / (ch * ch);
    const double em = (b - a) / (std::exp(2.0 * sh) + 1.0);
    if (em == 0.0 || t > 7.0) break;
    double contrib = 0.0;
    double contrib_abs = 0.0;
    const double xp = b - em;
    if (xp > a && xp < b) {
      const double v = f(xp);
      if (std::isfinite(v)) {
        contrib += v;
        contrib_abs += std::abs(v);
      }
    }
    const double xm = a + em;
    if (k > 0 && xm > a && xm < b) {
      const double v = f(xm);
      if (std::isfinite(v)) {
        contrib += v;
        contrib_abs += std::abs(v);
      }
    }
    const double term = w * contrib;
    s.add(term);
    s_abs.add(w * contrib_abs);
    // Stop once contributions are negligible, but only past the region where
    // boundary layers of singular integrands still carry mass. The scale is
    // the running L1 mass, which stays O(integrand) even when the signed sum
    // cancels to zero.
    if (t >= 3.0) {
      if (std::abs(term) <= 1e-17 * (s_abs.value() + 1e-300)) {
        if (++tiny_run >= 3) break;
      } else {
        tiny_run = 0;
      }
    }
  }
  l1 = s_abs.value();
  return s.value();
}

}  // namespace

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (!(b > a)) return 0.0;
  const double d = 0.5 * (b - a);
  double h = 1.0;
  double l1 = 0.0;
  double sum = ts_level_sum(f, a, b, h, false, l1);
  double l1_sum = l1;
  double integral = d * h * sum;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    sum += ts_level_sum(f, a, b, h, true, l1);
    l1_sum += l1;
    const double next = d * h * sum;
    const double change = std::abs(next - integral);
    integral = next;
    // The L1 term keeps the test meaningful when the integral cancels to
    // (near) zero: no refinement can resolve it below roundoff of the mass.
    const double floor = rel_tol * std::abs(integral) + 1e-16 * d * h * l1_sum;
    if (level >= 3 && change <= floor + 1e-300) break;
  }
  return integral;
}

double tanh_sinh_half_line(const std::function<double(double)>& f,
                           double rel_tol) {
  // x = t/(1-t) maps (0,1) to (0,inf) with dx = dt/(1-t)^2.
  return tanh_sinh(
      [&f](double t) {
        const double om = 1.0 - t;
        return f(t / om) / (om * om);
      },
      0.0, 1.0, rel_tol);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  KahanSum sx, sy, sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
    sxx.add(x[i] * x[i]);
    sxy.add(x[i] * y[i]);
    syy.add(y[i] * y[i]);
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  const double cov = sxy.value() / n - mx * my;
  const double vx = sxx.value() / n - mx * mx;
  const double vy = syy.value() / n - my * my;
  if (vx <= 0.0) {
    throw std::invalid_argument("fit_line: abscissae are all equal");
  }
  LineFit fit;
  fit.slope = cov / vx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (vy > 0.0) ? (cov * cov) / (vx * vy) : 1.0;
  return fit;
}

double interp_linear(const std::vector<double>& xs,
                     const std::vector<double>& ys, double x) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("interp_linear: bad table");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::invalid_argument(
          "interp_linear: abscissae must be strictly increasing");
    }
  }
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace fracsim
