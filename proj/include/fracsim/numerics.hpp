#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace fracsim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Compensated accumulator (Kahan-Babuska/Neumaier). Safe for sums whose terms
// alternate in sign or span many magnitudes.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// 1/Gamma(x), entire in x: returns 0 at the poles x = 0, -1, -2, ...
double rgamma(double x) noexcept;

// sign(x) in {-1, 0, +1}.
inline double sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

// Composite trapezoid over uniformly spaced samples with spacing h.
double trapezoid(const std::vector<double>& f, double h) noexcept;

// Adaptive tanh-sinh quadrature on the finite interval [a,b]. Handles
// integrable endpoint singularities. `rel_tol` applies to successive level
// differences; levels are capped so the call always terminates.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

// Semi-infinite variant on [0, inf) via x = t/(1-t) remapping.
double tanh_sinh_half_line(const std::function<double(double)>& f,
                           double rel_tol = 1e-12);

// Least-squares line y = slope*x + intercept; returns {slope, intercept}.
struct LineFit {
  double slope;
  double intercept;
  double r2;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Piecewise-linear interpolation of (xs, ys) at x, clamped to the end values.
// xs must be strictly increasing.
double interp_linear(const std::vector<double>& xs,
                     const std::vector<double>& ys, double x);

}  // namespace fracsim
