#pragma once

namespace fracsim {

// Two-parameter Mittag-Leffler function E_{a,b}(z).
//
// Evaluation strategy:
//   - |z| <= 1, or z > 0, or a >= 1 with moderate |z|: power series in long
//     double (positive arguments never cancel; small ones cancel mildly).
//   - z < -1 with 0 < a < 1: real branch-cut integral representation,
//     integrated by tanh-sinh after an endpoint-flattening substitution.
// Throws std::overflow_error when z > 700^a (result would exceed double
// range) and std::domain_error for parameter combinations outside the
// supported set (a <= 0, or deep negative z with a >= 1, b >= 1 + a).
struct MLParams {
  double a;
  double b;
  MLParams(double a_, double b_);
};

double mittag_leffler(const MLParams& p, double z);

// Self-similar fundamental solution of the time-fractional diffusion problem
// with order beta in (0,1] and generalized diffusivity k:
//   u(x,t) = t^{-beta/2}/k * U(|x|/(k t^{beta/2})),
//   U(y)   = (1/2) sum_j (-y)^j / (j! * Gamma(1 - beta/2 * (j + 1))).
// The alternating series loses precision for large |x| scaling variable;
// accurate for |x| / (k t^{beta/2}) up to ~6, which covers the region where
// the density is non-negligible. At beta == 1 this is the Gaussian heat
// kernel with diffusivity k^2.
double tfd_fundamental(double beta, double k, double x, double t);

}  // namespace fracsim
