#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fracsim/grid.hpp"

namespace fracsim {

enum class Side { Left, Right };

// Space- and/or time-dependent fractional order. Range requirements are
// checked at every evaluation site by the consuming operator.
struct OrderField {
  std::function<double(double x, double t)> eval;
  bool time_dependent = true;

  static OrderField constant(double alpha) {
    return {[alpha](double, double) { return alpha; }, false};
  }
};

// Fractional binomial weights g_0..g_m via the stable recurrence
// g_0 = 1, g_j = g_{j-1} (j - 1 - alpha) / j. Partial sums tend to zero.
std::vector<double> gl_weights(double alpha, std::size_t m);

// Shared cache of gl_weights keyed by (alpha, length); the returned vector is
// immutable and safe to hold across threads.
std::shared_ptr<const std::vector<double>> gl_weights_cached(double alpha,
                                                             std::size_t m);

// L1 convolution weights d_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..n-1,
// shared and immutable like gl_weights_cached. The returned vector may be
// longer than requested.
std::shared_ptr<const std::vector<double>> l1_weights_cached(double alpha,
                                                             std::size_t n);

// Shifted one-sided fractional difference h^{-alpha} sum_j g_j u(x -+ (j-shift)h),
// truncated at the domain boundary. Left accumulates history toward
// decreasing x, Right toward increasing x. Throws if the grid is FreeSpace
// and |u| exceeds 1e-8 of its max at the truncated edge, since zero
// extension would then be unjustified.
std::vector<double> gl_derivative(const std::vector<double>& u, const Grid1D& g,
                                  double alpha, Side side,
                                  std::size_t shift = 1);

// Discrete fractional Laplacian (1/cos(pi alpha/2)) (L + R)/2. This is the
// action of the POSITIVE operator (-Lap)^{alpha/2}, Fourier symbol +|xi|^alpha;
// diffusion solvers must subtract it. Requires alpha in (0,2), |alpha-1| >= 1e-6.
std::vector<double> riesz_apply(const std::vector<double>& u, const Grid1D& g,
                                double alpha);

// Exact Fourier-multiplier action m(|xi_k|) on a periodic power-of-two grid.
std::vector<double> spectral_multiplier_apply(
    const std::vector<double>& u, const Grid1D& g,
    const std::function<double(double)>& multiplier);

// (-Lap)^{alpha/2} by DFT: multiplier +|xi_k|^alpha. Periodic grid, n a power
// of two. Exact on band-limited data.
std::vector<double> spectral_frac_laplacian(const std::vector<double>& u,
                                            const Grid1D& g, double alpha);

// Caputo derivative of order alpha in (0,1) at the last history node via the
// L1 scheme on a uniform mesh with spacing dt:
//   (1/(dt^alpha Gamma(2-alpha))) sum_{j>=0} d_j (u_{m-j} - u_{m-j-1}),
//   d_j = (j+1)^{1-alpha} - j^{1-alpha}.
// u_history holds u(t_0)..u(t_m), m >= 1.
double caputo_l1(const std::vector<double>& u_history, double dt, double alpha);

// Variable-order L1: the order is frozen at the evaluation node (x, t_m) and
// must lie in (0,1) there. With a constant field this reproduces caputo_l1
// bit-for-bit (identical code path).
double vo_caputo_l1(const std::vector<double>& u_history, double dt,
                    const OrderField& order, double x);

// Symmetrized spatial Caputo derivative (Gamma(2-alpha)/2) (left - right) for
// alpha in (0,1), assembled from one-sided L1 sums along x. The first and
// last nodes rely on one-sided differences and carry O(1) error.
std::vector<double> riesz_caputo(const std::vector<double>& u, const Grid1D& g,
                                 double alpha);

// Graded time mesh t_j = T (j/n)^r, j = 0..n; r >= 1 clusters nodes at t=0
// where Caputo solutions of smooth FDEs have weak singularities.
std::vector<double> graded_mesh(double T, std::size_t n, double r);

// Implicit L1 solve of the scalar relaxation problem
//   CD^alpha u(t) = lambda u(t), u(0) = u0, lambda <= 0,
// on an arbitrary strictly increasing mesh (t_0 = 0). On the graded mesh with
// r = (2-alpha)/alpha the observed order in n approaches 2-alpha.
std::vector<double> solve_fractional_relaxation(double alpha, double lambda,
                                                double u0,
                                                const std::vector<double>& tmesh);

}  // namespace fracsim
