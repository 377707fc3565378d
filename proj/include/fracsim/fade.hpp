#pragma once

#include <cstddef>
#include <vector>

#include "fracsim/grid.hpp"
#include "fracsim/operators.hpp"

namespace fracsim {

enum class FadeKind { SpaceFADE, FFADE, TimeFADE, FMIM, VOFADE };

// One-dimensional fractional advection-diffusion problem. Constant orders sit
// in `alpha`/`beta`; VOFADE may supply order fields instead (a constant field
// reproduces the constant-order solver bit-for-bit because all solvers share
// one assembly and stepping path).
struct FadeProblem {
  FadeKind kind = FadeKind::SpaceFADE;
  Grid1D grid;
  TimeGrid tgrid;               // tgrid.t(0) is the initial-condition time
  double V = 0.0;               // advection velocity
  double D = 1.0;               // fractional diffusion coefficient
  double alpha = 2.0;           // space order in (1,2]
  double beta = 1.0;            // time order in (0,1]
  double p = 0.5;               // skew weight, gamma = 2p-1
  double d_minus = -1.0;        // VOFADE left coefficient; <0 means p*D
  double d_plus = -1.0;         // VOFADE right coefficient; <0 means (1-p)*D
  double mim_beta_ratio = 0.0;  // FMIM capacity ratio eta_im/eta_m
  OrderField alpha_field = OrderField::constant(2.0);
  OrderField beta_field = OrderField::constant(1.0);
  bool has_alpha_field = false;
  bool has_beta_field = false;
  std::vector<double> ic;

  void validate() const;  // throws std::invalid_argument describing violations
};

struct FieldSeries {
  TimeGrid times;
  RowMatrix snapshots;          // n_times x n_x, snapshot per step
  std::vector<double> mass_ledger;
  RowMatrix immobile;           // FMIM only
  bool has_immobile = false;
  std::size_t negativity_events = 0;  // scheme diagnostics, not failures
  FadeProblem meta;
};

// Implicit-Euler GL solver for the space-fractional family (SpaceFADE/FFADE):
//   dc/dt = -(1/cos(pi a/2)) [D- L^a + D+ R^a] c - V dc/dx.
// FreeSpace grids get absorbing edges plus an edge-mass monitor that throws
// once edge mass exceeds 1e-6 of the total.
FieldSeries solve_space_fade(const FadeProblem& prob);

// L1-Caputo time-fractional solver: CD^beta c = -V dc/dx + D d2c/dx2.
FieldSeries solve_time_fade(const FadeProblem& prob);

// Mobile-immobile: dc/dt + ratio * CD^beta c = -V dc/dx + D d2c/dx2 for the
// mobile phase; immobile phase accumulates d(c_im)/dt = CD^beta c_m from a
// zero initial immobile state.
FieldSeries solve_fmim(const FadeProblem& prob);

// Variable-order solver: CD^{beta(x,t)} c = -(1/cos(pi a(x,t)/2)) [D- L^{a} +
// D+ R^{a}] c - V dc/dx, orders frozen at each row's evaluation node.
FieldSeries solve_vo_fade(const FadeProblem& prob);

// Exact periodic evolution under the Fourier multiplier exp(-D t |xi|^alpha);
// reference dynamics for the GL solver and the self-similarity checks.
std::vector<double> spectral_fade_evolve(const std::vector<double>& u0,
                                         const Grid1D& g, double alpha,
                                         double D, double t);

// Green function of the space-fractional family: stable density
// f_alpha(x; 2p-1, k t^{1/alpha}, 0).
double fundamental_space(double alpha, double p, double k, double x, double t);

// Green function of the time-fractional family; delegates to the
// self-similar series solution (beta = 1 is the heat kernel, diffusivity k^2).
double fundamental_time(double beta, double k, double x, double t);

}  // namespace fracsim
