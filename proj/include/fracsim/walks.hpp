#pragma once

#include <cstdint>
#include <vector>

#include "fracsim/grid.hpp"
#include "fracsim/stable.hpp"

namespace fracsim {

enum class WalkKind { Flight, SubordinatedBM, CTRW, LevyWalk };

// Waiting-time law for CTRW. StableWait draws scale * J with J the standard
// positive stable subordinator step (Laplace transform exp(-s^beta)), so the
// wait law has transform exp(-(scale*s)^beta).
struct WaitDensity {
  enum class Kind { Exponential, StableWait };
  Kind kind = Kind::Exponential;
  double rate = 1.0;   // Exponential
  double beta = 0.5;   // StableWait stability
  double scale = 1.0;  // StableWait time scale

  static WaitDensity exponential(double rate);
  static WaitDensity stable_wait(double beta, double scale);
  // Survival probability P(wait > t).
  double survival(double t) const;
};

struct JumpDensity {
  enum class Kind { Gaussian, Stable };
  Kind kind = Kind::Gaussian;
  double stddev = 1.0;                  // Gaussian
  StableParams stable{2.0, 0.0, 1.0};  // Stable

  static JumpDensity gaussian(double stddev);
  static JumpDensity stable_jump(const StableParams& p);
};

struct WalkSpec {
  WalkKind kind = WalkKind::Flight;
  // Flight jump law / SubordinatedBM parent scale (sigma acts as k).
  StableParams stable_jump{2.0, 0.0, 1.0, 0.0};
  double beta = 0.5;  // subordinator stability for SubordinatedBM
  WaitDensity wait;   // CTRW
  JumpDensity jump;   // CTRW
  double v = 1.0;     // Levy walk speed (v = 0 degenerates to frozen paths)
  double tau0 = 1.0;  // Levy walk duration scale
  double gamma_lw = 1.5;  // Levy walk duration tail exponent
  double dt = 0.1;
  double T = 1.0;
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on kind-specific range violations.
  void validate() const;
};

// positions: n_paths x n_times, row per path; all paths start at 0. Output
// is bit-identical for a fixed spec regardless of thread count: each path
// owns RNG stream (seed, path index).
struct PathEnsemble {
  TimeGrid times;
  RowMatrix positions;
  WalkSpec meta;
};

PathEnsemble simulate_flight(const WalkSpec& spec);
PathEnsemble simulate_subordinated(const WalkSpec& spec);
PathEnsemble simulate_ctrw(const WalkSpec& spec);
PathEnsemble simulate_levy_walk(const WalkSpec& spec);

struct MsdPoint {
  double t;
  double msd;
  double stderr_;
};
// Per-time ensemble mean of x^2 with its standard error; needs >= 2 paths.
std::vector<MsdPoint> msd_estimate(const PathEnsemble& e);

struct DensityEstimate {
  std::vector<double> values;  // cell-averaged density at bin centers
  double outside_fraction;     // mass falling outside the bin range
};
// Normalized histogram at ensemble time t (must be a grid node). Bin i is
// centered at bins.x(i) with width bins.dx. Integrates to 1 - outside_fraction.
DensityEstimate empirical_density(const PathEnsemble& e, double t,
                                  const Grid1D& bins);

}  // namespace fracsim
