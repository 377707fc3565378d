#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "fracsim/grid.hpp"

namespace fracsim {

struct ComparisonReport {
  double ks_distance = 0.0;
  double l1_distance = 0.0;
  std::size_t n_samples = 0;
  bool pass = false;
};

// KS distance between the binned CDFs of `density` and the reference density
// evaluated at bin centers, plus L1 distance between the densities. Both must
// integrate to within [0.98, 1.02]. pass = (ks <= threshold). n_samples
// reports the bin count used.
ComparisonReport compare_density(const std::vector<double>& density,
                                 const std::function<double(double)>& reference,
                                 const Grid1D& bins, double threshold);

// Same metric for two precomputed binned densities on a shared grid.
ComparisonReport compare_binned(const std::vector<double>& d1,
                                const std::vector<double>& d2,
                                const Grid1D& bins, double threshold);

// Exact KS statistic of raw samples against a CDF (sorts a copy).
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

struct ExponentFit {
  double exponent = 0.0;
  double intercept = 0.0;  // intercept of the log-log line
  double r2 = 0.0;
};

// Least-squares power-law fit y ~ exp(intercept) t^exponent on log-log axes.
// Requires >= 5 positive points spanning at least a factor 10 in t; the first
// decade above min(t) is excluded when enough points remain, to suppress
// early-time discretization transients.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& series);

struct GserResult {
  std::vector<std::pair<double, double>> points;  // (omega, |G*|)
  std::size_t clamp_events = 0;  // local slopes clamped into [0,1]
};

// Generalized Stokes-Einstein estimate |G*(1/t)| = kT/(pi a msd(t) Gamma(1+s))
// with s the centered local log-log slope of the MSD, clamped to [0,1].
GserResult gser_modulus(const std::vector<std::pair<double, double>>& msd,
                        double kT, double a);

}  // namespace fracsim
