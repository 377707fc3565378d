#include "fracsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsim/numerics.hpp"

namespace fracsim {

namespace {

ComparisonReport binned_metrics(const std::vector<double>& d1,
                                const std::vector<double>& d2,
                                const Grid1D& bins, double threshold) {
  const std::size_t n = bins.n;
  if (d1.size() != n || d2.size() != n) {
    throw std::invalid_argument(
        "density comparison: lengths must equal the bin count");
  }
  KahanSum m1;
  KahanSum m2;
  KahanSum l1;
  for (std::size_t i = 0; i < n; ++i) {
    m1.add(d1[i]);
    m2.add(d2[i]);
    l1.add(std::abs(d1[i] - d2[i]));
  }
  const double mass1 = m1.value() * bins.dx;
  const double mass2 = m2.value() * bins.dx;
  for (double mass : {mass1, mass2}) {
    if (!(mass >= 0.98) || !(mass <= 1.02)) {
      throw std::invalid_argument(
          "density comparison: inputs must integrate to 1 within 2%");
    }
  }
  ComparisonReport rep;
  rep.n_samples = n;
  rep.l1_distance = l1.value() * bins.dx;
  double c1 = 0.0;
  double c2 = 0.0;
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c1 += d1[i] * bins.dx;
    c2 += d2[i] * bins.dx;
    ks = std::max(ks, std::abs(c1 - c2));
  }
  rep.ks_distance = ks;
  rep.pass = ks <= threshold;
  return rep;
}

}  // namespace

ComparisonReport compare_density(const std::vector<double>& density,
                                 const std::function<double(double)>& reference,
                                 const Grid1D& bins, double threshold) {
  std::vector<double> ref(bins.n);
  for (std::size_t i = 0; i < bins.n; ++i) ref[i] = reference(bins.x(i));
  return binned_metrics(density, ref, bins, threshold);
}

ComparisonReport compare_binned(const std::vector<double>& d1,
                                const std::vector<double>& d2,
                                const Grid1D& bins, double threshold) {
  return binned_metrics(d1, d2, bins, threshold);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("ks_statistic: no samples");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    ks = std::max({ks, std::abs(f - lo), std::abs(hi - f)});
  }
  return ks;
}

ExponentFit fit_exponent(
    const std::vector<std::pair<double, double>>& series) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, y] : series) {
    if (t > 0.0 && y > 0.0) pts.push_back({t, y});
  }
  if (pts.size() < 5) {
    throw std::invalid_argument(
        "fit_exponent: need at least 5 positive points");
  }
  std::sort(pts.begin(), pts.end());
  const double t_min = pts.front().first;
  const double t_max = pts.back().first;
  if (!(t_max / t_min >= 10.0)) {
    throw std::invalid_argument(
        "fit_exponent: time span must cover at least one decade");
  }
  // Drop the first decade above t_min when at least 5 points survive;
  // early times carry the strongest discretization transients.
  std::vector<std::pair<double, double>> kept;
  for (const auto& p : pts) {
    if (p.first >= 10.0 * t_min) kept.push_back(p);
  }
  const auto& use = (kept.size() >= 5) ? kept : pts;
  std::vector<double> lx(use.size());
  std::vector<double> ly(use.size());
  for (std::size_t i = 0; i < use.size(); ++i) {
    lx[i] = std::log(use[i].first);
    ly[i] = std::log(use[i].second);
  }
  const LineFit f = fit_line(lx, ly);
  return {f.slope, f.intercept, f.r2};
}

GserResult gser_modulus(const std::vector<std::pair<double, double>>& msd,
                        double kT, double a) {
  if (!(kT > 0.0) || !(a > 0.0)) {
    throw std::invalid_argument("gser_modulus: need kT > 0 and a > 0");
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, m] : msd) {
    if (t > 0.0 && m > 0.0) pts.push_back({t, m});
  }
  if (pts.size() < 3) {
    throw std::invalid_argument(
        "gser_modulus: need at least 3 positive MSD points");
  }
  std::sort(pts.begin(), pts.end());
  GserResult out;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    double s = (std::log(pts[i + 1].second) - std::log(pts[i - 1].second)) /
               (std::log(pts[i + 1].first) - std::log(pts[i - 1].first));
    if (s < 0.0 || s > 1.0) {
      // Boundary slopes (pure diffusion, plateaus) land on 0 or 1 up to
      // rounding; only a genuine excursion counts as a clamp event.
      if (s < -1e-9 || s > 1.0 + 1e-9) ++out.clamp_events;
      s = std::clamp(s, 0.0, 1.0);
    }
    const double t = pts[i].first;
    const double g = kT / (kPi * a * pts[i].second * std::tgamma(1.0 + s));
    out.points.push_back({1.0 / t, g});
  }
  return out;
}

}  // namespace fracsim
