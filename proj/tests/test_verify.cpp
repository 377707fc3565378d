#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracsim/numerics.hpp"
#include "fracsim/verify.hpp"
#include "fracsim/walks.hpp"

using namespace fracsim;

namespace {

double gauss_pdf(double x, double var) {
  return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * kPi * var);
}

std::vector<double> sampled_gauss(const Grid1D& bins, double var) {
  std::vector<double> d(bins.n);
  for (std::size_t i = 0; i < bins.n; ++i) d[i] = gauss_pdf(bins.x(i), var);
  return d;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("identical densities compare at zero distance") {
  const Grid1D bins(-8.0, 0.1, 161);
  const auto d = sampled_gauss(bins, 1.5);
  const ComparisonReport r =
      compare_density(d, [](double x) { return gauss_pdf(x, 1.5); }, bins, 0.01);
  CHECK(r.ks_distance == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.l1_distance == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.pass);
  CHECK(r.n_samples == bins.n);
}

TEST_CASE("shifted densities fail a tight threshold with sane distances") {
  const Grid1D bins(-8.0, 0.1, 161);
  const auto d = sampled_gauss(bins, 1.0);
  std::vector<double> shifted(bins.n);
  for (std::size_t i = 0; i < bins.n; ++i) {
    shifted[i] = gauss_pdf(bins.x(i) - 0.5, 1.0);
  }
  const ComparisonReport r = compare_binned(d, shifted, bins, 0.01);
  CHECK_FALSE(r.pass);
  CHECK(r.ks_distance > 0.1);
  CHECK(r.ks_distance <= 1.0);
  // KS of N(0,1) against N(0.5,1) is 2 Phi(0.25) - 1 ~ 0.1974.
  CHECK(r.ks_distance == doctest::Approx(0.1974).epsilon(0.02));
  // The metric is symmetric in its arguments.
  const ComparisonReport rr = compare_binned(shifted, d, bins, 0.01);
  CHECK(rr.ks_distance == doctest::Approx(r.ks_distance).epsilon(1e-14));
  CHECK(rr.l1_distance == doctest::Approx(r.l1_distance).epsilon(1e-14));
}

TEST_CASE("densities that fail to integrate to one are rejected") {
  const Grid1D bins(-8.0, 0.1, 161);
  auto d = sampled_gauss(bins, 1.0);
  for (double& v : d) v *= 0.5;
  CHECK_THROWS_AS(
      compare_density(d, [](double x) { return gauss_pdf(x, 1.0); }, bins, 0.1),
      std::invalid_argument);
  for (double& v : d) v *= 2.1;
  CHECK_THROWS_AS(
      compare_density(d, [](double x) { return gauss_pdf(x, 1.0); }, bins, 0.1),
      std::invalid_argument);
}

TEST_CASE("ks statistic detects both the null and the alternative") {
  std::vector<double> xs;
  for (int i = 0; i < 2000; ++i) xs.push_back((i + 0.5) / 2000.0);
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_statistic(xs, uniform) < 1e-3);
  auto shifted = [](double x) { return std::clamp(x - 0.2, 0.0, 1.0); };
  CHECK(ks_statistic(xs, shifted) == doctest::Approx(0.2).epsilon(0.01));
  CHECK_THROWS_AS(ks_statistic({}, uniform), std::invalid_argument);
}

TEST_CASE("brownian ensemble density matches the heat kernel") {
  WalkSpec s;
  s.kind = WalkKind::Flight;
  s.stable_jump = StableParams(2.0, 0.0, 1.0);
  s.dt = 0.05;
  s.T = 4.0;
  s.n_paths = 20000;
  s.seed = 31;
  const PathEnsemble e = simulate_flight(s);
  const Grid1D bins(-12.0, 0.25, 97);
  const DensityEstimate d = empirical_density(e, 4.0, bins);
  const double var = 2.0 * 4.0;  // 2 sigma^2 t
  const ComparisonReport r = compare_density(
      d.values, [&](double x) { return gauss_pdf(x, var); }, bins, 0.02);
  INFO("ks=", r.ks_distance);
  CHECK(r.pass);
}

TEST_CASE("power-law fits recover exact exponents and transform correctly") {
  std::vector<std::pair<double, double>> pts;
  for (double t = 0.01; t < 120.0; t *= 1.3) pts.emplace_back(t, 3.0 * t * t);
  const ExponentFit f = fit_exponent(pts);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

  // Rescaling the abscissa leaves the exponent untouched.
  std::vector<std::pair<double, double>> scaled;
  for (auto [t, y] : pts) scaled.emplace_back(7.0 * t, y);
  CHECK(fit_exponent(scaled).exponent == doctest::Approx(2.0).epsilon(1e-12));
  // Scaling the ordinate only shifts the intercept.
  std::vector<std::pair<double, double>> lifted;
  for (auto [t, y] : pts) lifted.emplace_back(t, 10.0 * y);
  const ExponentFit g = fit_exponent(lifted);
  CHECK(g.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g.intercept ==
        doctest::Approx(f.intercept + std::log(10.0)).epsilon(1e-9));
}

TEST_CASE("power-law fits ignore the corrupted first decade") {
  std::vector<std::pair<double, double>> pts;
  for (double t = 0.1; t < 150.0; t *= 1.25) {
    const double y = t * t * (t < 1.0 ? 5.0 : 1.0);  // early-time transient
    pts.emplace_back(t, y);
  }
  CHECK(fit_exponent(pts).exponent == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("power-law fits reject thin or degenerate data") {
  CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {2.0, 2.0}, {30.0, 3.0}}),
                  std::invalid_argument);
  std::vector<std::pair<double, double>> narrow;
  for (double t = 1.0; t < 5.0; t += 0.5) narrow.emplace_back(t, t);
  CHECK_THROWS_AS(fit_exponent(narrow), std::invalid_argument);
  // Nonpositive values are filtered before the count check.
  std::vector<std::pair<double, double>> junk{
      {1.0, -1.0}, {2.0, 0.0}, {4.0, 1.0}, {8.0, 1.0}, {60.0, 1.0}};
  CHECK_THROWS_AS(fit_exponent(junk), std::invalid_argument);
}

TEST_CASE("microrheology transform inverts a diffusive msd exactly") {
  const double kT = 4.1e-3, a = 0.5, D = 2.0;
  std::vector<std::pair<double, double>> msd;
  for (double t = 0.01; t < 100.0; t *= 1.5) msd.emplace_back(t, 2.0 * D * t);
  const GserResult g = gser_modulus(msd, kT, a);
  REQUIRE(g.points.size() == msd.size() - 2);
  CHECK(g.clamp_events == 0);
  for (const auto& [w, mod] : g.points) {
    // slope 1 exactly, Gamma(2) = 1: |G*| = kT w / (2 pi a D)
    CHECK(mod == doctest::Approx(kT * w / (2.0 * kPi * a * D)).epsilon(1e-10));
  }
}

TEST_CASE("microrheology transform is homogeneous in the msd") {
  const double kT = 1.0, a = 1.0;
  std::vector<std::pair<double, double>> msd, msd3;
  for (double t = 0.1; t < 50.0; t *= 1.4) {
    const double m = 0.7 * std::sqrt(t);
    msd.emplace_back(t, m);
    msd3.emplace_back(t, 3.0 * m);
  }
  const GserResult g1 = gser_modulus(msd, kT, a);
  const GserResult g3 = gser_modulus(msd3, kT, a);
  REQUIRE(g1.points.size() == g3.points.size());
  for (std::size_t i = 0; i < g1.points.size(); ++i) {
    CHECK(g1.points[i].first == g3.points[i].first);
    CHECK(g1.points[i].second ==
          doctest::Approx(3.0 * g3.points[i].second).epsilon(1e-13));
  }
  // A flat msd (trapped particle) gives an elastic plateau.
  std::vector<std::pair<double, double>> flat;
  for (double t = 0.1; t < 50.0; t *= 1.4) flat.emplace_back(t, 0.25);
  const GserResult gf = gser_modulus(flat, kT, a);
  for (const auto& [w, mod] : gf.points) {
    CHECK(mod == doctest::Approx(kT / (kPi * a * 0.25)).epsilon(1e-12));
  }
}

TEST_CASE("superdiffusive msd slopes are clamped and counted") {
  std::vector<std::pair<double, double>> msd;
  for (double t = 0.1; t < 50.0; t *= 1.4) {
    msd.emplace_back(t, std::pow(t, 1.5));
  }
  const GserResult g = gser_modulus(msd, 1.0, 1.0);
  CHECK(g.clamp_events == g.points.size());
  CHECK_THROWS_AS(gser_modulus(msd, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gser_modulus({{1.0, 1.0}, {2.0, 2.0}}, 1.0, 1.0),
                  std::invalid_argument);
}

}  // TEST_SUITE("verify")
