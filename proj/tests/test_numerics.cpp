#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracsim/numerics.hpp"

using namespace fracsim;

TEST_SUITE("numerics") {

TEST_CASE("kahan accumulator keeps tiny increments that naive summation drops") {
  KahanSum k;
  double naive = 1.0;
  k.add(1.0);
  for (int i = 0; i < 100; ++i) {
    k.add(1e-17);
    naive += 1e-17;  // each add rounds back to 1.0
  }
  CHECK(naive == 1.0);
  CHECK(k.value() == doctest::Approx(1.0 + 1e-15).epsilon(1e-12));
}

TEST_CASE("reciprocal gamma vanishes at the poles and matches known values") {
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-1.0) == 0.0);
  CHECK(rgamma(-7.0) == 0.0);
  CHECK(rgamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rgamma(5.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  // Gamma(-0.5) = -2 sqrt(pi)
  CHECK(rgamma(-0.5) == doctest::Approx(-0.5 / std::sqrt(kPi)).epsilon(1e-13));
  // Gamma(-1.5) = 4 sqrt(pi) / 3
  CHECK(rgamma(-1.5) == doctest::Approx(0.75 / std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("trapezoid rule integrates a fine sine table") {
  const std::size_t n = 20001;
  const double h = kPi / (n - 1);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(i * h);
  CHECK(trapezoid(f, h) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  CHECK(tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(tanh_sinh([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1.0,
                  1.0) == doctest::Approx(kPi).epsilon(1e-8));
  CHECK(tanh_sinh([](double x) { return std::exp(x); }, 0.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("half-line quadrature covers exponential and algebraic decay") {
  CHECK(tanh_sinh_half_line([](double x) { return std::exp(-x); }) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tanh_sinh_half_line([](double x) { return std::exp(-x * x); }) ==
        doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-10));
  CHECK(tanh_sinh_half_line([](double x) { return 1.0 / (1.0 + x * x); }) ==
        doctest::Approx(0.5 * kPi).epsilon(1e-8));
}

TEST_CASE("line fit recovers exact affine data") {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(0.3 * i - 2.0);
    y.push_back(1.75 * x.back() - 0.4);
  }
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("line fit rejects degenerate inputs") {
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_line({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("linear interpolation clamps outside the table") {
  const std::vector<double> xs{0.0, 1.0, 3.0};
  const std::vector<double> ys{1.0, 2.0, -2.0};
  CHECK(interp_linear(xs, ys, 0.5) == doctest::Approx(1.5));
  CHECK(interp_linear(xs, ys, 2.0) == doctest::Approx(0.0));
  CHECK(interp_linear(xs, ys, -5.0) == 1.0);
  CHECK(interp_linear(xs, ys, 99.0) == -2.0);
  CHECK_THROWS_AS(interp_linear({1.0, 1.0}, {0.0, 0.0}, 1.0),
                  std::invalid_argument);
}

}  // TEST_SUITE("numerics")
