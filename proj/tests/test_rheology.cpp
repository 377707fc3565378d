#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fracsim/numerics.hpp"
#include "fracsim/rheology.hpp"
#include "fracsim/rng.hpp"

using namespace fracsim;

namespace {

StrainHistory make_history(double dt, std::size_t n,
                           const std::function<double(double)>& eps) {
  StrainHistory h;
  h.tgrid = TimeGrid(0.0, dt, n);
  h.strain.resize(n);
  for (std::size_t i = 0; i < n; ++i) h.strain[i] = eps(h.tgrid.t(i));
  return h;
}

double sb_modulus(double E, double a, double t) {
  return E * std::pow(t, -a) / std::tgamma(1.0 - a);
}

}  // namespace

TEST_SUITE("rheology") {

TEST_CASE("springpot relaxation and moduli take their closed forms") {
  const double E = 2.3, a = 0.45;
  const RheoModel m = RheoModel::sb(E, a);
  for (double t : {0.01, 0.5, 3.0, 200.0}) {
    CHECK(relaxation_modulus(m, t) ==
          doctest::Approx(sb_modulus(E, a, t)).epsilon(1e-14));
  }
  for (double w : {0.02, 1.0, 40.0}) {
    const auto [gp, gpp] = dynamic_moduli(m, w);
    CHECK(gp == doctest::Approx(E * std::pow(w, a) * std::cos(0.5 * kPi * a))
                    .epsilon(1e-14));
    CHECK(gpp == doctest::Approx(E * std::pow(w, a) * std::sin(0.5 * kPi * a))
                     .epsilon(1e-14));
  }
}

TEST_CASE("parallel pair is the sum of its springpots") {
  const RheoModel pair = RheoModel::fkv(1.5, 0.2, 0.8, 0.7);
  const RheoModel s1 = RheoModel::sb(1.5, 0.2);
  const RheoModel s2 = RheoModel::sb(0.8, 0.7);
  for (double t : {0.05, 1.0, 12.0}) {
    CHECK(relaxation_modulus(pair, t) ==
          doctest::Approx(relaxation_modulus(s1, t) + relaxation_modulus(s2, t))
              .epsilon(1e-14));
  }
  for (double w : {0.1, 2.0, 30.0}) {
    const auto [gp, gpp] = dynamic_moduli(pair, w);
    const auto [p1, q1] = dynamic_moduli(s1, w);
    const auto [p2, q2] = dynamic_moduli(s2, w);
    CHECK(gp == doctest::Approx(p1 + p2).epsilon(1e-14));
    CHECK(gpp == doctest::Approx(q1 + q2).epsilon(1e-14));
  }
  // Oscillatory stress of the pair superposes as well (linearity).
  const StrainHistory h =
      make_history(0.01, 400, [](double t) { return 0.02 * std::sin(3.0 * t); });
  const auto sp = stress_response(pair, h);
  const auto sa = stress_response(s1, h);
  const auto sb = stress_response(s2, h);
  for (std::size_t i = 1; i < sp.size(); ++i) {
    CHECK(sp[i] == doctest::Approx(sa[i] + sb[i]).epsilon(1e-10));
  }
}

TEST_CASE("series pair interpolates between its springpot asymptotes") {
  const double E1 = 2.0, a1 = 0.3, E2 = 1.0, a2 = 0.7;
  const RheoModel m = RheoModel::fm(E1, a1, E2, a2);
  // Crossover time scale (E2/E1)^{1/(a2-a1)}.
  const double tc = std::pow(E2 / E1, 1.0 / (a2 - a1));
  CHECK(relaxation_modulus(m, 1e-6 * tc) ==
        doctest::Approx(sb_modulus(E1, a1, 1e-6 * tc)).epsilon(0.01));
  CHECK(relaxation_modulus(m, 1e6 * tc) ==
        doctest::Approx(sb_modulus(E2, a2, 1e6 * tc)).epsilon(0.01));
  double prev = std::numeric_limits<double>::infinity();
  for (double t = 1e-4; t < 1e4; t *= 2.7) {
    const double g = relaxation_modulus(m, t);
    CHECK(g > 0.0);
    CHECK(g < prev);
    prev = g;
  }
  // |G*| has log-log slope a2 at low frequency, a1 at high frequency.
  auto logmod = [&](double w) {
    const auto [gp, gpp] = dynamic_moduli(m, w);
    return 0.5 * std::log(gp * gp + gpp * gpp);
  };
  const double wc = 1.0 / tc;
  const double lo =
      (logmod(1e-8 * wc * 1.1) - logmod(1e-8 * wc / 1.1)) / (2.0 * std::log(1.1));
  const double hi =
      (logmod(1e8 * wc * 1.1) - logmod(1e8 * wc / 1.1)) / (2.0 * std::log(1.1));
  CHECK(std::abs(lo - a2) < 0.02);
  CHECK(std::abs(hi - a1) < 0.02);
}

TEST_CASE("step strain relaxes along the relaxation modulus for every kind") {
  const double eps0 = 0.04;
  const StrainHistory h = make_history(0.01, 300, [&](double) { return eps0; });
  for (const RheoModel& m :
       {RheoModel::sb(1.7, 0.35), RheoModel::fkv(1.0, 0.2, 0.5, 0.6),
        RheoModel::fm(2.0, 0.3, 1.0, 0.7)}) {
    const auto sigma = stress_response(m, h);
    CHECK(std::isinf(sigma[0]));
    for (std::size_t j = 1; j < sigma.size(); ++j) {
      CHECK(sigma[j] ==
            doctest::Approx(relaxation_modulus(m, h.tgrid.t(j)) * eps0)
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("springpot ramp stress is exact for linear histories") {
  const double E = 1.4, a = 0.6, r = 0.25;
  const RheoModel m = RheoModel::sb(E, a);
  const StrainHistory h = make_history(0.02, 200, [&](double t) { return r * t; });
  const auto sigma = stress_response(m, h);
  CHECK(sigma[0] == 0.0);
  for (std::size_t j = 1; j < sigma.size(); ++j) {
    const double t = h.tgrid.t(j);
    const double exact = E * r * std::pow(t, 1.0 - a) / std::tgamma(2.0 - a);
    CHECK(sigma[j] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("oscillatory springpot stress settles on the dynamic moduli") {
  const double E = 1.0, a = 0.5, w = 2.0 * kPi, eps0 = 0.01;
  const RheoModel m = RheoModel::sb(E, a);
  const std::size_t per_period = 400, periods = 20;
  const double dt = 2.0 * kPi / w / per_period;
  const StrainHistory h = make_history(dt, per_period * periods + 1,
                                       [&](double t) { return eps0 * std::sin(w * t); });
  const auto sigma = stress_response(m, h);
  const auto [gp, gpp] = dynamic_moduli(m, w);
  const double amp = eps0 * std::hypot(gp, gpp);
  double worst = 0.0;
  for (std::size_t j = sigma.size() - 2 * per_period; j < sigma.size(); ++j) {
    const double t = h.tgrid.t(j);
    const double steady = eps0 * (gp * std::sin(w * t) + gpp * std::cos(w * t));
    worst = std::max(worst, std::abs(sigma[j] - steady));
  }
  INFO("relative deviation=", worst / amp);
  CHECK(worst / amp < 0.03);
}

TEST_CASE("cyclic loading dissipates energy in every fractional model") {
  const double w = 4.0, eps0 = 0.05;
  const std::size_t per_period = 500, periods = 4;
  const double dt = 2.0 * kPi / w / per_period;
  const StrainHistory h = make_history(dt, per_period * periods + 1,
                                       [&](double t) { return eps0 * std::sin(w * t); });
  for (const RheoModel& m :
       {RheoModel::sb(1.0, 0.4), RheoModel::fkv(1.0, 0.2, 0.7, 0.8),
        RheoModel::fm(1.5, 0.25, 1.0, 0.75)}) {
    const auto sigma = stress_response(m, h);
    // Closed-cycle work over the final period.
    KahanSum work;
    for (std::size_t j = sigma.size() - per_period; j < sigma.size(); ++j) {
      work.add(0.5 * (sigma[j] + sigma[j - 1]) * (h.strain[j] - h.strain[j - 1]));
    }
    INFO("kind=", static_cast<int>(m.kind));
    CHECK(work.value() > 0.0);
  }
}

TEST_CASE("quasi-linear stress reduces to the elastic law without memory") {
  const RheoModel m = RheoModel::qlv(2.0, 1.5, 0.8, 0.0, 0.5);
  const StrainHistory h =
      make_history(0.01, 150, [](double t) { return 0.3 * std::sin(2.0 * t); });
  const auto sigma = qlv_stress(m, h);
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const double elastic = 0.8 * 2.0 * std::expm1(1.5 * h.strain[j]);
    CHECK(sigma[j] == doctest::Approx(elastic).epsilon(1e-14));
  }
}

TEST_CASE("quasi-linear stress linearizes onto the springpot law") {
  // With B eps << 1 the elastic law is A B eps, so the response must match
  // the corresponding linear viscoelastic closed form on a ramp.
  const double A = 3.0, B = 1e-6, C = 0.9, Dq = 0.4, a = 0.45, r = 1e-3;
  const RheoModel m = RheoModel::qlv(A, B, C, Dq, a);
  const StrainHistory h = make_history(0.02, 120, [&](double t) { return r * t; });
  const auto sigma = qlv_stress(m, h);
  for (std::size_t j = 1; j < sigma.size(); ++j) {
    const double t = h.tgrid.t(j);
    const double lin = A * B * r *
                       (C * t + Dq * std::tgamma(1.0 - a) *
                                    std::pow(t, 1.0 - a) / std::tgamma(2.0 - a));
    CHECK(sigma[j] == doctest::Approx(lin).epsilon(1e-6));
  }
}

TEST_CASE("quasi-linear step history carries the kernel atom") {
  const double A = 1.2, B = 0.9, C = 0.7, Dq = 0.3, a = 0.4, eps0 = 0.2;
  const RheoModel m = RheoModel::qlv(A, B, C, Dq, a);
  const StrainHistory h = make_history(0.05, 80, [&](double) { return eps0; });
  const auto sigma = qlv_stress(m, h);
  const double se = A * std::expm1(B * eps0);
  CHECK(std::isinf(sigma[0]));
  for (std::size_t j = 1; j < sigma.size(); ++j) {
    const double t = h.tgrid.t(j);
    CHECK(sigma[j] ==
          doctest::Approx((C + Dq * std::pow(t, -a)) * se).epsilon(1e-12));
  }
}

TEST_CASE("stored energy of an exact ramp matches the analytic double integral") {
  const double E = 2.0, eps0 = 0.03, T = 1.0;
  for (double a : {0.3, 0.5, 0.8}) {
    const StrainHistory h =
        make_history(T / 400, 401, [&](double t) { return eps0 * t / T; });
    const double psi = sb_free_energy(E, a, h);
    const double exact = E * eps0 * eps0 * (std::pow(2.0, 2.0 - a) - 2.0) /
                         (2.0 * std::tgamma(2.0 - a) * (2.0 - a));
    CHECK(psi == doctest::Approx(exact * std::pow(T, -a)).epsilon(1e-10));
  }
}

TEST_CASE("stored energy approaches the elastic limit at vanishing order") {
  const double E = 1.0, eps0 = 0.1;
  const StrainHistory ramp =
      make_history(1.0 / 400, 401, [&](double t) { return eps0 * t; });
  const double elastic = 0.5 * E * eps0 * eps0;
  CHECK(sb_free_energy(E, 0.02, ramp) ==
        doctest::Approx(elastic).epsilon(0.02));
  CHECK(sb_free_energy(E, 0.98, ramp) < 0.05 * elastic);
}

TEST_CASE("stored energy is nonnegative and decays after loading stops") {
  CounterRng rng(7, 0);
  for (int trial = 0; trial < 5; ++trial) {
    StrainHistory h;
    h.tgrid = TimeGrid(0.0, 0.01, 120);
    h.strain.assign(120, 0.0);
    for (std::size_t i = 1; i < 120; ++i) {
      h.strain[i] = h.strain[i - 1] + 0.01 * (rng.next_u01() - 0.5);
    }
    CHECK(sb_free_energy(1.3, 0.5, h) >= 0.0);
  }
  // Ramp to eps0 over [0,1], then hold: the stored energy relaxes.
  auto ramp_hold = [](double t_end) {
    return make_history(t_end / 200, 201, [&](double t) {
      return 0.05 * std::min(t, 1.0);
    });
  };
  const double early = sb_free_energy(1.0, 0.4, ramp_hold(1.5));
  const double late = sb_free_energy(1.0, 0.4, ramp_hold(4.0));
  CHECK(late < early);
  CHECK(late > 0.0);
}

TEST_CASE("plasticity stays off below yield and the response is the springpot") {
  const RheoModel v = RheoModel::vevp(1.0, 0.5, 2.0, 1.0, 0.5, 0.1);
  const RheoModel s = RheoModel::sb(1.0, 0.5);
  // Peak springpot stress E r t^{1-a}/Gamma(2-a) stays below sigmaY = 2.
  const StrainHistory h = make_history(0.01, 200, [](double t) { return 0.5 * t; });
  const VevpResult r = vevp_simulate(v, h);
  const auto ref = stress_response(s, h);
  for (std::size_t j = 0; j < r.stress.size(); ++j) {
    CHECK(r.stress[j] == ref[j]);  // bit-identical shared kernel
    CHECK(r.plastic_strain[j] == 0.0);
    CHECK(r.q[j] == 0.0);
  }
}

TEST_CASE("plastic flow activates at yield and hardens monotonically") {
  const RheoModel v = RheoModel::vevp(5.0, 0.5, 1.0, 2.0, 0.6, 0.5);
  const StrainHistory h = make_history(0.01, 300, [](double t) { return 0.8 * t; });
  const VevpResult r = vevp_simulate(v, h);
  CHECK(r.q.back() > 0.0);
  CHECK(r.plastic_strain.back() > 0.0);
  for (std::size_t j = 1; j < r.q.size(); ++j) {
    CHECK(r.q[j] >= r.q[j - 1]);  // exact monotonicity
  }
  // Flow relieves stress relative to the purely viscoelastic response.
  const auto ref = stress_response(RheoModel::sb(5.0, 0.5), h);
  CHECK(r.stress.back() < ref.back());
}

TEST_CASE("gentle unloading freezes the plastic state") {
  // A full unload to zero strain would drive the elastic stress past the
  // reverse yield point (the locked-in plastic strain acts as a negative
  // elastic offset), so the return stroke must stay shallow.
  const RheoModel v = RheoModel::vevp(5.0, 0.5, 1.0, 2.0, 0.6, 0.5);
  const std::size_t n = 400;
  const StrainHistory h = make_history(0.01, n, [](double t) {
    return t <= 2.0 ? 0.8 * t : 1.6 - 0.2 * (t - 2.0);
  });
  const VevpResult r = vevp_simulate(v, h);
  const std::size_t peak = 200;  // node of the strain reversal
  CHECK(r.q[peak] > 0.0);
  // Shortly after the reversal the trial stress drops inside the surface and
  // the plastic state is copied forward exactly.
  for (std::size_t j = peak + 5; j < n; ++j) {
    CHECK(r.q[j] == r.q[peak + 4]);
    CHECK(r.plastic_strain[j] == r.plastic_strain[peak + 4]);
  }
}

TEST_CASE("vanishing viscosity and hardening recover perfect plasticity") {
  const RheoModel v = RheoModel::vevp(5.0, 0.5, 1.0, 1e-12, 0.5, 0.0);
  const StrainHistory h = make_history(0.01, 300, [](double t) { return 0.8 * t; });
  const VevpResult r = vevp_simulate(v, h);
  bool yielded = false;
  for (std::size_t j = 1; j < r.stress.size(); ++j) {
    if (r.q[j] > 0.0) yielded = true;
    if (yielded) {
      CHECK(std::abs(r.stress[j]) <= 1.0 + 1e-6);
      CHECK(std::abs(r.stress[j]) >= 1.0 - 1e-6);
    }
  }
  CHECK(yielded);
}

TEST_CASE("model factories and drivers reject invalid requests") {
  CHECK_THROWS_AS(RheoModel::sb(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(RheoModel::sb(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RheoModel::sb(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RheoModel::fm(1.0, 0.7, 1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(RheoModel::fkv(1.0, 0.5, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(RheoModel::qlv(1.0, 1.0, 1.0, -0.1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(RheoModel::vevp(1.0, 0.5, 0.0, 1.0, 0.5, 0.0),
                  std::invalid_argument);

  const StrainHistory h = make_history(0.01, 50, [](double t) { return t; });
  CHECK_THROWS_AS(relaxation_modulus(RheoModel::qlv(1, 1, 1, 0, 0.5), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(dynamic_moduli(RheoModel::qlv(1, 1, 1, 0, 0.5), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(stress_response(RheoModel::qlv(1, 1, 1, 0, 0.5), h),
                  std::invalid_argument);
  CHECK_THROWS_AS(qlv_stress(RheoModel::sb(1.0, 0.5), h),
                  std::invalid_argument);
  CHECK_THROWS_AS(vevp_simulate(RheoModel::sb(1.0, 0.5), h),
                  std::invalid_argument);
  // A loaded start is outside the plastic driver's contract.
  const StrainHistory step = make_history(0.01, 50, [](double) { return 0.1; });
  CHECK_THROWS_AS(vevp_simulate(RheoModel::vevp(1, 0.5, 1, 1, 0.5, 0), step),
                  std::invalid_argument);

  StrainHistory bad;
  bad.tgrid = TimeGrid(0.0, 0.1, 10);
  bad.strain.assign(9, 0.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE("rheology")
