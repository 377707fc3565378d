#include "fracsim/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsim/numerics.hpp"
#include "fracsim/rng.hpp"

namespace fracsim {

namespace {

// Standard positive stable step: S_beta(gamma=1, sigma_step, 0) with
// sigma_step = (cos(pi beta/2) dtau)^{1/beta} has Laplace transform
// exp(-dtau s^beta), which telescopes to E[exp(-s D(tau))] = exp(-tau s^beta).
double subordinator_sigma(double beta, double dtau) {
  return std::pow(std::cos(0.5 * kPi * beta) * dtau, 1.0 / beta);
}

std::size_t output_steps(double T, double dt) {
  return static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
}

PathEnsemble make_ensemble(const WalkSpec& spec) {
  const std::size_t m = output_steps(spec.T, spec.dt);
  PathEnsemble e;
  e.times = TimeGrid(0.0, spec.dt, m + 1);
  e.positions = RowMatrix(spec.n_paths, m + 1, 0.0);
  e.meta = spec;
  return e;
}

}  // namespace

WaitDensity WaitDensity::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("WaitDensity: rate must be > 0");
  }
  WaitDensity w;
  w.kind = Kind::Exponential;
  w.rate = rate;
  return w;
}

WaitDensity WaitDensity::stable_wait(double beta, double scale) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("WaitDensity: beta must lie in (0,1)");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("WaitDensity: scale must be > 0");
  }
  WaitDensity w;
  w.kind = Kind::StableWait;
  w.beta = beta;
  w.scale = scale;
  return w;
}

double WaitDensity::survival(double t) const {
  if (t <= 0.0) return 1.0;
  if (kind == Kind::Exponential) return std::exp(-rate * t);
  const StableParams unit(beta, 1.0, subordinator_sigma(beta, 1.0), 0.0);
  return 1.0 - cdf(unit, t / scale);
}

JumpDensity JumpDensity::gaussian(double stddev) {
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("JumpDensity: stddev must be > 0");
  }
  JumpDensity j;
  j.kind = Kind::Gaussian;
  j.stddev = stddev;
  return j;
}

JumpDensity JumpDensity::stable_jump(const StableParams& p) {
  JumpDensity j;
  j.kind = Kind::Stable;
  j.stable = p;
  return j;
}

void WalkSpec::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("WalkSpec: dt must be > 0");
  if (!(T >= dt)) throw std::invalid_argument("WalkSpec: T must be >= dt");
  if (n_paths < 1) throw std::invalid_argument("WalkSpec: n_paths must be >= 1");
  switch (kind) {
    case WalkKind::Flight:
      break;  // stable_jump validates itself on construction
    case WalkKind::SubordinatedBM:
      if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::invalid_argument("WalkSpec: beta must lie in (0,1)");
      }
      break;
    case WalkKind::CTRW:
      break;  // wait/jump validate on construction
    case WalkKind::LevyWalk:
      if (!(v >= 0.0)) throw std::invalid_argument("WalkSpec: v must be >= 0");
      if (!(tau0 > 0.0)) {
        throw std::invalid_argument("WalkSpec: tau0 must be > 0");
      }
      if (!(gamma_lw > 0.0)) {
        throw std::invalid_argument("WalkSpec: gamma_lw must be > 0");
      }
      break;
  }
}

PathEnsemble simulate_flight(const WalkSpec& spec) {
  if (spec.kind != WalkKind::Flight) {
    throw std::invalid_argument("simulate_flight: spec.kind must be Flight");
  }
  spec.validate();
  PathEnsemble e = make_ensemble(spec);
  const std::size_t m = e.times.n - 1;
  // Self-similar per-step scale: sigma dt^{1/alpha} makes the time-t marginal
  // exactly S_alpha(gamma, sigma t^{1/alpha}, mu t / dt ... ) for mu = 0.
  const StableParams step(spec.stable_jump.alpha, spec.stable_jump.gamma,
                          spec.stable_jump.sigma *
                              std::pow(spec.dt, 1.0 / spec.stable_jump.alpha),
                          spec.stable_jump.mu * spec.dt);
  parallel_for(spec.n_paths, [&](std::size_t path) {
    CounterRng rng(spec.seed, path);
    double* row = e.positions.row(path);
    double x = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
      x += sample_one(step, rng);
      row[i] = x;
    }
  });
  return e;
}

PathEnsemble simulate_subordinated(const WalkSpec& spec) {
  if (spec.kind != WalkKind::SubordinatedBM) {
    throw std::invalid_argument(
        "simulate_subordinated: spec.kind must be SubordinatedBM");
  }
  spec.validate();
  PathEnsemble e = make_ensemble(spec);
  const std::size_t m = e.times.n - 1;
  const double dtau = spec.dt;
  const StableParams inc(spec.beta, 1.0, subordinator_sigma(spec.beta, dtau),
                         0.0);
  const double parent_std =
      spec.stable_jump.sigma * std::sqrt(2.0 * dtau);  // sigma acts as k
  // Operational-grid cap: the subordinator near-surely exceeds T well before
  // this; hitting it means pathological parameters.
  const std::size_t max_ops = 50'000'000 / std::max<std::size_t>(1, m);

  parallel_for(spec.n_paths, [&](std::size_t path) {
    CounterRng rng(spec.seed, path);
    double* row = e.positions.row(path);
    double D = 0.0;       // subordinator value at the current op node
    double B = 0.0;       // parent Brownian value at the current op node
    double B_prev = 0.0;  // parent value one op node back
    std::size_t ops = 0;
    std::size_t i = 1;
    // The walker position at output time t is the parent evaluated at the
    // last operational node before D first exceeds t (right-continuous
    // inverse, pre-crossing evaluation keeps positions[.,0] = 0).
    while (i <= m) {
      if (D > e.times.t(i)) {
        row[i] = B_prev;
        ++i;
        continue;
      }
      if (ops >= max_ops + m) {
        throw std::runtime_error(
            "simulate_subordinated: subordinator failed to reach the horizon");
      }
      D += sample_one(inc, rng);
      B_prev = B;
      B += parent_std * rng.next_normal();
      ++ops;
    }
  });
  return e;
}

PathEnsemble simulate_ctrw(const WalkSpec& spec) {
  if (spec.kind != WalkKind::CTRW) {
    throw std::invalid_argument("simulate_ctrw: spec.kind must be CTRW");
  }
  spec.validate();
  PathEnsemble e = make_ensemble(spec);
  const std::size_t m = e.times.n - 1;
  const bool wait_exp = spec.wait.kind == WaitDensity::Kind::Exponential;
  const StableParams wait_unit(wait_exp ? 0.5 : spec.wait.beta, 1.0,
                               subordinator_sigma(wait_exp ? 0.5 : spec.wait.beta,
                                                  1.0),
                               0.0);
  const bool jump_gauss = spec.jump.kind == JumpDensity::Kind::Gaussian;

  parallel_for(spec.n_paths, [&](std::size_t path) {
    CounterRng rng(spec.seed, path);
    double* row = e.positions.row(path);
    double x = 0.0;
    double t_next = 0.0;
    std::size_t i = 0;
    while (i <= m) {
      const double wait =
          wait_exp ? -std::log(rng.next_u01()) / spec.wait.rate
                   : spec.wait.scale * sample_one(wait_unit, rng);
      t_next += wait;
      // Hold the pre-jump position on output nodes strictly before the event;
      // a node landing exactly on the event time records the post-jump state.
      while (i <= m && e.times.t(i) < t_next) {
        row[i] = x;
        ++i;
      }
      x += jump_gauss ? spec.jump.stddev * rng.next_normal()
                      : sample_one(spec.jump.stable, rng);
    }
  });
  return e;
}

PathEnsemble simulate_levy_walk(const WalkSpec& spec) {
  if (spec.kind != WalkKind::LevyWalk) {
    throw std::invalid_argument("simulate_levy_walk: spec.kind must be LevyWalk");
  }
  spec.validate();
  PathEnsemble e = make_ensemble(spec);
  const std::size_t m = e.times.n - 1;

  parallel_for(spec.n_paths, [&](std::size_t path) {
    CounterRng rng(spec.seed, path);
    double* row = e.positions.row(path);
    double x = 0.0;
    double t_seg = 0.0;  // segment start time
    std::size_t i = 0;
    while (i <= m) {
      // Pareto-type duration: survival (1 + tau/tau0)^{-gamma} inverted.
      const double u = rng.next_u01();
      const double tau =
          spec.tau0 * (std::pow(u, -1.0 / spec.gamma_lw) - 1.0);
      const double dir = (rng.next_u01() < 0.5) ? -1.0 : 1.0;
      const double t_end = t_seg + tau;
      while (i <= m && e.times.t(i) <= t_end) {
        row[i] = x + dir * spec.v * (e.times.t(i) - t_seg);
        ++i;
      }
      x += dir * spec.v * tau;
      t_seg = t_end;
    }
  });
  return e;
}

std::vector<MsdPoint> msd_estimate(const PathEnsemble& e) {
  const std::size_t n = e.positions.rows;
  if (n < 2) {
    throw std::invalid_argument("msd_estimate: need at least two paths");
  }
  const std::size_t nt = e.times.n;
  std::vector<MsdPoint> out(nt);
  parallel_for(nt, [&](std::size_t j) {
    KahanSum s, s2;
    for (std::size_t p = 0; p < n; ++p) {
      const double x2 = e.positions.at(p, j) * e.positions.at(p, j);
      s.add(x2);
      s2.add(x2 * x2);
    }
    const double mean = s.value() / static_cast<double>(n);
    const double var =
        std::max(0.0, s2.value() / static_cast<double>(n) - mean * mean);
    out[j] = {e.times.t(j), mean,
              std::sqrt(var / static_cast<double>(n - 1))};
  });
  return out;
}

DensityEstimate empirical_density(const PathEnsemble& e, double t,
                                  const Grid1D& bins) {
  const double rel = std::max(1.0, std::abs(e.times.t_last()));
  double best = 1e300;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < e.times.n; ++j) {
    const double d = std::abs(e.times.t(j) - t);
    if (d < best) {
      best = d;
      idx = j;
    }
  }
  if (best > 1e-9 * rel) {
    throw std::invalid_argument("empirical_density: t is not an output node");
  }
  const std::size_t n = e.positions.rows;
  std::vector<double> counts(bins.n, 0.0);
  std::size_t outside = 0;
  const double lo = bins.x0 - 0.5 * bins.dx;
  for (std::size_t p = 0; p < n; ++p) {
    const double x = e.positions.at(p, idx);
    const double fi = (x - lo) / bins.dx;
    if (fi < 0.0 || fi >= static_cast<double>(bins.n)) {
      ++outside;
      continue;
    }
    counts[static_cast<std::size_t>(fi)] += 1.0;
  }
  DensityEstimate d;
  d.values.resize(bins.n);
  const double norm = 1.0 / (static_cast<double>(n) * bins.dx);
  for (std::size_t i = 0; i < bins.n; ++i) d.values[i] = counts[i] * norm;
  d.outside_fraction = static_cast<double>(outside) / static_cast<double>(n);
  return d;
}

}  // namespace fracsim
