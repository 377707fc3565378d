#include "fracsim/stable.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "fracsim/numerics.hpp"

namespace fracsim {

namespace {

std::atomic<std::uint64_t> g_clamp_count{0};
std::atomic<double> g_clamp_worst{0.0};

void record_clamp(double v) noexcept {
  g_clamp_count.fetch_add(1, std::memory_order_relaxed);
  double cur = g_clamp_worst.load(std::memory_order_relaxed);
  while (v < cur &&
         !g_clamp_worst.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

// Integration setup for the Fourier inversion. The substitution xi = u^q with
// q = ceil(2/alpha) regularizes the xi -> 0 behavior of heavy-tailed laws, and
// the cutoff keeps |phi| below ~1e-16 at the far end.
struct InversionPlan {
  int q;
  double U;   // upper limit in u
  double du;  // node spacing
  std::size_t n;
};

InversionPlan make_plan(const StableParams& p, double z) {
  InversionPlan plan;
  plan.q = std::max(2, static_cast<int>(std::ceil(2.0 / p.alpha)));
  const double xi_max = std::pow(37.0, 1.0 / p.alpha) / p.sigma;
  plan.U = std::pow(xi_max, 1.0 / plan.q);
  // Resolve both the slowest envelope scale and the fastest oscillation of
  // exp(-i u^q z) at u = U, with 32 points per cycle.
  const double freq =
      plan.q * std::pow(plan.U, plan.q - 1) * (std::abs(z) + p.sigma) /
      (2.0 * kPi);
  double du = std::min(plan.U / 4000.0, 1.0 / (32.0 * std::max(freq, 1e-9)));
  std::size_t n = static_cast<std::size_t>(std::ceil(plan.U / du));
  if (n > 4'000'000) n = 4'000'000;
  plan.n = n;
  plan.du = plan.U / static_cast<double>(n);
  return plan;
}

// Re and Im of exp(-i xi z) * phi0(xi) for xi > 0, where phi0 drops mu.
inline void integrand_parts(const StableParams& p, double z, double xi,
                            double& re, double& im) {
  const double a = std::pow(p.sigma * xi, p.alpha);
  double phase;
  if (p.alpha == 1.0) {
    phase = -a * p.gamma * (2.0 / kPi) * std::log(p.sigma * xi) - xi * z;
  } else {
    phase = a * p.gamma * std::tan(0.5 * kPi * p.alpha) - xi * z;
  }
  const double damp = std::exp(-a);
  re = damp * std::cos(phase);
  im = damp * std::sin(phase);
}

// Asymptotic power series for the density at z = x - mu, valid deep in the
// tails. Sign of z selects the tail; skew flips with it.
double tail_pdf(const StableParams& p, double z) {
  const double ax = std::abs(z);
  const double g = (z > 0.0) ? p.gamma : -p.gamma;
  if (p.alpha == 1.0 && p.gamma != 0.0) {
    // Log-corrected tail; one term is adequate beyond the switch radius.
    return (1.0 + g) * p.sigma / (kPi * ax * ax);
  }
  const double th = std::tan(0.5 * kPi * p.alpha);
  const double rho =
      std::pow(p.sigma, p.alpha) * std::sqrt(1.0 + g * g * th * th);
  const double theta = std::atan(g * th);
  KahanSum sum;
  double prev = 0.0;
  double kfac = 1.0;
  for (int k = 1; k <= 8; ++k) {
    kfac *= k;
    const double term = std::tgamma(p.alpha * k + 1.0) / kfac *
                        std::pow(rho, k) *
                        std::sin(k * (0.5 * kPi * p.alpha + theta)) *
                        std::pow(ax, -p.alpha * k - 1.0) *
                        ((k % 2) ? 1.0 : -1.0);
    if (k > 1 && std::abs(term) >= std::abs(prev)) break;
    sum.add(term);
    prev = term;
    if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
  }
  return std::max(0.0, sum.value() / kPi);
}

// Asymptotic right-tail probability P(X - mu > z) for z > 0 after mapping the
// left tail onto it with gamma -> -gamma.
double tail_upper_prob(const StableParams& p, double z, double g) {
  const double ax = std::abs(z);
  if (p.alpha == 1.0 && p.gamma != 0.0) {
    return (1.0 + g) * p.sigma / (kPi * ax);
  }
  const double th = std::tan(0.5 * kPi * p.alpha);
  const double rho =
      std::pow(p.sigma, p.alpha) * std::sqrt(1.0 + g * g * th * th);
  const double theta = std::atan(g * th);
  KahanSum sum;
  double prev = 0.0;
  double kfac = 1.0;
  for (int k = 1; k <= 8; ++k) {
    kfac *= k;
    const double term = std::tgamma(p.alpha * k) / kfac * std::pow(rho, k) *
                        std::sin(k * (0.5 * kPi * p.alpha + theta)) *
                        std::pow(ax, -p.alpha * k) * ((k % 2) ? 1.0 : -1.0);
    if (k > 1 && std::abs(term) >= std::abs(prev)) break;
    sum.add(term);
    prev = term;
    if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
  }
  return std::min(1.0, std::max(0.0, sum.value() / kPi));
}

constexpr double kTailSwitch = 50.0;  // in units of sigma

}  // namespace

StableParams::StableParams(double alpha_, double gamma_, double sigma_,
                           double mu_)
    : alpha(alpha_), gamma(gamma_), sigma(sigma_), mu(mu_) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::invalid_argument("StableParams: alpha must lie in (0, 2]");
  }
  if (!(std::abs(gamma) <= 1.0)) {
    throw std::invalid_argument("StableParams: gamma must lie in [-1, 1]");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("StableParams: sigma must be > 0");
  }
  if (!std::isfinite(mu)) {
    throw std::invalid_argument("StableParams: mu must be finite");
  }
}

std::complex<double> characteristic_function(const StableParams& p,
                                             double xi) {
  if (xi == 0.0) return {1.0, 0.0};
  const double a = std::pow(p.sigma * std::abs(xi), p.alpha);
  double skew;
  if (p.alpha == 2.0) {
    skew = 0.0;  // gamma is unidentifiable at the Gaussian endpoint
  } else if (p.alpha == 1.0) {
    skew = -(2.0 / kPi) * std::log(p.sigma * std::abs(xi));
  } else {
    skew = std::tan(0.5 * kPi * p.alpha);
  }
  const double re = -a;
  const double im = xi * p.mu + a * p.gamma * sgn(xi) * skew;
  return std::exp(std::complex<double>(re, im));
}

// Fourier inversion along a rotated ray, for the standardized law
// (sigma = 1, mu = 0) at z >= 0. On the real axis exp(-i xi z) oscillates
// ~z * xi_max times; substituting xi = s exp(-i psi) turns it into decay
// exp(-z s sin psi) with O(1) residual phase, so one tanh-sinh call
// resolves the integral. Requires gamma == 0 when alpha == 1 (the log term
// in the exponent is otherwise not a pure power of xi).
double rotated_ray_pdf(double alpha, double gamma, double z) {
  const double t = (alpha == 1.0) ? 0.0 : std::tan(0.5 * kPi * alpha);
  const double gt = gamma * t;
  const double r = std::sqrt(1.0 + gt * gt);
  const double phi = std::atan(-gt);  // arg(1 - i gamma t)
  // Keep alpha*psi - phi inside (-pi/2, pi/2) so |phi+(xi)| decays along the
  // whole ray; within that, rotate as far as the margin allows.
  const double psi =
      std::clamp((0.5 * kPi - 0.3 + phi) / alpha, 0.05, 0.45 * kPi);
  const double A = z * std::sin(psi);
  const double B = z * std::cos(psi);
  const double C = r * std::cos(alpha * psi - phi);
  const double D = r * std::sin(alpha * psi - phi);
  // Truncate once the envelope exp(-A s - C s^alpha) reaches ~1e-18.
  const double sc = std::pow(40.0 / C, 1.0 / alpha);
  const double S = (A > 0.0) ? std::min(40.0 / A, sc) : sc;
  const double v = tanh_sinh(
      [&](double s) {
        const double sa = std::pow(s, alpha);
        return std::exp(-A * s - C * sa) * std::cos(psi + B * s - D * sa);
      },
      0.0, S, 1e-9);
  return v / kPi;
}

double pdf(const StableParams& p, double x) {
  const double z = x - p.mu;
  if (p.alpha == 2.0) {
    // Gaussian endpoint: variance 2 sigma^2.
    return std::exp(-z * z / (4.0 * p.sigma * p.sigma)) /
           (2.0 * p.sigma * std::sqrt(kPi));
  }
  // A maximally skewed law with alpha < 1 lives on a half line starting at
  // mu; the density on the other side is identically zero.
  if (p.alpha < 1.0 && std::abs(p.gamma) == 1.0 &&
      (p.gamma > 0.0 ? z < 0.0 : z > 0.0)) {
    return 0.0;
  }
  if (std::abs(z) > kTailSwitch * p.sigma) return tail_pdf(p, z);

  if (p.alpha != 1.0 || p.gamma == 0.0) {
    // Reflect onto z >= 0: the density of -X swaps the skew sign.
    const double zs = z / p.sigma;
    const double g = (zs < 0.0) ? -p.gamma : p.gamma;
    double v = rotated_ray_pdf(p.alpha, g, std::abs(zs)) / p.sigma;
    if (v < 0.0) {
      record_clamp(v);
      v = 0.0;
    }
    return v;
  }

  const InversionPlan plan = make_plan(p, z);
  const int q = plan.q;
  KahanSum sum;
  for (std::size_t k = 1; k <= plan.n; ++k) {
    const double u = plan.du * static_cast<double>(k);
    const double xi = std::pow(u, q);
    double re, im;
    integrand_parts(p, z, xi, re, im);
    const double g = q * std::pow(u, q - 1) * re;
    sum.add((k == plan.n) ? 0.5 * g : g);
  }
  double integral = sum.value() * plan.du;
  if (q == 2) {
    // Trapezoid endpoint correction: the u=0 slope of the integrand is
    // exactly 2 under the quadratic substitution.
    integral += plan.du * plan.du / 12.0 * 2.0;
  }
  double v = integral / kPi;
  if (v < 0.0) {
    record_clamp(v);
    v = 0.0;
  }
  return v;
}

double cdf(const StableParams& p, double x) {
  const double z = x - p.mu;
  if (p.alpha == 2.0) {
    return 0.5 * std::erfc(-z / (2.0 * p.sigma));
  }
  if (z > kTailSwitch * p.sigma) {
    return 1.0 - tail_upper_prob(p, z, p.gamma);
  }
  if (z < -kTailSwitch * p.sigma) {
    return tail_upper_prob(p, -z, -p.gamma);
  }

  const InversionPlan plan = make_plan(p, z);
  const int q = plan.q;
  KahanSum sum;
  for (std::size_t k = 1; k <= plan.n; ++k) {
    const double u = plan.du * static_cast<double>(k);
    const double xi = std::pow(u, q);
    double re, im;
    integrand_parts(p, z, xi, re, im);
    const double g = q * im / u;
    sum.add((k == plan.n) ? 0.5 * g : g);
  }
  double integral = sum.value() * plan.du;
  if (q == 2 && (p.gamma == 0.0 || p.alpha > 1.0)) {
    // u=0 slope of the sign-split integrand is -2z; the skewed alpha=1 case
    // has a log-divergent slope and is left uncorrected.
    integral += plan.du * plan.du / 12.0 * (-2.0 * z);
  }
  const double F = 0.5 - integral / kPi;
  return std::min(1.0, std::max(0.0, F));
}

double sample_one(const StableParams& p, CounterRng& rng) {
  const double u1 = rng.next_u01();
  const double u2 = rng.next_u01();
  const double V = kPi * (u1 - 0.5);
  const double W = -std::log(u2);
  double X;
  if (p.alpha == 1.0) {
    const double a = 0.5 * kPi + p.gamma * V;
    X = (2.0 / kPi) *
        (a * std::tan(V) -
         p.gamma * std::log((0.5 * kPi * W * std::cos(V)) / a));
  } else {
    const double th = std::tan(0.5 * kPi * p.alpha);
    const double B = std::atan(p.gamma * th) / p.alpha;
    const double S =
        std::pow(1.0 + p.gamma * p.gamma * th * th, 0.5 / p.alpha);
    const double cv = std::cos(V);
    X = S * std::sin(p.alpha * (V + B)) / std::pow(cv, 1.0 / p.alpha) *
        std::pow(std::cos(V - p.alpha * (V + B)) / W,
                 (1.0 - p.alpha) / p.alpha);
  }
  return p.sigma * X + p.mu;
}

std::vector<double> sample(const StableParams& p, std::size_t n,
                           std::uint64_t seed) {
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) {
    CounterRng rng(seed, i);
    out[i] = sample_one(p, rng);
  });
  return out;
}

ClampStats pdf_clamp_stats() noexcept {
  return {g_clamp_count.load(std::memory_order_relaxed),
          g_clamp_worst.load(std::memory_order_relaxed)};
}

void reset_pdf_clamp_stats() noexcept {
  g_clamp_count.store(0, std::memory_order_relaxed);
  g_clamp_worst.store(0.0, std::memory_order_relaxed);
}

StableCdfTable::StableCdfTable(const StableParams& p, std::size_t nodes,
                               double span)
    : p_(p) {
  if (nodes < 3) throw std::invalid_argument("StableCdfTable: nodes < 3");
  xs_.resize(nodes);
  Fs_.resize(nodes);
  const double lo = p.mu - span * p.sigma;
  const double hi = p.mu + span * p.sigma;
  const double dx = (hi - lo) / static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) xs_[i] = lo + dx * i;
  parallel_for(nodes, [&](std::size_t i) { Fs_[i] = cdf(p_, xs_[i]); });
}

double StableCdfTable::operator()(double x) const {
  if (x < xs_.front() || x > xs_.back()) return cdf(p_, x);
  return interp_linear(xs_, Fs_, x);
}

}  // namespace fracsim
