#include "fracsim/rheology.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "fracsim/numerics.hpp"
#include "fracsim/operators.hpp"
#include "fracsim/special.hpp"

namespace fracsim {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_order(double a, const char* msg) { require(a > 0.0 && a < 1.0, msg); }

// (i w)^a = w^a exp(i pi a / 2) for w > 0.
std::complex<double> iw_pow(double omega, double a) {
  return std::polar(std::pow(omega, a), 0.5 * kPi * a);
}

// L1 step denominator mu_a = dt^a Gamma(2-a); the coefficient of the newest
// increment in the Caputo sum is 1/mu_a.
double l1_mu(double dt, double a) {
  return std::pow(dt, a) * std::tgamma(2.0 - a);
}

// Caputo derivative of the first m+1 entries of u via the shared L1 kernel.
double cd_prefix(const std::vector<double>& u, std::size_t m, double dt,
                 double a) {
  const std::vector<double> prefix(u.begin(), u.begin() + m + 1);
  return caputo_l1(prefix, dt, a);
}

double sigma_e(const RheoModel& m, double eps) {
  return m.A * std::expm1(m.B * eps);
}

}  // namespace

RheoModel RheoModel::sb(double E, double alpha) {
  require(E > 0.0, "RheoModel::sb: E must be > 0");
  require_order(alpha, "RheoModel::sb: alpha must lie in (0,1)");
  RheoModel m;
  m.kind = RheoKind::SB;
  m.E = E;
  m.alpha = alpha;
  return m;
}

RheoModel RheoModel::fkv(double E1, double alpha1, double E2, double alpha2) {
  require(E1 > 0.0 && E2 > 0.0, "RheoModel::fkv: moduli must be > 0");
  require_order(alpha1, "RheoModel::fkv: alpha1 must lie in (0,1)");
  require_order(alpha2, "RheoModel::fkv: alpha2 must lie in (0,1)");
  require(alpha1 < alpha2, "RheoModel::fkv: need alpha1 < alpha2");
  RheoModel m;
  m.kind = RheoKind::FKV;
  m.E1 = E1;
  m.E2 = E2;
  m.alpha1 = alpha1;
  m.alpha2 = alpha2;
  return m;
}

RheoModel RheoModel::fm(double E1, double alpha1, double E2, double alpha2) {
  RheoModel m = fkv(E1, alpha1, E2, alpha2);
  m.kind = RheoKind::FM;
  return m;
}

RheoModel RheoModel::qlv(double A, double B, double C, double Dq,
                         double alpha) {
  require(A > 0.0, "RheoModel::qlv: A must be > 0");
  require(std::isfinite(B), "RheoModel::qlv: B must be finite");
  require(C >= 0.0, "RheoModel::qlv: C must be >= 0");
  require(Dq >= 0.0, "RheoModel::qlv: Dq must be >= 0");
  require_order(alpha, "RheoModel::qlv: alpha must lie in (0,1)");
  RheoModel m;
  m.kind = RheoKind::QLV;
  m.A = A;
  m.B = B;
  m.C = C;
  m.Dq = Dq;
  m.alpha = alpha;
  return m;
}

RheoModel RheoModel::vevp(double E, double alpha, double sigmaY, double K,
                          double alphaK, double H) {
  require(E > 0.0, "RheoModel::vevp: E must be > 0");
  require_order(alpha, "RheoModel::vevp: alpha must lie in (0,1)");
  require(sigmaY > 0.0, "RheoModel::vevp: sigmaY must be > 0");
  require(K >= 0.0, "RheoModel::vevp: K must be >= 0");
  require_order(alphaK, "RheoModel::vevp: alphaK must lie in (0,1)");
  require(H >= 0.0, "RheoModel::vevp: H must be >= 0");
  RheoModel m;
  m.kind = RheoKind::VEVP;
  m.E = E;
  m.alpha = alpha;
  m.sigmaY = sigmaY;
  m.K = K;
  m.alphaK = alphaK;
  m.H = H;
  return m;
}

void StrainHistory::validate() const {
  if (strain.size() != tgrid.n) {
    throw std::invalid_argument(
        "StrainHistory: strain length must equal the time-grid size");
  }
  if (tgrid.n < 2) {
    throw std::invalid_argument("StrainHistory: need at least two samples");
  }
  for (double e : strain) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("StrainHistory: strain must be finite");
    }
  }
}

double relaxation_modulus(const RheoModel& m, double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("relaxation_modulus: t must be > 0");
  }
  switch (m.kind) {
    case RheoKind::SB:
      return m.E * std::pow(t, -m.alpha) / std::tgamma(1.0 - m.alpha);
    case RheoKind::FKV:
      return m.E1 * std::pow(t, -m.alpha1) / std::tgamma(1.0 - m.alpha1) +
             m.E2 * std::pow(t, -m.alpha2) / std::tgamma(1.0 - m.alpha2);
    case RheoKind::FM: {
      const double a = m.alpha2 - m.alpha1;
      const double z = -(m.E1 / m.E2) * std::pow(t, a);
      return m.E1 * std::pow(t, -m.alpha1) *
             mittag_leffler(MLParams(a, 1.0 - m.alpha1), z);
    }
    default:
      throw std::invalid_argument(
          "relaxation_modulus: no closed form for this model kind");
  }
}

std::pair<double, double> dynamic_moduli(const RheoModel& m, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("dynamic_moduli: omega must be > 0");
  }
  std::complex<double> g;
  switch (m.kind) {
    case RheoKind::SB:
      g = m.E * iw_pow(omega, m.alpha);
      break;
    case RheoKind::FKV:
      g = m.E1 * iw_pow(omega, m.alpha1) + m.E2 * iw_pow(omega, m.alpha2);
      break;
    case RheoKind::FM:
      g = m.E2 * iw_pow(omega, m.alpha2) /
          (1.0 + (m.E2 / m.E1) * iw_pow(omega, m.alpha2 - m.alpha1));
      break;
    default:
      throw std::invalid_argument(
          "dynamic_moduli: no closed form for this model kind");
  }
  return {g.real(), g.imag()};
}

// SB/FKV/FM response to a sampled history. A nonzero strain[0] is a step
// applied at t_0; linearity lets its exact relaxation response G(t) eps_0 be
// superposed onto the L1 solution for the remaining (jump-free) part. Since
// the L1 sums see only strain differences, no explicit shift is needed.
// At the loading node itself a step response is unbounded; node 0 reports
// +inf in that case and 0 otherwise.
std::vector<double> stress_response(const RheoModel& m,
                                    const StrainHistory& h) {
  h.validate();
  if (m.kind != RheoKind::SB && m.kind != RheoKind::FKV &&
      m.kind != RheoKind::FM) {
    throw std::invalid_argument(
        "stress_response: use qlv_stress or vevp_simulate for this kind");
  }
  const std::size_t n = h.tgrid.n;
  const double dt = h.tgrid.dt;
  const double eps0 = h.strain[0];
  std::vector<double> sigma(n, 0.0);
  sigma[0] = (eps0 == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();

  if (m.kind == RheoKind::FM) {
    const double a12 = m.alpha2 - m.alpha1;
    const double r = m.E2 / m.E1;
    const double mu12 = l1_mu(dt, a12);
    const double mu2 = l1_mu(dt, m.alpha2);
    const auto d12 = l1_weights_cached(a12, n);
    const auto d2 = l1_weights_cached(m.alpha2, n);
    std::vector<double> smooth(n, 0.0);
    for (std::size_t s = 0; s + 1 < n; ++s) {
      KahanSum hist_sig;
      KahanSum hist_eps;
      for (std::size_t j = 1; j <= s; ++j) {
        hist_sig.add((*d12)[j] * (smooth[s + 1 - j] - smooth[s - j]));
        hist_eps.add((*d2)[j] * (h.strain[s + 1 - j] - h.strain[s - j]));
      }
      const double drive = (m.E2 / mu2) * (h.strain[s + 1] - h.strain[s] +
                                           hist_eps.value());
      const double carry = (r / mu12) * (smooth[s] - hist_sig.value());
      smooth[s + 1] = (drive + carry) / (1.0 + r / mu12);
    }
    for (std::size_t j = 1; j < n; ++j) {
      sigma[j] = smooth[j];
      if (eps0 != 0.0) {
        sigma[j] += relaxation_modulus(m, dt * static_cast<double>(j)) * eps0;
      }
    }
    return sigma;
  }

  for (std::size_t j = 1; j < n; ++j) {
    double s = (m.kind == RheoKind::SB)
                   ? m.E * cd_prefix(h.strain, j, dt, m.alpha)
                   : m.E1 * cd_prefix(h.strain, j, dt, m.alpha1) +
                         m.E2 * cd_prefix(h.strain, j, dt, m.alpha2);
    if (eps0 != 0.0) {
      s += relaxation_modulus(m, dt * static_cast<double>(j)) * eps0;
    }
    sigma[j] = s;
  }
  return sigma;
}

// Hereditary integral of g(t) = C + Dq t^{-alpha} against the rate of the
// instantaneous stress u = sigma_e(eps):
//   sigma = C u(t) + Dq Gamma(1-alpha) CD^alpha u + Dq t^{-alpha} u(0),
// the last term being the step atom when the history starts loaded.
std::vector<double> qlv_stress(const RheoModel& m, const StrainHistory& h) {
  h.validate();
  if (m.kind != RheoKind::QLV) {
    throw std::invalid_argument("qlv_stress: model kind must be QLV");
  }
  const std::size_t n = h.tgrid.n;
  const double dt = h.tgrid.dt;
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = sigma_e(m, h.strain[j]);

  std::vector<double> sigma(n, 0.0);
  const double gterm = m.Dq * std::tgamma(1.0 - m.alpha);
  sigma[0] = (m.Dq > 0.0 && u[0] != 0.0)
                 ? std::numeric_limits<double>::infinity()
                 : m.C * u[0];
  for (std::size_t j = 1; j < n; ++j) {
    double s = m.C * u[j];
    if (m.Dq > 0.0) {
      const double t = dt * static_cast<double>(j);
      s += gterm * cd_prefix(u, j, dt, m.alpha);
      if (u[0] != 0.0) s += m.Dq * std::pow(t, -m.alpha) * u[0];
    }
    sigma[j] = s;
  }
  return sigma;
}

// psi(T) = E/(2 Gamma(1-a)) II (2T - s1 - s2)^{-a} deps(s1) deps(s2) with a
// piecewise-constant rate; each cell pair integrates analytically through
//   G2(w) = w^{2-a} / ((1-a)(2-a)).
double sb_free_energy(double E, double alpha, const StrainHistory& h) {
  require(E > 0.0, "sb_free_energy: E must be > 0");
  require_order(alpha, "sb_free_energy: alpha must lie in (0,1)");
  h.validate();
  const std::size_t cells = h.tgrid.n - 1;
  const double dt = h.tgrid.dt;
  const double T = dt * static_cast<double>(cells);
  const double denom = (1.0 - alpha) * (2.0 - alpha);
  const auto g2 = [&](double w) {
    return (w <= 0.0) ? 0.0 : std::pow(w, 2.0 - alpha) / denom;
  };
  std::vector<double> rate(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    rate[i] = (h.strain[i + 1] - h.strain[i]) / dt;
  }
  KahanSum q;
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = 0; j < cells; ++j) {
      if (rate[i] == 0.0 || rate[j] == 0.0) continue;
      const double w = 2.0 * T - dt * static_cast<double>(i + j);
      const double cell = g2(w) - 2.0 * g2(w - dt) + g2(w - 2.0 * dt);
      q.add(rate[i] * rate[j] * cell);
    }
  }
  const double psi = 0.5 * E / std::tgamma(1.0 - alpha) * q.value();
  return std::max(0.0, psi);
}

// Return-mapping driver. The trial stress freezes plastic flow over the new
// step; the discrete consistency condition is linear in the flow increment,
// so the Newton loop converges immediately (kept as a loop with a tight
// tolerance to guard the derivation).
VevpResult vevp_simulate(const RheoModel& m, const StrainHistory& h) {
  h.validate();
  if (m.kind != RheoKind::VEVP) {
    throw std::invalid_argument("vevp_simulate: model kind must be VEVP");
  }
  if (h.strain[0] != 0.0) {
    throw std::invalid_argument(
        "vevp_simulate: history must start from zero strain");
  }
  const std::size_t n = h.tgrid.n;
  const double dt = h.tgrid.dt;
  const double mu_e = l1_mu(dt, m.alpha);
  const double mu_k = l1_mu(dt, m.alphaK);
  const double slope = m.E / mu_e + m.K / mu_k + m.H;
  const double tol = 1e-10 * m.sigmaY;

  VevpResult out;
  out.stress.assign(n, 0.0);
  out.plastic_strain.assign(n, 0.0);
  out.q.assign(n, 0.0);

  // v holds the elastic strain history eps - eps_p; q_hist the flow history.
  std::vector<double> v(1, 0.0);
  std::vector<double> q_hist(1, 0.0);
  for (std::size_t s = 1; s < n; ++s) {
    v.push_back(h.strain[s] - out.plastic_strain[s - 1]);
    q_hist.push_back(out.q[s - 1]);
    double dgamma = 0.0;
    double sig = m.E * caputo_l1(v, dt, m.alpha);
    for (int it = 0; it < 50; ++it) {
      const double hard = m.K * caputo_l1(q_hist, dt, m.alphaK) +
                          m.H * q_hist.back();
      const double f = std::abs(sig) - (m.sigmaY + hard);
      if (f <= tol) break;
      dgamma += f / slope;
      v.back() = h.strain[s] - (out.plastic_strain[s - 1] +
                                dgamma * sgn(sig));
      q_hist.back() = out.q[s - 1] + dgamma;
      sig = m.E * caputo_l1(v, dt, m.alpha);
    }
    if (dgamma == 0.0) {
      out.plastic_strain[s] = out.plastic_strain[s - 1];
      out.q[s] = out.q[s - 1];
    } else {
      out.plastic_strain[s] = h.strain[s] - v.back();
      out.q[s] = q_hist.back();
    }
    out.stress[s] = sig;
  }
  return out;
}

}  // namespace fracsim
