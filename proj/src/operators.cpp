#include "fracsim/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

#include "fracsim/numerics.hpp"

namespace fracsim {

namespace {

std::mutex g_weights_mutex;
std::map<std::pair<double, std::size_t>,
         std::shared_ptr<const std::vector<double>>>
    g_gl_cache;
std::map<double, std::shared_ptr<const std::vector<double>>> g_l1_cache;

double l1_value(const std::vector<double>& u, double dt, double alpha) {
  if (u.size() < 2) {
    throw std::invalid_argument("caputo_l1: need at least two history nodes");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("caputo_l1: dt must be > 0");
  const std::size_t m = u.size() - 1;
  const auto d = l1_weights_cached(alpha, m);
  KahanSum s;
  for (std::size_t j = 0; j < m; ++j) {
    s.add((*d)[j] * (u[m - j] - u[m - j - 1]));
  }
  return s.value() / (std::pow(dt, alpha) * std::tgamma(2.0 - alpha));
}

// One-sided spatial Caputo sums along increasing index; the right-sided
// variant is this applied to the reversed array, reversed back.
std::vector<double> caputo_left_space(const std::vector<double>& u, double dx,
                                      double alpha) {
  const std::size_t n = u.size();
  const auto d = l1_weights_cached(alpha, n);
  const double scale = 1.0 / (std::pow(dx, alpha) * std::tgamma(2.0 - alpha));
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    KahanSum s;
    for (std::size_t j = 0; j < i; ++j) {
      s.add((*d)[j] * (u[i - j] - u[i - j - 1]));
    }
    out[i] = s.value() * scale;
  }
  return out;
}

void check_truncation_edge(const std::vector<double>& u, const Grid1D& g,
                           Side side) {
  if (g.bc != Boundary::FreeSpace) return;
  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::abs(v));
  const double edge = (side == Side::Left) ? std::abs(u.front())
                                           : std::abs(u.back());
  if (umax > 0.0 && edge > 1e-8 * umax) {
    throw std::runtime_error(
        "gl_derivative: data does not vanish at the truncated edge of a "
        "free-space grid; zero extension is invalid here");
  }
}

}  // namespace

std::vector<double> gl_weights(double alpha, std::size_t m) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::invalid_argument("gl_weights: alpha must lie in (0, 2]");
  }
  if (m < 1) throw std::invalid_argument("gl_weights: m must be >= 1");
  std::vector<double> g(m + 1);
  g[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    g[j] = g[j - 1] * (static_cast<double>(j) - 1.0 - alpha) /
           static_cast<double>(j);
  }
  return g;
}

// Entries are immutable once published; extension replaces the map slot.
std::shared_ptr<const std::vector<double>> l1_weights_cached(double alpha,
                                                             std::size_t n) {
  std::scoped_lock lock(g_weights_mutex);
  auto& slot = g_l1_cache[alpha];
  if (!slot || slot->size() < n) {
    auto grown = std::make_shared<std::vector<double>>();
    grown->reserve(std::max<std::size_t>(n, 64));
    const double e = 1.0 - alpha;
    for (std::size_t j = 0; j < std::max<std::size_t>(n, 64); ++j) {
      grown->push_back(std::pow(static_cast<double>(j + 1), e) -
                       std::pow(static_cast<double>(j), e));
    }
    slot = grown;
  }
  return slot;
}

std::shared_ptr<const std::vector<double>> gl_weights_cached(double alpha,
                                                             std::size_t m) {
  {
    std::scoped_lock lock(g_weights_mutex);
    auto it = g_gl_cache.find({alpha, m});
    if (it != g_gl_cache.end()) return it->second;
  }
  auto fresh = std::make_shared<const std::vector<double>>(gl_weights(alpha, m));
  std::scoped_lock lock(g_weights_mutex);
  auto& slot = g_gl_cache[{alpha, m}];
  if (!slot) slot = fresh;
  return slot;
}

std::vector<double> gl_derivative(const std::vector<double>& u, const Grid1D& g,
                                  double alpha, Side side, std::size_t shift) {
  if (u.size() != g.n) {
    throw std::invalid_argument("gl_derivative: u length must equal grid size");
  }
  if (!(alpha > 0.0) || alpha >= 2.0 + 1e-15) {
    throw std::invalid_argument("gl_derivative: alpha must lie in (0, 2]");
  }
  check_truncation_edge(u, g, side);
  const std::size_t n = g.n;
  const auto wts = gl_weights_cached(alpha, n - 1 + shift);
  const std::vector<double>& w = *wts;
  const double scale = std::pow(g.dx, -alpha);
  std::vector<double> out(n, 0.0);
  if (side == Side::Left) {
    for (std::size_t i = 0; i < n; ++i) {
      KahanSum s;
      const std::size_t j_hi = i + shift;
      const std::size_t j_lo = (j_hi >= n) ? j_hi - (n - 1) : 0;
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        s.add(w[j] * u[i + shift - j]);
      }
      out[i] = s.value() * scale;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      KahanSum s;
      const std::size_t j_lo = (shift > i) ? shift - i : 0;
      const std::size_t j_hi = n - 1 + shift - i;
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        s.add(w[j] * u[i - shift + j]);
      }
      out[i] = s.value() * scale;
    }
  }
  return out;
}

std::vector<double> riesz_apply(const std::vector<double>& u, const Grid1D& g,
                                double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw std::invalid_argument("riesz_apply: alpha must lie in (0, 2)");
  }
  if (std::abs(alpha - 1.0) < 1e-6) {
    throw std::domain_error("riesz_apply: order too close to the cos(pi a/2) "
                            "singularity at alpha = 1");
  }
  const double pref = 0.5 / std::cos(0.5 * kPi * alpha);
  const auto left = gl_derivative(u, g, alpha, Side::Left);
  const auto right = gl_derivative(u, g, alpha, Side::Right);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = pref * (left[i] + right[i]);
  }
  return out;
}

std::vector<double> spectral_multiplier_apply(
    const std::vector<double>& u, const Grid1D& g,
    const std::function<double(double)>& multiplier) {
  if (g.bc != Boundary::Periodic) {
    throw std::invalid_argument("spectral multiplier requires a periodic grid");
  }
  const std::size_t n = g.n;
  if (u.size() != n) {
    throw std::invalid_argument("spectral multiplier: u length mismatch");
  }
  if ((n & (n - 1)) != 0) {
    throw std::invalid_argument("spectral multiplier: n must be a power of two");
  }
  // FFTW planning is not reentrant; execution on plan-owned buffers is kept
  // under the same lock since these calls are not on any hot path.
  static std::mutex fftw_mutex;
  std::scoped_lock lock(fftw_mutex);
  std::vector<double> in(u.begin(), u.end());
  std::vector<std::complex<double>> spec(n / 2 + 1);
  fftw_plan fwd = fftw_plan_dft_r2c_1d(
      static_cast<int>(n), in.data(),
      reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  const double dxi = 2.0 * kPi / (g.dx * static_cast<double>(n));
  for (std::size_t k = 0; k < spec.size(); ++k) {
    spec[k] *= multiplier(dxi * static_cast<double>(k)) /
               static_cast<double>(n);
  }
  std::vector<double> out(n);
  fftw_plan bwd = fftw_plan_dft_c2r_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(spec.data()),
      out.data(), FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  return out;
}

std::vector<double> spectral_frac_laplacian(const std::vector<double>& u,
                                            const Grid1D& g, double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::invalid_argument(
        "spectral_frac_laplacian: alpha must lie in (0, 2]");
  }
  return spectral_multiplier_apply(
      u, g, [alpha](double xi) { return std::pow(xi, alpha); });
}

double caputo_l1(const std::vector<double>& u_history, double dt,
                 double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("caputo_l1: alpha must lie in (0, 1)");
  }
  return l1_value(u_history, dt, alpha);
}

double vo_caputo_l1(const std::vector<double>& u_history, double dt,
                    const OrderField& order, double x) {
  if (u_history.size() < 2) {
    throw std::invalid_argument("vo_caputo_l1: need at least two history nodes");
  }
  const double t_eval = dt * static_cast<double>(u_history.size() - 1);
  const double a = order.eval(x, t_eval);
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("vo_caputo_l1: order outside (0,1) at evaluation node");
  }
  return l1_value(u_history, dt, a);
}

std::vector<double> riesz_caputo(const std::vector<double>& u, const Grid1D& g,
                                 double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("riesz_caputo: alpha must lie in (0, 1)");
  }
  if (u.size() != g.n) {
    throw std::invalid_argument("riesz_caputo: u length must equal grid size");
  }
  const auto left = caputo_left_space(u, g.dx, alpha);
  std::vector<double> rev(u.rbegin(), u.rend());
  auto right = caputo_left_space(rev, g.dx, alpha);
  std::reverse(right.begin(), right.end());
  const double pref = 0.5 * std::tgamma(2.0 - alpha);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = pref * (left[i] - right[i]);
  }
  return out;
}

std::vector<double> graded_mesh(double T, std::size_t n, double r) {
  if (!(T > 0.0)) throw std::invalid_argument("graded_mesh: T must be > 0");
  if (n < 1) throw std::invalid_argument("graded_mesh: n must be >= 1");
  if (!(r >= 1.0)) throw std::invalid_argument("graded_mesh: r must be >= 1");
  std::vector<double> t(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    t[j] = T * std::pow(static_cast<double>(j) / static_cast<double>(n), r);
  }
  return t;
}

std::vector<double> solve_fractional_relaxation(
    double alpha, double lambda, double u0, const std::vector<double>& tmesh) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(
        "solve_fractional_relaxation: alpha must lie in (0, 1)");
  }
  if (lambda > 0.0) {
    throw std::invalid_argument(
        "solve_fractional_relaxation: lambda must be <= 0");
  }
  const std::size_t n = tmesh.size();
  if (n < 2 || tmesh[0] != 0.0) {
    throw std::invalid_argument(
        "solve_fractional_relaxation: mesh must start at 0 with >= 2 nodes");
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (!(tmesh[j] > tmesh[j - 1])) {
      throw std::invalid_argument(
          "solve_fractional_relaxation: mesh must be strictly increasing");
    }
  }
  const double gam = std::tgamma(2.0 - alpha);
  const double e = 1.0 - alpha;
  std::vector<double> u(n);
  u[0] = u0;
  // Nonuniform L1: CD^alpha u(t_m) ~ sum_j w_{m,j} (u_j - u_{j-1}) with
  //   w_{m,j} = ((t_m - t_{j-1})^{1-a} - (t_m - t_j)^{1-a}) / (Gamma(2-a) (t_j - t_{j-1})).
  // Implicit step: (w_{m,m} - lambda) u_m = w_{m,m} u_{m-1} - history.
  for (std::size_t m = 1; m < n; ++m) {
    const double tm = tmesh[m];
    KahanSum hist;
    for (std::size_t j = 1; j < m; ++j) {
      const double w = (std::pow(tm - tmesh[j - 1], e) -
                        std::pow(tm - tmesh[j], e)) /
                       (gam * (tmesh[j] - tmesh[j - 1]));
      hist.add(w * (u[j] - u[j - 1]));
    }
    const double wmm =
        std::pow(tm - tmesh[m - 1], e) / (gam * (tm - tmesh[m - 1]));
    u[m] = (wmm * u[m - 1] - hist.value()) / (wmm - lambda);
  }
  return u;
}

}  // namespace fracsim
