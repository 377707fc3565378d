#include "fracsim/fade.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracsim/numerics.hpp"
#include "fracsim/operators.hpp"
#include "fracsim/rng.hpp"
#include "fracsim/special.hpp"
#include "fracsim/stable.hpp"

namespace fracsim {

namespace {

// Weighting of the two time-derivative terms in
//   w_dt * dc/dt + w_frac * CD^{beta(x,t)} c = A c.
// SpaceFADE: (1, 0); TimeFADE/VOFADE: (0, 1); FMIM: (1, ratio).
struct TimeWeights {
  double w_dt;
  double w_frac;
};

std::vector<double> eval_order_rows(const OrderField& field, const Grid1D& g,
                                    double t, double lo, double hi,
                                    const char* what) {
  std::vector<double> rows(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double a = field.eval(g.x(i), t);
    if (!(a > lo) || !(a <= hi)) {
      throw std::domain_error(std::string(what) +
                              ": order out of range at a grid node");
    }
    rows[i] = a;
  }
  return rows;
}

// Spatial operator A with row-wise orders:
//   A row i = -(1/cos(pi a_i/2)) [d_minus * GL_left + d_plus * GL_right]
//             - V * upwind first difference,
// then boundary handling:
//   Reflecting: rows 0 and n-1 rebuilt so every column sums to zero exactly
//     (discrete conservation; the residual is attributed to the two ends with
//     a linear weight).
//   Absorbing / FreeSpace: rows 0 and n-1 cleared; the stepping loop imposes
//     zero Dirichlet values there.
Eigen::MatrixXd assemble_spatial(const Grid1D& g,
                                 const std::vector<double>& alpha_rows,
                                 double d_minus, double d_plus, double V) {
  const std::size_t n = g.n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  parallel_for(n, [&](std::size_t i) {
    const double a = alpha_rows[i];
    const double cosf = std::cos(0.5 * kPi * a);
    const double scale = std::pow(g.dx, -a);
    const double pm = -d_minus / cosf * scale;
    const double pp = -d_plus / cosf * scale;
    const auto wts = gl_weights_cached(a, n);
    const std::vector<double>& w = *wts;
    // Left-sided history: columns i+1-j.
    {
      const std::size_t j_hi = i + 1;
      const std::size_t j_lo = (j_hi >= n) ? j_hi - (n - 1) : 0;
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        A(i, i + 1 - j) += pm * w[j];
      }
    }
    // Right-sided history: columns i-1+j.
    {
      const std::size_t j_lo = (i == 0) ? 1 : 0;
      const std::size_t j_hi = n - i;
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        A(i, i - 1 + j) += pp * w[j];
      }
    }
    if (V > 0.0) {
      A(i, i) -= V / g.dx;
      if (i >= 1) A(i, i - 1) += V / g.dx;
    } else if (V < 0.0) {
      A(i, i) += V / g.dx;
      if (i + 1 < n) A(i, i + 1) -= V / g.dx;
    }
  });

  if (g.bc == Boundary::Reflecting) {
    A.row(0).setZero();
    A.row(n - 1).setZero();
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) s += A(i, j);
      const double wj = static_cast<double>(n - 1 - j) /
                        static_cast<double>(n - 1);
      A(0, j) = -wj * s;
      A(n - 1, j) = -(s + A(0, j));  // forces the column sum to zero exactly
    }
  } else {
    A.row(0).setZero();
    A.row(n - 1).setZero();
  }
  return A;
}

FieldSeries run_engine(const FadeProblem& prob, TimeWeights tw) {
  prob.validate();
  const Grid1D& g = prob.grid;
  const std::size_t n = g.n;
  const std::size_t steps = prob.tgrid.n - 1;
  const double dt = prob.tgrid.dt;
  const bool dirichlet =
      g.bc == Boundary::Absorbing || g.bc == Boundary::FreeSpace;
  const bool mim = prob.kind == FadeKind::FMIM;

  const OrderField alpha_field = prob.has_alpha_field
                                     ? prob.alpha_field
                                     : OrderField::constant(prob.alpha);
  const OrderField beta_field = prob.has_beta_field
                                    ? prob.beta_field
                                    : OrderField::constant(prob.beta);
  const bool alpha_td = prob.has_alpha_field && prob.alpha_field.time_dependent;
  const bool beta_td = prob.has_beta_field && prob.beta_field.time_dependent;

  const double d_minus = (prob.d_minus >= 0.0) ? prob.d_minus : prob.p * prob.D;
  const double d_plus =
      (prob.d_plus >= 0.0) ? prob.d_plus : (1.0 - prob.p) * prob.D;

  FieldSeries out;
  out.times = prob.tgrid;
  out.snapshots = RowMatrix(steps + 1, n, 0.0);
  out.mass_ledger.assign(steps + 1, 0.0);
  out.meta = prob;
  if (mim) {
    out.immobile = RowMatrix(steps + 1, n, 0.0);
    out.has_immobile = true;
  }
  std::copy(prob.ic.begin(), prob.ic.end(), out.snapshots.row(0));

  const auto record_mass = [&](std::size_t s) {
    KahanSum m;
    for (std::size_t i = 0; i < n; ++i) {
      double v = out.snapshots.at(s, i);
      if (mim) v += prob.mim_beta_ratio * out.immobile.at(s, i);
      m.add(v);
    }
    out.mass_ledger[s] = m.value() * g.dx;
  };
  record_mass(0);

  // Orders frozen at the evaluation node t_{s+1}; static fields are sampled
  // once at the first target time.
  std::vector<double> beta_rows =
      (tw.w_frac != 0.0)
          ? eval_order_rows(beta_field, g, prob.tgrid.t(1), 0.0, 1.0,
                            "fade time order")
          : std::vector<double>(n, 1.0);
  std::vector<double> alpha_rows = eval_order_rows(
      alpha_field, g, prob.tgrid.t(1), 1.0 + 1e-6, 2.0, "fade space order");

  std::vector<double> r0(n, 0.0);
  const auto refresh_r0 = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      r0[i] = 1.0 / (std::pow(dt, beta_rows[i]) *
                     std::tgamma(2.0 - beta_rows[i]));
    }
  };
  refresh_r0();

  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  const auto refactor = [&] {
    const Eigen::MatrixXd A =
        assemble_spatial(g, alpha_rows, d_minus, d_plus, prob.V);
    Eigen::MatrixXd M = -A;
    for (std::size_t i = 0; i < n; ++i) {
      M(i, i) += tw.w_dt / dt + tw.w_frac * r0[i];
    }
    if (dirichlet) {
      M.row(0).setZero();
      M(0, 0) = 1.0;
      M.row(n - 1).setZero();
      M(n - 1, n - 1) = 1.0;
    }
    lu.compute(M);
    if (lu.determinant() == 0.0) {
      throw std::runtime_error("fade solve: singular implicit matrix");
    }
  };
  refactor();

  Eigen::VectorXd rhs(n);
  std::vector<double> hist(n, 0.0);
  for (std::size_t s = 0; s < steps; ++s) {
    const double t_eval = prob.tgrid.t(s + 1);
    if ((alpha_td || beta_td) && s > 0) {
      if (beta_td && tw.w_frac != 0.0) {
        beta_rows = eval_order_rows(beta_field, g, t_eval, 0.0, 1.0,
                                    "fade time order");
        refresh_r0();
      }
      if (alpha_td) {
        alpha_rows = eval_order_rows(alpha_field, g, t_eval, 1.0 + 1e-6, 2.0,
                                     "fade space order");
      }
      refactor();
    }

    // L1 history term per node: r0_i sum_{j=1..s} d_j (c^{s+1-j} - c^{s-j}).
    if (tw.w_frac != 0.0 && s > 0) {
      parallel_for(n, [&](std::size_t i) {
        const auto d = l1_weights_cached(beta_rows[i], s + 1);
        KahanSum h;
        for (std::size_t j = 1; j <= s; ++j) {
          h.add((*d)[j] *
                (out.snapshots.at(s + 1 - j, i) - out.snapshots.at(s - j, i)));
        }
        hist[i] = r0[i] * h.value();
      });
    } else {
      std::fill(hist.begin(), hist.end(), 0.0);
    }

    for (std::size_t i = 0; i < n; ++i) {
      const double c_prev = out.snapshots.at(s, i);
      rhs[i] = tw.w_dt / dt * c_prev + tw.w_frac * (r0[i] * c_prev - hist[i]);
    }
    if (dirichlet) {
      rhs[0] = 0.0;
      rhs[n - 1] = 0.0;
    }
    Eigen::VectorXd c_next = lu.solve(rhs);

    double cmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) cmax = std::max(cmax, c_next[i]);
    for (std::size_t i = 0; i < n; ++i) {
      out.snapshots.at(s + 1, i) = c_next[i];
      if (c_next[i] < -1e-12 * cmax) ++out.negativity_events;
    }

    if (mim) {
      // Immobile update c_im' = CD^beta c_m, evaluated implicitly at s+1; the
      // fractional derivative reuses r0 and the history just computed.
      for (std::size_t i = 0; i < n; ++i) {
        const double frac =
            r0[i] * (c_next[i] - out.snapshots.at(s, i)) + hist[i];
        out.immobile.at(s + 1, i) = out.immobile.at(s, i) + dt * frac;
      }
    }
    record_mass(s + 1);

    if (g.bc == Boundary::FreeSpace) {
      const double edge =
          (out.snapshots.at(s + 1, 1) + out.snapshots.at(s + 1, n - 2)) * g.dx;
      if (edge > 1e-6 * std::max(out.mass_ledger[s + 1], 1e-300)) {
        throw std::runtime_error(
            "fade solve: plume reached the truncated free-space edge "
            "(enlarge the domain)");
      }
    }
  }
  return out;
}

}  // namespace

void FadeProblem::validate() const {
  if (ic.size() != grid.n) {
    throw std::invalid_argument("FadeProblem: ic length must equal grid size");
  }
  for (double v : ic) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("FadeProblem: ic must be nonnegative");
    }
  }
  if (grid.bc == Boundary::Periodic) {
    throw std::invalid_argument(
        "FadeProblem: periodic grids are served by spectral_fade_evolve");
  }
  if (tgrid.n < 2) {
    throw std::invalid_argument("FadeProblem: need at least one time step");
  }
  if (!(D > 0.0)) throw std::invalid_argument("FadeProblem: D must be > 0");
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("FadeProblem: p must lie in [0,1]");
  }
  switch (kind) {
    case FadeKind::SpaceFADE:
    case FadeKind::FFADE:
      if (!(alpha > 1.0 + 1e-6) || !(alpha <= 2.0)) {
        throw std::invalid_argument(
            "FadeProblem: space order must lie in (1,2]");
      }
      break;
    case FadeKind::TimeFADE:
      // beta = 1 is allowed: it reduces to the classical solver bit-for-bit.
      if (!has_beta_field && (!(beta > 0.0) || !(beta <= 1.0))) {
        throw std::invalid_argument(
            "FadeProblem: time order must lie in (0,1]");
      }
      break;
    case FadeKind::FMIM:
      if (!has_beta_field && (!(beta > 0.0) || !(beta < 1.0))) {
        throw std::invalid_argument(
            "FadeProblem: time order must lie in (0,1)");
      }
      if (!(mim_beta_ratio >= 0.0)) {
        throw std::invalid_argument("FadeProblem: capacity ratio must be >= 0");
      }
      break;
    case FadeKind::VOFADE:
      if (!has_alpha_field && !has_beta_field) {
        throw std::invalid_argument(
            "FadeProblem: VOFADE expects at least one order field");
      }
      break;
  }
}

FieldSeries solve_space_fade(const FadeProblem& prob) {
  if (prob.kind != FadeKind::SpaceFADE && prob.kind != FadeKind::FFADE) {
    throw std::invalid_argument("solve_space_fade: wrong problem kind");
  }
  FadeProblem p = prob;
  p.has_beta_field = false;
  p.beta = 1.0;  // unused: classical time derivative
  p.has_alpha_field = false;
  p.alpha_field = OrderField::constant(prob.alpha);
  return run_engine(p, {1.0, 0.0});
}

FieldSeries solve_time_fade(const FadeProblem& prob) {
  if (prob.kind != FadeKind::TimeFADE) {
    throw std::invalid_argument("solve_time_fade: wrong problem kind");
  }
  FadeProblem p = prob;
  p.alpha = 2.0;  // classical diffusion term via the alpha=2 GL stencil
  p.has_alpha_field = false;
  return run_engine(p, {0.0, 1.0});
}

FieldSeries solve_fmim(const FadeProblem& prob) {
  if (prob.kind != FadeKind::FMIM) {
    throw std::invalid_argument("solve_fmim: wrong problem kind");
  }
  FadeProblem p = prob;
  p.alpha = 2.0;
  p.has_alpha_field = false;
  return run_engine(p, {1.0, prob.mim_beta_ratio});
}

FieldSeries solve_vo_fade(const FadeProblem& prob) {
  if (prob.kind != FadeKind::VOFADE) {
    throw std::invalid_argument("solve_vo_fade: wrong problem kind");
  }
  return run_engine(prob, {0.0, 1.0});
}

std::vector<double> spectral_fade_evolve(const std::vector<double>& u0,
                                         const Grid1D& g, double alpha,
                                         double D, double t) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::invalid_argument("spectral_fade_evolve: alpha must lie in (0,2]");
  }
  if (!(D > 0.0) || !(t >= 0.0)) {
    throw std::invalid_argument("spectral_fade_evolve: need D > 0, t >= 0");
  }
  return spectral_multiplier_apply(u0, g, [alpha, D, t](double xi) {
    return std::exp(-D * t * std::pow(xi, alpha));
  });
}

double fundamental_space(double alpha, double p, double k, double x, double t) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("fundamental_space: p must lie in [0,1]");
  }
  if (!(k > 0.0) || !(t > 0.0)) {
    throw std::invalid_argument("fundamental_space: need k > 0, t > 0");
  }
  const StableParams law(alpha, 2.0 * p - 1.0, k * std::pow(t, 1.0 / alpha),
                         0.0);
  return pdf(law, x);
}

double fundamental_time(double beta, double k, double x, double t) {
  return tfd_fundamental(beta, k, x, t);
}

}  // namespace fracsim
