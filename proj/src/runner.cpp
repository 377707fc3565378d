#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracsim/config.hpp"
#include "fracsim/csv.hpp"
#include "fracsim/fade.hpp"
#include "fracsim/grid.hpp"
#include "fracsim/numerics.hpp"
#include "fracsim/rheology.hpp"
#include "fracsim/stable.hpp"
#include "fracsim/verify.hpp"
#include "fracsim/walks.hpp"

namespace fracsim {

namespace {

using nlohmann::json;

struct Artifact {
  std::string name;
  std::string bytes;
};

double get_or(const json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : it->get<double>();
}

Boundary parse_bc(const std::string& bc) {
  if (bc == "free") return Boundary::FreeSpace;
  if (bc == "absorbing") return Boundary::Absorbing;
  if (bc == "reflecting") return Boundary::Reflecting;
  return Boundary::Periodic;
}

Grid1D parse_grid(const json& g) {
  return Grid1D(g["x_min"].get<double>(), g["dx"].get<double>(),
                g["n"].get<std::size_t>(), parse_bc(g["bc"]));
}

// Bin grid whose cells tile [x_min, x_max]; bins.x(i) are the cell centers.
Grid1D bin_grid(double x_min, double x_max, std::size_t bins) {
  const double dx = (x_max - x_min) / static_cast<double>(bins);
  return Grid1D(x_min + 0.5 * dx, dx, bins);
}

std::size_t nearest_index(const Grid1D& g, double x) {
  const double raw = std::round((x - g.x0) / g.dx);
  if (raw <= 0.0) return 0;
  const std::size_t i = static_cast<std::size_t>(raw);
  return std::min(i, g.n - 1);
}

// Unit-mass initial profile; delta puts the whole mass in one cell, smooth
// profiles are normalized discretely so conservation ledgers start at 1.
std::vector<double> build_ic(const json& ic, const Grid1D& g) {
  const std::string kind = ic["kind"].get<std::string>();
  const double center = get_or(ic, "center", 0.0);
  std::vector<double> u(g.n, 0.0);
  if (kind == "delta") {
    u[nearest_index(g, center)] = 1.0 / g.dx;
    return u;
  }
  const double width = ic["width"].get<double>();
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    u[i] = (kind == "gaussian")
               ? std::exp(-0.5 * (x - center) * (x - center) / (width * width))
               : (std::abs(x - center) <= 0.5 * width ? 1.0 : 0.0);
  }
  KahanSum s;
  for (double v : u) s.add(v);
  const double mass = s.value() * g.dx;
  if (!(mass > 0.0)) {
    throw std::invalid_argument("fade ic: profile has zero mass on this grid");
  }
  for (double& v : u) v /= mass;
  return u;
}

OrderField parse_order_field(const json& f, double t_end) {
  const std::string kind = f["kind"].get<std::string>();
  if (kind == "constant") {
    return OrderField::constant(f["value"].get<double>());
  }
  if (kind == "step") {
    const double left = f["left"].get<double>();
    const double right = f["right"].get<double>();
    const double split = f["x_split"].get<double>();
    return {[left, right, split](double x, double) {
              return x < split ? left : right;
            },
            false};
  }
  const double start = f["start"].get<double>();
  const double end = f["end"].get<double>();
  return {[start, end, t_end](double, double t) {
            return start + (end - start) * (t / t_end);
          },
          true};
}

std::string density_csv(const Grid1D& bins, const std::vector<double>& d) {
  CsvWriter csv({"x", "density"});
  for (std::size_t i = 0; i < bins.n; ++i) csv.add_row({bins.x(i), d[i]});
  return csv.str();
}

int run_sample(const json& p, std::uint64_t seed,
               std::vector<Artifact>& arts) {
  const json& s = p["stable"];
  const StableParams law(s["alpha"].get<double>(), s["gamma"].get<double>(),
                         s["sigma"].get<double>(), get_or(s, "mu", 0.0));
  const auto xs = sample(law, p["n"].get<std::size_t>(), seed);
  CsvWriter csv({"index", "value"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv.add_row_with_index(i, {xs[i]});
  }
  arts.push_back({"samples.csv", csv.str()});
  return 0;
}

WalkSpec walk_spec_from_json(const json& w, std::uint64_t seed) {
  WalkSpec spec;
  const std::string kind = w["kind"].get<std::string>();
  spec.n_paths = w["n_paths"].get<std::size_t>();
  spec.T = w["t_end"].get<double>();
  spec.dt = spec.T / static_cast<double>(w["n_steps"].get<std::size_t>());
  spec.seed = seed;
  if (kind == "flight") {
    const json& f = w["flight"];
    spec.kind = WalkKind::Flight;
    spec.stable_jump =
        StableParams(f["alpha"].get<double>(), f["gamma"].get<double>(),
                     f["sigma"].get<double>(), get_or(f, "mu", 0.0));
  } else if (kind == "subordinated") {
    const json& f = w["subordinated"];
    spec.kind = WalkKind::SubordinatedBM;
    spec.beta = f["beta"].get<double>();
    spec.stable_jump = StableParams(2.0, 0.0, f["k"].get<double>(), 0.0);
  } else if (kind == "ctrw") {
    const json& f = w["ctrw"];
    spec.kind = WalkKind::CTRW;
    const json& wait = f["wait"];
    spec.wait = (wait["kind"].get<std::string>() == "exponential")
                    ? WaitDensity::exponential(wait["rate"].get<double>())
                    : WaitDensity::stable_wait(wait["beta"].get<double>(),
                                               wait["scale"].get<double>());
    const json& jump = f["jump"];
    if (jump["kind"].get<std::string>() == "gaussian") {
      spec.jump = JumpDensity::gaussian(jump["std"].get<double>());
    } else {
      spec.jump = JumpDensity::stable_jump(StableParams(
          jump["alpha"].get<double>(), jump["gamma"].get<double>(),
          jump["sigma"].get<double>(), get_or(jump, "mu", 0.0)));
    }
  } else {
    const json& f = w["levy_walk"];
    spec.kind = WalkKind::LevyWalk;
    spec.gamma_lw = f["gamma"].get<double>();
    spec.tau0 = f["tau0"].get<double>();
    spec.v = f["v"].get<double>();
  }
  return spec;
}

PathEnsemble simulate(const WalkSpec& spec) {
  switch (spec.kind) {
    case WalkKind::Flight:
      return simulate_flight(spec);
    case WalkKind::SubordinatedBM:
      return simulate_subordinated(spec);
    case WalkKind::CTRW:
      return simulate_ctrw(spec);
    default:
      return simulate_levy_walk(spec);
  }
}

int run_walk(const json& p, std::uint64_t seed, std::vector<Artifact>& arts) {
  const json& w = p["walk"];
  const WalkSpec spec = walk_spec_from_json(w, seed);
  const PathEnsemble e = simulate(spec);

  CsvWriter msd_csv({"t", "msd", "stderr"});
  for (const MsdPoint& pt : msd_estimate(e)) {
    msd_csv.add_row({pt.t, pt.msd, pt.stderr_});
  }
  arts.push_back({"msd.csv", msd_csv.str()});

  if (w.contains("density")) {
    const json& d = w["density"];
    const Grid1D bins = bin_grid(d["x_min"].get<double>(),
                                 d["x_max"].get<double>(),
                                 d["bins"].get<std::size_t>());
    const std::size_t idx = static_cast<std::size_t>(std::min<double>(
        std::round(d["t"].get<double>() / e.times.dt),
        static_cast<double>(e.times.n - 1)));
    const DensityEstimate est = empirical_density(e, e.times.t(idx), bins);
    arts.push_back({"density.csv", density_csv(bins, est.values)});
  }

  const std::size_t k =
      std::min<std::size_t>(get_or(w, "write_paths", 0.0), spec.n_paths);
  if (k > 0) {
    CsvWriter paths_csv({"path", "t", "x"});
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < e.times.n; ++i) {
        paths_csv.add_row({static_cast<double>(r), e.times.t(i),
                           e.positions.at(r, i)});
      }
    }
    arts.push_back({"paths.csv", paths_csv.str()});
  }
  return 0;
}

FieldSeries solve_from_json(const json& f, FadeKind kind) {
  FadeProblem prob;
  prob.kind = kind;
  prob.grid = parse_grid(f["grid"]);
  const json& tj = f["time"];
  const double t_end = tj["t_end"].get<double>();
  const std::size_t steps = tj["n_steps"].get<std::size_t>();
  prob.tgrid = TimeGrid(0.0, t_end / static_cast<double>(steps), steps + 1);
  prob.D = get_or(f, "D", 1.0);
  prob.V = get_or(f, "V", 0.0);
  prob.p = get_or(f, "p", 0.5);
  prob.alpha = get_or(f, "alpha", 2.0);
  prob.beta = get_or(f, "beta", 0.5);
  prob.mim_beta_ratio = get_or(f, "ratio", 0.0);
  if (f.contains("alpha_field")) {
    prob.alpha_field = parse_order_field(f["alpha_field"], t_end);
    prob.has_alpha_field = true;
  }
  if (f.contains("beta_field")) {
    prob.beta_field = parse_order_field(f["beta_field"], t_end);
    prob.has_beta_field = true;
  }
  prob.ic = build_ic(f["ic"], prob.grid);
  switch (kind) {
    case FadeKind::SpaceFADE:
    case FadeKind::FFADE:
      return solve_space_fade(prob);
    case FadeKind::TimeFADE:
      return solve_time_fade(prob);
    case FadeKind::FMIM:
      return solve_fmim(prob);
    default:
      return solve_vo_fade(prob);
  }
}

int run_solve(const json& p, std::uint64_t, std::vector<Artifact>& arts) {
  const json& f = p["fade"];
  const std::string kind = f["kind"].get<std::string>();

  if (kind == "spectral") {
    const Grid1D g = parse_grid(f["grid"]);
    const double t_end = f["time"]["t_end"].get<double>();
    const auto ic = build_ic(f["ic"], g);
    const auto u = spectral_fade_evolve(ic, g, f["alpha"].get<double>(),
                                        get_or(f, "D", 1.0), t_end);
    CsvWriter snap({"t", "x", "c"});
    for (std::size_t i = 0; i < g.n; ++i) snap.add_row({0.0, g.x(i), ic[i]});
    for (std::size_t i = 0; i < g.n; ++i) snap.add_row({t_end, g.x(i), u[i]});
    arts.push_back({"snapshots.csv", snap.str()});
    CsvWriter mass({"step", "t", "mass"});
    KahanSum m0;
    KahanSum m1;
    for (std::size_t i = 0; i < g.n; ++i) {
      m0.add(ic[i]);
      m1.add(u[i]);
    }
    mass.add_row({0.0, 0.0, m0.value() * g.dx});
    mass.add_row({1.0, t_end, m1.value() * g.dx});
    arts.push_back({"mass.csv", mass.str()});
    return 0;
  }

  const FadeKind fk = kind == "space"   ? FadeKind::SpaceFADE
                      : kind == "ffade" ? FadeKind::FFADE
                      : kind == "time"  ? FadeKind::TimeFADE
                      : kind == "fmim"  ? FadeKind::FMIM
                                        : FadeKind::VOFADE;
  const FieldSeries out = solve_from_json(f, fk);
  const Grid1D& g = out.meta.grid;
  const std::size_t stride =
      static_cast<std::size_t>(get_or(f, "snapshot_stride", 1.0));

  std::vector<std::string> header = {"t", "x", "c"};
  if (out.has_immobile) header.push_back("c_immobile");
  CsvWriter snap(header);
  for (std::size_t s = 0; s < out.times.n; ++s) {
    if (s % stride != 0 && s != out.times.n - 1) continue;
    for (std::size_t i = 0; i < g.n; ++i) {
      std::vector<double> row = {out.times.t(s), g.x(i), out.snapshots.at(s, i)};
      if (out.has_immobile) row.push_back(out.immobile.at(s, i));
      snap.add_row(row);
    }
  }
  arts.push_back({"snapshots.csv", snap.str()});

  CsvWriter mass({"step", "t", "mass"});
  for (std::size_t s = 0; s < out.times.n; ++s) {
    mass.add_row({static_cast<double>(s), out.times.t(s), out.mass_ledger[s]});
  }
  arts.push_back({"mass.csv", mass.str()});

  if (f.contains("btc_x")) {
    const std::size_t i = nearest_index(g, f["btc_x"].get<double>());
    CsvWriter btc({"t", "c"});
    for (std::size_t s = 0; s < out.times.n; ++s) {
      btc.add_row({out.times.t(s), out.snapshots.at(s, i)});
    }
    arts.push_back({"btc.csv", btc.str()});
  }
  return 0;
}

RheoModel model_from_json(const json& m) {
  const std::string kind = m["kind"].get<std::string>();
  if (kind == "sb") {
    return RheoModel::sb(m["E"].get<double>(), m["alpha"].get<double>());
  }
  if (kind == "fkv") {
    return RheoModel::fkv(m["E1"].get<double>(), m["alpha1"].get<double>(),
                          m["E2"].get<double>(), m["alpha2"].get<double>());
  }
  if (kind == "fm") {
    return RheoModel::fm(m["E1"].get<double>(), m["alpha1"].get<double>(),
                         m["E2"].get<double>(), m["alpha2"].get<double>());
  }
  if (kind == "qlv") {
    return RheoModel::qlv(m["A"].get<double>(), m["B"].get<double>(),
                          m["C"].get<double>(), m["Dq"].get<double>(),
                          m["alpha"].get<double>());
  }
  return RheoModel::vevp(m["E"].get<double>(), m["alpha"].get<double>(),
                         m["sigmaY"].get<double>(), m["K"].get<double>(),
                         m["alphaK"].get<double>(), m["H"].get<double>());
}

StrainHistory history_from_json(const json& h) {
  const std::string kind = h["kind"].get<std::string>();
  const double eps0 = h["eps0"].get<double>();
  const double t_end = h["t_end"].get<double>();
  const std::size_t steps = h["n_steps"].get<std::size_t>();
  StrainHistory out;
  out.tgrid = TimeGrid(0.0, t_end / static_cast<double>(steps), steps + 1);
  out.strain.resize(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    const double t = out.tgrid.t(j);
    if (kind == "step") {
      out.strain[j] = eps0;
    } else if (kind == "ramp") {
      out.strain[j] = eps0 * t / t_end;
    } else if (kind == "ramp_hold") {
      const double t_ramp = h["t_ramp"].get<double>();
      out.strain[j] = eps0 * std::min(1.0, t / t_ramp);
    } else {
      out.strain[j] = eps0 * std::sin(h["omega"].get<double>() * t);
    }
  }
  return out;
}

int run_rheology(const json& p, std::uint64_t, std::vector<Artifact>& arts) {
  const json& r = p["rheology"];
  const RheoModel model = model_from_json(r["model"]);

  if (r.contains("relaxation")) {
    const json& rel = r["relaxation"];
    const double lo = rel["t_min"].get<double>();
    const double hi = rel["t_max"].get<double>();
    const std::size_t n = rel["n"].get<std::size_t>();
    CsvWriter csv({"t", "G"});
    for (std::size_t i = 0; i < n; ++i) {
      const double t = lo * std::pow(hi / lo, static_cast<double>(i) /
                                                  static_cast<double>(n - 1));
      csv.add_row({t, relaxation_modulus(model, t)});
    }
    arts.push_back({"relaxation.csv", csv.str()});
  }

  if (r.contains("moduli")) {
    const json& mod = r["moduli"];
    const double lo = mod["omega_min"].get<double>();
    const double hi = mod["omega_max"].get<double>();
    const std::size_t n = mod["n"].get<std::size_t>();
    CsvWriter csv({"omega", "storage", "loss"});
    for (std::size_t i = 0; i < n; ++i) {
      const double w = lo * std::pow(hi / lo, static_cast<double>(i) /
                                                  static_cast<double>(n - 1));
      const auto [gp, gpp] = dynamic_moduli(model, w);
      csv.add_row({w, gp, gpp});
    }
    arts.push_back({"moduli.csv", csv.str()});
  }

  if (r.contains("history")) {
    const StrainHistory h = history_from_json(r["history"]);
    if (model.kind == RheoKind::VEVP) {
      const VevpResult res = vevp_simulate(model, h);
      CsvWriter csv({"t", "strain", "stress", "plastic_strain", "q"});
      for (std::size_t j = 0; j < h.tgrid.n; ++j) {
        csv.add_row({h.tgrid.t(j), h.strain[j], res.stress[j],
                     res.plastic_strain[j], res.q[j]});
      }
      arts.push_back({"vevp.csv", csv.str()});
    } else {
      const std::vector<double> sigma = (model.kind == RheoKind::QLV)
                                            ? qlv_stress(model, h)
                                            : stress_response(model, h);
      CsvWriter csv({"t", "strain", "stress"});
      for (std::size_t j = 0; j < h.tgrid.n; ++j) {
        csv.add_row({h.tgrid.t(j), h.strain[j], sigma[j]});
      }
      arts.push_back({"stress.csv", csv.str()});
    }
    if (r.contains("free_energy") && r["free_energy"].get<bool>()) {
      CsvWriter csv({"t_final", "psi"});
      csv.add_row({h.tgrid.t_last(),
                   sb_free_energy(model.E, model.alpha, h)});
      arts.push_back({"free_energy.csv", csv.str()});
    }
  }
  return 0;
}

json report_common(const ComparisonReport& rep, double threshold) {
  json j;
  j["ks_distance"] = rep.ks_distance;
  j["l1_distance"] = rep.l1_distance;
  j["n_samples"] = rep.n_samples;
  j["threshold"] = threshold;
  j["pass"] = rep.pass;
  return j;
}

void push_report(std::vector<Artifact>& arts, const json& rep) {
  arts.push_back({"report.json", rep.dump(2) + "\n"});
  CsvWriter csv({"metric", "value"});
  std::string body = csv.str();
  for (const auto& item : rep.items()) {
    if (item.value().is_number()) {
      body += item.key() + "," + format_double(item.value().get<double>()) +
              "\n";
    } else if (item.value().is_boolean()) {
      body += item.key() + "," + (item.value().get<bool>() ? "1" : "0") + "\n";
    }
  }
  arts.push_back({"report.csv", body});
}

int run_verify(const json& p, std::uint64_t seed,
               std::vector<Artifact>& arts) {
  const json& v = p["verify"];
  const std::string pairing = v["pairing"].get<std::string>();

  if (pairing == "sampler_vs_cdf") {
    const json& s = v["stable"];
    const StableParams law(s["alpha"].get<double>(), s["gamma"].get<double>(),
                           s["sigma"].get<double>(), get_or(s, "mu", 0.0));
    const double threshold = get_or(v, "threshold", 0.01);
    const auto xs = sample(law, v["n"].get<std::size_t>(), seed);
    const StableCdfTable table(law);
    const double ks = ks_statistic(xs, table);
    json rep;
    rep["pairing"] = pairing;
    rep["ks_distance"] = ks;
    rep["n_samples"] = xs.size();
    rep["threshold"] = threshold;
    rep["pass"] = ks <= threshold;
    push_report(arts, rep);
    return rep["pass"].get<bool>() ? 0 : 2;
  }

  if (pairing == "flight_vs_fundamental") {
    const double alpha = v["alpha"].get<double>();
    const double gamma = get_or(v, "gamma", 0.0);
    const double sigma = get_or(v, "sigma", 1.0);
    const double t = v["t"].get<double>();
    const double threshold = get_or(v, "threshold", 0.02);
    WalkSpec spec;
    spec.kind = WalkKind::Flight;
    spec.stable_jump = StableParams(alpha, gamma, sigma, 0.0);
    spec.n_paths = v["n_paths"].get<std::size_t>();
    spec.T = t;
    spec.dt = t / static_cast<double>(v["n_steps"].get<std::size_t>());
    spec.seed = seed;
    const PathEnsemble e = simulate_flight(spec);
    const Grid1D bins =
        bin_grid(v["x_min"].get<double>(), v["x_max"].get<double>(),
                 static_cast<std::size_t>(get_or(v, "bins", 256.0)));
    const DensityEstimate est = empirical_density(e, e.times.t_last(), bins);
    const StableParams law(alpha, gamma, sigma * std::pow(t, 1.0 / alpha),
                           0.0);
    const auto ref = [&law](double x) { return pdf(law, x); };
    const ComparisonReport rep =
        compare_density(est.values, ref, bins, threshold);
    CsvWriter cmp({"x", "empirical", "reference"});
    for (std::size_t i = 0; i < bins.n; ++i) {
      cmp.add_row({bins.x(i), est.values[i], ref(bins.x(i))});
    }
    arts.push_back({"compare.csv", cmp.str()});
    json rj = report_common(rep, threshold);
    rj["pairing"] = pairing;
    rj["outside_fraction"] = est.outside_fraction;
    push_report(arts, rj);
    return rep.pass ? 0 : 2;
  }

  // ctrw_vs_fade: heavy-tailed waits exp(-(c s)^beta) with stable jumps map
  // onto the space-time-fractional solve with K = sigma_j^alpha / c^beta.
  const double beta = v["beta"].get<double>();
  const double c = v["wait_scale"].get<double>();
  const double alpha = v["alpha"].get<double>();
  const double sigma_j = v["jump_sigma"].get<double>();
  const double t = v["t"].get<double>();
  const double threshold = get_or(v, "threshold", 0.03);
  const std::size_t n_steps = v["n_steps"].get<std::size_t>();

  WalkSpec spec;
  spec.kind = WalkKind::CTRW;
  spec.wait = WaitDensity::stable_wait(beta, c);
  spec.jump = JumpDensity::stable_jump(StableParams(alpha, 0.0, sigma_j, 0.0));
  spec.n_paths = v["n_paths"].get<std::size_t>();
  spec.T = t;
  spec.dt = t / static_cast<double>(n_steps);
  spec.seed = seed;
  const PathEnsemble e = simulate_ctrw(spec);

  FadeProblem prob;
  prob.kind = FadeKind::VOFADE;
  prob.grid = parse_grid(v["grid"]);
  prob.tgrid = TimeGrid(0.0, spec.dt, n_steps + 1);
  prob.D = std::pow(sigma_j, alpha) / std::pow(c, beta);
  prob.p = 0.5;
  prob.alpha_field = OrderField::constant(alpha);
  prob.beta_field = OrderField::constant(beta);
  prob.has_alpha_field = true;
  prob.has_beta_field = true;
  prob.ic.assign(prob.grid.n, 0.0);
  prob.ic[nearest_index(prob.grid, 0.0)] = 1.0 / prob.grid.dx;
  const FieldSeries sol = solve_vo_fade(prob);

  const Grid1D bins(prob.grid.x0, prob.grid.dx, prob.grid.n);
  const DensityEstimate est = empirical_density(e, e.times.t_last(), bins);
  std::vector<double> ref(prob.grid.n);
  for (std::size_t i = 0; i < prob.grid.n; ++i) {
    ref[i] = sol.snapshots.at(sol.times.n - 1, i);
  }
  const ComparisonReport rep = compare_binned(est.values, ref, bins, threshold);
  CsvWriter cmp({"x", "empirical", "reference"});
  for (std::size_t i = 0; i < bins.n; ++i) {
    cmp.add_row({bins.x(i), est.values[i], ref[i]});
  }
  arts.push_back({"compare.csv", cmp.str()});
  json rj = report_common(rep, threshold);
  rj["pairing"] = pairing;
  rj["outside_fraction"] = est.outside_fraction;
  push_report(arts, rj);
  return rep.pass ? 0 : 2;
}

}  // namespace

int run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const json params = json::parse(config.params_json);
  std::vector<Artifact> artifacts;
  int status = 0;
  switch (config.command) {
    case Command::Sample:
      status = run_sample(params, config.seed, artifacts);
      break;
    case Command::Walk:
      status = run_walk(params, config.seed, artifacts);
      break;
    case Command::Solve:
      status = run_solve(params, config.seed, artifacts);
      break;
    case Command::Rheology:
      status = run_rheology(params, config.seed, artifacts);
      break;
    case Command::Verify:
      status = run_verify(params, config.seed, artifacts);
      break;
  }

  // All content is computed before anything is written, so a failed run
  // leaves no partial artifacts behind.
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  json manifest;
  manifest["command"] = static_cast<int>(config.command) == 0   ? "sample"
                        : static_cast<int>(config.command) == 1 ? "walk"
                        : static_cast<int>(config.command) == 2 ? "solve"
                        : static_cast<int>(config.command) == 3
                            ? "rheology"
                            : "verify";
  manifest["toolkit_version"] = kToolkitVersion;
  manifest["seed"] = config.seed;
  manifest["config_hash"] = to_hex(fnv1a64(config.canonical_json));
  manifest["exit_status"] = status;
  json listed = json::array();
  for (const Artifact& a : artifacts) {
    const std::string path =
        (fs::path(config.output_dir) / a.name).string();
    write_text_file(path, a.bytes);
    json entry;
    entry["name"] = a.name;
    entry["bytes"] = a.bytes.size();
    entry["fnv1a64"] = to_hex(fnv1a64(a.bytes));
    listed.push_back(entry);
  }
  manifest["artifacts"] = listed;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  manifest["wall_clock_seconds"] = wall;
  write_text_file((fs::path(config.output_dir) / "manifest.json").string(),
                  manifest.dump(2) + "\n");
  return status;
}

}  // namespace fracsim
