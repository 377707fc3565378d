#include "fracsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracsim {

namespace {

using nlohmann::json;

// Accumulates every schema violation; accessors return safe defaults so the
// walk can continue past errors and report the full list.
struct Checker {
  std::vector<std::string>& errors;

  void fail(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }

  static std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
  }

  void reject_unknown(const json& j, const std::string& base,
                      const std::vector<std::string>& allowed) {
    for (const auto& item : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) ==
          allowed.end()) {
        fail(join(base, item.key()), "unknown key");
      }
    }
  }

  const json* object(const json& j, const std::string& base,
                     const std::string& key, bool required) {
    const auto it = j.find(key);
    if (it == j.end()) {
      if (required) fail(join(base, key), "required object is missing");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(join(base, key), "must be an object");
      return nullptr;
    }
    return &*it;
  }

  double number(const json& j, const std::string& base, const std::string& key,
                double lo, double hi, bool lo_strict, bool hi_strict,
                bool required, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) {
      if (required) fail(join(base, key), "required number is missing");
      return fallback;
    }
    if (!it->is_number()) {
      fail(join(base, key), "must be a number");
      return fallback;
    }
    const double v = it->get<double>();
    const bool lo_ok = lo_strict ? v > lo : v >= lo;
    const bool hi_ok = hi_strict ? v < hi : v <= hi;
    if (!std::isfinite(v) || !lo_ok || !hi_ok) {
      const auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", x);
        return std::string(buf);
      };
      std::string msg;
      if (hi >= 1e300 && lo <= -1e300) {
        msg = "must be a finite number";
      } else if (hi >= 1e300) {
        msg = std::string("must be ") + (lo_strict ? "> " : ">= ") + fmt(lo);
      } else if (lo <= -1e300) {
        msg = std::string("must be ") + (hi_strict ? "< " : "<= ") + fmt(hi);
      } else {
        msg = "must lie in " + std::string(lo_strict ? "(" : "[") + fmt(lo) +
              ", " + fmt(hi) + (hi_strict ? ")" : "]");
      }
      fail(join(base, key), msg);
      return fallback;
    }
    return v;
  }

  double finite(const json& j, const std::string& base, const std::string& key,
                bool required, double fallback) {
    return number(j, base, key, -1e300, 1e300, false, false, required,
                  fallback);
  }

  std::int64_t integer(const json& j, const std::string& base,
                       const std::string& key, std::int64_t lo,
                       std::int64_t hi, bool required, std::int64_t fallback) {
    const auto it = j.find(key);
    if (it == j.end()) {
      if (required) fail(join(base, key), "required integer is missing");
      return fallback;
    }
    if (!it->is_number_integer()) {
      fail(join(base, key), "must be an integer");
      return fallback;
    }
    const std::int64_t v = it->get<std::int64_t>();
    if (v < lo || v > hi) {
      fail(join(base, key), "must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
      return fallback;
    }
    return v;
  }

  std::string choice(const json& j, const std::string& base,
                     const std::string& key,
                     const std::vector<std::string>& options, bool required,
                     const std::string& fallback) {
    const auto it = j.find(key);
    if (it == j.end()) {
      if (required) fail(join(base, key), "required string is missing");
      return fallback;
    }
    if (!it->is_string()) {
      fail(join(base, key), "must be a string");
      return fallback;
    }
    const std::string v = it->get<std::string>();
    if (std::find(options.begin(), options.end(), v) == options.end()) {
      std::string msg = "must be one of {";
      for (std::size_t i = 0; i < options.size(); ++i) {
        msg += (i ? ", " : "") + options[i];
      }
      fail(join(base, key), msg + "}");
      return fallback;
    }
    return v;
  }

  bool flag(const json& j, const std::string& base, const std::string& key,
            bool fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) {
      fail(join(base, key), "must be a boolean");
      return fallback;
    }
    return it->get<bool>();
  }
};

void check_stable_block(Checker& c, const json& j, const std::string& base) {
  c.reject_unknown(j, base, {"alpha", "gamma", "sigma", "mu"});
  c.number(j, base, "alpha", 0.0, 2.0, true, false, true, 1.5);
  c.number(j, base, "gamma", -1.0, 1.0, false, false, true, 0.0);
  c.number(j, base, "sigma", 0.0, 1e300, true, false, true, 1.0);
  c.finite(j, base, "mu", false, 0.0);
}

void check_density_block(Checker& c, const json& j, const std::string& base,
                         double t_end) {
  c.reject_unknown(j, base, {"t", "x_min", "x_max", "bins"});
  c.number(j, base, "t", 0.0, t_end, true, false, true, t_end);
  const double lo = c.finite(j, base, "x_min", true, -1.0);
  const double hi = c.finite(j, base, "x_max", true, 1.0);
  if (!(lo < hi)) c.fail(base, "x_min must be < x_max");
  c.integer(j, base, "bins", 2, 1 << 20, true, 64);
}

void check_sample(Checker& c, const json& doc) {
  c.reject_unknown(doc, "", {"command", "seed", "output_dir", "stable", "n"});
  if (const json* s = c.object(doc, "", "stable", true)) {
    check_stable_block(c, *s, "stable");
  }
  c.integer(doc, "", "n", 1, 100000000, true, 1);
}

void check_walk(Checker& c, const json& doc) {
  c.reject_unknown(doc, "", {"command", "seed", "output_dir", "walk"});
  const json* w = c.object(doc, "", "walk", true);
  if (!w) return;
  const std::string kind =
      c.choice(*w, "walk", "kind",
               {"flight", "subordinated", "ctrw", "levy_walk"}, true, "flight");
  c.reject_unknown(*w, "walk",
                   {"kind", "n_paths", "t_end", "n_steps", "density",
                    "write_paths", kind});
  c.integer(*w, "walk", "n_paths", 2, 10000000, true, 2);
  const double t_end = c.number(*w, "walk", "t_end", 0.0, 1e300, true, false,
                                true, 1.0);
  c.integer(*w, "walk", "n_steps", 1, 10000000, true, 1);
  c.integer(*w, "walk", "write_paths", 0, 10000, false, 0);

  const std::string kb = Checker::join("walk", kind);
  const json* params = c.object(*w, "walk", kind, true);
  if (params) {
    if (kind == "flight") {
      check_stable_block(c, *params, kb);
    } else if (kind == "subordinated") {
      c.reject_unknown(*params, kb, {"beta", "k"});
      c.number(*params, kb, "beta", 0.0, 1.0, true, true, true, 0.5);
      c.number(*params, kb, "k", 0.0, 1e300, true, false, true, 1.0);
    } else if (kind == "ctrw") {
      c.reject_unknown(*params, kb, {"wait", "jump"});
      if (const json* wait = c.object(*params, kb, "wait", true)) {
        const std::string wb = Checker::join(kb, "wait");
        const std::string wkind = c.choice(*wait, wb, "kind",
                                           {"exponential", "stable"}, true,
                                           "exponential");
        if (wkind == "exponential") {
          c.reject_unknown(*wait, wb, {"kind", "rate"});
          c.number(*wait, wb, "rate", 0.0, 1e300, true, false, true, 1.0);
        } else {
          c.reject_unknown(*wait, wb, {"kind", "beta", "scale"});
          c.number(*wait, wb, "beta", 0.0, 1.0, true, true, true, 0.5);
          c.number(*wait, wb, "scale", 0.0, 1e300, true, false, true, 1.0);
        }
      }
      if (const json* jump = c.object(*params, kb, "jump", true)) {
        const std::string jb = Checker::join(kb, "jump");
        const std::string jkind = c.choice(*jump, jb, "kind",
                                           {"gaussian", "stable"}, true,
                                           "gaussian");
        if (jkind == "gaussian") {
          c.reject_unknown(*jump, jb, {"kind", "std"});
          c.number(*jump, jb, "std", 0.0, 1e300, true, false, true, 1.0);
        } else {
          c.reject_unknown(*jump, jb, {"kind", "alpha", "gamma", "sigma", "mu"});
          c.number(*jump, jb, "alpha", 0.0, 2.0, true, false, true, 1.5);
          c.number(*jump, jb, "gamma", -1.0, 1.0, false, false, true, 0.0);
          c.number(*jump, jb, "sigma", 0.0, 1e300, true, false, true, 1.0);
          c.finite(*jump, jb, "mu", false, 0.0);
        }
      }
    } else {  // levy_walk
      c.reject_unknown(*params, kb, {"gamma", "tau0", "v"});
      c.number(*params, kb, "gamma", 0.0, 1e300, true, false, true, 1.5);
      c.number(*params, kb, "tau0", 0.0, 1e300, true, false, true, 1.0);
      c.number(*params, kb, "v", 0.0, 1e300, false, false, true, 1.0);
    }
  }
  if (const json* d = c.object(*w, "walk", "density", false)) {
    check_density_block(c, *d, "walk.density", t_end);
  }
}

void check_grid_block(Checker& c, const json& j, const std::string& base,
                      bool spectral) {
  c.reject_unknown(j, base, {"x_min", "dx", "n", "bc"});
  c.finite(j, base, "x_min", true, 0.0);
  c.number(j, base, "dx", 0.0, 1e300, true, false, true, 1.0);
  const std::int64_t n = c.integer(j, base, "n", 3, 1 << 22, true, 3);
  const std::string bc = c.choice(
      j, base, "bc", {"free", "absorbing", "reflecting", "periodic"}, true,
      "free");
  if (spectral) {
    if (bc != "periodic") c.fail(Checker::join(base, "bc"),
                                 "spectral solves require periodic");
    if ((n & (n - 1)) != 0) {
      c.fail(Checker::join(base, "n"),
             "spectral solves require a power of two");
    }
  } else if (bc == "periodic") {
    c.fail(Checker::join(base, "bc"),
           "grid-based solvers do not support periodic");
  }
}

void check_order_field_block(Checker& c, const json& j,
                             const std::string& base) {
  const std::string kind = c.choice(j, base, "kind",
                                    {"constant", "step", "linear_t"}, true,
                                    "constant");
  if (kind == "constant") {
    c.reject_unknown(j, base, {"kind", "value"});
    c.finite(j, base, "value", true, 1.0);
  } else if (kind == "step") {
    c.reject_unknown(j, base, {"kind", "left", "right", "x_split"});
    c.finite(j, base, "left", true, 1.0);
    c.finite(j, base, "right", true, 1.0);
    c.finite(j, base, "x_split", true, 0.0);
  } else {
    c.reject_unknown(j, base, {"kind", "start", "end"});
    c.finite(j, base, "start", true, 1.0);
    c.finite(j, base, "end", true, 1.0);
  }
}

void check_solve(Checker& c, const json& doc) {
  c.reject_unknown(doc, "", {"command", "seed", "output_dir", "fade"});
  const json* f = c.object(doc, "", "fade", true);
  if (!f) return;
  const std::string kind =
      c.choice(*f, "fade", "kind",
               {"space", "ffade", "time", "fmim", "vofade", "spectral"}, true,
               "space");
  std::vector<std::string> allowed = {"kind", "grid",  "time",
                                      "ic",   "D",     "V",
                                      "p",    "snapshot_stride", "btc_x"};
  if (kind == "space" || kind == "ffade" || kind == "spectral") {
    allowed.push_back("alpha");
  } else if (kind == "time") {
    allowed.push_back("beta");
  } else if (kind == "fmim") {
    allowed.push_back("beta");
    allowed.push_back("ratio");
  } else {
    allowed.insert(allowed.end(), {"alpha", "beta", "alpha_field",
                                   "beta_field"});
  }
  c.reject_unknown(*f, "fade", allowed);
  c.number(*f, "fade", "D", 0.0, 1e300, true, false, false, 1.0);
  const double vel = c.finite(*f, "fade", "V", false, 0.0);
  if (kind == "spectral" && vel != 0.0) {
    c.fail("fade.V", "spectral solves support V = 0 only");
  }
  c.number(*f, "fade", "p", 0.0, 1.0, false, false, false, 0.5);
  c.integer(*f, "fade", "snapshot_stride", 1, 1000000, false, 1);
  c.finite(*f, "fade", "btc_x", false, 0.0);
  if (kind == "space" || kind == "ffade") {
    c.number(*f, "fade", "alpha", 1.0, 2.0, true, false, true, 1.5);
  } else if (kind == "spectral") {
    c.number(*f, "fade", "alpha", 0.0, 2.0, true, false, true, 1.5);
  } else if (kind == "time" || kind == "fmim") {
    c.number(*f, "fade", "beta", 0.0, 1.0, true, true, true, 0.5);
    if (kind == "fmim") {
      c.number(*f, "fade", "ratio", 0.0, 1e300, false, false, true, 0.0);
    }
  } else {
    const bool has_af = f->contains("alpha_field");
    const bool has_bf = f->contains("beta_field");
    if (!has_af && !has_bf) {
      c.fail("fade", "vofade needs alpha_field and/or beta_field");
    }
    if (has_af) {
      if (const json* af = c.object(*f, "fade", "alpha_field", false)) {
        check_order_field_block(c, *af, "fade.alpha_field");
      }
    } else {
      c.number(*f, "fade", "alpha", 1.0, 2.0, true, false, false, 2.0);
    }
    if (has_bf) {
      if (const json* bf = c.object(*f, "fade", "beta_field", false)) {
        check_order_field_block(c, *bf, "fade.beta_field");
      }
    } else {
      c.number(*f, "fade", "beta", 0.0, 1.0, true, true, false, 0.5);
    }
  }
  if (const json* g = c.object(*f, "fade", "grid", true)) {
    check_grid_block(c, *g, "fade.grid", kind == "spectral");
  }
  if (const json* t = c.object(*f, "fade", "time", true)) {
    c.reject_unknown(*t, "fade.time", {"t_end", "n_steps"});
    c.number(*t, "fade.time", "t_end", 0.0, 1e300, true, false, true, 1.0);
    c.integer(*t, "fade.time", "n_steps", 1, 1000000, true, 1);
  }
  if (const json* ic = c.object(*f, "fade", "ic", true)) {
    const std::string ik = c.choice(*ic, "fade.ic", "kind",
                                    {"delta", "gaussian", "box"}, true,
                                    "delta");
    if (ik == "delta") {
      c.reject_unknown(*ic, "fade.ic", {"kind", "center"});
    } else {
      c.reject_unknown(*ic, "fade.ic", {"kind", "center", "width"});
      c.number(*ic, "fade.ic", "width", 0.0, 1e300, true, false, true, 1.0);
    }
    c.finite(*ic, "fade.ic", "center", false, 0.0);
  }
}

void check_history_block(Checker& c, const json& j, const std::string& base,
                         const std::string& model_kind) {
  const std::string kind = c.choice(j, base, "kind",
                                    {"step", "ramp", "ramp_hold", "sin"}, true,
                                    "ramp");
  std::vector<std::string> allowed = {"kind", "eps0", "t_end", "n_steps"};
  if (kind == "ramp_hold") allowed.push_back("t_ramp");
  if (kind == "sin") allowed.push_back("omega");
  c.reject_unknown(j, base, allowed);
  c.finite(j, base, "eps0", true, 0.0);
  const double t_end =
      c.number(j, base, "t_end", 0.0, 1e300, true, false, true, 1.0);
  c.integer(j, base, "n_steps", 2, 10000000, true, 2);
  if (kind == "ramp_hold") {
    c.number(j, base, "t_ramp", 0.0, t_end, true, true, true, t_end / 2);
  }
  if (kind == "sin") {
    c.number(j, base, "omega", 0.0, 1e300, true, false, true, 1.0);
  }
  if (kind == "step" && model_kind == "vevp") {
    c.fail(base, "vevp histories must start from zero strain; use ramp");
  }
}

void check_rheology(Checker& c, const json& doc) {
  c.reject_unknown(doc, "", {"command", "seed", "output_dir", "rheology"});
  const json* r = c.object(doc, "", "rheology", true);
  if (!r) return;
  c.reject_unknown(*r, "rheology",
                   {"model", "relaxation", "moduli", "history", "free_energy"});
  std::string mk = "sb";
  if (const json* m = c.object(*r, "rheology", "model", true)) {
    const std::string mb = "rheology.model";
    mk = c.choice(*m, mb, "kind", {"sb", "fkv", "fm", "qlv", "vevp"}, true,
                  "sb");
    if (mk == "sb") {
      c.reject_unknown(*m, mb, {"kind", "E", "alpha"});
      c.number(*m, mb, "E", 0.0, 1e300, true, false, true, 1.0);
      c.number(*m, mb, "alpha", 0.0, 1.0, true, true, true, 0.5);
    } else if (mk == "fkv" || mk == "fm") {
      c.reject_unknown(*m, mb, {"kind", "E1", "alpha1", "E2", "alpha2"});
      c.number(*m, mb, "E1", 0.0, 1e300, true, false, true, 1.0);
      c.number(*m, mb, "E2", 0.0, 1e300, true, false, true, 1.0);
      const double a1 =
          c.number(*m, mb, "alpha1", 0.0, 1.0, true, true, true, 0.2);
      const double a2 =
          c.number(*m, mb, "alpha2", 0.0, 1.0, true, true, true, 0.8);
      if (!(a1 < a2)) c.fail(mb, "need alpha1 < alpha2");
    } else if (mk == "qlv") {
      c.reject_unknown(*m, mb, {"kind", "A", "B", "C", "Dq", "alpha"});
      c.number(*m, mb, "A", 0.0, 1e300, true, false, true, 1.0);
      c.finite(*m, mb, "B", true, 1.0);
      c.number(*m, mb, "C", 0.0, 1e300, false, false, true, 1.0);
      c.number(*m, mb, "Dq", 0.0, 1e300, false, false, true, 0.0);
      c.number(*m, mb, "alpha", 0.0, 1.0, true, true, true, 0.5);
    } else {
      c.reject_unknown(*m, mb,
                       {"kind", "E", "alpha", "sigmaY", "K", "alphaK", "H"});
      c.number(*m, mb, "E", 0.0, 1e300, true, false, true, 1.0);
      c.number(*m, mb, "alpha", 0.0, 1.0, true, true, true, 0.5);
      c.number(*m, mb, "sigmaY", 0.0, 1e300, true, false, true, 1.0);
      c.number(*m, mb, "K", 0.0, 1e300, false, false, true, 1.0);
      c.number(*m, mb, "alphaK", 0.0, 1.0, true, true, true, 0.5);
      c.number(*m, mb, "H", 0.0, 1e300, false, false, true, 0.0);
    }
  }
  const bool closed_form = (mk == "sb" || mk == "fkv" || mk == "fm");
  bool any_task = false;
  if (const json* rel = c.object(*r, "rheology", "relaxation", false)) {
    any_task = true;
    if (!closed_form) {
      c.fail("rheology.relaxation", "closed forms exist only for sb/fkv/fm");
    }
    c.reject_unknown(*rel, "rheology.relaxation", {"t_min", "t_max", "n"});
    const double lo = c.number(*rel, "rheology.relaxation", "t_min", 0.0,
                               1e300, true, false, true, 0.01);
    const double hi = c.number(*rel, "rheology.relaxation", "t_max", 0.0,
                               1e300, true, false, true, 10.0);
    if (!(lo < hi)) c.fail("rheology.relaxation", "need t_min < t_max");
    c.integer(*rel, "rheology.relaxation", "n", 2, 1000000, true, 2);
  }
  if (const json* mod = c.object(*r, "rheology", "moduli", false)) {
    any_task = true;
    if (!closed_form) {
      c.fail("rheology.moduli", "closed forms exist only for sb/fkv/fm");
    }
    c.reject_unknown(*mod, "rheology.moduli", {"omega_min", "omega_max", "n"});
    const double lo = c.number(*mod, "rheology.moduli", "omega_min", 0.0,
                               1e300, true, false, true, 0.01);
    const double hi = c.number(*mod, "rheology.moduli", "omega_max", 0.0,
                               1e300, true, false, true, 10.0);
    if (!(lo < hi)) c.fail("rheology.moduli", "need omega_min < omega_max");
    c.integer(*mod, "rheology.moduli", "n", 2, 1000000, true, 2);
  }
  const bool has_history = r->contains("history");
  if (has_history) {
    any_task = true;
    if (const json* h = c.object(*r, "rheology", "history", false)) {
      check_history_block(c, *h, "rheology.history", mk);
    }
  }
  if (c.flag(*r, "rheology", "free_energy", false)) {
    if (mk != "sb") c.fail("rheology.free_energy", "defined for sb only");
    if (!has_history) {
      c.fail("rheology.free_energy", "requires a history block");
    }
  }
  if ((mk == "qlv" || mk == "vevp") && !has_history) {
    c.fail("rheology", "qlv/vevp runs need a history block");
  }
  if (!any_task) c.fail("rheology", "no task requested");
}

void check_verify(Checker& c, const json& doc) {
  c.reject_unknown(doc, "", {"command", "seed", "output_dir", "verify"});
  const json* v = c.object(doc, "", "verify", true);
  if (!v) return;
  const std::string pairing = c.choice(
      *v, "verify", "pairing",
      {"flight_vs_fundamental", "sampler_vs_cdf", "ctrw_vs_fade"}, true,
      "sampler_vs_cdf");
  if (pairing == "flight_vs_fundamental") {
    c.reject_unknown(*v, "verify",
                     {"pairing", "alpha", "gamma", "sigma", "n_paths", "t",
                      "n_steps", "bins", "x_min", "x_max", "threshold"});
    const double alpha =
        c.number(*v, "verify", "alpha", 0.0, 2.0, true, false, true, 1.5);
    const double gamma =
        c.number(*v, "verify", "gamma", -1.0, 1.0, false, false, false, 0.0);
    if (alpha == 1.0 && gamma != 0.0) {
      c.fail("verify.gamma",
             "skewed alpha=1 flights are not self-similar; use gamma=0");
    }
    c.number(*v, "verify", "sigma", 0.0, 1e300, true, false, false, 1.0);
    c.integer(*v, "verify", "n_paths", 100, 10000000, true, 100);
    c.number(*v, "verify", "t", 0.0, 1e300, true, false, true, 1.0);
    c.integer(*v, "verify", "n_steps", 1, 1000000, true, 1);
    c.integer(*v, "verify", "bins", 16, 1 << 20, false, 256);
    const double lo = c.finite(*v, "verify", "x_min", true, -1.0);
    const double hi = c.finite(*v, "verify", "x_max", true, 1.0);
    if (!(lo < hi)) c.fail("verify", "x_min must be < x_max");
    c.number(*v, "verify", "threshold", 0.0, 1.0, true, false, false, 0.02);
  } else if (pairing == "sampler_vs_cdf") {
    c.reject_unknown(*v, "verify",
                     {"pairing", "stable", "n", "threshold"});
    if (const json* s = c.object(*v, "verify", "stable", true)) {
      check_stable_block(c, *s, "verify.stable");
    }
    c.integer(*v, "verify", "n", 100, 100000000, true, 100);
    c.number(*v, "verify", "threshold", 0.0, 1.0, true, false, false, 0.01);
  } else {
    c.reject_unknown(*v, "verify",
                     {"pairing", "beta", "wait_scale", "alpha", "jump_sigma",
                      "n_paths", "t", "n_steps", "grid", "threshold"});
    c.number(*v, "verify", "beta", 0.0, 1.0, true, true, true, 0.5);
    c.number(*v, "verify", "wait_scale", 0.0, 1e300, true, false, true, 1.0);
    c.number(*v, "verify", "alpha", 1.0, 2.0, true, false, true, 1.5);
    c.number(*v, "verify", "jump_sigma", 0.0, 1e300, true, false, true, 1.0);
    c.integer(*v, "verify", "n_paths", 100, 10000000, true, 100);
    c.number(*v, "verify", "t", 0.0, 1e300, true, false, true, 1.0);
    c.integer(*v, "verify", "n_steps", 1, 1000000, true, 1);
    if (const json* g = c.object(*v, "verify", "grid", true)) {
      check_grid_block(c, *g, "verify.grid", false);
    }
    c.number(*v, "verify", "threshold", 0.0, 1.0, true, false, false, 0.03);
  }
}

}  // namespace

ConfigValidation validate_config(const std::string& doc_text) {
  ConfigValidation out;
  json doc;
  try {
    doc = json::parse(doc_text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop =
        std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, doc_text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (doc_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    out.errors.push_back("parse error at line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ": " + e.what());
    return out;
  }
  if (!doc.is_object()) {
    out.errors.push_back("document: top level must be a JSON object");
    return out;
  }

  Checker c{out.errors};
  const std::string cmd = c.choice(
      doc, "", "command", {"sample", "walk", "solve", "rheology", "verify"},
      true, "sample");
  const auto seed_it = doc.find("seed");
  if (seed_it == doc.end()) {
    c.fail("seed", "required for reproducibility");
  } else if (!seed_it->is_number_unsigned() && !seed_it->is_number_integer()) {
    c.fail("seed", "must be a nonnegative integer");
  } else if (seed_it->is_number_integer() && seed_it->get<std::int64_t>() < 0) {
    c.fail("seed", "must be a nonnegative integer");
  }
  if (const auto od = doc.find("output_dir");
      od != doc.end() && !od->is_string()) {
    c.fail("output_dir", "must be a string");
  }

  if (cmd == "sample") {
    check_sample(c, doc);
  } else if (cmd == "walk") {
    check_walk(c, doc);
  } else if (cmd == "solve") {
    check_solve(c, doc);
  } else if (cmd == "rheology") {
    check_rheology(c, doc);
  } else if (cmd == "verify") {
    check_verify(c, doc);
  }

  if (!out.errors.empty()) return out;

  out.ok = true;
  out.config.command = cmd == "sample"     ? Command::Sample
                       : cmd == "walk"     ? Command::Walk
                       : cmd == "solve"    ? Command::Solve
                       : cmd == "rheology" ? Command::Rheology
                                           : Command::Verify;
  out.config.seed = seed_it->get<std::uint64_t>();
  out.config.output_dir =
      doc.contains("output_dir") ? doc["output_dir"].get<std::string>() : ".";

  json params = doc;
  params.erase("command");
  params.erase("seed");
  params.erase("output_dir");
  out.config.params_json = params.dump();
  json canonical = doc;
  canonical.erase("output_dir");
  out.config.canonical_json = canonical.dump();
  return out;
}

}  // namespace fracsim
