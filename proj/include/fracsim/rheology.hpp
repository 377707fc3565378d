#pragma once

#include <utility>
#include <vector>

#include "fracsim/grid.hpp"

namespace fracsim {

enum class RheoKind { SB, FKV, FM, QLV, VEVP };

// Fractional constitutive models built from Scott-Blair (springpot) elements.
// Pseudo-moduli E carry units Pa s^alpha; orders lie in (0,1).
struct RheoModel {
  RheoKind kind = RheoKind::SB;
  double E = 1.0;       // SB pseudo-modulus; VEVP elastic pseudo-modulus
  double alpha = 0.5;   // SB/VEVP elastic order
  double E1 = 1.0;      // FKV/FM first element
  double E2 = 1.0;      // FKV/FM second element
  double alpha1 = 0.2;  // with alpha1 < alpha2
  double alpha2 = 0.8;
  // QLV: instantaneous law sigma_e = A (exp(B eps) - 1), reduced kernel
  // g(t) = C + Dq t^{-alpha}. Note g(0+) = 1 holds only when Dq = 0.
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;
  double Dq = 0.0;
  // VEVP: yield stress, viscous modulus (Pa s^{alphaK}), hardening modulus.
  double sigmaY = 1.0;
  double K = 1.0;
  double H = 0.0;
  double alphaK = 0.5;

  static RheoModel sb(double E, double alpha);
  static RheoModel fkv(double E1, double alpha1, double E2, double alpha2);
  static RheoModel fm(double E1, double alpha1, double E2, double alpha2);
  static RheoModel qlv(double A, double B, double C, double Dq, double alpha);
  static RheoModel vevp(double E, double alpha, double sigmaY, double K,
                        double alphaK, double H);
};

// Uniformly sampled strain signal; strain[0] is the initial datum. A step
// history is declared by a nonzero strain[0] (SB relaxation tests).
struct StrainHistory {
  TimeGrid tgrid;
  std::vector<double> strain;

  void validate() const;
};

// Closed-form relaxation modulus G(t), t > 0, for SB/FKV/FM.
double relaxation_modulus(const RheoModel& m, double t);

// (storage, loss) moduli at angular frequency omega > 0, for SB/FKV/FM.
std::pair<double, double> dynamic_moduli(const RheoModel& m, double omega);

// History-driven stress for SB/FKV (direct L1 Caputo evaluation) and FM
// (implicit L1 solve of sigma + (E2/E1) CD^{a2-a1} sigma = E2 CD^{a2} eps).
std::vector<double> stress_response(const RheoModel& m,
                                    const StrainHistory& h);

// Quasi-linear viscoelastic stress: hereditary integral of g against the
// rate of the instantaneous elastic stress, evaluated exactly as
//   sigma = C sigma_e(eps(t)) + Dq Gamma(1-alpha) CD^alpha [sigma_e o eps].
std::vector<double> qlv_stress(const RheoModel& m, const StrainHistory& h);

// Scott-Blair free energy at the final history time:
//   psi = E/(2 Gamma(1-a)) II (2t - s1 - s2)^{-a} deps(s1) deps(s2),
// with the weakly singular kernel integrated analytically over each cell
// pair (piecewise-constant strain rate).
double sb_free_energy(double E, double alpha, const StrainHistory& h);

struct VevpResult {
  std::vector<double> stress;
  std::vector<double> plastic_strain;
  std::vector<double> q;  // accumulated plastic flow, nondecreasing
};

// Fractional visco-elasto-plastic driver: SB elastic predictor on
// eps - eps_p, yield f = |sigma| - (sigmaY + K CD^{alphaK} q + H q), scalar
// Newton corrector (the discretized system is linear in the increment, so
// Newton converges in one step). Sub-yield histories reproduce the SB
// stress_response bit-for-bit via the shared L1 kernel.
VevpResult vevp_simulate(const RheoModel& m, const StrainHistory& h);

}  // namespace fracsim
