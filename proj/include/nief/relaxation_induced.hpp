#pragma once

#include "nief/types.hpp"

namespace nief {

// Interference driven by relaxation alone: the spontaneous-cascade doublet
// lineshape with its angular-momentum interference coefficient, and the
// collision-induced four-wave-mixing coherence.

/// Wigner 6j symbol via the Racah single-sum formula.  Arguments must be
/// nonnegative half-integers (throws Error("NonHalfInteger") otherwise);
/// returns 0 when any triangle condition fails.
double wigner6j(double j1, double j2, double j3, double j4, double j5, double j6);

/// Two dipole-coupled doublets (m, m1 upper; n, n1 lower) with all four
/// transitions allowed and doublet splitting Delta.  A_ij are Einstein
/// coefficients, Gamma/Gamma1 the halfwidths of the m-n and m1-n1 lines,
/// rho_i level populations, lambda the wavelength entering only through the
/// lambda^2/(4 pi) prefactor.
struct CascadeDoublet {
  double A_mn{1}, A_m1n1{1}, A_m1m{1}, A_n1n{1};
  double J_m{0}, J_n{0}, J_m1{0}, J_n1{0};
  double Gamma{1}, Gamma1{1};
  double Delta{0};
  double rho_n{0}, rho_m{0}, rho_n1{0}, rho_m1{0};
  double lambda{1};

  double N_nm() const { return (2.0 * J_m + 1.0) * (rho_n - rho_m); }
  double N_n1m1() const { return (2.0 * J_m1 + 1.0) * (rho_n1 - rho_m1); }
};

/// Throws Error("MomentaNotDipoleAllowed") unless every coupled pair
/// satisfies |J_a - J_b| <= 1 <= J_a + J_b.
void ensure_dipole_allowed(const CascadeDoublet& d);

/// C = sqrt(A_m1m A_n1n A_mn / A_m1n1) and the interference coefficient
///   K = (-1)^(J_m + J_n1) sqrt(2J_m+1) sqrt(2J_n1+1) {J_m J_n 1; J_n1 J_m1 1},
/// which always lies in [-1, 1].  Throws Error("ZeroReferenceA") when
/// A_m1n1 <= 0.
struct InterferenceCoefficients {
  double K{0}, C{0};
};

InterferenceCoefficients interference_coefficients(const CascadeDoublet& d);

/// Sign-changing interference profile
///   f(Omega) = Gamma Gamma1 [Gamma Gamma1 - Omega (Omega - Delta)]
///              / ((Gamma^2 + Omega^2)(Gamma1^2 + (Omega - Delta)^2)),
/// normalized to f = 1 at Omega = Delta = 0; its integral over the real
/// line is exactly zero.
double f_interference(double Omega, double Gamma, double Gamma1, double Delta);

/// Absorption index of the doublet in units of lambda^2/(4 pi): two
/// Lorentzians plus the K C/(Gamma Gamma1) f(Omega) interference term.
/// Multiply by geometric_prefactor(d.lambda) for the absolute scale; the
/// sign conditions below are prefactor-free.
double cascade_alpha(const CascadeDoublet& d, double Omega);

/// Far-wing form (|Omega| >> Delta, halfwidths), same units:
///   [N_nm A_mn Gamma + N_n1m1 A_m1n1 (Gamma1 - K C)] / Omega^2.
double cascade_alpha_wing(const CascadeDoublet& d, double Omega);

double geometric_prefactor(double lambda);

/// Wing amplification condition: requires K > 0 and
///   margin = (K C / Gamma1 - 1) N_n1m1 A_m1n1 Gamma1 - N_nm A_mn Gamma > 0.
ConditionReport awi_wing_condition(const CascadeDoublet& d);

/// Line-center amplification condition for K <= 0 at Delta = 0:
///   margin = (|K| C / Gamma - 1) N_n1m1 A_m1n1 Gamma - N_nm A_mn Gamma1 > 0.
ConditionReport awi_center_condition(const CascadeDoublet& d);

/// Driving coherence of the degenerate four-wave-mixing channel.  Omega1,
/// Omega2 are the one-photon detunings of the two fundamental components,
/// Omega the two-photon (difference) detuning from the n-n1 splitting.
struct FwmRates {
  double Gamma_ng{1}, Gamma_n1g{1}, Gamma_nn1{1};
  double Omega1{0}, Omega2{0}, Omega{0};
};

/// The interference bracket
///   1 - i (Gamma_nn1 - Gamma_n1g - Gamma_ng) / (Omega + i Gamma_nn1);
/// identically 1 for purely spontaneous relaxation with a stable common
/// lower level, so the Omega = 0 resonance exists only when collisions (or
/// other extra dephasing) unbalance the halfwidths.
cplx fwm_bracket(const FwmRates& r);

/// Full coherence amplitude: bracket / ((Omega2 + i Gamma_n1g)(Omega1 - i Gamma_ng)).
cplx fwm_coherence(const FwmRates& r);

/// The bracket numerator Gamma_nn1 - Gamma_n1g - Gamma_ng.
double collision_resonance_amplitude(const FwmRates& r);

}  // namespace nief
