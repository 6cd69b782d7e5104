#pragma once

#include "nief/types.hpp"

namespace nief {

// Laser-induced continuum structure: two discrete levels l, n embedded in
// the ionization continuum by strong dressing fields form autoionizing-like
// resonances that reshape the third-order susceptibility and the absorption
// of the fundamental and generated waves.  The induced widths gamma_ij and
// shifts delta_ij are taken as inputs (they require continuum matrix
// elements to compute); only their ratios enter the lineshapes.

/// Continuum-coupling parameters.
///   k1..k4      degeneracy factors in [0, 1] (1 for degenerate continua);
///   g_mn        discrete two-photon saturation ratio;
///   g_ll, g_nn  saturation ratios of the embedded levels, with
///               beta = g/(1+g) in [0, 1);
///   q_ij        Fano asymmetry parameters delta_ij / gamma_ij; both index
///               orders are kept because the lineshape formulas use them as
///               printed inputs (set them equal for real couplings).
struct ContinuumCoupling {
  double k1{0}, k2{0}, k3{0}, k4{0};
  double g_mn{0}, g_ll{0}, g_nn{0};
  double q_gl{0}, q_nl{0}, q_ln{0}, q_gn{0}, q_ng{0};

  double beta_l() const { return g_ll / (1.0 + g_ll); }
  double beta_n() const { return g_nn / (1.0 + g_nn); }
};

/// Normalized, shift-corrected detunings of the two continuum resonances as
/// seen by the fundamental combination (x_l, x_n) and by the generated
/// combination (y_l, y_n), plus the one-photon denominators
/// D_gm = 1 + i dgm and p_gm = 1 + i pgm (real parts exactly 1).
struct LicsDetunings {
  double x_l{0}, x_n{0}, y_l{0}, y_n{0};
  double dgm{0}, pgm{0};

  cplx D_gm() const { return {1.0, dgm}; }
  cplx p_gm() const { return {1.0, pgm}; }
};

/// q = delta / gamma.  Throws Error("ZeroWidth") for gamma <= 0.
double fano_q(double delta, double gamma);

/// Interference factors entering the ratios below.  Y equals X under the
/// substitution (x_l, x_n, D_gm) -> (y_l, y_n, p_gm).
struct LicsFactors {
  cplx K, A, X, Y;
};

LicsFactors lics_factors(const ContinuumCoupling& c, const LicsDetunings& d);

/// chi3 / chi3(resonant, weak fields) = K / (D_gm X).
cplx chi3_ratio(const ContinuumCoupling& c, const LicsDetunings& d);

/// Absorption of the fundamental relative to its resonant weak-field value:
/// Re{ [1 - g_mn/(D_gm X)] / D_gm }.
double alpha1_ratio(const ContinuumCoupling& c, const LicsDetunings& d);

/// Absorption of the generated wave relative to its resonant weak-field
/// value: 1 - k3 beta_l + k3 beta_l (y_l + q_gl)^2/(1 + y_l^2)
///          - Re{ k4 g_nn A^2 (1 - i q_gn)^2 / Y }.
/// The Fano window term vanishes exactly at y_l = -q_gl.
double alpha_mu_ratio(const ContinuumCoupling& c, const LicsDetunings& d);

}  // namespace nief
