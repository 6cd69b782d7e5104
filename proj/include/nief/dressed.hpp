#pragma once

#include <array>

#include "nief/model.hpp"

namespace nief {

// Closed-form strong-field solution for the weak-probe coherences r_2 and
// r_4 of the four-level scheme.  The model equations, including the
// four-wave-mixing feedback that makes the closed forms exact, are written
// out in docs/MODEL.md; the brute-force check lives in oracle.hpp.

/// One-photon denominators P_i, two-photon denominators P_jk and the
/// mixing-sideband denominators d_2, d_4.  Real parts are halfwidths.
struct Denominators {
  cplx P1, P2, P3, P4;
  cplx P12, P43, P32, P41;
  cplx d2, d4;
};

Denominators denominators(const RelaxationSpec& relax, const FieldSpec& fields);

/// Dimensionless coupling factors: g[k-1] = g_k is proportional to |G_1|^2
/// and v[k-1] = v_k to |G_3|^2.
struct CouplingFactors {
  std::array<cplx, 8> g{};
  std::array<cplx, 8> v{};
};

CouplingFactors coupling_factors(const RelaxationSpec& relax, const FieldSpec& fields);

/// Power-dependent populations and population differences under the two
/// strong fields, with the saturation parameters and branching ratios that
/// produce them.  Zero-field inputs are carried along for the spectral
/// formulas that need both.
struct SaturatedPopulations {
  double dr1{0}, dr2{0}, dr3{0}, dr4{0};
  double r_g{0}, r_n{0}, r_m{0}, r_l{0};
  double alpha1{0}, alpha3{0}, alpha1_0{0}, alpha3_0{0};
  double a1{0}, a2{0}, a3{0}, b1{0}, b2{0}, b3{0};
  double n_g{0}, n_n{0}, n_m{0}, n_l{0};
  double dn1{0}, dn2{0}, dn3{0}, dn4{0};
};

/// Throws Error("SingularSaturation") if the 2x2 saturation determinant
/// (1+alpha1)(1+alpha3) - a1 alpha1 b1 alpha3 falls below 1e-12.
SaturatedPopulations saturated_populations(const RelaxationSpec& relax, const FieldSpec& fields,
                                           const Populations& pops);

/// Probe coherence amplitudes r_2 = i G_2 R_2 / P_2 and r_4 = i G_4 R_4 / P_4,
/// first order in the probe amplitudes and exact in the strong fields.
/// Throws Error("DegenerateDenominator") when the R_k denominator magnitude
/// drops below 1e-14 (impossible for positive halfwidths).
cplx probe_r2(const RelaxationSpec& relax, const FieldSpec& fields,
              const SaturatedPopulations& sat);
cplx probe_r4(const RelaxationSpec& relax, const FieldSpec& fields,
              const SaturatedPopulations& sat);

/// Probe-normalized response -i r_k / G_k = R_k / P_k.  Defined for any
/// probe amplitude including zero (the response is exactly linear in it).
cplx probe_response2(const RelaxationSpec& relax, const FieldSpec& fields,
                     const SaturatedPopulations& sat);
cplx probe_response4(const RelaxationSpec& relax, const FieldSpec& fields,
                     const SaturatedPopulations& sat);

/// Detuning sign map realizing the cascade level ordering: the strong-field
/// detunings Omega_1, Omega_3 change sign, probe detunings are untouched.
/// Involutive.  Under this map the two-photon denominators switch from
/// difference to sum resonances, which is the whole difference between the
/// Lambda/V and ladder topologies at matched populations.
FieldSpec cascade_transform(const FieldSpec& fields);

/// Applies the scheme's detuning map (identity for fig1_double).
FieldSpec effective_fields(const DrivenSystem& system);

}  // namespace nief
