#include "nief/dressed.hpp"

#include <cmath>

namespace nief {

Denominators denominators(const RelaxationSpec& r, const FieldSpec& f) {
  const double O1 = f.detuning[0], O2 = f.detuning[1];
  const double O3 = f.detuning[2], O4 = f.detuning[3];
  Denominators d;
  d.P1 = {r.Gamma_lg, O1};
  d.P2 = {r.Gamma_ng, O2};
  d.P3 = {r.Gamma_nm, O3};
  d.P4 = {r.Gamma_lm, O4};
  d.P12 = {r.Gamma_ln, O1 - O2};
  d.P43 = {r.Gamma_ln, O4 - O3};
  d.P32 = {r.Gamma_gm, O3 - O2};
  d.P41 = {r.Gamma_gm, O4 - O1};
  d.d2 = {r.Gamma_ng, O1 + O3 - O4};
  d.d4 = {r.Gamma_lm, O1 - O2 + O3};
  return d;
}

CouplingFactors coupling_factors(const RelaxationSpec& r, const FieldSpec& f) {
  const Denominators d = denominators(r, f);
  const double G1sq = std::norm(f.rabi[0]);
  const double G3sq = std::norm(f.rabi[2]);
  using std::conj;

  CouplingFactors c;
  c.g[0] = G1sq / (d.P41 * conj(d.P1));
  c.g[1] = G1sq / (conj(d.P12) * d.P2);
  c.g[2] = G1sq / (conj(d.P12) * conj(d.P1));
  c.g[3] = G1sq / (d.P41 * d.P4);
  c.g[4] = G1sq / (d.P43 * conj(d.d2));
  c.g[5] = G1sq / (d.P41 * conj(d.d2));
  c.g[6] = G1sq / (conj(d.P32) * conj(d.d4));
  c.g[7] = G1sq / (conj(d.P12) * conj(d.d4));

  c.v[0] = G3sq / (d.P43 * conj(d.P3));
  c.v[1] = G3sq / (conj(d.P32) * d.P2);
  c.v[2] = G3sq / (conj(d.P32) * conj(d.P3));
  c.v[3] = G3sq / (d.P43 * d.P4);
  c.v[4] = G3sq / (d.P41 * conj(d.d2));
  c.v[5] = G3sq / (d.P43 * conj(d.d2));
  c.v[6] = G3sq / (conj(d.P12) * conj(d.d4));
  c.v[7] = G3sq / (conj(d.P32) * conj(d.d4));
  return c;
}

SaturatedPopulations saturated_populations(const RelaxationSpec& r, const FieldSpec& f,
                                           const Populations& pops) {
  const Denominators d = denominators(r, f);
  const double G1sq = std::norm(f.rabi[0]);
  const double G3sq = std::norm(f.rabi[2]);

  SaturatedPopulations s;
  s.n_g = pops.n_g; s.n_n = pops.n_n; s.n_m = pops.n_m; s.n_l = pops.n_l;
  s.dn1 = pops.dn1; s.dn2 = pops.dn2; s.dn3 = pops.dn3; s.dn4 = pops.dn4;

  s.alpha1_0 = 2.0 * (r.Gamma_l + r.Gamma_g - r.gamma_gl) /
               (r.Gamma_l * r.Gamma_g * r.Gamma_lg) * G1sq;
  s.alpha3_0 = 2.0 * (r.Gamma_m + r.Gamma_n - r.gamma_mn) /
               (r.Gamma_m * r.Gamma_n * r.Gamma_nm) * G3sq;
  s.alpha1 = s.alpha1_0 * r.Gamma_lg * r.Gamma_lg / std::norm(d.P1);
  s.alpha3 = s.alpha3_0 * r.Gamma_nm * r.Gamma_nm / std::norm(d.P3);

  // branching ratios; a1 + a2 + a3 = 1 and b1 + b2 + b3 = 1 exactly
  const double sg = r.Gamma_g + r.Gamma_l - r.gamma_gl;
  const double sm = r.Gamma_m + r.Gamma_n - r.gamma_mn;
  s.a1 = r.gamma_gn * r.Gamma_l / (r.Gamma_n * sg);
  s.a3 = (r.Gamma_g - r.gamma_gl) / sg;
  s.a2 = 1.0 - s.a3 - s.a1;
  s.b1 = r.gamma_ml * r.Gamma_n / (r.Gamma_l * sm);
  s.b2 = (r.Gamma_m - r.gamma_mn) / sm;
  s.b3 = 1.0 - s.b2 - s.b1;

  const double det = (1.0 + s.alpha1) * (1.0 + s.alpha3) - s.a1 * s.alpha1 * s.b1 * s.alpha3;
  if (std::abs(det) < 1e-12) {
    throw Error("SingularSaturation", "saturation determinant below 1e-12");
  }

  s.dr1 = ((1.0 + s.alpha3) * pops.dn1 + s.b1 * s.alpha3 * pops.dn3) / det;
  s.dr3 = ((1.0 + s.alpha1) * pops.dn3 + s.a1 * s.alpha1 * pops.dn1) / det;
  s.dr2 = pops.dn2 - s.b2 * s.alpha3 * s.dr3 - s.a2 * s.alpha1 * s.dr1;
  s.dr4 = pops.dn4 - s.a3 * s.alpha1 * s.dr1 - s.b3 * s.alpha3 * s.dr3;

  s.r_m = pops.n_m + (1.0 - s.b2) * s.alpha3 * s.dr3;
  s.r_g = pops.n_g + (1.0 - s.a3) * s.alpha1 * s.dr1;
  s.r_n = pops.n_n - s.b2 * s.alpha3 * s.dr3 + s.a1 * s.alpha1 * s.dr1;
  s.r_l = pops.n_l + s.b1 * s.alpha3 * s.dr3 - s.a3 * s.alpha1 * s.dr1;
  return s;
}

namespace {

struct ProbeParts {
  cplx numerator;
  cplx denominator;
  cplx pole;  // P_2 or P_4
};

ProbeParts r2_parts(const RelaxationSpec& r, const FieldSpec& f,
                    const SaturatedPopulations& s) {
  const Denominators d = denominators(r, f);
  const CouplingFactors c = coupling_factors(r, f);
  const cplx g2 = c.g[1], g3 = c.g[2], g7 = c.g[6], g8 = c.g[7];
  const cplx v2 = c.v[1], v3 = c.v[2], v7 = c.v[6], v8 = c.v[7];
  ProbeParts p;
  p.numerator = s.dr2 * (1.0 + g7 + v7) - v3 * (1.0 + v7 - g8) * s.dr3 -
                g3 * (1.0 + g7 - v8) * s.dr1;
  p.denominator = (1.0 + g2 + v2) + (g7 + g2 * (g7 - v8) + v7 + v2 * (v7 - g8));
  p.pole = d.P2;
  return p;
}

ProbeParts r4_parts(const RelaxationSpec& r, const FieldSpec& f,
                    const SaturatedPopulations& s) {
  const Denominators d = denominators(r, f);
  const CouplingFactors c = coupling_factors(r, f);
  const cplx g1 = c.g[0], g4 = c.g[3], g5 = c.g[4], g6 = c.g[5];
  const cplx v1 = c.v[0], v4 = c.v[3], v5 = c.v[4], v6 = c.v[5];
  ProbeParts p;
  p.numerator = s.dr4 * (1.0 + v5 + g5) - g1 * (1.0 + g5 - v6) * s.dr1 -
                v1 * (1.0 + v5 - g6) * s.dr3;
  p.denominator = (1.0 + g4 + v4) + (v5 + v4 * (v5 - g6) + g5 + g4 * (g5 - v6));
  p.pole = d.P4;
  return p;
}

cplx ratio_or_throw(const ProbeParts& p) {
  if (std::abs(p.denominator) < 1e-14) {
    throw Error("DegenerateDenominator", "probe response denominator below 1e-14");
  }
  return p.numerator / (p.denominator * p.pole);
}

}  // namespace

cplx probe_response2(const RelaxationSpec& r, const FieldSpec& f,
                     const SaturatedPopulations& s) {
  return ratio_or_throw(r2_parts(r, f, s));
}

cplx probe_response4(const RelaxationSpec& r, const FieldSpec& f,
                     const SaturatedPopulations& s) {
  return ratio_or_throw(r4_parts(r, f, s));
}

cplx probe_r2(const RelaxationSpec& r, const FieldSpec& f, const SaturatedPopulations& s) {
  return I * f.rabi[1] * probe_response2(r, f, s);
}

cplx probe_r4(const RelaxationSpec& r, const FieldSpec& f, const SaturatedPopulations& s) {
  return I * f.rabi[3] * probe_response4(r, f, s);
}

FieldSpec cascade_transform(const FieldSpec& f) {
  FieldSpec out = f;
  out.detuning[0] = -f.detuning[0];
  out.detuning[2] = -f.detuning[2];
  return out;
}

FieldSpec effective_fields(const DrivenSystem& system) {
  return system.scheme == SchemeKind::cascade ? cascade_transform(system.fields)
                                              : system.fields;
}

}  // namespace nief
