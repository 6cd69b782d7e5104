#pragma once

#include "nief/types.hpp"

namespace nief {

// Triple-resonance frequency mixing in a four-level chain 0-1-2-3: a weak
// wave at the 1-0 resonance, two strong dressing fields on 2-1 and 3-2, and
// the sum-frequency wave near the 3-0 resonance.  All detunings are
// normalized to the respective halfwidths, so every bare resonance
// denominator is 1 + i x.

/// g2, g3 are the saturation parameters of the two strong fields; x are the
/// detunings seen by the probe-side combinations and y those seen by the
/// generated-side combinations.  In generated_mode the output wave is not an
/// independent probe but the sum frequency itself, which forces y == x.
/// C1, Cs are local-field (Lorentz-Lorenz) red shifts of the two one-photon
/// resonances, in the same normalized units as x.
struct MixingConfig {
  double g2{0}, g3{0};
  double x1{0}, x02{0}, xs{0};
  double y1{0}, y02{0}, ys{0};
  bool generated_mode{false};
  double C1{0}, Cs{0};
};

/// Dressing factors f1, fs, f (all exactly 1 at g2 = g3 = 0) and the
/// susceptibility ratios relative to their resonant zero-field values:
///   chi1_ratio  = f1 / P01,   chis_ratio = fs / P03,
///   chiNL_ratio = f / (P01 P02 D03).
/// power_figure = g2 g3 |chiNL_ratio|^2 tracks the generated power.
struct MixingResult {
  cplx f1, fs, f;
  cplx chi1_ratio, chis_ratio, chiNL_ratio;
  double power_figure{0};
};

/// Throws Error("DegenerateDenominator") if any denominator magnitude drops
/// below 1e-14 (requires adversarial inputs; cannot happen for real x, y).
MixingResult dressing_factors(const MixingConfig& cfg);

/// Local-field substitution x1 -> x1 + C1, xs -> xs + Cs.  The multiphoton
/// branch detunings x02/y02 are untouched: the density shift does not move
/// transition frequencies between the excited states.
MixingConfig apply_local_field(const MixingConfig& cfg);

/// |chiNL(x=0)|^2 / |chiNL(x=x_off)|^2 for a single resonance with the other
/// branches resonant and undressed; equals 1 + x_off^2.
double resonance_enhancement(double x_off);

}  // namespace nief
