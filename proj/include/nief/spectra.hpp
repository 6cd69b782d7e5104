#pragma once

#include <string>
#include <vector>

#include "nief/dressed.hpp"

namespace nief {

enum class ProbeChannel { r2, r4 };

/// Probe spectrum on an ordered detuning grid.  response[j] is the
/// probe-normalized amplitude -i r_k / G_k at grid[j]; absorption and
/// refraction are its real and imaginary parts.  Positive absorption
/// corresponds to a positive population difference (lower minus upper) on
/// the probe transition.
struct ComplexSpectrum {
  std::vector<double> grid;
  std::vector<cplx> response;
  std::vector<double> absorption;
  std::vector<double> refraction;
};

std::vector<double> linear_grid(double min, double max, int points);

/// Uniform core plus geometrically stretched wings out to +-width; suited
/// to the spectral-integral checks which need decade-spanning grids.
std::vector<double> winged_grid(double core_halfwidth, double width, int core_points,
                                int wing_points_per_side);

/// Evaluates the chosen probe response over the grid.  The strong-field
/// saturation is computed once (it does not depend on the probe detuning).
ComplexSpectrum spectrum(const RelaxationSpec& relax, const FieldSpec& fields,
                         const Populations& pops, const std::vector<double>& grid,
                         ProbeChannel channel);

/// Spectral integral identity: (1/pi) * integral of Re(-i r_k / G_k) over
/// the probe detuning equals the saturated population difference on the
/// probe transition, independent of the dressing fields.
struct SumRuleResult {
  double integral{0};
  double expected{0};
  double rel_error{0};
};

/// Trapezoid over the grid plus c/Omega^2 tail corrections fitted on the
/// outer 10% of each wing.  linewidth_scale sets the required span: throws
/// Error("GridTooNarrow") unless the grid reaches +-1e3 * linewidth_scale.
SumRuleResult sum_rule(const ComplexSpectrum& spec, double expected_dr, double linewidth_scale);

/// Resonant-normalized absorption on the l-m probe transition for the case
/// where only field 1 is strong:
///   Re{ (Gamma_lm / P_4) (dr4 - g_1 dr1) / (dn4 (1 + g_4)) }.
/// Throws Error("ZeroReference") when dn4 == 0.
double normalized_alpha4(const RelaxationSpec& relax, const FieldSpec& fields,
                         const SaturatedPopulations& sat, double Omega4);

/// Far-wing two-term asymptote of the same quantity (background wing plus
/// Raman-like term); valid for |Omega_1| ~ |Omega_4| >> halfwidths, but
/// evaluated verbatim for any input.
double raman_asymptote(const RelaxationSpec& relax, const FieldSpec& fields,
                       const SaturatedPopulations& sat, double Omega4);

/// Resonant gain/transparency condition on the l-m probe at
/// Omega_1 = Omega_4 = 0:
///   margin = |G_1|^2 (r_l - r_g) / (Gamma_lg Gamma_gm) - (r_l - r_m),
/// holds when margin >= 0.  Inversion of the bare probe transition is not
/// required.
ConditionReport awi_condition(const RelaxationSpec& relax, const FieldSpec& fields,
                              const SaturatedPopulations& sat);

enum class WindowKind { gain, transparency };
enum class WindowClass { awi, inverted, eit_like };

struct Window {
  double lo{0}, hi{0};
  WindowKind kind{WindowKind::gain};
  WindowClass classification{WindowClass::eit_like};
  double depth{0};
};

struct WindowReport {
  std::vector<Window> intervals;
};

const char* to_string(WindowKind k);
const char* to_string(WindowClass c);

/// Scans the spectrum for gain intervals (absorption < -tol) and
/// transparency intervals (|absorption| < tol where the undriven reference
/// Lorentzian exceeds 10 tol).  tol = tol_scale * undriven peak height.
/// Gain is classified awi when the saturated population difference on the
/// probe transition stays noninverted (positive), inverted otherwise.
WindowReport detect_windows(const ComplexSpectrum& spec, const RelaxationSpec& relax,
                            const SaturatedPopulations& sat, ProbeChannel channel,
                            double tol_scale = 1e-6);

}  // namespace nief
