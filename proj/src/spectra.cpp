#include "nief/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace nief {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> linear_grid(double min, double max, int points) {
  if (points < 2) throw Error("GridTooNarrow", "grid needs at least 2 points");
  std::vector<double> g(points);
  const double step = (max - min) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = min + step * i;
  g.back() = max;
  return g;
}

std::vector<double> winged_grid(double core_halfwidth, double width, int core_points,
                                int wing_points_per_side) {
  if (core_points < 2 || wing_points_per_side < 2 || width <= core_halfwidth) {
    throw Error("GridTooNarrow", "bad winged grid request");
  }
  const std::vector<double> core = linear_grid(-core_halfwidth, core_halfwidth, core_points);
  const double ratio = std::pow(width / core_halfwidth, 1.0 / wing_points_per_side);
  std::vector<double> wing(wing_points_per_side);
  double x = core_halfwidth;
  for (int i = 0; i < wing_points_per_side; ++i) {
    x *= ratio;
    wing[i] = x;
  }
  wing.back() = width;

  std::vector<double> g;
  g.reserve(core.size() + 2 * wing.size());
  for (auto it = wing.rbegin(); it != wing.rend(); ++it) g.push_back(-*it);
  g.insert(g.end(), core.begin(), core.end());
  g.insert(g.end(), wing.begin(), wing.end());
  return g;
}

ComplexSpectrum spectrum(const RelaxationSpec& relax, const FieldSpec& fields,
                         const Populations& pops, const std::vector<double>& grid,
                         ProbeChannel channel) {
  if (grid.empty()) throw Error("GridTooNarrow", "empty grid");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error("GridTooNarrow", "grid must be strictly increasing");
    }
  }

  // saturation depends only on the strong fields, not the probe detuning
  const SaturatedPopulations sat = saturated_populations(relax, fields, pops);
  const int probe_index = channel == ProbeChannel::r2 ? 1 : 3;

  ComplexSpectrum out;
  out.grid = grid;
  out.response.resize(grid.size());
  out.absorption.resize(grid.size());
  out.refraction.resize(grid.size());
  FieldSpec f = fields;
  for (size_t i = 0; i < grid.size(); ++i) {
    f.detuning[probe_index] = grid[i];
    const cplx resp = channel == ProbeChannel::r2 ? probe_response2(relax, f, sat)
                                                  : probe_response4(relax, f, sat);
    out.response[i] = resp;
    out.absorption[i] = resp.real();
    out.refraction[i] = resp.imag();
  }
  return out;
}

SumRuleResult sum_rule(const ComplexSpectrum& spec, double expected_dr,
                       double linewidth_scale) {
  const size_t n = spec.grid.size();
  if (n < 16) throw Error("GridTooNarrow", "sum rule needs a dense grid");
  const double w_left = -spec.grid.front();
  const double w_right = spec.grid.back();
  if (w_left < 1e3 * linewidth_scale || w_right < 1e3 * linewidth_scale) {
    throw Error("GridTooNarrow", "sum rule grid must span at least 1e3 linewidths");
  }

  double integral = 0.0;
  for (size_t i = 1; i < n; ++i) {
    integral += 0.5 * (spec.absorption[i] + spec.absorption[i - 1]) *
                (spec.grid[i] - spec.grid[i - 1]);
  }

  // tails: fit absorption ~ c / Omega^2 on the outer 10% of each wing and
  // integrate the fit beyond the grid ends
  const auto wing_coefficient = [&](bool right) {
    const double edge = right ? w_right : w_left;
    double c = 0.0;
    int count = 0;
    for (size_t i = 0; i < n; ++i) {
      const double x = spec.grid[i];
      if ((right && x >= 0.9 * edge) || (!right && x <= -0.9 * edge)) {
        c += spec.absorption[i] * x * x;
        ++count;
      }
    }
    return count > 0 ? c / count : 0.0;
  };
  integral += wing_coefficient(true) / w_right + wing_coefficient(false) / w_left;

  SumRuleResult res;
  res.integral = integral / kPi;
  res.expected = expected_dr;
  res.rel_error = std::abs(res.integral - expected_dr) /
                  std::max(std::abs(expected_dr), 1e-12);
  return res;
}

double normalized_alpha4(const RelaxationSpec& relax, const FieldSpec& fields,
                         const SaturatedPopulations& sat, double Omega4) {
  if (sat.dn4 == 0.0) throw Error("ZeroReference", "dn4 vanishes");
  FieldSpec f = fields;
  f.detuning[3] = Omega4;
  const Denominators d = denominators(relax, f);
  const CouplingFactors c = coupling_factors(relax, f);
  const cplx value = (relax.Gamma_lm / d.P4) * (sat.dr4 - c.g[0] * sat.dr1) /
                     (sat.dn4 * (1.0 + c.g[3]));
  return value.real();
}

double raman_asymptote(const RelaxationSpec& relax, const FieldSpec& fields,
                       const SaturatedPopulations& sat, double Omega4) {
  if (sat.dn4 == 0.0) throw Error("ZeroReference", "dn4 vanishes");
  const double O1 = fields.detuning[0];
  const double G1sq = std::norm(fields.rabi[0]);
  const double wing = relax.Gamma_lm * relax.Gamma_lm * (sat.r_l - sat.r_m) /
                      (sat.dn4 * Omega4 * Omega4);
  const double lor = relax.Gamma_gm * relax.Gamma_lm /
                     (relax.Gamma_gm * relax.Gamma_gm + (Omega4 - O1) * (Omega4 - O1));
  const double raman = lor * G1sq * (sat.r_m - sat.r_g) / (Omega4 * Omega4 * sat.dn4);
  return wing - raman;
}

ConditionReport awi_condition(const RelaxationSpec& relax, const FieldSpec& fields,
                              const SaturatedPopulations& sat) {
  const double G1sq = std::norm(fields.rabi[0]);
  ConditionReport rep;
  rep.margin = G1sq * (sat.r_l - sat.r_g) / (relax.Gamma_lg * relax.Gamma_gm) -
               (sat.r_l - sat.r_m);
  rep.holds = rep.margin >= 0.0;
  return rep;
}

const char* to_string(WindowKind k) {
  return k == WindowKind::gain ? "gain" : "transparency";
}

const char* to_string(WindowClass c) {
  switch (c) {
    case WindowClass::awi: return "AWI";
    case WindowClass::inverted: return "inverted";
    default: return "EIT-like";
  }
}

WindowReport detect_windows(const ComplexSpectrum& spec, const RelaxationSpec& relax,
                            const SaturatedPopulations& sat, ProbeChannel channel,
                            double tol_scale) {
  const double dn = channel == ProbeChannel::r2 ? sat.dn2 : sat.dn4;
  const double dr = channel == ProbeChannel::r2 ? sat.dr2 : sat.dr4;
  const double gamma = channel == ProbeChannel::r2 ? relax.Gamma_ng : relax.Gamma_lm;
  const double peak = std::abs(dn) / gamma;
  const double tol = tol_scale * std::max(peak, 1e-30);

  const auto undriven = [&](double omega) {
    return std::abs(dn) * gamma / (gamma * gamma + omega * omega);
  };

  WindowReport report;
  const size_t n = spec.grid.size();
  size_t i = 0;
  while (i < n) {
    const double a = spec.absorption[i];
    const bool gain = a < -tol;
    const bool transparent = !gain && std::abs(a) < tol && undriven(spec.grid[i]) > 10 * tol;
    if (!gain && !transparent) {
      ++i;
      continue;
    }
    size_t j = i;
    double depth = 0.0;
    while (j < n) {
      const double aj = spec.absorption[j];
      const bool same = gain ? (aj < -tol)
                             : (std::abs(aj) < tol && undriven(spec.grid[j]) > 10 * tol);
      if (!same) break;
      depth = std::max(depth, std::abs(aj));
      ++j;
    }
    Window w;
    w.lo = spec.grid[i];
    w.hi = spec.grid[j - 1];
    w.kind = gain ? WindowKind::gain : WindowKind::transparency;
    w.classification = gain ? (dr > 0.0 ? WindowClass::awi : WindowClass::inverted)
                            : WindowClass::eit_like;
    w.depth = depth;
    report.intervals.push_back(w);
    i = j;
  }
  return report;
}

}  // namespace nief
