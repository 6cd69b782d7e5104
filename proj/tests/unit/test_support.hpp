#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "nief/model.hpp"

namespace nief::test {

// Random strict-valid systems in the ranges used throughout the checks:
// rates in [0.1, 10], detunings in [-20, 20], strong Rabi in [0, 5],
// probe amplitudes ~ 1e-3.
struct SystemDraw {
  RelaxationSpec relax;
  FieldSpec fields;
};

inline SystemDraw draw_system(std::mt19937_64& rng, double probe_amp = 1e-3,
                              bool steady_branches = false) {
  std::uniform_real_distribution<double> rate(0.1, 10.0);
  std::uniform_real_distribution<double> det(-20.0, 20.0);
  std::uniform_real_distribution<double> strong(0.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> widen(1.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);

  SystemDraw d;
  auto& r = d.relax;
  r.Gamma_g = rate(rng);
  r.Gamma_n = rate(rng);
  r.Gamma_m = rate(rng);
  r.Gamma_l = rate(rng);
  const double fg = unit(rng) * 0.9, fm = unit(rng) * 0.9;
  const double sg = unit(rng), sm = unit(rng);
  r.gamma_gn = r.Gamma_g * fg * sg;
  r.gamma_gl = r.Gamma_g * fg * (1.0 - sg);
  r.gamma_mn = r.Gamma_m * fm * sm;
  r.gamma_ml = r.Gamma_m * fm * (1.0 - sm);
  if (steady_branches) {
    // also keep feeding below each lower level's own decay, which is what
    // bounds the branching ratios a_i, b_i inside [0, 1]
    r.gamma_gn = std::min(r.gamma_gn, 0.95 * r.Gamma_n);
    r.gamma_ml = std::min(r.gamma_ml, 0.95 * r.Gamma_l);
  }
  r.Gamma_lg = 0.5 * (r.Gamma_l + r.Gamma_g) * widen(rng);
  r.Gamma_ng = 0.5 * (r.Gamma_n + r.Gamma_g) * widen(rng);
  r.Gamma_nm = 0.5 * (r.Gamma_n + r.Gamma_m) * widen(rng);
  r.Gamma_lm = 0.5 * (r.Gamma_l + r.Gamma_m) * widen(rng);
  r.Gamma_ln = 0.5 * (r.Gamma_l + r.Gamma_n) * widen(rng);
  r.Gamma_gm = 0.5 * (r.Gamma_g + r.Gamma_m) * widen(rng);
  r.q_g = 5.0 * unit(rng);
  r.q_n = 5.0 * unit(rng);
  r.q_m = 5.0 * unit(rng);
  r.q_l = 5.0 * unit(rng);

  auto& f = d.fields;
  for (int i = 0; i < 4; ++i) f.detuning[i] = det(rng);
  f.rabi[0] = std::polar(strong(rng), phase(rng));
  f.rabi[2] = std::polar(strong(rng), phase(rng));
  f.rabi[1] = std::polar(probe_amp, phase(rng));
  f.rabi[3] = std::polar(probe_amp, phase(rng));
  return d;
}

inline double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace nief::test
