#include "selftest.hpp"

#include <cmath>
#include <random>

#include "nief/dressed.hpp"
#include "nief/doppler.hpp"
#include "nief/lics.hpp"
#include "nief/mixing.hpp"
#include "nief/model.hpp"
#include "nief/oracle.hpp"
#include "nief/relaxation_induced.hpp"
#include "nief/spectra.hpp"

namespace nief::cli {

namespace {

struct Draw {
  RelaxationSpec relax;
  FieldSpec fields;
};

// strict-valid random system in the acceptance parameter ranges
Draw draw_system(std::mt19937_64& rng, double probe_amp = 1e-3) {
  std::uniform_real_distribution<double> rate(0.1, 10.0);
  std::uniform_real_distribution<double> det(-20.0, 20.0);
  std::uniform_real_distribution<double> strong(0.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> widen(1.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);

  Draw d;
  auto& r = d.relax;
  r.Gamma_g = rate(rng);
  r.Gamma_n = rate(rng);
  r.Gamma_m = rate(rng);
  r.Gamma_l = rate(rng);
  // branch fractions keep the scheme open
  const double fg = unit(rng) * 0.9, fm = unit(rng) * 0.9;
  const double sg = unit(rng), sm = unit(rng);
  r.gamma_gn = r.Gamma_g * fg * sg;
  r.gamma_gl = r.Gamma_g * fg * (1.0 - sg);
  r.gamma_mn = r.Gamma_m * fm * sm;
  r.gamma_ml = r.Gamma_m * fm * (1.0 - sm);
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

double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

std::vector<SelftestCase> run_selftest_battery(unsigned seed) {
  std::vector<SelftestCase> out;
  const auto record = [&](const std::string& name, double metric, double bound) {
    out.push_back({name, metric <= bound, metric});
  };

  {  // quadrature weights normalize to sqrt(pi)
    double worst = 0.0;
    for (int n = 2; n <= 512; n *= 2) {
      const auto rule = gauss_hermite(n);
      double sum = 0.0;
      for (double w : rule.weights) sum += w;
      worst = std::max(worst, std::abs(sum / 1.7724538509055160273 - 1.0));
    }
    record("quadrature_weights_sum", worst, 1e-14);
  }

  {  // Maxwell average of a Lorentzian against the adaptive oracle
    const double gamma = 1.0, ku = 2.0, omega = 0.7;
    DopplerConfig cfg;
    cfg.u = ku;
    const cplx gh = velocity_average(
        [&](double v) { return 1.0 / cplx{gamma, omega - v}; }, cfg);
    const cplx ref = oracle::integrate_real_line_c(
        [&](double v) {
          return std::exp(-v * v / (ku * ku)) / (1.7724538509055160273 * ku) /
                 cplx{gamma, omega - v};
        },
        1e-12);
    record("doppler_voigt_vs_oracle", rel_diff(gh, ref), 1e-8);
  }

  {  // u -> 0 recovers the atom at rest
    DopplerConfig cfg;
    cfg.u = 1e-4;
    const cplx avg = velocity_average(
        [&](double v) { return 1.0 / cplx{1.0, 0.3 - v}; }, cfg);
    record("doppler_rest_limit", rel_diff(avg, 1.0 / cplx{1.0, 0.3}), 1e-6);
  }

  {  // dressing-factor product identity
    std::mt19937_64 rng(seed ^ 0x6d69786eULL);
    std::uniform_real_distribution<double> gdist(0.0, 10.0);
    std::uniform_real_distribution<double> xdist(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      MixingConfig c;
      c.g2 = gdist(rng);
      c.g3 = gdist(rng);
      c.x1 = xdist(rng); c.x02 = xdist(rng); c.xs = xdist(rng);
      c.y1 = xdist(rng); c.y02 = xdist(rng); c.ys = xdist(rng);
      c.generated_mode = (i % 2 == 0);
      const MixingResult r = dressing_factors(c);
      const cplx P02{1.0, c.x02};
      const cplx D03 = c.generated_mode ? cplx{1.0, c.xs} : cplx{1.0, c.ys};
      const cplx product = r.f1 / (1.0 + c.g3 / (D03 * P02));
      worst = std::max(worst, std::abs(r.f - product));
    }
    record("mixing_factor_identity", worst, 1e-12);
  }

  {  // undressed limit is exactly 1
    MixingConfig c;
    c.x1 = 2.0; c.x02 = -1.0; c.xs = 0.5;
    const MixingResult r = dressing_factors(c);
    const double worst = std::max({std::abs(r.f1 - 1.0), std::abs(r.fs - 1.0),
                                   std::abs(r.f - 1.0)});
    record("mixing_undressed_limit", worst, 0.0);
  }

  {  // single-resonance enhancement scaling
    const double at1e3 = resonance_enhancement(1e3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (double x = 10.0; x <= 1000.0; x *= 1.2) {
      const double lx = std::log(x), ly = std::log(resonance_enhancement(x));
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
      ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double worst = std::max(std::abs(at1e3 / 1e6 - 1.0) / 0.002,
                                  std::abs(slope - 2.0) / 0.01);
    record("mixing_enhancement_scaling", worst, 1.0);
  }

  {  // continuum ratios collapse to 1 at zero coupling
    std::mt19937_64 rng(seed ^ 0x6c696373ULL);
    std::uniform_real_distribution<double> xdist(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      ContinuumCoupling c;  // all couplings zero
      LicsDetunings d;
      d.x_l = xdist(rng); d.x_n = xdist(rng);
      d.y_l = xdist(rng); d.y_n = xdist(rng);
      d.dgm = xdist(rng); d.pgm = xdist(rng);
      const auto f = lics_factors(c, d);
      worst = std::max({worst, std::abs(f.K - 1.0), std::abs(f.A - 1.0),
                        std::abs(alpha_mu_ratio(c, d) - 1.0)});
    }
    LicsDetunings resonant;
    ContinuumCoupling c;
    worst = std::max({worst, std::abs(chi3_ratio(c, resonant) - 1.0),
                      std::abs(alpha1_ratio(c, resonant) - 1.0)});
    record("lics_zero_coupling", worst, 1e-12);
  }

  {  // Fano window term vanishes at y_l = -q_gl
    std::mt19937_64 rng(seed ^ 0x66616e6fULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> q(-5.0, 5.0);
    std::uniform_real_distribution<double> g(0.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      ContinuumCoupling c;
      c.k1 = unit(rng); c.k2 = unit(rng); c.k3 = unit(rng); c.k4 = unit(rng);
      c.g_mn = g(rng); c.g_ll = g(rng); c.g_nn = g(rng);
      c.q_gl = q(rng); c.q_nl = q(rng); c.q_ln = q(rng);
      c.q_gn = q(rng); c.q_ng = q(rng);
      LicsDetunings d;
      d.x_l = q(rng); d.x_n = q(rng); d.y_n = q(rng);
      d.dgm = q(rng); d.pgm = q(rng);
      d.y_l = -c.q_gl;
      const auto f = lics_factors(c, d);
      const cplx qn = 1.0 - I * c.q_gn;
      const double without_window =
          1.0 - c.k3 * c.beta_l() - (c.k4 * c.g_nn * f.A * f.A * qn * qn / f.Y).real();
      worst = std::max(worst, std::abs(alpha_mu_ratio(c, d) - without_window));
    }
    record("lics_fano_node", worst, 1e-12);
  }

  {  // one strong field: the full response reduces to the two-factor form
    std::mt19937_64 rng(seed ^ 0x72656475ULL);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Draw d = draw_system(rng);
      d.fields.rabi[2] = 0.0;
      const Populations pops = unsaturated_populations(d.relax);
      const SaturatedPopulations sat = saturated_populations(d.relax, d.fields, pops);
      FieldSpec f = d.fields;
      for (double omega = -30.0; omega <= 30.0; omega += 0.6) {
        f.detuning[1] = omega;
        const cplx full = probe_response2(d.relax, f, sat);
        const Denominators den = denominators(d.relax, f);
        const CouplingFactors cf = coupling_factors(d.relax, f);
        const cplx reduced =
            (sat.dr2 - cf.g[2] * sat.dr1) / ((1.0 + cf.g[1]) * den.P2);
        worst = std::max(worst, rel_diff(full, reduced));
      }
    }
    record("reduction_identity", worst, 1e-12);
  }

  {  // closed forms vs the direct linear solve
    std::mt19937_64 rng(seed ^ 0x6f7261636cULL);
    double worst_probe = 0.0, worst_pop = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Draw d = draw_system(rng);
      const Populations pops = unsaturated_populations(d.relax);
      const SaturatedPopulations sat = saturated_populations(d.relax, d.fields, pops);
      const auto osat = oracle::strong_field_populations_solve(d.relax, d.fields, pops);
      worst_pop = std::max({worst_pop, std::abs(sat.r_g - osat.r_g),
                            std::abs(sat.r_n - osat.r_n), std::abs(sat.r_m - osat.r_m),
                            std::abs(sat.r_l - osat.r_l)});
      const auto probe = oracle::probe_response(d.relax, d.fields, osat);
      worst_probe = std::max({worst_probe,
                              rel_diff(probe.r2, probe_r2(d.relax, d.fields, sat)),
                              rel_diff(probe.r4, probe_r4(d.relax, d.fields, sat))});
    }
    record("oracle_population_match", worst_pop, 1e-10);
    record("oracle_probe_match", worst_probe, 1e-8);
  }

  {  // recoupling coefficient against the sublevel contraction
    std::mt19937_64 rng(seed ^ 0x36366aULL);
    std::uniform_int_distribution<int> two_j(0, 6);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const double j1 = two_j(rng) / 2.0, j2 = two_j(rng) / 2.0, j3 = two_j(rng) / 2.0;
      const double j4 = two_j(rng) / 2.0, j5 = two_j(rng) / 2.0, j6 = two_j(rng) / 2.0;
      worst = std::max(worst, std::abs(wigner6j(j1, j2, j3, j4, j5, j6) -
                                       oracle::sixj_by_3j_contraction(j1, j2, j3, j4, j5, j6)));
    }
    record("sixj_contraction_match", worst, 1e-10);
  }

  {  // |K| <= 1 on dipole-allowed momentum quadruples
    std::mt19937_64 rng(seed ^ 0x4b626f756eULL);
    std::uniform_int_distribution<int> two_j(0, 20);
    std::uniform_int_distribution<int> step(-1, 1);
    double worst = 0.0;
    int accepted = 0;
    while (accepted < 500) {
      CascadeDoublet d;
      const int tm = two_j(rng);
      const int tn = tm + 2 * step(rng);
      const int tm1 = tm + 2 * step(rng);
      const int tn1 = tn + 2 * step(rng);
      if (tn < 0 || tm1 < 0 || tn1 < 0) continue;
      if (tm + tn == 0 || tm1 + tn1 == 0 || tm + tm1 == 0 || tn + tn1 == 0) continue;
      if (std::abs(tm1 - tn1) > 2) continue;
      d.J_m = tm / 2.0; d.J_n = tn / 2.0; d.J_m1 = tm1 / 2.0; d.J_n1 = tn1 / 2.0;
      const auto kc = interference_coefficients(d);
      worst = std::max(worst, std::abs(kc.K) - 1.0);
      ++accepted;
    }
    record("interference_k_bound", std::max(worst, 0.0), 1e-12);
  }

  {  // interference profile integrates to zero
    std::mt19937_64 rng(seed ^ 0x696e7466ULL);
    std::uniform_real_distribution<double> gdist(0.2, 5.0);
    std::uniform_real_distribution<double> ddist(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double g = gdist(rng), g1 = gdist(rng), delta = ddist(rng);
      const double integral = oracle::integrate_real_line(
          [&](double omega) { return f_interference(omega, g, g1, delta); }, 1e-8);
      worst = std::max(worst, std::abs(integral));
    }
    record("interference_integral_zero", worst, 1e-6);
  }

  {  // spontaneous-only relaxation leaves no mixing resonance
    double worst = 0.0;
    const double gn = 1.7, gn1 = 0.9;  // level widths, shared lower level stable
    FwmRates r;
    r.Gamma_ng = gn / 2.0;
    r.Gamma_n1g = gn1 / 2.0;
    r.Gamma_nn1 = (gn + gn1) / 2.0;
    for (double omega = -20.0; omega <= 20.0; omega += 0.1) {
      r.Omega = omega;
      worst = std::max(worst, std::abs(fwm_bracket(r) - 1.0));
    }
    record("fwm_spontaneous_bracket", worst, 1e-12);
  }

  {  // bare-line spectral integral
    RelaxationSpec r;
    r.q_n = 1.0;  // populate the probe's lower level only
    const Populations pops = unsaturated_populations(r);
    FieldSpec f;
    const auto grid = winged_grid(50.0, 1e4, 20001, 2000);
    const auto spec = spectrum(r, f, pops, grid, ProbeChannel::r2);
    const auto sr = sum_rule(spec, pops.dn2, 1.0);
    record("sum_rule_bare_line", sr.rel_error, 1e-3);
  }

  {  // cascade detuning map is an involution
    std::mt19937_64 rng(seed ^ 0x63617363ULL);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Draw d = draw_system(rng);
      const FieldSpec twice = cascade_transform(cascade_transform(d.fields));
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(twice.detuning[k] - d.fields.detuning[k]));
      }
    }
    record("cascade_involution", worst, 0.0);
  }

  return out;
}

}  // namespace nief::cli
