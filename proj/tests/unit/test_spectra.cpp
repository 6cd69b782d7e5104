#include <doctest.h>

#include <cmath>

#include "nief/oracle.hpp"
#include "nief/spectra.hpp"
#include "test_support.hpp"

using namespace nief;

namespace {

RelaxationSpec pumped_lower_r2() {
  RelaxationSpec r;
  r.q_n = 1.0;  // absorbing configuration on the n-g probe
  return r;
}

}  // namespace

TEST_CASE("undriven line is the Lorentzian pair") {
  const RelaxationSpec r = pumped_lower_r2();
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  const auto grid = linear_grid(-10.0, 10.0, 401);
  const auto spec = spectrum(r, f, p, grid, ProbeChannel::r2);
  for (size_t i = 0; i < grid.size(); ++i) {
    const double omega = grid[i];
    CHECK(spec.absorption[i] ==
          doctest::Approx(p.dn2 / (1.0 + omega * omega)).epsilon(1e-12));
    CHECK(spec.refraction[i] ==
          doctest::Approx(-p.dn2 * omega / (1.0 + omega * omega)).epsilon(1e-12));
  }
  // even absorption, odd refraction
  for (size_t i = 0; i < grid.size() / 2; ++i) {
    const size_t j = grid.size() - 1 - i;
    CHECK(std::abs(spec.absorption[i] - spec.absorption[j]) < 1e-12);
    CHECK(std::abs(spec.refraction[i] + spec.refraction[j]) < 1e-12);
  }
  // sign lock: pumping the probe's lower level makes line-center absorption positive
  CHECK(spec.absorption[grid.size() / 2] > 0.0);
}

TEST_CASE("sum rule on the bare line against the adaptive oracle") {
  const RelaxationSpec r = pumped_lower_r2();
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  const auto grid = winged_grid(50.0, 1e4, 20001, 2000);
  const auto spec = spectrum(r, f, p, grid, ProbeChannel::r2);
  const auto sr = sum_rule(spec, p.dn2, 1.0);
  CHECK(sr.rel_error < 1e-3);

  // the normalization constant is fixed by quadrature of the same response
  const double direct = oracle::integrate_real_line(
      [&](double omega) { return p.dn2 / (1.0 + omega * omega); }, 1e-10);
  CHECK(direct / 3.14159265358979323846 == doctest::Approx(p.dn2).epsilon(1e-9));
  CHECK(sr.integral == doctest::Approx(direct / 3.14159265358979323846).epsilon(1e-6));
}

TEST_CASE("zero populations integrate to zero") {
  RelaxationSpec r;
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  const auto grid = winged_grid(50.0, 1e4, 2001, 500);
  const auto spec = spectrum(r, f, p, grid, ProbeChannel::r2);
  const auto sr = sum_rule(spec, 0.0, 1.0);
  CHECK(std::abs(sr.integral) < 1e-12);
}

TEST_CASE("sum rule needs a wide grid") {
  const RelaxationSpec r = pumped_lower_r2();
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  const auto spec = spectrum(r, f, p, linear_grid(-100.0, 100.0, 512), ProbeChannel::r2);
  CHECK_THROWS_WITH_AS(sum_rule(spec, p.dn2, 1.0), doctest::Contains("GridTooNarrow"),
                       Error);
}

TEST_CASE("driving redistributes the line without changing its integral") {
  // balanced strong transitions keep the populations fixed while the
  // dressing still reshapes the lineshape
  RelaxationSpec r;
  r.q_g = 1.0; r.q_l = 1.0;   // dn1 = 0: the only driven transition is balanced
  r.q_n = 2.4; r.q_m = 1.4;
  Populations p = unsaturated_populations(r);
  REQUIRE(std::abs(p.dn1) < 1e-12);

  FieldSpec off;
  FieldSpec on;
  on.rabi[0] = 3.0;
  on.detuning[0] = 0.5;

  const auto grid = winged_grid(60.0, 1e4, 20001, 2000);
  const auto spec_off = spectrum(r, off, p, grid, ProbeChannel::r2);
  const auto spec_on = spectrum(r, on, p, grid, ProbeChannel::r2);

  const auto sr_off = sum_rule(spec_off, p.dn2, 1.0);
  const auto sr_on = sum_rule(spec_on, p.dn2, 1.0);
  CHECK(sr_off.rel_error < 1e-3);
  CHECK(sr_on.rel_error < 1e-3);
  CHECK(std::abs(sr_on.integral - sr_off.integral) <
        1e-3 * std::max(std::abs(sr_off.integral), 1e-12));

  // while the pointwise shapes genuinely differ
  double max_shape_diff = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    max_shape_diff = std::max(max_shape_diff,
                              std::abs(spec_on.absorption[i] - spec_off.absorption[i]));
  }
  CHECK(max_shape_diff > 0.05 * std::abs(p.dn2));
}

TEST_CASE("driven spectra match the direct solve pointwise") {
  std::mt19937_64 rng(53);
  const auto d = test::draw_system(rng);
  const Populations p = unsaturated_populations(d.relax);
  const auto grid = linear_grid(-25.0, 25.0, 201);
  const auto spec = spectrum(d.relax, d.fields, p, grid, ProbeChannel::r4);
  const auto opop = oracle::strong_field_populations_solve(d.relax, d.fields, p);
  for (size_t i = 0; i < grid.size(); i += 10) {
    FieldSpec f = d.fields;
    f.detuning[3] = grid[i];
    const auto probe = oracle::probe_response(d.relax, f, opop);
    const cplx oracle_resp = -I * probe.r4 / f.rabi[3];
    CHECK(test::rel_diff(spec.response[i], oracle_resp) < 1e-8);
  }
}

TEST_CASE("resonant normalized absorption is 1 undriven and 1/2 a halfwidth out") {
  RelaxationSpec r;
  r.q_l = 1.0;
  FieldSpec f;
  const Populations p = unsaturated_populations(r);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  CHECK(normalized_alpha4(r, f, s, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalized_alpha4(r, f, s, r.Gamma_lm) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("normalized absorption requires a population reference") {
  RelaxationSpec r;  // nothing pumped: dn4 = 0
  FieldSpec f;
  const Populations p = unsaturated_populations(r);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  CHECK_THROWS_WITH_AS(normalized_alpha4(r, f, s, 0.0), doctest::Contains("ZeroReference"),
                       Error);
}

TEST_CASE("far-wing form without Raman inversion is the bare wing") {
  RelaxationSpec r;
  r.q_l = 1.0;
  FieldSpec f;  // no driving: r_m = r_g = 0
  const Populations p = unsaturated_populations(r);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  const double omega4 = 300.0;
  const double expected = r.Gamma_lm * r.Gamma_lm * (s.r_l - s.r_m) /
                          (s.dn4 * omega4 * omega4);
  CHECK(raman_asymptote(r, f, s, omega4) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Raman gain in the wing needs bare inversion of the two-photon pair") {
  RelaxationSpec r;
  r.q_l = 0.02;
  r.q_m = 2.0;  // r_m >> r_g: inverted Raman pair
  FieldSpec f;
  f.rabi[0] = 2.0;
  const Populations p = unsaturated_populations(r);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  REQUIRE(s.r_m > s.r_g);
  const double omega4 = 200.0;
  FieldSpec fres = f;
  fres.detuning[0] = omega4;  // Raman term fully resonant
  const SaturatedPopulations sres = saturated_populations(r, fres, p);
  CHECK(raman_asymptote(r, fres, sres, omega4) < 0.0);
}

TEST_CASE("wing form tracks the full expression far off resonance") {
  std::mt19937_64 rng(59);
  int checked = 0;
  while (checked < 20) {
    auto d = test::draw_system(rng);
    d.fields.rabi[2] = 0.0;
    d.fields.rabi[0] = std::polar(0.3 + 0.9 * std::abs(std::sin(checked * 1.0)), 0.0);
    const double gmax = std::max({d.relax.Gamma_lg, d.relax.Gamma_ng, d.relax.Gamma_nm,
                                  d.relax.Gamma_lm, d.relax.Gamma_ln, d.relax.Gamma_gm});
    const double omega4 = 100.0 * gmax;
    d.fields.detuning[0] = omega4 + d.relax.Gamma_gm * (checked % 5 - 2) * 0.7;
    d.fields.detuning[3] = omega4;
    const Populations p = unsaturated_populations(d.relax);
    if (std::abs(p.dn4) < 0.05) continue;
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
    const double full = normalized_alpha4(d.relax, d.fields, s, omega4);
    const double wing = raman_asymptote(d.relax, d.fields, s, omega4);
    if (std::abs(full) < 1e-8) continue;  // avoid comparing at a sign crossing
    CHECK(std::abs(full - wing) / std::max(std::abs(full), std::abs(wing)) < 0.05);
    ++checked;
  }
}

TEST_CASE("resonant gain condition margins") {
  RelaxationSpec r;
  FieldSpec f;
  f.rabi[0] = 1.0;

  SaturatedPopulations s{};
  s.r_l = 1.0, s.r_g = 1.0, s.r_m = 0.2;  // zero driving numerator
  auto rep = awi_condition(r, f, s);
  CHECK(rep.margin == doctest::Approx(-(s.r_l - s.r_m)));
  CHECK_FALSE(rep.holds);
  s.r_m = 1.3;  // now r_m >= r_l, trivially transparent
  rep = awi_condition(r, f, s);
  CHECK(rep.holds);

  // equality boundary: |G1|^2 = Gamma_lg Gamma_gm (r_l - r_m)/(r_l - r_g)
  s.r_l = 2.0; s.r_g = 1.0; s.r_m = 1.0;
  f.rabi[0] = std::sqrt(r.Gamma_lg * r.Gamma_gm * (s.r_l - s.r_m) / (s.r_l - s.r_g));
  rep = awi_condition(r, f, s);
  CHECK(std::abs(rep.margin) < 1e-14);
  CHECK(rep.holds);
}

TEST_CASE("threshold from the condition matches the zero of the lineshape") {
  RelaxationSpec r;
  r.q_l = 1.0;
  r.gamma_gn = 0.4;
  r.Gamma_lg = 1.1;
  r.Gamma_gm = 0.9;
  const Populations p = unsaturated_populations(r);

  const auto margin_at = [&](double g1) {
    FieldSpec f;
    f.rabi[0] = g1;
    const SaturatedPopulations s = saturated_populations(r, f, p);
    return awi_condition(r, f, s).margin;
  };
  const auto alpha_at = [&](double g1) {
    FieldSpec f;
    f.rabi[0] = g1;
    const SaturatedPopulations s = saturated_populations(r, f, p);
    return normalized_alpha4(r, f, s, 0.0);
  };

  // bracket and bisect both crossings
  const auto bisect = [](auto fn, double lo, double hi) {
    double flo = fn(lo);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double fm = fn(mid);
      if ((flo < 0) == (fm < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  REQUIRE(margin_at(0.05) < 0.0);
  REQUIRE(margin_at(5.0) > 0.0);
  const double g_condition = bisect(margin_at, 0.05, 5.0);
  const double g_lineshape = bisect(alpha_at, 5.0, 0.05);  // alpha falls through zero
  CHECK(std::abs(g_condition - g_lineshape) / g_condition < 1e-10);
}

TEST_CASE("undriven absorbing line yields no windows") {
  const RelaxationSpec r = pumped_lower_r2();
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  const auto grid = linear_grid(-20.0, 20.0, 2001);
  const auto spec = spectrum(r, f, p, grid, ProbeChannel::r2);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  CHECK(detect_windows(spec, r, s, ProbeChannel::r2).intervals.empty());
}

TEST_CASE("gain past the threshold shows one noninverted window at line center") {
  RelaxationSpec r;
  r.q_l = 1.0;
  r.gamma_gn = 0.4;
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  f.rabi[0] = 3.0;  // far beyond the resonant threshold
  const auto grid = linear_grid(-20.0, 20.0, 4001);
  const auto spec = spectrum(r, f, p, grid, ProbeChannel::r4);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  REQUIRE(awi_condition(r, f, s).holds);
  REQUIRE(s.dr4 > 0.0);  // bare probe transition stays noninverted

  const auto report = detect_windows(spec, r, s, ProbeChannel::r4);
  int gain_windows = 0;
  bool center_covered = false;
  for (const auto& w : report.intervals) {
    if (w.kind == WindowKind::gain) {
      ++gain_windows;
      CHECK(w.classification == WindowClass::awi);
      if (w.lo <= 0.0 && 0.0 <= w.hi) center_covered = true;
    }
  }
  CHECK(gain_windows == 1);
  CHECK(center_covered);
}

TEST_CASE("transparency below the gain threshold") {
  RelaxationSpec r;
  r.q_l = 1.0;
  r.Gamma_ln = 0.01;  // long-lived two-photon coherence carves the dip
  r.Gamma_lg = 1.0;
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  f.rabi[0] = 0.35;
  const SaturatedPopulations s = saturated_populations(r, f, p);
  REQUIRE_FALSE(awi_condition(r, f, s).holds);

  const auto grid = linear_grid(-5.0, 5.0, 40001);
  const auto spec = spectrum(r, f, p, grid, ProbeChannel::r2);
  const auto report = detect_windows(spec, r, s, ProbeChannel::r2, 2e-2);
  int gain = 0, transparency = 0;
  for (const auto& w : report.intervals) {
    if (w.kind == WindowKind::gain) ++gain;
    if (w.kind == WindowKind::transparency) {
      ++transparency;
      CHECK(w.classification == WindowClass::eit_like);
    }
  }
  CHECK(gain == 0);
  CHECK(transparency >= 1);
}
