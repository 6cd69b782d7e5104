#include <doctest.h>

#include "nief/dressed.hpp"
#include "nief/oracle.hpp"
#include "test_support.hpp"

using namespace nief;

TEST_CASE("denominators at zero detuning are the halfwidths") {
  RelaxationSpec r;
  r.Gamma_lg = 1.5; r.Gamma_ng = 2.5; r.Gamma_nm = 3.5;
  r.Gamma_lm = 4.5; r.Gamma_ln = 5.5; r.Gamma_gm = 6.5;
  FieldSpec f;
  const Denominators d = denominators(r, f);
  CHECK(d.P1 == cplx{1.5, 0.0});
  CHECK(d.P2 == cplx{2.5, 0.0});
  CHECK(d.P3 == cplx{3.5, 0.0});
  CHECK(d.P4 == cplx{4.5, 0.0});
  CHECK(d.P12 == cplx{5.5, 0.0});
  CHECK(d.P43 == cplx{5.5, 0.0});
  CHECK(d.P32 == cplx{6.5, 0.0});
  CHECK(d.P41 == cplx{6.5, 0.0});
  CHECK(d.d2 == cplx{2.5, 0.0});
  CHECK(d.d4 == cplx{4.5, 0.0});
}

TEST_CASE("two-photon resonance makes the Raman denominator real") {
  RelaxationSpec r;
  FieldSpec f;
  f.detuning = {3.2, 3.2, 0.0, 0.0};
  const Denominators d = denominators(r, f);
  CHECK(d.P12 == cplx{r.Gamma_ln, 0.0});
}

TEST_CASE("hand-evaluated denominators at staggered detunings") {
  RelaxationSpec r;  // all halfwidths 1
  FieldSpec f;
  f.detuning = {1.0, 2.0, 3.0, 4.0};
  const Denominators d = denominators(r, f);
  CHECK(d.P12 == cplx{1.0, -1.0});
  CHECK(d.d4 == cplx{1.0, 2.0});
  CHECK(d.P41 == cplx{1.0, 3.0});
  CHECK(d.d2 == cplx{1.0, 0.0});
}

TEST_CASE("coupling factors vanish with their field") {
  std::mt19937_64 rng(7);
  auto d = test::draw_system(rng);
  d.fields.rabi[0] = 0.0;
  auto c = coupling_factors(d.relax, d.fields);
  for (const auto& g : c.g) CHECK(std::abs(g) == 0.0);

  d.fields.rabi[0] = 2.0;
  d.fields.rabi[2] = 0.0;
  c = coupling_factors(d.relax, d.fields);
  for (const auto& v : c.v) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("unit parameters give g1 = 1") {
  RelaxationSpec r;
  FieldSpec f;
  f.rabi[0] = 1.0;
  const auto c = coupling_factors(r, f);
  CHECK(c.g[0].real() == doctest::Approx(1.0));
  CHECK(c.g[0].imag() == doctest::Approx(0.0));
}

TEST_CASE("coupling factors scale with the squared field") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto d = test::draw_system(rng);
    const auto c1 = coupling_factors(d.relax, d.fields);
    d.fields.rabi[0] *= 2.0;
    const auto c2 = coupling_factors(d.relax, d.fields);
    for (int k = 0; k < 8; ++k) {
      CHECK(test::rel_diff(c2.g[k], 4.0 * c1.g[k]) < 1e-14);
      CHECK(test::rel_diff(c2.v[k], c1.v[k]) < 1e-14);
    }
  }
}

TEST_CASE("zero fields pass populations through") {
  std::mt19937_64 rng(13);
  auto d = test::draw_system(rng);
  d.fields.rabi[0] = 0.0;
  d.fields.rabi[2] = 0.0;
  const Populations p = unsaturated_populations(d.relax);
  const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
  CHECK(s.dr1 == doctest::Approx(p.dn1).epsilon(1e-14));
  CHECK(s.dr2 == doctest::Approx(p.dn2).epsilon(1e-14));
  CHECK(s.dr3 == doctest::Approx(p.dn3).epsilon(1e-14));
  CHECK(s.dr4 == doctest::Approx(p.dn4).epsilon(1e-14));
  CHECK(s.r_g == doctest::Approx(p.n_g).epsilon(1e-14));
  CHECK(s.r_l == doctest::Approx(p.n_l).epsilon(1e-14));
}

TEST_CASE("decoupled transition saturates as a two-level system") {
  RelaxationSpec r;
  r.q_l = 1.0;           // population sits on the driven transition
  r.gamma_gn = 0.0;      // a1 = 0 decouples the cross terms
  FieldSpec f;
  f.rabi[0] = 1.3;
  f.detuning[0] = 0.7;
  const Populations p = unsaturated_populations(r);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  CHECK(s.a1 == 0.0);
  CHECK(s.alpha3 == 0.0);
  CHECK(s.dr1 == doctest::Approx(p.dn1 / (1.0 + s.alpha1)).epsilon(1e-14));
}

TEST_CASE("saturation parameters respect the Lorentzian bound") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto d = test::draw_system(rng);
    const Populations p = unsaturated_populations(d.relax);
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
    CHECK(s.alpha1 >= 0.0);
    CHECK(s.alpha3 >= 0.0);
    CHECK(s.alpha1 <= s.alpha1_0 * (1.0 + 1e-12));
    CHECK(s.alpha3 <= s.alpha3_0 * (1.0 + 1e-12));
  }
}

TEST_CASE("branching ratios stay in [0,1] for steady feeding") {
  // needs the feeding into each lower level to stay below that level's own
  // decay (gamma_gn <= Gamma_n, gamma_ml <= Gamma_l); the ratios then split
  // unity three ways on each branch chain
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const auto d = test::draw_system(rng, 1e-3, /*steady_branches=*/true);
    const Populations p = unsaturated_populations(d.relax);
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
    for (double x : {s.a1, s.a2, s.a3, s.b1, s.b2, s.b3}) {
      CHECK(x >= -1e-12);
      CHECK(x <= 1.0 + 1e-12);
    }
    CHECK(s.a1 + s.a2 + s.a3 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.b1 + s.b2 + s.b3 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("saturated populations match the direct rate solve") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto d = test::draw_system(rng);
    const Populations p = unsaturated_populations(d.relax);
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
    const auto o = oracle::strong_field_populations_solve(d.relax, d.fields, p);
    CHECK(test::rel_diff(s.r_g, o.r_g) < 1e-10);
    CHECK(test::rel_diff(s.r_n, o.r_n) < 1e-10);
    CHECK(test::rel_diff(s.r_m, o.r_m) < 1e-10);
    CHECK(test::rel_diff(s.r_l, o.r_l) < 1e-10);
    CHECK(std::abs(s.dr1 - o.dr1) < 1e-10 * std::max(1.0, std::abs(o.dr1)));
    CHECK(std::abs(s.dr3 - o.dr3) < 1e-10 * std::max(1.0, std::abs(o.dr3)));
  }
}

TEST_CASE("bare probe lines are Lorentzian") {
  RelaxationSpec r;
  r.q_n = 2.0;  // only the probe's lower level holds population
  FieldSpec f;
  f.rabi[1] = cplx{1e-3, 0.0};
  f.detuning[1] = 0.8;
  const Populations p = unsaturated_populations(r);
  const SaturatedPopulations s = saturated_populations(r, f, p);
  const cplx expected = I * f.rabi[1] * p.dn2 / cplx{r.Gamma_ng, f.detuning[1]};
  CHECK(test::rel_diff(probe_r2(r, f, s), expected) < 1e-14);

  RelaxationSpec r4 = RelaxationSpec{};
  r4.q_l = 2.0;
  FieldSpec f4;
  f4.rabi[3] = cplx{1e-3, 0.0};
  f4.detuning[3] = -1.4;
  const Populations p4 = unsaturated_populations(r4);
  const SaturatedPopulations s4 = saturated_populations(r4, f4, p4);
  const cplx expected4 = I * f4.rabi[3] * p4.dn4 / cplx{r4.Gamma_lm, f4.detuning[3]};
  CHECK(test::rel_diff(probe_r4(r4, f4, s4), expected4) < 1e-14);
}

TEST_CASE("single strong field reduces to the two-factor response") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    auto d = test::draw_system(rng);
    d.fields.rabi[2] = 0.0;
    const Populations p = unsaturated_populations(d.relax);
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
    const Denominators den = denominators(d.relax, d.fields);
    const CouplingFactors c = coupling_factors(d.relax, d.fields);

    const cplx r2 = probe_r2(d.relax, d.fields, s);
    const cplx r2_reduced =
        I * d.fields.rabi[1] / den.P2 * (s.dr2 - c.g[2] * s.dr1) / (1.0 + c.g[1]);
    CHECK(test::rel_diff(r2, r2_reduced) < 1e-13);

    const cplx r4 = probe_r4(d.relax, d.fields, s);
    const cplx r4_reduced =
        I * d.fields.rabi[3] / den.P4 * (s.dr4 - c.g[0] * s.dr1) / (1.0 + c.g[3]);
    CHECK(test::rel_diff(r4, r4_reduced) < 1e-13);
  }
}

TEST_CASE("closed-form probe amplitudes match the direct solve") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto d = test::draw_system(rng);
    const Populations p = unsaturated_populations(d.relax);
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
    const auto o = oracle::strong_field_populations_solve(d.relax, d.fields, p);
    const auto probe = oracle::probe_response(d.relax, d.fields, o);
    CHECK(test::rel_diff(probe_r2(d.relax, d.fields, s), probe.r2) < 1e-8);
    CHECK(test::rel_diff(probe_r4(d.relax, d.fields, s), probe.r4) < 1e-8);
  }
}

TEST_CASE("probe response is exactly linear in the probe amplitude") {
  std::mt19937_64 rng(37);
  const auto d = test::draw_system(rng);
  const Populations p = unsaturated_populations(d.relax);
  const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
  const cplx base = probe_r2(d.relax, d.fields, s);
  const cplx scale{-2.25, 0.75};
  FieldSpec f = d.fields;
  f.rabi[1] *= scale;
  CHECK(test::rel_diff(probe_r2(d.relax, f, s), scale * base) < 1e-15);
}

TEST_CASE("strong-field phases drop out of the probe response") {
  std::mt19937_64 rng(41);
  const auto d = test::draw_system(rng);
  const Populations p = unsaturated_populations(d.relax);
  const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);
  const cplx base = probe_r2(d.relax, d.fields, s);
  FieldSpec f = d.fields;
  f.rabi[0] *= std::polar(1.0, 1.234);
  f.rabi[2] *= std::polar(1.0, -2.345);
  const SaturatedPopulations s2 = saturated_populations(d.relax, f, p);
  CHECK(test::rel_diff(probe_r2(d.relax, f, s2), base) < 1e-14);

  // and in the direct solve as well
  const auto o1 = oracle::probe_response(
      d.relax, d.fields, oracle::strong_field_populations_solve(d.relax, d.fields, p));
  const auto o2 = oracle::probe_response(
      d.relax, f, oracle::strong_field_populations_solve(d.relax, f, p));
  CHECK(test::rel_diff(o1.r2, o2.r2) < 1e-12);
}

TEST_CASE("cascade transform flips only the strong detunings, twice is identity") {
  FieldSpec f;
  f.detuning = {1.0, 2.0, -3.0, 4.0};
  const FieldSpec once = cascade_transform(f);
  CHECK(once.detuning[0] == -1.0);
  CHECK(once.detuning[1] == 2.0);
  CHECK(once.detuning[2] == 3.0);
  CHECK(once.detuning[3] == 4.0);
  const FieldSpec twice = cascade_transform(once);
  for (int i = 0; i < 4; ++i) CHECK(twice.detuning[i] == f.detuning[i]);

  FieldSpec zero;
  const FieldSpec still = cascade_transform(zero);
  for (int i = 0; i < 4; ++i) CHECK(still.detuning[i] == 0.0);
}

TEST_CASE("cascade spectrum equals the mirrored double-scheme spectrum") {
  std::mt19937_64 rng(43);
  const auto d = test::draw_system(rng);
  const Populations p = unsaturated_populations(d.relax);

  DrivenSystem cascade{d.relax, d.fields, SchemeKind::cascade};
  const FieldSpec fc = effective_fields(cascade);

  FieldSpec mirrored = d.fields;
  mirrored.detuning[0] = -mirrored.detuning[0];
  mirrored.detuning[2] = -mirrored.detuning[2];

  for (double omega = -15.0; omega <= 15.0; omega += 0.5) {
    FieldSpec a = fc, b = mirrored;
    a.detuning[1] = b.detuning[1] = omega;
    const SaturatedPopulations sa = saturated_populations(d.relax, a, p);
    const SaturatedPopulations sb = saturated_populations(d.relax, b, p);
    CHECK(probe_r2(d.relax, a, sa) == probe_r2(d.relax, b, sb));
  }
}

// first-principles steady state of a three-level ladder (lower level n, the
// shared level g above it, the driven level on top), assembled directly and
// independently of the closed forms: the ladder response must equal the
// double-scheme formula at the sign-flipped strong detuning.
namespace {

cplx ladder_probe(const RelaxationSpec& r, double Omega1, double Omega2, cplx G1,
                  double dr1, double dr2) {
  // two-coherence chain for unit probe amplitude:
  //   P2 r2          - i G1 w = i dr2
  //   Pp w - i conj(G1) r2    = -i r_top
  // where w is the n-to-top two-photon coherence (sum-frequency denominator
  // Pp) and r_top = i conj(G1) (rho_g - rho_top) / P1' the strong coherence
  const cplx P2{r.Gamma_ng, Omega2};
  const cplx P1p{r.Gamma_lg, Omega1};
  const cplx Pp{r.Gamma_ln, Omega1 + Omega2};
  const cplx r_top = I * std::conj(G1) * (-dr1) / P1p;
  const cplx det = P2 * Pp - (I * G1) * (I * std::conj(G1));
  return (I * dr2 * Pp + (I * G1) * (-I * r_top)) / det;
}

}  // namespace

TEST_CASE("ladder steady state pins the cascade detuning map") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 40; ++i) {
    auto d = test::draw_system(rng);
    d.fields.rabi[2] = 0.0;  // single strong field
    d.fields.rabi[1] = cplx{1.0, 0.0};
    const Populations p = unsaturated_populations(d.relax);
    const SaturatedPopulations s = saturated_populations(d.relax, d.fields, p);

    const cplx lad = ladder_probe(d.relax, d.fields.detuning[0], d.fields.detuning[1],
                                  d.fields.rabi[0], s.dr1, s.dr2);

    FieldSpec flipped = d.fields;
    flipped.detuning[0] = -flipped.detuning[0];
    const cplx closed = probe_r2(d.relax, flipped, s) / flipped.rabi[1];
    CHECK(test::rel_diff(lad, closed) < 1e-12);
  }
}
