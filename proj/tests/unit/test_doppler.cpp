#include <doctest.h>

#include <cmath>

#include "nief/doppler.hpp"
#include "nief/oracle.hpp"
#include "nief/spectra.hpp"
#include "test_support.hpp"

using namespace nief;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("zero velocity leaves the fields untouched") {
  std::mt19937_64 rng(3);
  const auto d = test::draw_system(rng);
  const FieldSpec f = shifted_fields(d.fields, 0.0);
  for (int i = 0; i < 4; ++i) CHECK(f.detuning[i] == d.fields.detuning[i]);
}

TEST_CASE("copropagating beams keep the two-photon detuning") {
  FieldSpec f;
  f.detuning = {2.0, -1.0, 0.0, 0.0};
  f.k = {1.3, 1.3, 0.0, 0.0};
  for (double v : {-2.0, 0.7, 5.0}) {
    const FieldSpec s = shifted_fields(f, v);
    CHECK(s.detuning[0] - s.detuning[1] ==
          doctest::Approx(f.detuning[0] - f.detuning[1]).epsilon(1e-15));
  }
}

TEST_CASE("counterpropagating beams shift the two-photon detuning by 2kv") {
  FieldSpec f;
  f.detuning = {0.0, 0.0, 0.0, 0.0};
  f.k = {1.0, -1.0, 0.0, 0.0};
  const FieldSpec s = shifted_fields(f, 1.0);
  CHECK(s.detuning[0] - s.detuning[1] == doctest::Approx(-2.0));
}

TEST_CASE("quadrature weights sum to sqrt(pi) at every order") {
  for (int n : {2, 3, 8, 16, 33, 64, 128, 256, 512}) {
    const auto rule = gauss_hermite(n);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(std::abs(sum / kSqrtPi - 1.0) < 1e-14);
    // nodes come out sorted and symmetric
    for (size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    CHECK(std::abs(rule.nodes.front() + rule.nodes.back()) < 1e-12);
  }
}

TEST_CASE("constant response averages to itself") {
  DopplerConfig cfg;
  cfg.u = 3.7;
  const cplx c{1.25, -0.5};
  const cplx avg = velocity_average([&](double) { return c; }, cfg);
  CHECK(std::abs(avg - c) < 1e-14);
}

TEST_CASE("vanishing thermal velocity recovers the atom at rest") {
  DopplerConfig cfg;
  cfg.u = 1e-4;
  const auto lorentz = [](double v) { return 1.0 / cplx{1.0, 0.4 - v}; };
  const cplx avg = velocity_average(lorentz, cfg);
  CHECK(std::abs(avg - lorentz(0.0)) / std::abs(lorentz(0.0)) < 1e-6);
}

TEST_CASE("broadened Lorentzian matches adaptive quadrature") {
  const double ku = 2.0;
  DopplerConfig cfg;
  cfg.u = ku;
  for (double omega : {0.0, 0.5, 1.7, -3.0}) {
    const cplx gh =
        velocity_average([&](double v) { return 1.0 / cplx{1.0, omega - v}; }, cfg);
    const cplx ref = oracle::integrate_real_line_c(
        [&](double v) {
          return std::exp(-v * v / (ku * ku)) / (kSqrtPi * ku) / cplx{1.0, omega - v};
        },
        1e-12);
    CHECK(test::rel_diff(gh, ref) < 1e-8);
  }
}

TEST_CASE("order doubling converges on a driven spectrum point") {
  std::mt19937_64 rng(61);
  const auto d = test::draw_system(rng);
  const Populations p = unsaturated_populations(d.relax);
  FieldSpec base = d.fields;
  base.k = {1.0, 1.0, -0.7, 0.4};

  const auto response = [&](double v) {
    const FieldSpec f = shifted_fields(base, v);
    const SaturatedPopulations s = saturated_populations(d.relax, f, p);
    return probe_response2(d.relax, f, s);
  };

  DopplerConfig coarse;
  coarse.u = 2.0;
  coarse.order = 32;
  const cplx a32 = [&] {
    cplx acc{};
    const auto rule = gauss_hermite(32);
    for (int i = 0; i < 32; ++i) acc += rule.weights[i] * response(coarse.u * rule.nodes[i]);
    return acc / kSqrtPi;
  }();
  const cplx converged = velocity_average(response, coarse);
  // the convergent answer differs from the coarse one by less than the
  // doubling tolerance chain allows
  CHECK(std::abs(converged - a32) / std::abs(converged) < 1e-6);
}

TEST_CASE("copropagating Raman dip does not move with temperature") {
  RelaxationSpec r;
  r.q_l = 1.0;
  r.Gamma_ln = 0.02;
  const Populations p = unsaturated_populations(r);
  FieldSpec f;
  f.rabi[0] = 0.6;
  f.detuning[0] = 1.0;
  f.k = {1.0, 1.0, 0.0, 0.0};  // Doppler-free two-photon combination

  const auto dip_position = [&](double u) {
    DopplerConfig cfg;
    cfg.u = u;
    const auto grid = linear_grid(0.5, 1.5, 501);
    double best = grid.front();
    double best_val = 1e300;
    for (double omega : grid) {
      FieldSpec probe = f;
      probe.detuning[1] = omega;
      const cplx avg = velocity_average(
          [&](double v) {
            const FieldSpec fv = shifted_fields(probe, v);
            return probe_response2(r, fv, saturated_populations(r, fv, p));
          },
          cfg);
      if (avg.real() < best_val) {
        best_val = avg.real();
        best = omega;
      }
    }
    return best;
  };

  const double step = 1.0 / 500.0;
  const double cold = dip_position(0.5);
  const double hot = dip_position(2.0);
  CHECK(std::abs(cold - hot) <= step + 1e-12);
  // and the dip sits at the two-photon resonance
  CHECK(std::abs(cold - f.detuning[0]) <= 2 * step);
}

TEST_CASE("non-settling averages are reported") {
  DopplerConfig cfg;
  cfg.u = 50.0;
  cfg.order = 2;
  cfg.max_order = 4;   // far too coarse for a narrow structure
  cfg.rtol = 1e-14;
  const auto narrow = [](double v) { return 1.0 / cplx{0.01, 3.0 - v}; };
  CHECK_THROWS_WITH_AS(velocity_average(narrow, cfg), doctest::Contains("NonConvergent"),
                       Error);
}
