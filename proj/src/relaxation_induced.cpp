#include "nief/relaxation_induced.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nief {

namespace {

constexpr double kPi = 3.14159265358979323846;

long double lfact(int n) {
  static std::vector<long double> table{1.0L};
  while (static_cast<int>(table.size()) <= n) {
    table.push_back(table.back() * static_cast<long double>(table.size()));
  }
  return table[n];
}

// momenta handled as doubled integers so triangle tests stay exact
int to_doubled(double j, const char* what) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9 || rounded < -1e-9) {
    throw Error("NonHalfInteger", std::string(what) + " must be a nonnegative half-integer");
  }
  return static_cast<int>(rounded);
}

bool triangle_ok(int a2, int b2, int c2) {
  return (a2 + b2 - c2) >= 0 && (a2 - b2 + c2) >= 0 && (-a2 + b2 + c2) >= 0 &&
         (a2 + b2 + c2) % 2 == 0;
}

long double delta_factor(int a2, int b2, int c2) {
  return std::sqrt(lfact((a2 + b2 - c2) / 2) * lfact((a2 - b2 + c2) / 2) *
                   lfact((-a2 + b2 + c2) / 2) / lfact((a2 + b2 + c2) / 2 + 1));
}

// Racah single-sum formula, all arguments doubled
double sixj_doubled(int j1, int j2, int j3, int j4, int j5, int j6) {
  if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) || !triangle_ok(j4, j2, j6) ||
      !triangle_ok(j4, j5, j3)) {
    return 0.0;
  }
  const long double pref = delta_factor(j1, j2, j3) * delta_factor(j1, j5, j6) *
                           delta_factor(j4, j2, j6) * delta_factor(j4, j5, j3);
  const int t123 = (j1 + j2 + j3) / 2;
  const int t156 = (j1 + j5 + j6) / 2;
  const int t426 = (j4 + j2 + j6) / 2;
  const int t453 = (j4 + j5 + j3) / 2;
  const int q1245 = (j1 + j2 + j4 + j5) / 2;
  const int q2356 = (j2 + j3 + j5 + j6) / 2;
  const int q3164 = (j3 + j1 + j6 + j4) / 2;
  const int tmin = std::max({t123, t156, t426, t453});
  const int tmax = std::min({q1245, q2356, q3164});
  long double sum = 0.0L;
  for (int t = tmin; t <= tmax; ++t) {
    const long double term =
        lfact(t + 1) /
        (lfact(t - t123) * lfact(t - t156) * lfact(t - t426) * lfact(t - t453) *
         lfact(q1245 - t) * lfact(q2356 - t) * lfact(q3164 - t));
    sum += (t % 2 ? -1.0L : 1.0L) * term;
  }
  return static_cast<double>(pref * sum);
}

}  // namespace

double wigner6j(double j1, double j2, double j3, double j4, double j5, double j6) {
  return sixj_doubled(to_doubled(j1, "j1"), to_doubled(j2, "j2"), to_doubled(j3, "j3"),
                      to_doubled(j4, "j4"), to_doubled(j5, "j5"), to_doubled(j6, "j6"));
}

void ensure_dipole_allowed(const CascadeDoublet& d) {
  const auto allowed = [](double ja, double jb) {
    return std::abs(ja - jb) <= 1.0 + 1e-12 && ja + jb >= 1.0 - 1e-12;
  };
  if (!allowed(d.J_m, d.J_n) || !allowed(d.J_m1, d.J_n1) || !allowed(d.J_m1, d.J_m) ||
      !allowed(d.J_n1, d.J_n)) {
    throw Error("MomentaNotDipoleAllowed",
                "every coupled pair needs |J_a - J_b| <= 1 <= J_a + J_b");
  }
}

InterferenceCoefficients interference_coefficients(const CascadeDoublet& d) {
  if (!(d.A_m1n1 > 0.0)) throw Error("ZeroReferenceA", "A_m1n1 must be positive");
  ensure_dipole_allowed(d);
  InterferenceCoefficients out;
  out.C = std::sqrt(d.A_m1m * d.A_n1n * d.A_mn / d.A_m1n1);
  const double sixj = wigner6j(d.J_m, d.J_n, 1.0, d.J_n1, d.J_m1, 1.0);
  // J_m + J_n1 is an integer for any dipole-connected quadruple
  const int phase2 = to_doubled(d.J_m, "J_m") + to_doubled(d.J_n1, "J_n1");
  const double sign = (phase2 / 2) % 2 ? -1.0 : 1.0;
  out.K = sign * std::sqrt((2.0 * d.J_m + 1.0) * (2.0 * d.J_n1 + 1.0)) * sixj;
  return out;
}

double f_interference(double Omega, double Gamma, double Gamma1, double Delta) {
  const double gg = Gamma * Gamma1;
  const double dl = Gamma * Gamma + Omega * Omega;
  const double dr = Gamma1 * Gamma1 + (Omega - Delta) * (Omega - Delta);
  return gg * (gg - Omega * (Omega - Delta)) / (dl * dr);
}

double cascade_alpha(const CascadeDoublet& d, double Omega) {
  const auto [K, C] = interference_coefficients(d);
  const double lor0 = d.Gamma / (d.Gamma * d.Gamma + Omega * Omega);
  const double lor1 =
      d.Gamma1 / (d.Gamma1 * d.Gamma1 + (Omega - d.Delta) * (Omega - d.Delta));
  const double interf =
      K * C / (d.Gamma * d.Gamma1) * f_interference(Omega, d.Gamma, d.Gamma1, d.Delta);
  return d.N_nm() * d.A_mn * lor0 + d.N_n1m1() * d.A_m1n1 * (lor1 + interf);
}

double cascade_alpha_wing(const CascadeDoublet& d, double Omega) {
  const auto [K, C] = interference_coefficients(d);
  return (d.N_nm() * d.A_mn * d.Gamma + d.N_n1m1() * d.A_m1n1 * (d.Gamma1 - K * C)) /
         (Omega * Omega);
}

double geometric_prefactor(double lambda) { return lambda * lambda / (4.0 * kPi); }

ConditionReport awi_wing_condition(const CascadeDoublet& d) {
  const auto [K, C] = interference_coefficients(d);
  ConditionReport rep;
  rep.margin = (K * C / d.Gamma1 - 1.0) * d.N_n1m1() * d.A_m1n1 * d.Gamma1 -
               d.N_nm() * d.A_mn * d.Gamma;
  rep.holds = K > 0.0 && rep.margin > 0.0;
  return rep;
}

ConditionReport awi_center_condition(const CascadeDoublet& d) {
  const auto [K, C] = interference_coefficients(d);
  ConditionReport rep;
  rep.margin = (std::abs(K) * C / d.Gamma - 1.0) * d.N_n1m1() * d.A_m1n1 * d.Gamma -
               d.N_nm() * d.A_mn * d.Gamma1;
  rep.holds = K <= 0.0 && rep.margin > 0.0;
  return rep;
}

cplx fwm_bracket(const FwmRates& r) {
  const double num = r.Gamma_nn1 - r.Gamma_n1g - r.Gamma_ng;
  return 1.0 - I * num / cplx{r.Omega, r.Gamma_nn1};
}

cplx fwm_coherence(const FwmRates& r) {
  return fwm_bracket(r) /
         (cplx{r.Omega2, r.Gamma_n1g} * cplx{r.Omega1, -r.Gamma_ng});
}

double collision_resonance_amplitude(const FwmRates& r) {
  return r.Gamma_nn1 - r.Gamma_n1g - r.Gamma_ng;
}

}  // namespace nief
