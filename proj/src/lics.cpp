#include "nief/lics.hpp"

#include <cmath>

namespace nief {

double fano_q(double delta, double gamma) {
  if (!(gamma > 0.0)) throw Error("ZeroWidth", "Fano q needs gamma > 0");
  return delta / gamma;
}

namespace {

void check(cplx denom, const char* what) {
  if (std::abs(denom) < 1e-14) throw Error("DegenerateDenominator", what);
}

}  // namespace

LicsFactors lics_factors(const ContinuumCoupling& c, const LicsDetunings& d) {
  const double bl = c.beta_l();
  const double bn = c.beta_n();
  const cplx Dgm = d.D_gm();
  const cplx pgm = d.p_gm();
  const cplx xl{1.0, d.x_l}, yl{1.0, d.y_l};

  check(xl, "1+i x_l");
  check(yl, "1+i y_l");

  LicsFactors out;
  out.K = 1.0 - c.k1 * bl * (1.0 - I * c.q_nl) * (1.0 - I * c.q_gl) /
                    ((1.0 - I * c.q_ng) * xl);
  out.A = 1.0 - c.k1 * bl * (1.0 - I * c.q_ln) * (1.0 - I * c.q_gl) /
                    ((1.0 - I * c.q_gn) * yl);
  out.X = (1.0 + c.g_nn) *
          (cplx{1.0, d.x_n} + c.g_mn / (Dgm * (1.0 + c.g_nn)) -
           c.k2 * bl * bn * (1.0 - I * c.q_nl) * (1.0 - I * c.q_nl) / xl);
  out.Y = (1.0 + c.g_nn) *
          (cplx{1.0, d.y_n} + c.g_mn / (pgm * (1.0 + c.g_nn)) -
           c.k2 * bl * bn * (1.0 - I * c.q_nl) * (1.0 - I * c.q_nl) / yl);
  return out;
}

cplx chi3_ratio(const ContinuumCoupling& c, const LicsDetunings& d) {
  const LicsFactors f = lics_factors(c, d);
  const cplx denom = d.D_gm() * f.X;
  check(denom, "D_gm X");
  return f.K / denom;
}

double alpha1_ratio(const ContinuumCoupling& c, const LicsDetunings& d) {
  const LicsFactors f = lics_factors(c, d);
  const cplx denom = d.D_gm() * f.X;
  check(denom, "D_gm X");
  return ((1.0 - c.g_mn / denom) / d.D_gm()).real();
}

double alpha_mu_ratio(const ContinuumCoupling& c, const LicsDetunings& d) {
  const LicsFactors f = lics_factors(c, d);
  check(f.Y, "Y");
  const double bl = c.beta_l();
  const double window = c.k3 * bl * (d.y_l + c.q_gl) * (d.y_l + c.q_gl) /
                        (1.0 + d.y_l * d.y_l);
  const cplx qn = 1.0 - I * c.q_gn;
  return 1.0 - c.k3 * bl + window - (c.k4 * c.g_nn * f.A * f.A * qn * qn / f.Y).real();
}

}  // namespace nief
