#pragma once

#include <functional>
#include <vector>

#include "nief/model.hpp"

namespace nief {

/// Maxwell averaging over a one-dimensional velocity distribution
/// exp(-v^2/u^2) / (sqrt(pi) u) along the common beam axis.  Geometry
/// enters only through the signed projections k[i] in FieldSpec.
struct DopplerConfig {
  double u{0};           // thermal velocity; k[i]*u is a rate
  int order{64};         // initial Gauss-Hermite order (even, >= 2)
  double rtol{1e-8};     // order-doubling convergence tolerance
  int max_order{512};
};

/// Detunings shifted for an atom moving with velocity v:
/// detuning[i] -> detuning[i] - k[i]*v.  Everything else unchanged.
FieldSpec shifted_fields(const FieldSpec& fields, double v);

/// Gauss-Hermite rule for weight exp(-x^2): sum w_j f(x_j) approximates
/// the integral over the real line.  Weights sum to sqrt(pi).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int n);

/// Integral of evaluator(v) against the normalized Maxwell weight.  Doubles
/// the quadrature order until the result moves by less than rtol, up to
/// max_order; throws Error("NonConvergent") if that never happens.
cplx velocity_average(const std::function<cplx(double)>& evaluator, const DopplerConfig& cfg);

}  // namespace nief
