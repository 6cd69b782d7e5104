#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nief/model.hpp"

namespace nief::oracle {

// Brute-force verifiers for the closed-form modules: the steady-state
// density-matrix equations assembled as a dense linear system and solved
// directly, plus adaptive quadrature and an angular-momentum recoupling
// check by explicit magnetic-sublevel contraction.  Nothing here calls the
// closed-form code; only tests compare the two paths.

struct LinearSystem {
  int n{0};
  std::vector<cplx> a;    // row-major n x n
  std::vector<cplx> rhs;
  std::vector<std::string> labels;

  cplx& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  cplx at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

struct SolveResult {
  std::vector<cplx> x;
  double residual{0};       // ||Ax - b|| / ||b||
  double cond_estimate{0};  // 1-norm condition estimate
};

/// Dense LU with partial pivoting.  Throws Error("IllConditioned") when the
/// condition estimate exceeds 1e12 or a pivot vanishes.
SolveResult solve(const LinearSystem& sys);

/// Populations under the strong fields from the direct steady-state rate
/// solve (4x4, with the field terms eliminated through the strong-field
/// coherences).  Independent of the closed-form saturation formulas.
struct OraclePopulations {
  double r_g{0}, r_n{0}, r_m{0}, r_l{0};
  double dr1{0}, dr2{0}, dr3{0}, dr4{0};
};

OraclePopulations strong_field_populations_solve(const RelaxationSpec& relax,
                                                 const FieldSpec& fields,
                                                 const Populations& pops);

/// All eight first-order probe amplitudes as one labeled complex system:
/// [r_2, conj r_32, conj r_12, conj rt_4, r_4, r_41, r_43, conj rt_2].
/// Conjugate partners are generated mechanically from the stated equations;
/// see docs/MODEL.md for the full set.
LinearSystem assemble_probe_system(const RelaxationSpec& relax, const FieldSpec& fields,
                                   const OraclePopulations& sat);

struct ProbeAmplitudes {
  cplx r2, r4;
  cplx rt2, rt4;            // four-wave-mixing sideband amplitudes
  double residual{0};
  double cond_estimate{0};
};

ProbeAmplitudes probe_response(const RelaxationSpec& relax, const FieldSpec& fields,
                               const OraclePopulations& sat);

/// Adaptive Gauss-Kronrod integration to absolute tolerance tol.  Throws
/// Error("ToleranceNotMet") if the recursion cannot reach it.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol);
cplx adaptive_integrate_c(const std::function<cplx(double)>& f, double a, double b,
                          double tol);

/// Whole-line integral via the tangent substitution; integrand must decay
/// at least like 1/x^2.
double integrate_real_line(const std::function<double(double)>& f, double tol);
cplx integrate_real_line_c(const std::function<cplx(double)>& f, double tol);

/// 6j value by summing products of four 3j symbols over all magnetic
/// quantum numbers; the 3j symbols come from their own finite-sum formula.
/// Throws Error("NonHalfInteger") for invalid arguments.
double sixj_by_3j_contraction(double j1, double j2, double j3, double j4, double j5,
                              double j6);

/// 3j symbol from the Racah finite sum (used by the contraction and
/// available to tests).
double threej(double j1, double j2, double j3, double m1, double m2, double m3);

}  // namespace nief::oracle
