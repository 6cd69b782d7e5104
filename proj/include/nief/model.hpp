#pragma once

#include <array>
#include <string>
#include <vector>

#include "nief/types.hpp"

namespace nief {

// Four-level scheme with two upper levels (g, m) and two lower levels
// (n, l).  Field 1 drives l-g and field 3 drives n-m (both strong);
// field 2 probes n-g and field 4 probes l-m.  All rates, detunings and
// Rabi frequencies are expressed in units of one reference rate; the
// library is fully dimensionless.

/// Relaxation constants and incoherent pump rates.
///
/// Gamma_i are total level decay rates, gamma_ij partial relaxation rates
/// from level i into level j inside the scheme (the remainder leaks out),
/// Gamma_ij homogeneous halfwidths of the six coherences, q_i incoherent
/// population rates.
struct RelaxationSpec {
  double Gamma_g{1}, Gamma_n{1}, Gamma_m{1}, Gamma_l{1};
  double gamma_gn{0}, gamma_gl{0}, gamma_mn{0}, gamma_ml{0};
  double Gamma_lg{1}, Gamma_ng{1}, Gamma_nm{1}, Gamma_lm{1}, Gamma_ln{1}, Gamma_gm{1};
  double q_g{0}, q_n{0}, q_m{0}, q_l{0};
};

/// Driving-field parameters.  detuning[i] is Omega_{i+1}, rabi[i] the
/// complex Rabi frequency G_{i+1}, k[i] the signed wavevector projection
/// (so k[i]*v is a rate for a scalar velocity v).
struct FieldSpec {
  std::array<double, 4> detuning{0, 0, 0, 0};
  std::array<cplx, 4> rabi{cplx{}, cplx{}, cplx{}, cplx{}};
  std::array<double, 4> k{0, 0, 0, 0};
};

/// Level topology.  The cascade variant differs from the double Lambda/V
/// scheme only by the sign map on the strong-field detunings (see
/// cascade_transform in dressed.hpp); no other parameter changes.
enum class SchemeKind { fig1_double, cascade };

struct DrivenSystem {
  RelaxationSpec relax;
  FieldSpec fields;
  SchemeKind scheme{SchemeKind::fig1_double};
};

enum class ValidationMode { strict, lenient };

struct ValidationIssue {
  std::string code;  // NonPositiveRate | BranchExceedsTotal | CoherenceWidthTooSmall
  std::string detail;
};

/// Checks every model invariant; returns the list of violations (empty when
/// the system is valid).  Strict mode additionally requires every coherence
/// halfwidth to satisfy Gamma_ij >= (Gamma_i + Gamma_j)/2, i.e. pure
/// dephasing can only add to the spontaneous value.
std::vector<ValidationIssue> validate(const RelaxationSpec& relax, const FieldSpec& fields,
                                      ValidationMode mode);

/// Throws Error("InvalidSystem") listing all violations.
void ensure_valid(const RelaxationSpec& relax, const FieldSpec& fields, ValidationMode mode);

/// Zero-field populations n_i (pump/decay balances) and the population
/// differences dn1 = n_l - n_g, dn2 = n_n - n_g, dn3 = n_n - n_m,
/// dn4 = n_l - n_m on the four coupled transitions.
struct Populations {
  double n_g{0}, n_n{0}, n_m{0}, n_l{0};
  double dn1{0}, dn2{0}, dn3{0}, dn4{0};
};

Populations unsaturated_populations(const RelaxationSpec& relax);

}  // namespace nief
