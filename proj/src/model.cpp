#include "nief/model.hpp"

#include <cmath>
#include <sstream>

namespace nief {

namespace {

void check_positive(std::vector<ValidationIssue>& out, const char* name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    out.push_back({"NonPositiveRate", std::string(name) + " must be > 0, got " +
                                          std::to_string(value)});
  }
}

void check_nonnegative(std::vector<ValidationIssue>& out, const char* name, double value) {
  if (value < 0.0 || !std::isfinite(value)) {
    out.push_back({"NonPositiveRate", std::string(name) + " must be >= 0, got " +
                                          std::to_string(value)});
  }
}

}  // namespace

std::vector<ValidationIssue> validate(const RelaxationSpec& r, const FieldSpec& fields,
                                      ValidationMode mode) {
  std::vector<ValidationIssue> issues;

  check_positive(issues, "Gamma_g", r.Gamma_g);
  check_positive(issues, "Gamma_n", r.Gamma_n);
  check_positive(issues, "Gamma_m", r.Gamma_m);
  check_positive(issues, "Gamma_l", r.Gamma_l);

  check_nonnegative(issues, "gamma_gn", r.gamma_gn);
  check_nonnegative(issues, "gamma_gl", r.gamma_gl);
  check_nonnegative(issues, "gamma_mn", r.gamma_mn);
  check_nonnegative(issues, "gamma_ml", r.gamma_ml);

  check_nonnegative(issues, "q_g", r.q_g);
  check_nonnegative(issues, "q_n", r.q_n);
  check_nonnegative(issues, "q_m", r.q_m);
  check_nonnegative(issues, "q_l", r.q_l);

  // open system: branches inside the scheme cannot exceed the total decay
  if (r.gamma_gn + r.gamma_gl > r.Gamma_g * (1.0 + 1e-12)) {
    issues.push_back({"BranchExceedsTotal", "gamma_gn + gamma_gl > Gamma_g"});
  }
  if (r.gamma_mn + r.gamma_ml > r.Gamma_m * (1.0 + 1e-12)) {
    issues.push_back({"BranchExceedsTotal", "gamma_mn + gamma_ml > Gamma_m"});
  }

  struct CoherenceWidth {
    const char* name;
    double value;
    double lower;  // spontaneous halfwidth (Gamma_i + Gamma_j)/2
  };
  const CoherenceWidth widths[] = {
      {"Gamma_lg", r.Gamma_lg, 0.5 * (r.Gamma_l + r.Gamma_g)},
      {"Gamma_ng", r.Gamma_ng, 0.5 * (r.Gamma_n + r.Gamma_g)},
      {"Gamma_nm", r.Gamma_nm, 0.5 * (r.Gamma_n + r.Gamma_m)},
      {"Gamma_lm", r.Gamma_lm, 0.5 * (r.Gamma_l + r.Gamma_m)},
      {"Gamma_ln", r.Gamma_ln, 0.5 * (r.Gamma_l + r.Gamma_n)},
      {"Gamma_gm", r.Gamma_gm, 0.5 * (r.Gamma_g + r.Gamma_m)},
  };
  for (const auto& w : widths) {
    check_positive(issues, w.name, w.value);
    if (mode == ValidationMode::strict && w.value > 0.0 &&
        w.value < w.lower * (1.0 - 1e-12)) {
      issues.push_back({"CoherenceWidthTooSmall",
                        std::string(w.name) + " below (Gamma_i + Gamma_j)/2"});
    }
  }

  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(fields.detuning[i]) || !std::isfinite(fields.k[i]) ||
        !std::isfinite(fields.rabi[i].real()) || !std::isfinite(fields.rabi[i].imag())) {
      issues.push_back({"NonPositiveRate",
                        "field " + std::to_string(i + 1) + " has a non-finite entry"});
    }
  }

  return issues;
}

void ensure_valid(const RelaxationSpec& relax, const FieldSpec& fields, ValidationMode mode) {
  const auto issues = validate(relax, fields, mode);
  if (issues.empty()) return;
  std::ostringstream msg;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) msg << "; ";
    msg << issues[i].code << " (" << issues[i].detail << ")";
  }
  throw Error("InvalidSystem", msg.str());
}

Populations unsaturated_populations(const RelaxationSpec& r) {
  Populations p;
  p.n_m = r.q_m / r.Gamma_m;
  p.n_g = r.q_g / r.Gamma_g;
  p.n_n = (r.q_n + r.gamma_gn * p.n_g + r.gamma_mn * p.n_m) / r.Gamma_n;
  p.n_l = (r.q_l + r.gamma_gl * p.n_g + r.gamma_ml * p.n_m) / r.Gamma_l;
  p.dn1 = p.n_l - p.n_g;
  p.dn2 = p.n_n - p.n_g;
  p.dn3 = p.n_n - p.n_m;
  p.dn4 = p.n_l - p.n_m;
  return p;
}

}  // namespace nief
