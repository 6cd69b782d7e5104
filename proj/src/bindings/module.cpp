#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nief/dressed.hpp"
#include "nief/doppler.hpp"
#include "nief/lics.hpp"
#include "nief/mixing.hpp"
#include "nief/model.hpp"
#include "nief/oracle.hpp"
#include "nief/relaxation_induced.hpp"
#include "nief/spectra.hpp"

namespace py = pybind11;
using namespace nief;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady-state optical response of resonantly driven multilevel atoms";

  py::register_exception<Error>(m, "NiefError");

  py::class_<RelaxationSpec>(m, "RelaxationSpec")
      .def(py::init<>())
      .def_readwrite("Gamma_g", &RelaxationSpec::Gamma_g)
      .def_readwrite("Gamma_n", &RelaxationSpec::Gamma_n)
      .def_readwrite("Gamma_m", &RelaxationSpec::Gamma_m)
      .def_readwrite("Gamma_l", &RelaxationSpec::Gamma_l)
      .def_readwrite("gamma_gn", &RelaxationSpec::gamma_gn)
      .def_readwrite("gamma_gl", &RelaxationSpec::gamma_gl)
      .def_readwrite("gamma_mn", &RelaxationSpec::gamma_mn)
      .def_readwrite("gamma_ml", &RelaxationSpec::gamma_ml)
      .def_readwrite("Gamma_lg", &RelaxationSpec::Gamma_lg)
      .def_readwrite("Gamma_ng", &RelaxationSpec::Gamma_ng)
      .def_readwrite("Gamma_nm", &RelaxationSpec::Gamma_nm)
      .def_readwrite("Gamma_lm", &RelaxationSpec::Gamma_lm)
      .def_readwrite("Gamma_ln", &RelaxationSpec::Gamma_ln)
      .def_readwrite("Gamma_gm", &RelaxationSpec::Gamma_gm)
      .def_readwrite("q_g", &RelaxationSpec::q_g)
      .def_readwrite("q_n", &RelaxationSpec::q_n)
      .def_readwrite("q_m", &RelaxationSpec::q_m)
      .def_readwrite("q_l", &RelaxationSpec::q_l);

  py::class_<FieldSpec>(m, "FieldSpec")
      .def(py::init<>())
      .def_readwrite("detuning", &FieldSpec::detuning)
      .def_readwrite("rabi", &FieldSpec::rabi)
      .def_readwrite("k", &FieldSpec::k);

  py::class_<Populations>(m, "Populations")
      .def_readonly("n_g", &Populations::n_g)
      .def_readonly("n_n", &Populations::n_n)
      .def_readonly("n_m", &Populations::n_m)
      .def_readonly("n_l", &Populations::n_l)
      .def_readonly("dn1", &Populations::dn1)
      .def_readonly("dn2", &Populations::dn2)
      .def_readonly("dn3", &Populations::dn3)
      .def_readonly("dn4", &Populations::dn4);

  py::class_<SaturatedPopulations>(m, "SaturatedPopulations")
      .def_readonly("dr1", &SaturatedPopulations::dr1)
      .def_readonly("dr2", &SaturatedPopulations::dr2)
      .def_readonly("dr3", &SaturatedPopulations::dr3)
      .def_readonly("dr4", &SaturatedPopulations::dr4)
      .def_readonly("r_g", &SaturatedPopulations::r_g)
      .def_readonly("r_n", &SaturatedPopulations::r_n)
      .def_readonly("r_m", &SaturatedPopulations::r_m)
      .def_readonly("r_l", &SaturatedPopulations::r_l)
      .def_readonly("alpha1", &SaturatedPopulations::alpha1)
      .def_readonly("alpha3", &SaturatedPopulations::alpha3);

  py::enum_<ValidationMode>(m, "ValidationMode")
      .value("strict", ValidationMode::strict)
      .value("lenient", ValidationMode::lenient);

  py::enum_<ProbeChannel>(m, "ProbeChannel")
      .value("r2", ProbeChannel::r2)
      .value("r4", ProbeChannel::r4);

  m.def("validate",
        [](const RelaxationSpec& r, const FieldSpec& f, ValidationMode mode) {
          std::vector<std::pair<std::string, std::string>> out;
          for (const auto& i : validate(r, f, mode)) out.emplace_back(i.code, i.detail);
          return out;
        },
        py::arg("relax"), py::arg("fields"), py::arg("mode") = ValidationMode::strict);
  m.def("unsaturated_populations", &unsaturated_populations);
  m.def("saturated_populations", &saturated_populations);
  m.def("probe_r2", &probe_r2);
  m.def("probe_r4", &probe_r4);
  m.def("probe_response2", &probe_response2);
  m.def("probe_response4", &probe_response4);
  m.def("cascade_transform", &cascade_transform);

  py::class_<ComplexSpectrum>(m, "ComplexSpectrum")
      .def_readonly("grid", &ComplexSpectrum::grid)
      .def_readonly("response", &ComplexSpectrum::response)
      .def_readonly("absorption", &ComplexSpectrum::absorption)
      .def_readonly("refraction", &ComplexSpectrum::refraction);

  m.def("spectrum", &spectrum, py::arg("relax"), py::arg("fields"), py::arg("pops"),
        py::arg("grid"), py::arg("channel") = ProbeChannel::r2);
  m.def("linear_grid", &linear_grid);
  m.def("winged_grid", &winged_grid);

  py::class_<SumRuleResult>(m, "SumRuleResult")
      .def_readonly("integral", &SumRuleResult::integral)
      .def_readonly("expected", &SumRuleResult::expected)
      .def_readonly("rel_error", &SumRuleResult::rel_error);
  m.def("sum_rule", &sum_rule);

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("holds", &ConditionReport::holds)
      .def_readonly("margin", &ConditionReport::margin);
  m.def("awi_condition", &awi_condition);
  m.def("normalized_alpha4", &normalized_alpha4);
  m.def("raman_asymptote", &raman_asymptote);

  py::class_<DopplerConfig>(m, "DopplerConfig")
      .def(py::init<>())
      .def_readwrite("u", &DopplerConfig::u)
      .def_readwrite("order", &DopplerConfig::order)
      .def_readwrite("rtol", &DopplerConfig::rtol)
      .def_readwrite("max_order", &DopplerConfig::max_order);
  m.def("shifted_fields", &shifted_fields);
  m.def("velocity_average", &velocity_average);
  m.def("gauss_hermite", [](int n) {
    const auto rule = gauss_hermite(n);
    return std::make_pair(rule.nodes, rule.weights);
  });

  py::class_<MixingConfig>(m, "MixingConfig")
      .def(py::init<>())
      .def_readwrite("g2", &MixingConfig::g2)
      .def_readwrite("g3", &MixingConfig::g3)
      .def_readwrite("x1", &MixingConfig::x1)
      .def_readwrite("x02", &MixingConfig::x02)
      .def_readwrite("xs", &MixingConfig::xs)
      .def_readwrite("y1", &MixingConfig::y1)
      .def_readwrite("y02", &MixingConfig::y02)
      .def_readwrite("ys", &MixingConfig::ys)
      .def_readwrite("generated_mode", &MixingConfig::generated_mode)
      .def_readwrite("C1", &MixingConfig::C1)
      .def_readwrite("Cs", &MixingConfig::Cs);
  py::class_<MixingResult>(m, "MixingResult")
      .def_readonly("f1", &MixingResult::f1)
      .def_readonly("fs", &MixingResult::fs)
      .def_readonly("f", &MixingResult::f)
      .def_readonly("chi1_ratio", &MixingResult::chi1_ratio)
      .def_readonly("chis_ratio", &MixingResult::chis_ratio)
      .def_readonly("chiNL_ratio", &MixingResult::chiNL_ratio)
      .def_readonly("power_figure", &MixingResult::power_figure);
  m.def("dressing_factors", &dressing_factors);
  m.def("apply_local_field", &apply_local_field);
  m.def("resonance_enhancement", &resonance_enhancement);

  py::class_<ContinuumCoupling>(m, "ContinuumCoupling")
      .def(py::init<>())
      .def_readwrite("k1", &ContinuumCoupling::k1)
      .def_readwrite("k2", &ContinuumCoupling::k2)
      .def_readwrite("k3", &ContinuumCoupling::k3)
      .def_readwrite("k4", &ContinuumCoupling::k4)
      .def_readwrite("g_mn", &ContinuumCoupling::g_mn)
      .def_readwrite("g_ll", &ContinuumCoupling::g_ll)
      .def_readwrite("g_nn", &ContinuumCoupling::g_nn)
      .def_readwrite("q_gl", &ContinuumCoupling::q_gl)
      .def_readwrite("q_nl", &ContinuumCoupling::q_nl)
      .def_readwrite("q_ln", &ContinuumCoupling::q_ln)
      .def_readwrite("q_gn", &ContinuumCoupling::q_gn)
      .def_readwrite("q_ng", &ContinuumCoupling::q_ng)
      .def("beta_l", &ContinuumCoupling::beta_l)
      .def("beta_n", &ContinuumCoupling::beta_n);
  py::class_<LicsDetunings>(m, "LicsDetunings")
      .def(py::init<>())
      .def_readwrite("x_l", &LicsDetunings::x_l)
      .def_readwrite("x_n", &LicsDetunings::x_n)
      .def_readwrite("y_l", &LicsDetunings::y_l)
      .def_readwrite("y_n", &LicsDetunings::y_n)
      .def_readwrite("dgm", &LicsDetunings::dgm)
      .def_readwrite("pgm", &LicsDetunings::pgm);
  m.def("fano_q", &fano_q);
  m.def("chi3_ratio", &chi3_ratio);
  m.def("alpha1_ratio", &alpha1_ratio);
  m.def("alpha_mu_ratio", &alpha_mu_ratio);

  m.def("wigner6j", &wigner6j);
  py::class_<CascadeDoublet>(m, "CascadeDoublet")
      .def(py::init<>())
      .def_readwrite("A_mn", &CascadeDoublet::A_mn)
      .def_readwrite("A_m1n1", &CascadeDoublet::A_m1n1)
      .def_readwrite("A_m1m", &CascadeDoublet::A_m1m)
      .def_readwrite("A_n1n", &CascadeDoublet::A_n1n)
      .def_readwrite("J_m", &CascadeDoublet::J_m)
      .def_readwrite("J_n", &CascadeDoublet::J_n)
      .def_readwrite("J_m1", &CascadeDoublet::J_m1)
      .def_readwrite("J_n1", &CascadeDoublet::J_n1)
      .def_readwrite("Gamma", &CascadeDoublet::Gamma)
      .def_readwrite("Gamma1", &CascadeDoublet::Gamma1)
      .def_readwrite("Delta", &CascadeDoublet::Delta)
      .def_readwrite("rho_n", &CascadeDoublet::rho_n)
      .def_readwrite("rho_m", &CascadeDoublet::rho_m)
      .def_readwrite("rho_n1", &CascadeDoublet::rho_n1)
      .def_readwrite("rho_m1", &CascadeDoublet::rho_m1)
      .def_readwrite("lambda_", &CascadeDoublet::lambda)
      .def("N_nm", &CascadeDoublet::N_nm)
      .def("N_n1m1", &CascadeDoublet::N_n1m1);
  py::class_<InterferenceCoefficients>(m, "InterferenceCoefficients")
      .def_readonly("K", &InterferenceCoefficients::K)
      .def_readonly("C", &InterferenceCoefficients::C);
  m.def("interference_coefficients", &interference_coefficients);
  m.def("f_interference", &f_interference);
  m.def("cascade_alpha", &cascade_alpha);
  m.def("cascade_alpha_wing", &cascade_alpha_wing);
  m.def("geometric_prefactor", &geometric_prefactor);
  m.def("awi_wing_condition", &awi_wing_condition);
  m.def("awi_center_condition", &awi_center_condition);

  py::class_<FwmRates>(m, "FwmRates")
      .def(py::init<>())
      .def_readwrite("Gamma_ng", &FwmRates::Gamma_ng)
      .def_readwrite("Gamma_n1g", &FwmRates::Gamma_n1g)
      .def_readwrite("Gamma_nn1", &FwmRates::Gamma_nn1)
      .def_readwrite("Omega1", &FwmRates::Omega1)
      .def_readwrite("Omega2", &FwmRates::Omega2)
      .def_readwrite("Omega", &FwmRates::Omega);
  m.def("fwm_bracket", &fwm_bracket);
  m.def("fwm_coherence", &fwm_coherence);
  m.def("collision_resonance_amplitude", &collision_resonance_amplitude);

  // brute-force checks, exposed for cross-validation from python
  auto oracle = m.def_submodule("oracle", "independent brute-force verifiers");
  py::class_<nief::oracle::OraclePopulations>(oracle, "OraclePopulations")
      .def_readonly("r_g", &nief::oracle::OraclePopulations::r_g)
      .def_readonly("r_n", &nief::oracle::OraclePopulations::r_n)
      .def_readonly("r_m", &nief::oracle::OraclePopulations::r_m)
      .def_readonly("r_l", &nief::oracle::OraclePopulations::r_l)
      .def_readonly("dr1", &nief::oracle::OraclePopulations::dr1)
      .def_readonly("dr2", &nief::oracle::OraclePopulations::dr2)
      .def_readonly("dr3", &nief::oracle::OraclePopulations::dr3)
      .def_readonly("dr4", &nief::oracle::OraclePopulations::dr4);
  py::class_<nief::oracle::ProbeAmplitudes>(oracle, "ProbeAmplitudes")
      .def_readonly("r2", &nief::oracle::ProbeAmplitudes::r2)
      .def_readonly("r4", &nief::oracle::ProbeAmplitudes::r4)
      .def_readonly("rt2", &nief::oracle::ProbeAmplitudes::rt2)
      .def_readonly("rt4", &nief::oracle::ProbeAmplitudes::rt4)
      .def_readonly("residual", &nief::oracle::ProbeAmplitudes::residual)
      .def_readonly("cond_estimate", &nief::oracle::ProbeAmplitudes::cond_estimate);
  oracle.def("strong_field_populations_solve", &nief::oracle::strong_field_populations_solve);
  oracle.def("probe_response", &nief::oracle::probe_response);
  oracle.def("sixj_by_3j_contraction", &nief::oracle::sixj_by_3j_contraction);
  oracle.def("threej", &nief::oracle::threej);
  oracle.def("integrate_real_line",
             [](const std::function<double(double)>& f, double tol) {
               return nief::oracle::integrate_real_line(f, tol);
             });
}
