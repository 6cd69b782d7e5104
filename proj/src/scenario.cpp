#include "nief/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <json.hpp>

#include "selftest.hpp"

#include "nief/dressed.hpp"
#include "nief/doppler.hpp"
#include "nief/lics.hpp"
#include "nief/mixing.hpp"
#include "nief/model.hpp"
#include "nief/oracle.hpp"
#include "nief/relaxation_induced.hpp"
#include "nief/spectra.hpp"

namespace nief::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// config or input problems -> exit 2 (distinct from numerical Error -> 3)
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::vector<std::string> columns, int precision)
      : out_(path, std::ios::binary), precision_(precision) {
    if (!out_) throw ConfigError("cannot open CSV output " + path.string());
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out_ << ',';
      out_ << columns[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << fmt(values[i], precision_);
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
  int precision_;
};

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError("missing or non-numeric field: " + key);
  }
  return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError("non-numeric field: " + key);
  return j.at(key).get<double>();
}

RelaxationSpec parse_relaxation(const json& cfg) {
  if (!cfg.contains("relaxation")) throw ConfigError("missing relaxation block");
  const json& r = cfg.at("relaxation");
  const json& total = r.at("Gamma");
  const json branch = r.value("branch", json::object());
  const json& coh = r.at("coherence");
  RelaxationSpec out;
  out.Gamma_g = require_number(total, "g");
  out.Gamma_n = require_number(total, "n");
  out.Gamma_m = require_number(total, "m");
  out.Gamma_l = require_number(total, "l");
  out.gamma_gn = number_or(branch, "gn", 0.0);
  out.gamma_gl = number_or(branch, "gl", 0.0);
  out.gamma_mn = number_or(branch, "mn", 0.0);
  out.gamma_ml = number_or(branch, "ml", 0.0);
  out.Gamma_lg = require_number(coh, "lg");
  out.Gamma_ng = require_number(coh, "ng");
  out.Gamma_nm = require_number(coh, "nm");
  out.Gamma_lm = require_number(coh, "lm");
  out.Gamma_ln = require_number(coh, "ln");
  out.Gamma_gm = require_number(coh, "gm");
  const json pumps = cfg.value("pumps", json::object());
  out.q_g = number_or(pumps, "g", 0.0);
  out.q_n = number_or(pumps, "n", 0.0);
  out.q_m = number_or(pumps, "m", 0.0);
  out.q_l = number_or(pumps, "l", 0.0);
  return out;
}

FieldSpec parse_fields(const json& cfg) {
  if (!cfg.contains("fields")) throw ConfigError("missing fields block");
  const json& f = cfg.at("fields");
  FieldSpec out;
  const json& det = f.at("detuning");
  const json& rabi = f.at("rabi");
  if (!det.is_array() || det.size() != 4 || !rabi.is_array() || rabi.size() != 4) {
    throw ConfigError("fields.detuning and fields.rabi must be arrays of length 4");
  }
  for (int i = 0; i < 4; ++i) {
    out.detuning[i] = det.at(i).get<double>();
    const json& g = rabi.at(i);
    if (g.is_number()) {
      out.rabi[i] = cplx{g.get<double>(), 0.0};
    } else if (g.is_array() && g.size() == 2) {
      out.rabi[i] = cplx{g.at(0).get<double>(), g.at(1).get<double>()};
    } else {
      throw ConfigError("fields.rabi entries must be numbers or [re, im] pairs");
    }
  }
  if (f.contains("k")) {
    const json& k = f.at("k");
    if (!k.is_array() || k.size() != 4) throw ConfigError("fields.k must have length 4");
    for (int i = 0; i < 4; ++i) out.k[i] = k.at(i).get<double>();
  }
  return out;
}

std::vector<double> parse_grid(const json& cfg) {
  if (!cfg.contains("grid")) throw ConfigError("missing grid block");
  const json& g = cfg.at("grid");
  if (g.contains("core_halfwidth")) {
    return winged_grid(require_number(g, "core_halfwidth"), require_number(g, "width"),
                       static_cast<int>(require_number(g, "core_points")),
                       static_cast<int>(require_number(g, "wing_points")));
  }
  const int points = static_cast<int>(require_number(g, "points"));
  if (points < 2) throw ConfigError("grid.points must be >= 2");
  return linear_grid(require_number(g, "min"), require_number(g, "max"), points);
}

int thread_count(const RunOptions& opt) {
  if (opt.threads > 0) return opt.threads;
  if (const char* env = std::getenv("NIEF_SPECTRA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

template <typename Fn>
void parallel_index(int n, int threads, Fn&& body) {
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// probe task

struct ProbeSetup {
  RelaxationSpec relax;
  FieldSpec fields;       // after the scheme's detuning map
  Populations pops;
  ProbeChannel channel{ProbeChannel::r2};
  std::vector<double> grid;
  bool doppler{false};
  DopplerConfig doppler_cfg;
};

ProbeSetup parse_probe(const json& cfg) {
  ProbeSetup s;
  s.relax = parse_relaxation(cfg);

  DrivenSystem sys;
  sys.relax = s.relax;
  sys.fields = parse_fields(cfg);
  const std::string scheme = cfg.value("scheme", "fig1-double");
  if (scheme == "fig1-double") {
    sys.scheme = SchemeKind::fig1_double;
  } else if (scheme == "cascade") {
    sys.scheme = SchemeKind::cascade;
  } else {
    throw ConfigError("unknown scheme: " + scheme);
  }
  s.fields = effective_fields(sys);

  const std::string mode = cfg.value("validation", "strict");
  const auto issues = validate(s.relax, s.fields, mode == "lenient"
                                                      ? ValidationMode::lenient
                                                      : ValidationMode::strict);
  if (!issues.empty()) {
    std::string msg = "invalid system:";
    for (const auto& i : issues) msg += " " + i.code + " (" + i.detail + ");";
    throw ConfigError(msg);
  }

  s.pops = unsaturated_populations(s.relax);
  const std::string chan = cfg.value("probe", "r2");
  if (chan == "r2") {
    s.channel = ProbeChannel::r2;
  } else if (chan == "r4") {
    s.channel = ProbeChannel::r4;
  } else {
    throw ConfigError("probe must be r2 or r4");
  }
  s.grid = parse_grid(cfg);
  if (cfg.contains("doppler")) {
    const json& d = cfg.at("doppler");
    s.doppler = true;
    s.doppler_cfg.u = require_number(d, "u");
    s.doppler_cfg.order = static_cast<int>(number_or(d, "order", 64));
    s.doppler_cfg.rtol = number_or(d, "rtol", 1e-8);
    s.doppler_cfg.max_order = static_cast<int>(number_or(d, "max_order", 512));
  }
  return s;
}

ComplexSpectrum compute_probe_spectrum(const ProbeSetup& s, int threads) {
  ComplexSpectrum spec;
  spec.grid = s.grid;
  const int n = static_cast<int>(s.grid.size());
  spec.response.resize(n);
  spec.absorption.resize(n);
  spec.refraction.resize(n);

  const int probe_index = s.channel == ProbeChannel::r2 ? 1 : 3;
  if (!s.doppler) {
    const SaturatedPopulations sat = saturated_populations(s.relax, s.fields, s.pops);
    parallel_index(n, threads, [&](int i) {
      FieldSpec f = s.fields;
      f.detuning[probe_index] = s.grid[i];
      spec.response[i] = s.channel == ProbeChannel::r2 ? probe_response2(s.relax, f, sat)
                                                       : probe_response4(s.relax, f, sat);
    });
  } else {
    // the saturation follows the atom, so it is recomputed per velocity node
    parallel_index(n, threads, [&](int i) {
      FieldSpec f = s.fields;
      f.detuning[probe_index] = s.grid[i];
      spec.response[i] = velocity_average(
          [&](double v) {
            const FieldSpec fv = shifted_fields(f, v);
            const SaturatedPopulations sat = saturated_populations(s.relax, fv, s.pops);
            return s.channel == ProbeChannel::r2 ? probe_response2(s.relax, fv, sat)
                                                 : probe_response4(s.relax, fv, sat);
          },
          s.doppler_cfg);
    });
  }
  for (int i = 0; i < n; ++i) {
    spec.absorption[i] = spec.response[i].real();
    spec.refraction[i] = spec.response[i].imag();
  }
  return spec;
}

json windows_to_json(const WindowReport& report, int precision) {
  json arr = json::array();
  for (const auto& w : report.intervals) {
    arr.push_back({{"lo", fmt(w.lo, precision)},
                   {"hi", fmt(w.hi, precision)},
                   {"kind", to_string(w.kind)},
                   {"class", to_string(w.classification)},
                   {"depth", fmt(w.depth, precision)}});
  }
  return arr;
}

json run_probe(const ProbeSetup& s, const RunOptions& opt, CsvWriter& csv, int precision) {
  const ComplexSpectrum spec = compute_probe_spectrum(s, thread_count(opt));
  for (size_t i = 0; i < spec.grid.size(); ++i) {
    csv.row({spec.grid[i], spec.absorption[i], spec.refraction[i]});
  }

  const SaturatedPopulations sat = saturated_populations(s.relax, s.fields, s.pops);
  json summary;
  summary["windows"] = windows_to_json(
      detect_windows(spec, s.relax, sat, s.channel), precision);
  {
    const auto awi = awi_condition(s.relax, s.fields, sat);
    summary["awi_condition"] = {{"holds", awi.holds}, {"margin", fmt(awi.margin, precision)}};
  }
  summary["populations"] = {
      {"r_g", fmt(sat.r_g, precision)}, {"r_n", fmt(sat.r_n, precision)},
      {"r_m", fmt(sat.r_m, precision)}, {"r_l", fmt(sat.r_l, precision)},
      {"dr", {fmt(sat.dr1, precision), fmt(sat.dr2, precision), fmt(sat.dr3, precision),
              fmt(sat.dr4, precision)}}};
  try {
    const double scale =
        std::max({s.relax.Gamma_lg, s.relax.Gamma_ng, s.relax.Gamma_nm, s.relax.Gamma_lm,
                  s.relax.Gamma_ln, s.relax.Gamma_gm});
    const double expected = s.channel == ProbeChannel::r2 ? sat.dr2 : sat.dr4;
    const auto sr = sum_rule(spec, expected, scale);
    summary["sum_rule"] = {{"integral", fmt(sr.integral, precision)},
                           {"expected", fmt(sr.expected, precision)},
                           {"rel_error", fmt(sr.rel_error, precision)}};
  } catch (const Error& e) {
    summary["sum_rule"] = {{"skipped", e.code()}};
  }
  return summary;
}

// ---------------------------------------------------------------------------
// mixing task

MixingConfig parse_mixing(const json& cfg) {
  if (!cfg.contains("mixing")) throw ConfigError("missing mixing block");
  const json& m = cfg.at("mixing");
  MixingConfig out;
  out.g2 = number_or(m, "g2", 0.0);
  out.g3 = number_or(m, "g3", 0.0);
  out.x1 = number_or(m, "x1", 0.0);
  out.x02 = number_or(m, "x02", 0.0);
  out.xs = number_or(m, "xs", 0.0);
  out.y1 = number_or(m, "y1", 0.0);
  out.y02 = number_or(m, "y02", 0.0);
  out.ys = number_or(m, "ys", 0.0);
  out.generated_mode = m.value("generated", false);
  out.C1 = number_or(m, "C1", 0.0);
  out.Cs = number_or(m, "Cs", 0.0);
  if (out.g2 < 0 || out.g3 < 0) throw ConfigError("mixing g2, g3 must be >= 0");
  if (m.value("apply_local_field", false)) out = apply_local_field(out);
  return out;
}

json mixing_point_json(const MixingResult& res, int precision) {
  const auto c = [&](cplx z) {
    return json::array({fmt(z.real(), precision), fmt(z.imag(), precision)});
  };
  return {{"f1", c(res.f1)},
          {"fs", c(res.fs)},
          {"f", c(res.f)},
          {"chi1_ratio", c(res.chi1_ratio)},
          {"chis_ratio", c(res.chis_ratio)},
          {"chiNL_ratio", c(res.chiNL_ratio)},
          {"power_figure", fmt(res.power_figure, precision)}};
}

struct MixingSetup {
  MixingConfig base;
  std::vector<double> grid;
  std::string variable;
};

MixingSetup parse_mixing_task(const json& cfg) {
  MixingSetup s;
  s.base = parse_mixing(cfg);
  s.grid = parse_grid(cfg);
  s.variable = cfg.at("mixing").value("scan", "x1");
  static const char* known[] = {"x1", "x02", "xs", "y1", "y02", "ys"};
  if (std::find_if(std::begin(known), std::end(known),
                   [&](const char* k) { return s.variable == k; }) == std::end(known)) {
    throw ConfigError("mixing.scan must name a detuning");
  }
  return s;
}

json run_mixing(const MixingSetup& s, CsvWriter& csv, int precision) {
  const MixingConfig& base = s.base;
  const std::string& variable = s.variable;
  for (double x : s.grid) {
    MixingConfig c = base;
    if (variable == "x1") c.x1 = x;
    else if (variable == "x02") c.x02 = x;
    else if (variable == "xs") c.xs = x;
    else if (variable == "y1") c.y1 = x;
    else if (variable == "y02") c.y02 = x;
    else c.ys = x;
    const MixingResult r = dressing_factors(c);
    csv.row({x, r.f1.real(), r.f1.imag(), r.fs.real(), r.fs.imag(), r.f.real(),
             r.f.imag(), r.chiNL_ratio.real(), r.chiNL_ratio.imag(), r.power_figure});
  }
  json summary = mixing_point_json(dressing_factors(base), precision);
  summary["scan"] = variable;
  return summary;
}

// ---------------------------------------------------------------------------
// lics task

void parse_lics(const json& cfg, ContinuumCoupling& c, LicsDetunings& d) {
  if (!cfg.contains("lics")) throw ConfigError("missing lics block");
  const json& l = cfg.at("lics");
  c.k1 = number_or(l, "k1", 0.0);
  c.k2 = number_or(l, "k2", 0.0);
  c.k3 = number_or(l, "k3", 0.0);
  c.k4 = number_or(l, "k4", 0.0);
  for (double k : {c.k1, c.k2, c.k3, c.k4}) {
    if (k < 0.0 || k > 1.0) throw ConfigError("lics degeneracy factors must lie in [0,1]");
  }
  c.g_mn = number_or(l, "g_mn", 0.0);
  c.g_ll = number_or(l, "g_ll", 0.0);
  c.g_nn = number_or(l, "g_nn", 0.0);
  if (c.g_mn < 0 || c.g_ll < 0 || c.g_nn < 0) {
    throw ConfigError("lics saturation ratios must be >= 0");
  }
  c.q_gl = number_or(l, "q_gl", 0.0);
  c.q_nl = number_or(l, "q_nl", 0.0);
  c.q_ln = number_or(l, "q_ln", 0.0);
  c.q_gn = number_or(l, "q_gn", 0.0);
  c.q_ng = number_or(l, "q_ng", 0.0);
  d.x_l = number_or(l, "x_l", 0.0);
  d.x_n = number_or(l, "x_n", 0.0);
  d.y_l = number_or(l, "y_l", 0.0);
  d.y_n = number_or(l, "y_n", 0.0);
  d.dgm = number_or(l, "dgm", 0.0);
  d.pgm = number_or(l, "pgm", 0.0);
}

struct LicsSetup {
  ContinuumCoupling coupling;
  LicsDetunings base;
  std::vector<double> grid;
  std::string variable;
};

LicsSetup parse_lics_task(const json& cfg) {
  LicsSetup s;
  parse_lics(cfg, s.coupling, s.base);
  s.grid = parse_grid(cfg);
  s.variable = cfg.at("lics").value("scan", "y_l");
  static const char* known[] = {"x_l", "x_n", "y_l", "y_n", "dgm", "pgm"};
  if (std::find_if(std::begin(known), std::end(known),
                   [&](const char* k) { return s.variable == k; }) == std::end(known)) {
    throw ConfigError("lics.scan must name a detuning");
  }
  return s;
}

json run_lics(const LicsSetup& s, CsvWriter& csv, int precision) {
  const ContinuumCoupling& c = s.coupling;
  const LicsDetunings& base = s.base;
  const std::string& variable = s.variable;
  for (double x : s.grid) {
    LicsDetunings d = base;
    if (variable == "x_l") d.x_l = x;
    else if (variable == "x_n") d.x_n = x;
    else if (variable == "y_l") d.y_l = x;
    else if (variable == "y_n") d.y_n = x;
    else if (variable == "dgm") d.dgm = x;
    else d.pgm = x;
    const cplx chi3 = chi3_ratio(c, d);
    csv.row({x, chi3.real(), chi3.imag(), alpha1_ratio(c, d), alpha_mu_ratio(c, d)});
  }
  const cplx chi3 = chi3_ratio(c, base);
  json summary = {{"chi3_ratio",
                   json::array({fmt(chi3.real(), precision), fmt(chi3.imag(), precision)})},
                  {"alpha1_ratio", fmt(alpha1_ratio(c, base), precision)},
                  {"alpha_mu_ratio", fmt(alpha_mu_ratio(c, base), precision)},
                  {"scan", variable}};
  return summary;
}

// ---------------------------------------------------------------------------
// cascade-doublet task

CascadeDoublet parse_doublet(const json& cfg) {
  if (!cfg.contains("cascade_doublet")) throw ConfigError("missing cascade_doublet block");
  const json& c = cfg.at("cascade_doublet");
  CascadeDoublet d;
  const json& A = c.at("A");
  d.A_mn = require_number(A, "mn");
  d.A_m1n1 = require_number(A, "m1n1");
  d.A_m1m = require_number(A, "m1m");
  d.A_n1n = require_number(A, "n1n");
  const json& J = c.at("J");
  d.J_m = require_number(J, "m");
  d.J_n = require_number(J, "n");
  d.J_m1 = require_number(J, "m1");
  d.J_n1 = require_number(J, "n1");
  d.Gamma = require_number(c, "Gamma");
  d.Gamma1 = require_number(c, "Gamma1");
  d.Delta = number_or(c, "Delta", 0.0);
  const json& rho = c.at("rho");
  d.rho_n = require_number(rho, "n");
  d.rho_m = require_number(rho, "m");
  d.rho_n1 = require_number(rho, "n1");
  d.rho_m1 = require_number(rho, "m1");
  d.lambda = number_or(c, "lambda", 1.0);
  if (!(d.Gamma > 0) || !(d.Gamma1 > 0)) throw ConfigError("halfwidths must be positive");
  return d;
}

json run_cascade(const CascadeDoublet& d, const std::vector<double>& grid, CsvWriter& csv,
                 int precision) {
  for (double omega : grid) {
    csv.row({omega, cascade_alpha(d, omega),
             f_interference(omega, d.Gamma, d.Gamma1, d.Delta)});
  }
  const auto [K, C] = interference_coefficients(d);
  const auto wing = awi_wing_condition(d);
  const auto center = awi_center_condition(d);
  return {{"K", fmt(K, precision)},
          {"C", fmt(C, precision)},
          {"prefactor", fmt(geometric_prefactor(d.lambda), precision)},
          {"wing_condition", {{"holds", wing.holds}, {"margin", fmt(wing.margin, precision)}}},
          {"center_condition",
           {{"holds", center.holds}, {"margin", fmt(center.margin, precision)}}}};
}

// ---------------------------------------------------------------------------
// fwm task

FwmRates parse_fwm(const json& cfg) {
  if (!cfg.contains("fwm")) throw ConfigError("missing fwm block");
  const json& f = cfg.at("fwm");
  FwmRates r;
  r.Gamma_ng = require_number(f, "Gamma_ng");
  r.Gamma_n1g = require_number(f, "Gamma_n1g");
  r.Gamma_nn1 = require_number(f, "Gamma_nn1");
  r.Omega1 = number_or(f, "Omega1", 0.0);
  r.Omega2 = number_or(f, "Omega2", 0.0);
  if (!(r.Gamma_ng > 0) || !(r.Gamma_n1g > 0) || !(r.Gamma_nn1 > 0)) {
    throw ConfigError("fwm halfwidths must be positive");
  }
  return r;
}

json run_fwm(FwmRates r, const std::vector<double>& grid, CsvWriter& csv, int precision) {
  for (double omega : grid) {
    r.Omega = omega;
    const cplx b = fwm_bracket(r);
    const cplx coh = fwm_coherence(r);
    csv.row({omega, b.real(), b.imag(), coh.real(), coh.imag()});
  }
  return {{"resonance_amplitude", fmt(collision_resonance_amplitude(r), precision)}};
}

// ---------------------------------------------------------------------------
// sweep task

struct SweepSetup {
  std::string pointer;
  std::string base_task;
  std::vector<json> varied;  // fully validated configs, one per sweep value
  std::vector<double> values;
};

SweepSetup parse_sweep(const json& cfg) {
  if (!cfg.contains("sweep")) throw ConfigError("missing sweep block");
  const json& sw = cfg.at("sweep");
  if (!sw.contains("parameter") || !sw.contains("values")) {
    throw ConfigError("sweep needs parameter and values");
  }
  SweepSetup out;
  out.pointer = sw.at("parameter").get<std::string>();
  const json& values = sw.at("values");
  if (!values.is_array() || values.empty()) throw ConfigError("sweep.values must be nonempty");
  out.base_task = sw.value("task", "probe");
  if (out.base_task != "probe" && out.base_task != "mixing") {
    throw ConfigError("sweep.task must be probe or mixing");
  }

  json::json_pointer ptr;
  try {
    ptr = json::json_pointer(out.pointer);
  } catch (const json::exception&) {
    throw ConfigError("sweep.parameter is not a valid JSON pointer");
  }
  if (!cfg.contains(ptr) || !cfg.at(ptr).is_number()) {
    throw ConfigError("sweep.parameter must name an existing scalar field");
  }
  for (const auto& v : values) {
    if (!v.is_number()) throw ConfigError("sweep.values must be numeric");
    json varied = cfg;
    varied[ptr] = v;
    if (out.base_task == "probe") {
      parse_probe(varied);
    } else {
      parse_mixing_task(varied);
    }
    out.varied.push_back(std::move(varied));
    out.values.push_back(v.get<double>());
  }
  return out;
}

json run_sweep(const SweepSetup& sweep, const RunOptions& opt, CsvWriter& csv,
               int precision) {
  json rows = json::array();
  for (size_t iv = 0; iv < sweep.varied.size(); ++iv) {
    const json& varied = sweep.varied[iv];
    const double v = sweep.values[iv];
    json row;
    row["value"] = v;
    if (sweep.base_task == "probe") {
      const ProbeSetup s = parse_probe(varied);
      const ComplexSpectrum spec = compute_probe_spectrum(s, thread_count(opt));
      const SaturatedPopulations sat = saturated_populations(s.relax, s.fields, s.pops);
      const auto report = detect_windows(spec, s.relax, sat, s.channel);
      double deepest = 0.0;
      for (const auto& w : report.intervals) {
        if (w.kind == WindowKind::gain) deepest = std::max(deepest, w.depth);
      }
      double residual = std::nan("");
      try {
        const double scale = std::max({s.relax.Gamma_lg, s.relax.Gamma_ng, s.relax.Gamma_nm,
                                       s.relax.Gamma_lm, s.relax.Gamma_ln, s.relax.Gamma_gm});
        const double expected = s.channel == ProbeChannel::r2 ? sat.dr2 : sat.dr4;
        residual = sum_rule(spec, expected, scale).rel_error;
      } catch (const Error&) {
      }
      csv.row({v, static_cast<double>(report.intervals.size()), deepest, residual});
      row["windows"] = report.intervals.size();
      row["deepest_gain"] = fmt(deepest, precision);
    } else {
      const MixingResult r = dressing_factors(parse_mixing(varied));
      csv.row({v, r.power_figure});
      row["power_figure"] = fmt(r.power_figure, precision);
    }
    rows.push_back(row);
  }
  return {{"parameter", sweep.pointer}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// selftest task

json run_selftest(const RunOptions& opt) {
  json results = json::array();
  bool all = true;
  for (const auto& c : run_selftest_battery(opt.seed)) {
    results.push_back({{"name", c.name}, {"pass", c.pass}, {"metric", fmt(c.metric, 17)}});
    all = all && c.pass;
  }
  return {{"results", results}, {"all_pass", all}};
}

}  // namespace

int run(const std::string& config_path, const RunOptions& opt) {
  const fs::path out_dir(opt.out_dir.empty() ? "." : opt.out_dir);
  std::string csv_name = "spectrum.csv";
  std::string json_name = "summary.json";
  int precision = 17;

  const auto emit_error = [&](int code, const std::string& name, const std::string& message) {
    json record = {{"schema", 1},
                   {"error", {{"code", name}, {"message", message}}},
                   {"exit_code", code}};
    std::fprintf(stderr, "%s\n", record.dump().c_str());
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream out(out_dir / "error.json", std::ios::binary);
    if (out) out << record.dump(2) << '\n';
    return code;
  };

  json cfg;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) return emit_error(2, "ConfigUnreadable", "cannot open " + config_path);
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    return emit_error(2, "MalformedJson", e.what());
  }

  try {
    if (!cfg.is_object() || !cfg.contains("task")) {
      throw ConfigError("config must be an object with a task field");
    }
    const std::string task = cfg.at("task").get<std::string>();
    const json output = cfg.value("output", json::object());
    csv_name = output.value("csv", csv_name);
    json_name = output.value("json", json_name);
    precision = static_cast<int>(number_or(output, "precision", 17));
    if (precision < 1 || precision > 17) throw ConfigError("output.precision out of range");

    std::error_code ec;
    fs::create_directories(out_dir, ec);

    json summary;
    summary["schema"] = 1;
    summary["task"] = task;

    const fs::path csv_path = out_dir / csv_name;
    if (task == "selftest") {
      summary.update(run_selftest(opt));
    } else if (task == "probe") {
      const ProbeSetup s = parse_probe(cfg);
      CsvWriter csv(csv_path, {"omega", "absorption", "refraction"}, precision);
      summary.update(run_probe(s, opt, csv, precision));
    } else if (task == "mixing") {
      const MixingSetup s = parse_mixing_task(cfg);
      CsvWriter csv(csv_path,
                    {"x", "f1_re", "f1_im", "fs_re", "fs_im", "f_re", "f_im",
                     "chiNL_re", "chiNL_im", "power_figure"},
                    precision);
      summary.update(run_mixing(s, csv, precision));
    } else if (task == "lics") {
      const LicsSetup s = parse_lics_task(cfg);
      CsvWriter csv(csv_path, {"x", "chi3_re", "chi3_im", "alpha1_ratio", "alpha_mu_ratio"},
                    precision);
      summary.update(run_lics(s, csv, precision));
    } else if (task == "cascade") {
      const CascadeDoublet d = parse_doublet(cfg);
      const auto grid = parse_grid(cfg);
      interference_coefficients(d);  // momenta validated before any output
      CsvWriter csv(csv_path, {"omega", "alpha", "f_interference"}, precision);
      summary.update(run_cascade(d, grid, csv, precision));
    } else if (task == "fwm") {
      const FwmRates r = parse_fwm(cfg);
      const auto grid = parse_grid(cfg);
      CsvWriter csv(csv_path,
                    {"omega", "bracket_re", "bracket_im", "coherence_re", "coherence_im"},
                    precision);
      summary.update(run_fwm(r, grid, csv, precision));
    } else if (task == "sweep") {
      const SweepSetup s = parse_sweep(cfg);
      CsvWriter csv(csv_path,
                    s.base_task == "probe"
                        ? std::vector<std::string>{"value", "window_count", "deepest_gain",
                                                   "sum_rule_residual"}
                        : std::vector<std::string>{"value", "power_figure"},
                    precision);
      summary.update(run_sweep(s, opt, csv, precision));
    } else {
      throw ConfigError("unknown task: " + task);
    }

    std::ofstream out(out_dir / json_name, std::ios::binary);
    if (!out) throw ConfigError("cannot open JSON output");
    out << summary.dump(2) << '\n';

    if (cfg.at("task").get<std::string>() == "selftest" && !summary.at("all_pass").get<bool>()) {
      return 3;
    }
    return 0;
  } catch (const ConfigError& e) {
    return emit_error(2, "ConfigError", e.what());
  } catch (const json::exception& e) {
    return emit_error(2, "ConfigError", e.what());
  } catch (const Error& e) {
    return emit_error(3, e.code(), e.what());
  } catch (const std::exception& e) {
    return emit_error(3, "Internal", e.what());
  }
}

}  // namespace nief::cli
