#include "nief/mixing.hpp"

#include <cmath>

namespace nief {

namespace {

cplx checked_inverse(cplx denom, const char* what) {
  if (std::abs(denom) < 1e-14) throw Error("DegenerateDenominator", what);
  return 1.0 / denom;
}

}  // namespace

MixingResult dressing_factors(const MixingConfig& cfg) {
  const cplx P01{1.0, cfg.x1}, P02{1.0, cfg.x02}, P03{1.0, cfg.xs};
  const cplx D01 = cfg.generated_mode ? P01 : cplx{1.0, cfg.y1};
  const cplx D02 = cfg.generated_mode ? P02 : cplx{1.0, cfg.y02};
  const cplx D03 = cfg.generated_mode ? P03 : cplx{1.0, cfg.ys};

  // continued-fraction chains: each strong field dresses its resonance
  // denominator with the next link
  const cplx b1 = cfg.g3 * checked_inverse(P02 * D03, "P02*D03");
  const cplx f1 =
      checked_inverse(1.0 + cfg.g2 * checked_inverse(P01 * P02 * (1.0 + b1), "f1 chain"),
                      "f1");
  const cplx bs = cfg.g2 * checked_inverse(D02 * D01, "D02*D01");
  const cplx fs =
      checked_inverse(1.0 + cfg.g3 * checked_inverse(P03 * D02 * (1.0 + bs), "fs chain"),
                      "fs");
  const cplx f = checked_inverse(
      1.0 + cfg.g2 * checked_inverse(P01 * P02, "P01*P02") +
          cfg.g3 * checked_inverse(D03 * P02, "D03*P02"),
      "f");

  MixingResult out;
  out.f1 = f1;
  out.fs = fs;
  out.f = f;
  out.chi1_ratio = f1 / P01;
  out.chis_ratio = fs / P03;
  out.chiNL_ratio = f * checked_inverse(P01 * P02 * D03, "P01*P02*D03");
  out.power_figure = cfg.g2 * cfg.g3 * std::norm(out.chiNL_ratio);
  return out;
}

MixingConfig apply_local_field(const MixingConfig& cfg) {
  MixingConfig out = cfg;
  out.x1 = cfg.x1 + cfg.C1;
  out.xs = cfg.xs + cfg.Cs;
  out.C1 = 0.0;
  out.Cs = 0.0;
  return out;
}

double resonance_enhancement(double x_off) {
  MixingConfig cfg;  // undressed, all other branches resonant
  const auto at = [&](double x1) {
    MixingConfig c = cfg;
    c.x1 = x1;
    return std::norm(dressing_factors(c).chiNL_ratio);
  };
  return at(0.0) / at(x_off);
}

}  // namespace nief
