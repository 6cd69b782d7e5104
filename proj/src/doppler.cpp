#include "nief/doppler.hpp"

#include <algorithm>
#include <cmath>

namespace nief {

FieldSpec shifted_fields(const FieldSpec& fields, double v) {
  FieldSpec out = fields;
  for (int i = 0; i < 4; ++i) out.detuning[i] = fields.detuning[i] - fields.k[i] * v;
  return out;
}

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Symmetric tridiagonal QL with implicit shifts, rotations accumulated on a
// single row vector (enough to recover quadrature weights).  diag is
// overwritten with the eigenvalues, z with the first eigenvector components.
void tql_weights(std::vector<double>& diag, std::vector<double>& off,
                 std::vector<double>& z) {
  const int n = static_cast<int>(diag.size());
  off.resize(n, 0.0);  // off[n-1] is workspace
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 64) throw Error("NonConvergent", "quadrature eigensolve stalled");
        double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
        double r = std::hypot(g, 1.0);
        g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        bool underflow = false;
        for (; i >= l; --i) {
          double fi = s * off[i];
          const double b = c * off[i];
          r = std::hypot(fi, g);
          off[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            off[m] = 0.0;
            underflow = true;
            break;
          }
          s = fi / r;
          c = g / r;
          g = diag[i + 1] - p;
          r = (diag[i] - g) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = g + p;
          g = c * r - b;
          const double zi = z[i], zi1 = z[i + 1];
          z[i + 1] = s * zi + c * zi1;
          z[i] = c * zi - s * zi1;
        }
        if (underflow && i >= l) continue;
        diag[l] -= p;
        off[l] = g;
        off[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw Error("NonConvergent", "quadrature order must be >= 1");
  std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0), z(n, 0.0);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * k);
  z[0] = 1.0;
  if (n > 1) {
    tql_weights(diag, off, z);
  }

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return diag[a] < diag[b]; });
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = diag[idx[i]];
    rule.weights[i] = kSqrtPi * z[idx[i]] * z[idx[i]];
  }
  return rule;
}

cplx velocity_average(const std::function<cplx(double)>& evaluator, const DopplerConfig& cfg) {
  if (cfg.u <= 0.0) return evaluator(0.0);
  if (cfg.order < 2 || cfg.order % 2 != 0) {
    throw Error("NonConvergent", "Gauss-Hermite order must be an even integer >= 2");
  }

  const auto average_at = [&](int order) {
    const auto rule = gauss_hermite(order);
    cplx acc{};
    for (int i = 0; i < order; ++i) {
      acc += rule.weights[i] * evaluator(cfg.u * rule.nodes[i]);
    }
    return acc / kSqrtPi;  // weight function normalized to 1
  };

  cplx prev = average_at(cfg.order);
  for (int order = 2 * cfg.order; order <= cfg.max_order; order *= 2) {
    const cplx next = average_at(order);
    const double change = std::abs(next - prev);
    if (change <= cfg.rtol * std::max(std::abs(next), 1e-300)) return next;
    prev = next;
  }
  throw Error("NonConvergent",
              "velocity average did not settle within rtol by max_order");
}

}  // namespace nief
