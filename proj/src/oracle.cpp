#include "nief/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace nief::oracle {

namespace {

// ---------------------------------------------------------------------------
// dense LU with partial pivoting (N <= 16 here, no sparse machinery needed)

struct Lu {
  int n;
  std::vector<cplx> a;      // packed LU factors
  std::vector<int> pivot;
};

bool factor(const LinearSystem& sys, Lu& lu) {
  const int n = sys.n;
  lu.n = n;
  lu.a = sys.a;
  lu.pivot.assign(n, 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double big = std::abs(lu.a[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double mag = std::abs(lu.a[i * n + k]);
      if (mag > big) { big = mag; p = i; }
    }
    if (big == 0.0) return false;
    lu.pivot[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu.a[k * n + j], lu.a[p * n + j]);
    }
    const cplx d = lu.a[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const cplx m = lu.a[i * n + k] / d;
      lu.a[i * n + k] = m;
      for (int j = k + 1; j < n; ++j) lu.a[i * n + j] -= m * lu.a[k * n + j];
    }
  }
  return true;
}

std::vector<cplx> back_substitute(const Lu& lu, std::vector<cplx> b) {
  const int n = lu.n;
  for (int k = 0; k < n; ++k) {
    std::swap(b[k], b[lu.pivot[k]]);
    for (int i = k + 1; i < n; ++i) b[i] -= lu.a[i * n + k] * b[k];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= lu.a[i * n + j] * b[j];
    b[i] /= lu.a[i * n + i];
  }
  return b;
}

double one_norm(const LinearSystem& sys) {
  double best = 0.0;
  for (int j = 0; j < sys.n; ++j) {
    double col = 0.0;
    for (int i = 0; i < sys.n; ++i) col += std::abs(sys.at(i, j));
    best = std::max(best, col);
  }
  return best;
}

// ||A^-1||_1 exactly by solving for every canonical vector; fine at this size
double inverse_one_norm(const LinearSystem& sys, const Lu& lu) {
  double best = 0.0;
  for (int j = 0; j < sys.n; ++j) {
    std::vector<cplx> e(sys.n, cplx{});
    e[j] = 1.0;
    const auto col = back_substitute(lu, std::move(e));
    double sum = 0.0;
    for (const auto& v : col) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

SolveResult solve(const LinearSystem& sys) {
  Lu lu;
  if (!factor(sys, lu)) throw Error("IllConditioned", "singular matrix in direct solve");
  SolveResult out;
  out.x = back_substitute(lu, sys.rhs);
  out.cond_estimate = one_norm(sys) * inverse_one_norm(sys, lu);
  if (!(out.cond_estimate < 1e12)) {
    throw Error("IllConditioned", "condition estimate " + std::to_string(out.cond_estimate));
  }
  double rnorm = 0.0, bnorm = 0.0;
  for (int i = 0; i < sys.n; ++i) {
    cplx ax{};
    for (int j = 0; j < sys.n; ++j) ax += sys.at(i, j) * out.x[j];
    rnorm += std::norm(ax - sys.rhs[i]);
    bnorm += std::norm(sys.rhs[i]);
  }
  out.residual = bnorm > 0.0 ? std::sqrt(rnorm / bnorm) : std::sqrt(rnorm);
  return out;
}

OraclePopulations strong_field_populations_solve(const RelaxationSpec& r,
                                                 const FieldSpec& f,
                                                 const Populations& pops) {
  // Steady-state rate equations with the strong-field coherences eliminated:
  // the net stimulated rate on transition 1 (l->g) is kappa1*(r_l - r_g) with
  // kappa1 = 2|G_1|^2 Gamma_lg / |P_1|^2, and likewise kappa3 on 3 (n->m).
  const double O1 = f.detuning[0], O3 = f.detuning[2];
  const double p1sq = r.Gamma_lg * r.Gamma_lg + O1 * O1;
  const double p3sq = r.Gamma_nm * r.Gamma_nm + O3 * O3;
  const double k1 = 2.0 * std::norm(f.rabi[0]) * r.Gamma_lg / p1sq;
  const double k3 = 2.0 * std::norm(f.rabi[2]) * r.Gamma_nm / p3sq;

  // unknowns [r_g, r_n, r_m, r_l]; embed the real 4x4 in the complex solver
  LinearSystem sys;
  sys.n = 4;
  sys.a.assign(16, cplx{});
  sys.rhs = {r.q_g, r.q_n, r.q_m, r.q_l};
  sys.labels = {"r_g", "r_n", "r_m", "r_l"};
  // Gamma_g r_g - k1 (r_l - r_g) = q_g
  sys.at(0, 0) = r.Gamma_g + k1;
  sys.at(0, 3) = -k1;
  // Gamma_n r_n + k3 (r_n - r_m) - gamma_gn r_g - gamma_mn r_m = q_n
  sys.at(1, 0) = -r.gamma_gn;
  sys.at(1, 1) = r.Gamma_n + k3;
  sys.at(1, 2) = -k3 - r.gamma_mn;
  // Gamma_m r_m - k3 (r_n - r_m) = q_m
  sys.at(2, 1) = -k3;
  sys.at(2, 2) = r.Gamma_m + k3;
  // Gamma_l r_l + k1 (r_l - r_g) - gamma_gl r_g - gamma_ml r_m = q_l
  sys.at(3, 0) = -r.gamma_gl - k1;
  sys.at(3, 2) = -r.gamma_ml;
  sys.at(3, 3) = r.Gamma_l + k1;

  const auto sol = solve(sys);
  OraclePopulations out;
  out.r_g = sol.x[0].real();
  out.r_n = sol.x[1].real();
  out.r_m = sol.x[2].real();
  out.r_l = sol.x[3].real();
  out.dr1 = out.r_l - out.r_g;
  out.dr2 = out.r_n - out.r_g;
  out.dr3 = out.r_n - out.r_m;
  out.dr4 = out.r_l - out.r_m;
  (void)pops;  // zero-field balances are the k->0 limit of the same solve
  return out;
}

LinearSystem assemble_probe_system(const RelaxationSpec& r, const FieldSpec& f,
                                   const OraclePopulations& sat) {
  const double O1 = f.detuning[0], O2 = f.detuning[1];
  const double O3 = f.detuning[2], O4 = f.detuning[3];
  const cplx P1{r.Gamma_lg, O1}, P2{r.Gamma_ng, O2};
  const cplx P3{r.Gamma_nm, O3}, P4{r.Gamma_lm, O4};
  const cplx P12{r.Gamma_ln, O1 - O2}, P43{r.Gamma_ln, O4 - O3};
  const cplx P32{r.Gamma_gm, O3 - O2}, P41{r.Gamma_gm, O4 - O1};
  const cplx d2{r.Gamma_ng, O1 + O3 - O4}, d4{r.Gamma_lm, O1 - O2 + O3};
  const cplx G1 = f.rabi[0], G2 = f.rabi[1], G3 = f.rabi[2], G4 = f.rabi[3];
  using std::conj;

  const cplx r1 = I * G1 * sat.dr1 / P1;   // strong-field coherences
  const cplx r3 = I * G3 * sat.dr3 / P3;

  // First order in the probes the eight amplitudes split into two chains,
  // one per probe.  Stated equations (see docs/MODEL.md):
  //   P2  r2  =  i G2 dr2 - i G3 conj(r32) + i G1 conj(r12)
  //   P32 r32 = -i conj(G2) r3 + i G3 conj(r2) - i conj(G1) rt4
  //   P12 r12 = -i G1 conj(r2) + i conj(G2) r1 + i conj(G3) rt4
  //   d4  rt4 = -i G1 r32 + i G3 r12
  //   P4  r4  =  i [G4 dr4 - G1 r41 + G3 r43]
  //   P41 r41 = -i conj(G1) r4 + i G4 conj(r1) + i G3 conj(rt2)
  //   P43 r43 = -i G4 conj(r3) + i conj(G3) r4 - i G1 conj(rt2)
  //   d2  rt2 = -i G3 conj(r41) + i G1 conj(r43)
  // Unknown vector (conjugate partners relabeled so each chain closes):
  //   [r2, conj r32, conj r12, conj rt4, r4, r41, r43, conj rt2].
  LinearSystem sys;
  sys.n = 8;
  sys.a.assign(64, cplx{});
  sys.rhs.assign(8, cplx{});
  sys.labels = {"r_2", "conj(r_32)", "conj(r_12)", "conj(rt_4)",
                "r_4", "r_41",       "r_43",       "conj(rt_2)"};

  sys.at(0, 0) = P2;
  sys.at(0, 1) = I * G3;
  sys.at(0, 2) = -I * G1;
  sys.rhs[0] = I * G2 * sat.dr2;

  sys.at(1, 0) = I * conj(G3);
  sys.at(1, 1) = conj(P32);
  sys.at(1, 3) = -I * G1;
  sys.rhs[1] = I * G2 * conj(r3);

  sys.at(2, 0) = -I * conj(G1);
  sys.at(2, 2) = conj(P12);
  sys.at(2, 3) = I * G3;
  sys.rhs[2] = -I * G2 * conj(r1);

  sys.at(3, 1) = -I * conj(G1);
  sys.at(3, 2) = I * conj(G3);
  sys.at(3, 3) = conj(d4);

  sys.at(4, 4) = P4;
  sys.at(4, 5) = I * G1;
  sys.at(4, 6) = -I * G3;
  sys.rhs[4] = I * G4 * sat.dr4;

  sys.at(5, 4) = I * conj(G1);
  sys.at(5, 5) = P41;
  sys.at(5, 7) = -I * G3;
  sys.rhs[5] = I * G4 * conj(r1);

  sys.at(6, 4) = -I * conj(G3);
  sys.at(6, 6) = P43;
  sys.at(6, 7) = I * G1;
  sys.rhs[6] = -I * G4 * conj(r3);

  sys.at(7, 5) = -I * conj(G3);
  sys.at(7, 6) = I * conj(G1);
  sys.at(7, 7) = conj(d2);

  return sys;
}

ProbeAmplitudes probe_response(const RelaxationSpec& r, const FieldSpec& f,
                               const OraclePopulations& sat) {
  const auto sys = assemble_probe_system(r, f, sat);
  const auto sol = solve(sys);
  ProbeAmplitudes out;
  out.r2 = sol.x[0];
  out.r4 = sol.x[4];
  out.rt4 = std::conj(sol.x[3]);
  out.rt2 = std::conj(sol.x[7]);
  out.residual = sol.residual;
  out.cond_estimate = sol.cond_estimate;
  return out;
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod quadrature

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Value>
void gk15(const std::function<Value(double)>& f, double a, double b, Value& kres,
          double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Value gauss{}, kron{};
  for (int i = 0; i < 8; ++i) {
    Value sum;
    if (i == 7) {
      sum = f(c);
    } else {
      sum = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
    }
    kron += kWgk[i] * sum;
    if (i % 2 == 1) gauss += kWg[i / 2] * sum;
  }
  kres = kron * h;
  err = std::abs(kron - gauss) * std::abs(h);
}

template <typename Value>
Value adaptive(const std::function<Value(double)>& f, double a, double b, double tol,
               int depth) {
  Value whole;
  double err;
  gk15(f, a, b, whole, err);
  if (err <= tol || b - a < 1e-300) return whole;
  if (depth > 60) throw Error("ToleranceNotMet", "quadrature recursion limit reached");
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * tol, depth + 1) +
         adaptive(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  return adaptive<double>(f, a, b, tol, 0);
}

cplx adaptive_integrate_c(const std::function<cplx(double)>& f, double a, double b,
                          double tol) {
  return adaptive<cplx>(f, a, b, tol, 0);
}

double integrate_real_line(const std::function<double(double)>& f, double tol) {
  // x = tan t maps the line to (-pi/2, pi/2); the Kronrod nodes never touch
  // the endpoints, so a 1/x^2 decay of f keeps the integrand finite
  const auto g = [&f](double t) {
    const double x = std::tan(t);
    return f(x) * (1.0 + x * x);
  };
  return adaptive<double>(g, -1.5707963267948966, 1.5707963267948966, tol, 0);
}

cplx integrate_real_line_c(const std::function<cplx(double)>& f, double tol) {
  const auto g = [&f](double t) {
    const double x = std::tan(t);
    return f(x) * (1.0 + x * x);
  };
  return adaptive<cplx>(g, -1.5707963267948966, 1.5707963267948966, tol, 0);
}

// ---------------------------------------------------------------------------
// 3j symbols and the magnetic-sublevel contraction for 6j

namespace {

// factorials on demand, long double to keep headroom for j up to ~80
long double lfact(int n) {
  static std::vector<long double> table{1.0L};
  while (static_cast<int>(table.size()) <= n) {
    table.push_back(table.back() * static_cast<long double>(table.size()));
  }
  return table[n];
}

int to_doubled(double j, const char* what) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9 || rounded < -1e-9) {
    throw Error("NonHalfInteger", std::string(what) + " must be a nonnegative half-integer");
  }
  return static_cast<int>(rounded);
}

int to_doubled_signed(double m) {
  const double twice = 2.0 * m;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw Error("NonHalfInteger", "projection must be a half-integer");
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

// all arguments doubled
long double threej_doubled(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0L;
  if (!triangle_ok(j1, j2, j3)) return 0.0L;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0L;
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (j3 + m3) % 2) return 0.0L;

  const long double pref =
      delta_factor(j1, j2, j3) *
      std::sqrt(lfact((j1 + m1) / 2) * lfact((j1 - m1) / 2) * lfact((j2 + m2) / 2) *
                lfact((j2 - m2) / 2) * lfact((j3 + m3) / 2) * lfact((j3 - m3) / 2));

  const int kmin = std::max({0, (j2 - j3 - m1) / 2, (j1 - j3 + m2) / 2});
  const int kmax = std::min({(j1 + j2 - j3) / 2, (j1 - m1) / 2, (j2 + m2) / 2});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term =
        lfact(k) * lfact((j1 + j2 - j3) / 2 - k) * lfact((j1 - m1) / 2 - k) *
        lfact((j2 + m2) / 2 - k) * lfact((j3 - j2 + m1) / 2 + k) *
        lfact((j3 - j1 - m2) / 2 + k);
    sum += (k % 2 ? -1.0L : 1.0L) / term;
  }
  const int phase = (j1 - j2 - m3) / 2;
  return (phase % 2 ? -1.0L : 1.0L) * pref * sum;
}

}  // namespace

double threej(double j1, double j2, double j3, double m1, double m2, double m3) {
  return static_cast<double>(threej_doubled(to_doubled(j1, "j1"), to_doubled(j2, "j2"),
                                            to_doubled(j3, "j3"), to_doubled_signed(m1),
                                            to_doubled_signed(m2), to_doubled_signed(m3)));
}

double sixj_by_3j_contraction(double j1, double j2, double j3, double j4, double j5,
                              double j6) {
  const int a = to_doubled(j1, "j1"), b = to_doubled(j2, "j2"), c = to_doubled(j3, "j3");
  const int d = to_doubled(j4, "j4"), e = to_doubled(j5, "j5"), g = to_doubled(j6, "j6");

  // sum over magnetic numbers of
  //   (j1 j2 j3; -m1 -m2 -m3)(j1 j5 j6; m1 -m5 m6)
  //   (j4 j2 j6; m4 m2 -m6)(j4 j5 j3; -m4 m5 m3)
  // with phases (-1)^(sum_k (j_k - m_k)); the 3j selection rules leave three
  // free projections
  long double total = 0.0L;
  for (int m1 = -a; m1 <= a; m1 += 2) {
    for (int m2 = -b; m2 <= b; m2 += 2) {
      const int m3 = -m1 - m2;
      if (std::abs(m3) > c) continue;
      for (int m4 = -d; m4 <= d; m4 += 2) {
        const int m6 = m4 + m2;
        if (std::abs(m6) > g) continue;
        const int m5 = m1 + m6;
        if (std::abs(m5) > e) continue;
        const long double prod = threej_doubled(a, b, c, -m1, -m2, -m3) *
                                 threej_doubled(a, e, g, m1, -m5, m6) *
                                 threej_doubled(d, b, g, m4, m2, -m6) *
                                 threej_doubled(d, e, c, -m4, m5, m3);
        if (prod == 0.0L) continue;
        const int phase2 = (a - m1) + (b - m2) + (c - m3) + (d - m4) + (e - m5) + (g - m6);
        total += ((phase2 / 2) % 2 ? -1.0L : 1.0L) * prod;
      }
    }
  }
  return static_cast<double>(total);
}

}  // namespace nief::oracle
