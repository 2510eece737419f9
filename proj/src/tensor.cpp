#include "ltensor/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ltensor/lfunctions.hpp"
#include "ltensor/primes.hpp"
#include "ltensor/special.hpp"
#include "ltensor/summation.hpp"

namespace ltensor {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// c^e for real c > 0
cplx rpow(double c, cplx e) { return std::exp(e * std::log(c)); }

std::string ckey(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g", z.real(), z.imag());
  return buf;
}

// Gauss-Legendre nodes mapped onto consecutive panels
struct PanelNodes {
  std::vector<double> y, w;
};

PanelNodes panel_nodes(const std::vector<double> &breaks, int per) {
  PanelNodes out;
  const auto &gl = gauss_legendre_nodes(per);
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    const double half = 0.5 * (breaks[i + 1] - breaks[i]);
    for (const auto &[x, wt] : gl) {
      out.y.push_back(mid + half * x);
      out.w.push_back(half * wt);
    }
  }
  return out;
}

cplx principal_log_l(const DirichletCharacter &chi, double sigma) {
  const cplx lg = std::log(l_value(chi, cplx(sigma, 0.0)));
  if (std::abs(lg.imag()) > 1.2)
    throw std::runtime_error("tensor: log L left the principal strip on the real ray");
  return lg;
}

// log L(1 + alpha + y, chi) on fixed nodes; int_0^inf e^{-c y} of it gives
// the absolutely convergent ladder sum_{q,n} chi(q^n) q^{-n(1+alpha)} / (n(c + n log q))
struct RayCache {
  PanelNodes nodes;
  std::vector<cplx> f;
};

const RayCache &e3_ray(const DirichletCharacter &chi, double alpha) {
  static std::map<std::pair<std::string, double>, RayCache> cache;
  const auto key = std::make_pair(chi.label(), alpha);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RayCache rc;
  rc.nodes = panel_nodes({0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}, 24);
  rc.f.resize(rc.nodes.y.size());
  for (size_t i = 0; i < rc.nodes.y.size(); ++i)
    rc.f[i] = principal_log_l(chi, 1.0 + alpha + rc.nodes.y[i]);
  return cache.emplace(key, std::move(rc)).first->second;
}

cplx laplace_decay(const RayCache &rc, double c) {
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < rc.nodes.y.size(); ++i) {
    const double e = -c * rc.nodes.y[i];
    if (e < -700.0) continue;
    acc += rc.nodes.w[i] * std::exp(e) * rc.f[i];
  }
  return acc;
}

// scale of the dropped remainder of the conditionally convergent ladder
// sum_{q^n > Q} chi(q^n) q^{-n} / (n(c - n log q)): partial summation against
// square-root character cancellation, with every denominator at least log 8
double ladder_drop_scale(long long Q) {
  return std::log(double(Q)) / (std::sqrt(double(Q)) * std::log(8.0));
}

// V(c, alpha) on a log-spaced Hermite grid; direct quadrature off the grid
struct VGrid {
  double x0 = 0.0, h = 0.0;
  std::vector<double> v, d; // value and dV/dx at x = log c
};

const VGrid &v_grid(double alpha, const QuadratureSpec &spec) {
  static std::map<double, VGrid> cache;
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  VGrid g;
  const int n = 176;
  g.x0 = std::log(0.60);
  g.h = (std::log(14.2) - g.x0) / (n - 1);
  g.v.resize(n);
  g.d.resize(n);
  for (int i = 0; i < n; ++i) {
    const double c = std::exp(g.x0 + i * g.h);
    g.v[i] = v_function(c, alpha, spec);
    g.d[i] = c * v_function_derivative(c, alpha, spec);
  }
  return cache.emplace(alpha, std::move(g)).first->second;
}

double v_interp(double c, double alpha, const QuadratureSpec &spec) {
  const VGrid &g = v_grid(alpha, spec);
  const double x = std::log(c);
  const double upper = g.x0 + (g.v.size() - 1) * g.h;
  if (x < g.x0 || x > upper) return v_function(c, alpha, spec);
  size_t i = std::min(size_t((x - g.x0) / g.h), g.v.size() - 2);
  const double t = (x - g.x0 - i * g.h) / g.h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * g.v[i] + (t3 - 2 * t2 + t) * g.h * g.d[i] +
         (-2 * t3 + 3 * t2) * g.v[i + 1] + (t3 - t2) * g.h * g.d[i + 1];
}

const std::vector<cplx> &char_table(const DirichletCharacter &chi, long long Q) {
  static std::map<std::pair<std::string, long long>, std::vector<cplx>> cache;
  const auto key = std::make_pair(chi.label(), Q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto &pp = prime_powers(Q);
  std::vector<cplx> vals(pp.size());
  for (size_t i = 0; i < pp.size(); ++i) vals[i] = chi(pp[i].value);
  return cache.emplace(key, std::move(vals)).first->second;
}

const MuData &mu_of(const DirichletCharacter &chi) {
  static std::map<std::string, MuData> cache;
  auto it = cache.find(chi.label());
  if (it != cache.end()) return it->second;
  return cache.emplace(chi.label(), mu_data(chi)).first->second;
}

// log of parity * Gamma(1+alpha) N^alpha G(chi) / (2 pi)^{1+alpha}, the
// phase of parity * G(chi) taken as one principal argument
cplx log_lambda_of(const DirichletCharacter &chi, double alpha) {
  const double re = std::lgamma(1.0 + alpha) +
                    alpha * std::log(double(chi.modulus)) -
                    (1.0 + alpha) * std::log(2.0 * kPi);
  return re + std::log(double(chi.parity) * gauss_sum(chi));
}

cplx gconst_of(const DirichletCharacter &chi) {
  return cplx(euler_gamma() + std::log(2.0 * kPi / double(chi.modulus)),
              -kPi / 2.0);
}

// rough bound for sum over p^m > P of p^{-m sigma} (m log p)^a log p
double power_log_tail(double sigma, double a, double P) {
  if (sigma <= 1.0) return 1e300;
  const double lp = std::log(P);
  const double base = std::pow(P, 1.0 - sigma) * std::pow(lp, a) / (sigma - 1.0);
  const double corr = 1.0 + std::abs(a) / ((sigma - 1.0) * lp) +
                      std::abs(a * (a - 1.0)) / std::pow((sigma - 1.0) * lp, 2);
  return 2.0 * base * corr;
}

struct CharPair {
  const DirichletCharacter *c[2];
};

// ---- the ten terms ----

TailedValue e1_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  const auto &pp = prime_powers(par.P);
  const auto &t0 = char_table(*ch.c[0], par.P);
  const auto &t1 = char_table(*ch.c[1], par.P);
  CompensatedCSum acc;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx prod = t0[j] * t1[j];
    if (std::norm(prod) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx body = (s - 2.0) * rpow(c, w - 1.0) - (w + 1.0) * rpow(c, w - 2.0);
    acc.add(prod * std::exp(-double(q.m) * s * q.log_p) * (q.log_p * q.log_p) * body);
  }
  TailedValue out;
  out.value = kI / (2.0 * kPi) * acc.value();
  out.tail = (std::abs(s - 2.0) * power_log_tail(s.real(), w.real(), double(par.P)) +
              std::abs(w + 1.0) * power_log_tail(s.real(), w.real() - 1.0, double(par.P))) /
             (2.0 * kPi);
  return out;
}

TailedValue e2_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  // independent of alpha and the contour height; cached across sweeps
  static std::map<std::string, TailedValue> cache;
  std::string l1 = ch.c[0]->label(), l2 = ch.c[1]->label();
  if (l2 < l1) std::swap(l1, l2);
  const std::string key =
      l1 + "|" + l2 + "|" + ckey(w) + "|" + ckey(s) + "|" + std::to_string(par.P);
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;

  const long long Q = 8 * par.P;
  const auto &ppq = prime_powers(Q);
  const auto &t0 = char_table(*ch.c[0], Q);
  const auto &t1 = char_table(*ch.c[1], Q);
  CompensatedCSum acc;
  double maxinner = 0.0, wsum = 0.0;
  for (size_t j = 0; j < ppq.size() && ppq[j].value <= par.P; ++j) {
    const cplx cha0 = t0[j], cha1 = t1[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = ppq[j];
    const double c = q.m * q.log_p;
    cplx in0(0.0, 0.0), in1(0.0, 0.0); // deleted ladders with chi_b = first/second
    for (size_t i = 0; i < ppq.size(); ++i) {
      if (i == j) continue;
      const PrimePower &r = ppq[i];
      const double inv = 1.0 / (double(r.m) * (c - r.m * r.log_p) * double(r.value));
      in0 += t0[i] * inv;
      in1 += t1[i] * inv;
    }
    // the q^n > Q remainder of each ladder cancels like a character sum and
    // resists stable quadrature once e^{c y} amplifies evaluation noise, so it
    // is dropped here and carried in the reported tail instead
    maxinner = std::max({maxinner, std::abs(in0), std::abs(in1)});
    const cplx outer =
        std::exp(-double(q.m) * (s - 1.0) * q.log_p) * rpow(c, w) * q.log_p;
    wsum += 2.0 * std::abs(outer);
    acc.add(cha0 * outer * in1);
    acc.add(cha1 * outer * in0);
  }
  TailedValue out;
  out.value = -kI / (2.0 * kPi) * acc.value();
  out.tail = (2.0 * maxinner *
                  power_log_tail(s.real() - 1.0, w.real() + 1.0, double(par.P)) +
              wsum * ladder_drop_scale(Q)) /
             (2.0 * kPi);
  cache.emplace(key, out);
  return out;
}

TailedValue e3_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  const auto &pp = prime_powers(par.P);
  const std::vector<cplx> *tab[2] = {&char_table(*ch.c[0], par.P),
                                     &char_table(*ch.c[1], par.P)};
  const RayCache *ray[2] = {&e3_ray(conjugate(*ch.c[0]), par.alpha),
                            &e3_ray(conjugate(*ch.c[1]), par.alpha)};
  CompensatedCSum acc;
  double maxt = 0.0;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx cha0 = (*tab[0])[j], cha1 = (*tab[1])[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx lad0 = laplace_decay(*ray[0], c);
    const cplx lad1 = laplace_decay(*ray[1], c);
    maxt = std::max({maxt, std::abs(lad0), std::abs(lad1)});
    const cplx outer =
        std::exp(-double(q.m) * (s + par.alpha) * q.log_p) * rpow(c, w) * q.log_p;
    acc.add(cha0 * outer * lad1);
    acc.add(cha1 * outer * lad0);
  }
  TailedValue out;
  out.value = kI / (2.0 * kPi) * acc.value();
  out.tail = 2.0 * maxt *
             power_log_tail(s.real() + par.alpha, w.real() + 1.0, double(par.P)) /
             (2.0 * kPi);
  return out;
}

TailedValue e4_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  const auto &pp = prime_powers(par.P);
  const std::vector<cplx> *tab[2] = {&char_table(*ch.c[0], par.P),
                                     &char_table(*ch.c[1], par.P)};
  const cplx z[2] = {double(ch.c[0]->parity) * std::exp(-kI * par.alpha * kPi),
                     double(ch.c[1]->parity) * std::exp(-kI * par.alpha * kPi)};
  const bool same = ch.c[0]->parity == ch.c[1]->parity;
  CompensatedCSum acc;
  double maxs = 0.0;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx cha0 = (*tab[0])[j], cha1 = (*tab[1])[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx s0 = m_pole_sum(z[0], cplx(0.0, c), par.quad);
    const cplx s1 = same ? s0 : m_pole_sum(z[1], cplx(0.0, c), par.quad);
    maxs = std::max({maxs, std::abs(s0), std::abs(s1)});
    const cplx outer =
        std::exp(-double(q.m) * (s + par.alpha) * q.log_p) * rpow(c, w) * q.log_p;
    acc.add(cha0 * outer * s1);
    acc.add(cha1 * outer * s0);
  }
  TailedValue out;
  out.value = acc.value() / (2.0 * kPi);
  out.tail = 2.0 * maxs *
             power_log_tail(s.real() + par.alpha, w.real() + 1.0, double(par.P)) /
             (2.0 * kPi);
  return out;
}

TailedValue e5_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  const auto &pp = prime_powers(par.P);
  const std::vector<cplx> *tab[2] = {&char_table(*ch.c[0], par.P),
                                     &char_table(*ch.c[1], par.P)};
  const double half_par[2] = {0.5 * ch.c[0]->parity, 0.5 * ch.c[1]->parity};
  CompensatedCSum acc;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx cha0 = (*tab[0])[j], cha1 = (*tab[1])[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx base = rpow(c, w - 1.0) * q.log_p / (2.0 * std::sinh(c));
    acc.add(cha0 * std::exp(-(s - 0.5 - half_par[1]) * c) * base);
    acc.add(cha1 * std::exp(-(s - 0.5 - half_par[0]) * c) * base);
  }
  TailedValue out;
  out.value = acc.value();
  const double worst = s.real() + 0.5 - std::max(half_par[0], half_par[1]);
  out.tail = 2.0 * power_log_tail(worst, w.real() - 1.0, double(par.P));
  return out;
}

cplx e6_inner(const ContourSamples &cs, double c) {
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < cs.s.size(); ++i)
    acc += cs.dsw[i] * std::exp(c * cs.s[i]) * cs.logl[i];
  return -acc; // path runs phi = pi -> 0
}

TailedValue e6_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  const auto &pp = prime_powers(par.P);
  const std::vector<cplx> *tab[2] = {&char_table(*ch.c[0], par.P),
                                     &char_table(*ch.c[1], par.P)};
  const ContourSamples *cs[2] = {
      &contour_samples(*ch.c[0], par.alpha, par.epsilon2),
      &contour_samples(*ch.c[1], par.alpha, par.epsilon2)};
  CompensatedCSum acc;
  double maxin = 0.0;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx cha0 = (*tab[0])[j], cha1 = (*tab[1])[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx in0 = e6_inner(*cs[0], c);
    const cplx in1 = e6_inner(*cs[1], c);
    maxin = std::max({maxin, std::abs(in0) * std::exp(-c),
                      std::abs(in1) * std::exp(-c)});
    const cplx outer =
        std::exp(-double(q.m) * s * q.log_p) * rpow(c, w) * q.log_p;
    acc.add(cha0 * outer * in1);
    acc.add(cha1 * outer * in0);
  }
  TailedValue out;
  out.value = kI / (2.0 * kPi) * acc.value();
  out.tail = 2.0 * maxin *
             power_log_tail(s.real() - 1.0, w.real() + 1.0, double(par.P)) /
             (2.0 * kPi);
  return out;
}

TailedValue e7_term(cplx w, cplx s, const CharPair &ch,
                    const TensorEvalParams &par) {
  const auto &pp = prime_powers(par.P);
  const std::vector<cplx> *tab[2] = {&char_table(*ch.c[0], par.P),
                                     &char_table(*ch.c[1], par.P)};
  const cplx k1[2] = {
      kI * log_lambda_of(*ch.c[0], par.alpha) - (1.0 + par.alpha) * kPi / 2.0,
      kI * log_lambda_of(*ch.c[1], par.alpha) - (1.0 + par.alpha) * kPi / 2.0};
  const cplx gc[2] = {gconst_of(*ch.c[0]), gconst_of(*ch.c[1])};
  CompensatedCSum acc;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx cha0 = (*tab[0])[j], cha1 = (*tab[1])[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx p1 = rpow(c, w - 1.0), p2 = rpow(c, w - 2.0);
    const cplx vterm = kI * v_interp(c, par.alpha, par.quad);
    const cplx outer =
        std::exp(-double(q.m) * (s + par.alpha) * q.log_p) * q.log_p;
    acc.add(cha0 * outer * (p1 * k1[1] + p2 * (-kI * gc[1] + vterm)));
    acc.add(cha1 * outer * (p1 * k1[0] + p2 * (-kI * gc[0] + vterm)));
  }
  TailedValue out;
  out.value = acc.value() / (2.0 * kPi);
  const double lp = std::log(double(par.P));
  const double kmax = std::max(std::abs(k1[0]), std::abs(k1[1]));
  const double gmax = std::max(std::abs(gc[0]), std::abs(gc[1])) +
                      v_interp(lp, par.alpha, par.quad);
  out.tail = 2.0 *
             (kmax * power_log_tail(s.real() + par.alpha, w.real() - 1.0, double(par.P)) +
              gmax * power_log_tail(s.real() + par.alpha, w.real() - 2.0, double(par.P))) /
             (2.0 * kPi);
  return out;
}

// shifted ladders carried by the real-zero multiplicities
TailedValue mu_ladder(cplx w, cplx s, const CharPair &ch,
                      const TensorEvalParams &par, int sign_tau) {
  const auto &pp = prime_powers(par.P);
  const std::vector<cplx> *tab[2] = {&char_table(*ch.c[0], par.P),
                                     &char_table(*ch.c[1], par.P)};
  const MuData *mu[2] = {&mu_of(*ch.c[0]), &mu_of(*ch.c[1])};
  double weight[2], shift[2];
  for (int b = 0; b < 2; ++b) {
    weight[b] = sign_tau == 0 ? mu[b]->mu0 : mu[b]->mu_tau0;
    shift[b] = sign_tau * mu[b]->tau0;
  }
  TailedValue out;
  if (weight[0] == 0.0 && weight[1] == 0.0) return out;
  CompensatedCSum acc;
  for (size_t j = 0; j < pp.size(); ++j) {
    const cplx cha0 = (*tab[0])[j], cha1 = (*tab[1])[j];
    if (std::norm(cha0) == 0.0 && std::norm(cha1) == 0.0) continue;
    const PrimePower &q = pp[j];
    const double c = q.m * q.log_p;
    const cplx base = rpow(c, w - 1.0) * q.log_p;
    acc.add(weight[1] * cha0 * std::exp(-(s - 0.5 - shift[1]) * c) * base);
    acc.add(weight[0] * cha1 * std::exp(-(s - 0.5 - shift[0]) * c) * base);
  }
  out.value = acc.value();
  const double worst = s.real() - 0.5 - std::max(shift[0], shift[1]);
  out.tail = (weight[0] + weight[1]) *
             power_log_tail(worst, w.real() - 1.0, double(par.P));
  return out;
}

double beta_of(int k, const CharPair &ch, const TensorEvalParams &par) {
  const double tau2 = std::max(mu_of(*ch.c[0]).tau0, mu_of(*ch.c[1]).tau0);
  switch (k) {
    case 1: return 1.0;
    case 2:
    case 6: return 2.0;
    case 3:
    case 4:
    case 7: return 1.0 - par.alpha;
    case 5:
      return std::max(0.5 * (1 - ch.c[0]->parity), 0.5 * (1 - ch.c[1]->parity));
    case 8: return 1.5 + tau2;
    case 9: return 1.5 - tau2;
    case 10: return 1.5;
  }
  throw std::invalid_argument("e_term: k must be in 1..10");
}

} // namespace

ContourSpec contour_spec(double alpha, double eps, int n) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("contour_spec: alpha must lie in (0, 1)");
  if (!(eps > 0.0)) throw std::invalid_argument("contour_spec: eps must be positive");
  if (n < 4) throw std::invalid_argument("contour_spec: need at least 4 nodes");
  ContourSpec out;
  out.center = 0.5 * (1.0 - alpha);
  out.horizontal = 0.5 * (1.0 + alpha);
  out.vertical = eps;
  const auto &gl = gauss_legendre_nodes(n);
  out.phi.resize(n);
  out.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto &[x, wt] = gl[n - 1 - i]; // stored descending; emit ascending
    out.phi[i] = 0.5 * kPi * (x + 1.0);
    out.weights[i] = 0.5 * kPi * wt;
  }
  return out;
}

cplx contour_point(const ContourSpec &spec, double phi) {
  return spec.center + spec.horizontal * std::cos(phi) +
         kI * spec.vertical * std::sin(phi);
}

TensorEvalParams make_tensor_params(const CramerEvalParams &c1,
                                    const CramerEvalParams &c2) {
  if (c1.alpha != c2.alpha)
    throw std::invalid_argument("make_tensor_params: alphas must match");
  TensorEvalParams out;
  out.cramer1 = c1;
  out.cramer2 = c2;
  out.alpha = c1.alpha;
  out.epsilon2 = std::min(c1.epsilon, c2.epsilon);
  out.theta2 = std::min(c1.theta, c2.theta);
  out.P = std::min(c1.P, c2.P);
  out.T = std::min(c1.T, c2.T);
  out.quad = c1.quad;
  return out;
}

void validate_tensor_params(const TensorEvalParams &params, double tau1_min) {
  validate_cramer_params(params.cramer1, tau1_min);
  validate_cramer_params(params.cramer2, tau1_min);
  if (params.cramer1.alpha != params.alpha || params.cramer2.alpha != params.alpha)
    throw std::invalid_argument("tensor params: alpha differs between characters");
  if (params.epsilon2 != std::min(params.cramer1.epsilon, params.cramer2.epsilon))
    throw std::invalid_argument("tensor params: epsilon2 is not the minimum");
  if (params.theta2 != std::min(params.cramer1.theta, params.cramer2.theta))
    throw std::invalid_argument("tensor params: theta2 is not the minimum");
  if (!(params.epsilon2 < tau1_min))
    throw std::invalid_argument("tensor params: epsilon2 must stay below the first ordinate");
  if (params.P < 100) throw std::invalid_argument("tensor params: P too small");
  if (!(params.T > 0.0)) throw std::invalid_argument("tensor params: T must be positive");
}

TailedValue e_term_tailed(int k, cplx w, cplx s, const DirichletCharacter &chi1,
                          const DirichletCharacter &chi2,
                          const TensorEvalParams &params) {
  const CharPair ch{{&chi1, &chi2}};
  const double beta = beta_of(k, ch, params);
  if (!(s.real() > beta))
    throw std::domain_error("e_term: Re(s) at or below the abscissa " +
                            std::to_string(beta) + " of term " + std::to_string(k));
  switch (k) {
    case 1: return e1_term(w, s, ch, params);
    case 2: return e2_term(w, s, ch, params);
    case 3: return e3_term(w, s, ch, params);
    case 4: return e4_term(w, s, ch, params);
    case 5: return e5_term(w, s, ch, params);
    case 6: return e6_term(w, s, ch, params);
    case 7: return e7_term(w, s, ch, params);
    case 8: return mu_ladder(w, s, ch, params, +1);
    case 9: return mu_ladder(w, s, ch, params, -1);
    case 10: return mu_ladder(w, s, ch, params, 0);
  }
  throw std::invalid_argument("e_term: k must be in 1..10");
}

cplx e_term(int k, cplx w, cplx s, const DirichletCharacter &chi1,
            const DirichletCharacter &chi2, const TensorEvalParams &params) {
  return e_term_tailed(k, w, s, chi1, chi2, params).value;
}

cplx e6_log_derivative_route(cplx w, cplx s, const DirichletCharacter &chi1,
                             const DirichletCharacter &chi2,
                             const TensorEvalParams &params) {
  if (w != cplx(0.0, 0.0))
    throw std::invalid_argument("e6_log_derivative_route: closed form only at w = 0");
  const DirichletCharacter *ch[2] = {&chi1, &chi2};
  cplx total(0.0, 0.0);
  for (int a = 0; a < 2; ++a) {
    const int b = 1 - a;
    const ContourSamples &cs = contour_samples(*ch[b], params.alpha, params.epsilon2);
    const DirichletCharacter &ca = *ch[a];
    total += contour_log_integral(
        cs, [&](cplx u) { return -l_log_derivative(ca, s - u); });
  }
  return kI / (2.0 * kPi) * total;
}

TailedValue tensor_square_tailed(cplx s, const DirichletCharacter &chi1,
                                 const DirichletCharacter &chi2,
                                 const TensorEvalParams &params) {
  if (!(s.real() > 2.0))
    throw std::domain_error("tensor_square: requires Re(s) > 2");
  CompensatedCSum acc;
  double tails = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const TailedValue t = e_term_tailed(k, cplx(0.0, 0.0), s, chi1, chi2, params);
    acc.add(t.value);
    tails += t.tail;
  }
  TailedValue out;
  out.value = std::exp(acc.value());
  out.tail = std::abs(out.value) * tails;
  return out;
}

cplx tensor_square(cplx s, const DirichletCharacter &chi1,
                   const DirichletCharacter &chi2,
                   const TensorEvalParams &params) {
  return tensor_square_tailed(s, chi1, chi2, params).value;
}

ResidueContribution residue_contribution(long long p, int m, cplx w, cplx s,
                                         const DirichletCharacter &chi1,
                                         const DirichletCharacter &chi2,
                                         const TensorEvalParams &params,
                                         double radius, int nodes) {
  if (!(w.real() > 2.0))
    throw std::domain_error("residue_contribution: requires Re(w) > 2");
  if (!(s.real() > 2.0))
    throw std::domain_error("residue_contribution: requires Re(s) > 2");
  if (m < 1 || p < 2)
    throw std::invalid_argument("residue_contribution: need a prime power");
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      throw std::invalid_argument("residue_contribution: p is not prime");
  long long pm = 1;
  for (int i = 0; i < m; ++i) pm *= p;
  if (pm > params.P || pm > params.cramer1.P || pm > params.cramer2.P)
    throw std::invalid_argument("residue_contribution: p^m beyond the prime cutoff");
  // the probe leans on the truncated resolvent branch, whose dropped tail is
  // analytic at the pole; the circle must stay inside its |Re t| window
  if (!(radius > 0.0 && radius < 0.15) || nodes < 16)
    throw std::invalid_argument("residue_contribution: bad probe geometry");

  const double logp = std::log(double(p));
  const double c = m * logp;
  const double alpha = params.alpha;
  const DirichletCharacter *ch[2] = {&chi1, &chi2};

  // double-pole slice
  const cplx prod12 = chi1(pm) * chi2(pm);
  cplx formula =
      kI / (2.0 * kPi) * prod12 * std::exp(-double(m) * s * logp) * (logp * logp) *
      ((s - 2.0) * rpow(c, w - 1.0) - (w + 1.0) * rpow(c, w - 2.0));

  // simple-pole slices: residue of one series times the regularized value of
  // the other; both prime sums keep the probe's own cutoff so the analytic
  // remainders they drop shift formula and probe together
  for (int a = 0; a < 2; ++a) {
    const int b = 1 - a;
    const cplx cha = (*ch[a])(pm);
    if (std::norm(cha) == 0.0) continue;
    const DirichletCharacter &cb = *ch[b];
    const CramerEvalParams &cpb = b == 0 ? params.cramer1 : params.cramer2;

    const auto &ppb = prime_powers(cpb.P);
    const auto &tb = char_table(cb, cpb.P);
    const auto &tbb = char_table(conjugate(cb), cpb.P);
    cplx ladder(0.0, 0.0), shifted(0.0, 0.0);
    for (size_t i = 0; i < ppb.size(); ++i) {
      const PrimePower &r = ppb[i];
      const double nl = r.m * r.log_p;
      if (r.value != pm)
        ladder += tb[i] / (double(r.m) * (c - nl) * double(r.value));
      shifted += tbb[i] * std::exp(-(1.0 + alpha) * nl) / (double(r.m) * (c + nl));
    }

    const cplx zb = double(cb.parity) * std::exp(-kI * alpha * kPi);
    cplx cb_val = kI * c * shifted +
                  c * m_pole_sum(zb, cplx(0.0, c), params.quad) +
                  kI * log_lambda_of(cb, alpha) - (1.0 + alpha) * kPi / 2.0 -
                  kI / c * gconst_of(cb) +
                  kI / c * v_function(c, alpha, params.quad);

    const ContourSamples &cs = contour_samples(cb, alpha, params.epsilon2);
    const MuData &mu = mu_of(cb);

    cplx x = kI * c / (2.0 * kPi) * std::exp(0.5 * c) * ladder -
             std::exp(-(alpha + 0.5) * c) / (2.0 * kPi) * cb_val -
             kI * c / (2.0 * kPi) * std::exp(-0.5 * c) * e6_inner(cs, c) -
             std::exp(0.5 * cb.parity * c) / (2.0 * std::sinh(c)) -
             double(mu.mu_tau0) * (std::exp(-mu.tau0 * c) + std::exp(mu.tau0 * c)) -
             double(mu.mu0);

    const cplx amp = -cha * std::exp(-double(m) * (s - 0.5) * logp) *
                     rpow(c, w - 1.0) * logp;
    formula += amp * x;
  }

  // contour probe around i m log p through the continued series of the
  // conjugate characters
  const DirichletCharacter cb1 = conjugate(chi1), cb2 = conjugate(chi2);
  CompensatedCSum probe_acc;
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * kPi * (j + 0.5) / nodes;
    const cplx off = radius * std::exp(kI * theta);
    const cplx t = cplx(0.0, c) + off;
    const cplx f = std::exp(kI * (s - 1.0) * t) *
                   l_explicit(cb1, t, params.cramer1, ExplicitRep::kContinued) *
                   l_explicit(cb2, t, params.cramer2, ExplicitRep::kContinued) *
                   cpow(t, w - 1.0);
    probe_acc.add(f * off);
  }
  ResidueContribution out;
  out.formula = formula;
  out.probe = 2.0 * kPi * kI * std::exp(-kI * kPi * w / 2.0) * probe_acc.value() /
              double(nodes);
  return out;
}

} // namespace ltensor
