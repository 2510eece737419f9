#include "ltensor/cramer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ltensor/primes.hpp"
#include "ltensor/special.hpp"

namespace ltensor {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// direct-vs-Laplace switch for the prime resolvent sums
constexpr double kResolventSplit = 0.15;

// branch-tracked log L(sigma + i y) on a fixed grid, reused by the Laplace
// transforms; queries snap an independent principal log onto the chain
struct VerticalChain {
  double sigma = 1.0;
  double step = 0.1;
  double ymax = 280.0;
  std::vector<cplx> values;
};

const VerticalChain &vertical_chain(const DirichletCharacter &chi, double sigma) {
  static std::map<std::pair<std::string, double>, VerticalChain> cache;
  auto key = std::make_pair(chi.label(), sigma);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  VerticalChain ch;
  ch.sigma = sigma;
  size_t n = size_t(ch.ymax / ch.step) + 1;
  std::vector<cplx> path(n);
  for (size_t k = 0; k < n; ++k) path[k] = cplx(sigma, double(k) * ch.step);
  ch.values = log_l_along_path(chi, path).log_values;
  return cache.emplace(std::move(key), std::move(ch)).first->second;
}

cplx branched_log(const DirichletCharacter &chi, double sigma, double y) {
  const VerticalChain &ch = vertical_chain(chi, sigma);
  if (y > ch.ymax) throw std::logic_error("branched_log: query beyond chain range");
  size_t k = std::min(size_t(y / ch.step), ch.values.size() - 2);
  double frac = y / ch.step - double(k);
  double expect = ch.values[k].imag() * (1.0 - frac) + ch.values[k + 1].imag() * frac;
  cplx v = std::log(l_value(chi, cplx(sigma, y)));
  v += cplx(0.0, 2.0 * kPi * std::round((expect - v.imag()) / (2.0 * kPi)));
  if (std::abs(v.imag() - expect) > 1.5)
    throw std::runtime_error("branched_log: branch mismatch off the chain");
  return v;
}

// int_0^inf e^{-t y} log L(sigma + i y, chi) dy, Re t > 0
cplx laplace_log(const DirichletCharacter &chi, double sigma, cplx t,
                 const QuadratureSpec &spec) {
  double a = t.real();
  QuadratureSpec s2 = spec;
  s2.decay_hint = a;
  auto f = [&](double y) -> cplx {
    if (a * y > 38.0) return cplx(0.0, 0.0);
    return std::exp(-t * y) * branched_log(chi, sigma, y);
  };
  return quad_semi_infinite(f, s2).value;
}

// sum over p^m of chi(p^m) p^{-m sigma} / (m (t + isign i m log p)), Re t > 0
cplx resolvent_core(const DirichletCharacter &chi, double sigma, int isign,
                    cplx t, const QuadratureSpec &spec) {
  if (isign > 0) return laplace_log(chi, sigma, t, spec);
  return std::conj(laplace_log(conjugate(chi), sigma, std::conj(t), spec));
}

cplx prime_resolvent(const DirichletCharacter &chi, double sigma, int isign,
                     cplx t, const CramerEvalParams &par) {
  if (std::abs(t.real()) < kResolventSplit) {
    // truncated sum; the dropped tail is analytic near every retained pole,
    // which is what the circle probes rely on
    CompensatedCSum acc;
    for (const PrimePower &q : prime_powers(par.P)) {
      cplx ch = chi(q.value);
      if (std::norm(ch) == 0.0) continue;
      double c = double(q.m) * q.log_p;
      acc.add(ch * std::exp(-double(q.m) * sigma * q.log_p) /
              (double(q.m) * (t + double(isign) * cplx(0.0, c))));
    }
    return acc.value();
  }
  if (t.real() < 0.0)
    return -resolvent_core(chi, sigma, -isign, -t, par.quad);
  return resolvent_core(chi, sigma, isign, t, par.quad);
}

const MuData &cached_mu(const DirichletCharacter &chi) {
  static std::map<std::string, MuData> cache;
  auto it = cache.find(chi.label());
  if (it != cache.end()) return it->second;
  return cache.emplace(chi.label(), mu_data(chi)).first->second;
}

// log of parity * Gamma(1+alpha) N^alpha G(chi) / (2 pi)^{1+alpha}; the
// phase of parity * G(chi) is taken as one principal argument
cplx log_lambda(const DirichletCharacter &chi, double alpha) {
  double re = std::lgamma(1.0 + alpha) + alpha * std::log(double(chi.modulus)) -
              (1.0 + alpha) * std::log(2.0 * kPi);
  return re + std::log(double(chi.parity) * gauss_sum(chi));
}

void pole_guard(const DirichletCharacter &chi, cplx t, long long P) {
  for (const PrimePower &q : prime_powers(std::min<long long>(P, 20000))) {
    if (std::norm(chi(q.value)) == 0.0) continue;
    double c = double(q.m) * q.log_p;
    if (std::abs(t - cplx(0.0, c)) < 1e-6)
      throw std::domain_error("l_explicit: t within 1e-6 of the pole i*" +
                              std::to_string(q.m) + "*log(" +
                              std::to_string(q.p) + ")");
  }
  for (int m = 1; m <= 6; ++m)
    if (std::abs(t + cplx(double(m) * kPi, 0.0)) < 1e-6)
      throw std::domain_error("l_explicit: t within 1e-6 of the pole -" +
                              std::to_string(m) + "*pi");
}

} // namespace

void validate_cramer_params(const CramerEvalParams &params, double tau1) {
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0))
    throw std::invalid_argument("cramer params: alpha must lie in (0, 1)");
  if (!(params.theta > 0.0) || !(params.theta < kPi / 4.0))
    throw std::invalid_argument("cramer params: theta must lie in (0, pi/4)");
  if (!(std::tan(params.theta) < params.epsilon))
    throw std::invalid_argument("cramer params: tan(theta) must stay below epsilon");
  if (!(params.epsilon > 0.0) || !(params.epsilon < tau1))
    throw std::invalid_argument("cramer params: epsilon must lie in (0, first ordinate)");
  if (!(params.T > 0.0) || params.P < 2)
    throw std::invalid_argument("cramer params: T and P must be positive");
}

TailedValue l_zero_sum(const DirichletCharacter &chi, cplx t,
                       const ZeroList &zeros) {
  if (!(t.real() > 0.0))
    throw std::domain_error("l_zero_sum: Re(t) must be positive");
  if (zeros.label != chi.label())
    throw std::invalid_argument("l_zero_sum: zero list belongs to " + zeros.label);
  CompensatedCSum acc;
  for (double g : zeros.ordinates) acc.add(std::exp(-g * t));
  double a = t.real(), T = zeros.complete_to, N = double(chi.modulus);
  TailedValue out;
  out.value = acc.value();
  // zero-density integral from T up, plus a counting-fluctuation margin
  out.tail = std::exp(-a * T) * (std::log(N * T / (2.0 * kPi)) / (2.0 * kPi * a) +
                                 1.0 / (2.0 * kPi * a * a * T) + 2.0);
  return out;
}

double v_function(double c, double alpha, const QuadratureSpec &spec) {
  if (!(c > 0.0)) throw std::domain_error("v_function: c must be positive");
  auto f = [c, alpha](double u) -> cplx {
    if (u < 1e-3) {
      // kernel series around the removable point u = 0
      double au = alpha * u;
      double top = 1.0 + c * alpha * (1.0 - au / 2.0 + au * au / 6.0 -
                                      au * au * au / 24.0);
      double bot = (1.0 + u / 2.0 + u * u / 6.0 + u * u * u / 24.0) * (u + c);
      return cplx(top / bot, 0.0);
    }
    return cplx((u - c * std::expm1(-alpha * u)) / (std::expm1(u) * (u + c)), 0.0);
  };
  return quad_semi_infinite(f, spec).value.real();
}

double v_function_derivative(double c, double alpha, const QuadratureSpec &spec) {
  if (!(c > 0.0)) throw std::domain_error("v_function_derivative: c must be positive");
  auto f = [c, alpha](double u) -> cplx {
    double d = u + c;
    return cplx(-(u / std::expm1(u)) * std::exp(-alpha * u) / (d * d), 0.0);
  };
  return quad_semi_infinite(f, spec).value.real();
}

cplx h_function(cplx t, double alpha, const QuadratureSpec &spec, bool plain) {
  if (t.real() == 0.0 && t.imag() <= 0.0)
    throw std::domain_error("h_function: t lies on the ray i(-inf, 0]");
  cplx it = kI * t;
  auto f = [it, alpha](double u) -> cplx {
    cplx num = cplx(u, 0.0) + it * std::expm1(-alpha * u); // u - it(1 - e^{-alpha u})
    return (u / std::expm1(u)) * num / (u * (u - it));
  };
  // kernel pole at u = it; subtract it when it drifts onto the path
  bool near = !plain && std::abs(it.imag()) < 0.03 && it.real() > 1e-12;
  QuadResult q;
  if (near) {
    cplx res = it * std::exp(-alpha * it) / (std::exp(it) - 1.0);
    q = quad_semi_infinite_pole(f, it, res, spec);
  } else {
    q = quad_semi_infinite(f, spec);
  }
  return q.value / t;
}

cplx i_function(int parity, cplx t, const QuadratureSpec &spec) {
  if (parity != 1 && parity != -1)
    throw std::invalid_argument("i_function: parity must be +1 or -1");
  if (t.real() == 0.0)
    throw std::domain_error("i_function: t on the imaginary axis");
  double kap = (1.0 + parity) / 4.0;
  cplx ct = std::cos(t / 2.0), st = std::sin(t / 2.0);
  auto m = [&](cplx u) -> cplx {
    return u / (std::exp(u) - 1.0) * std::exp(kap * u) *
           (u / 2.0 * ct - t * st);
  };
  auto f = [&](double u) -> cplx {
    cplx num = (u / std::expm1(u)) * std::exp(kap * u) * (u / 2.0 * ct - t * st);
    return num / (u * u + 4.0 * t * t);
  };
  QuadratureSpec s2 = spec;
  s2.decay_hint = 1.0 - kap;
  // poles of the kernel at +-2it
  cplx pole(0.0, 0.0);
  bool near = false;
  for (cplx p : {2.0 * kI * t, -2.0 * kI * t})
    if (p.real() > 1e-3 && std::abs(p.imag()) < 0.03) {
      pole = p;
      near = true;
    }
  QuadResult q;
  if (near)
    q = quad_semi_infinite_pole(f, pole, m(pole) / (2.0 * pole), s2);
  else
    q = quad_semi_infinite(f, s2);
  cplx out = q.value / t;
  if (t.real() < 0.0)
    out -= kPi * kI * std::exp(-0.5 * double(parity) * kI * t) / (2.0 * std::sin(t));
  return out;
}

cplx j_function(int parity, cplx t, const QuadratureSpec &spec) {
  return i_function(parity, t, spec) + log_upper(t) / (4.0 * std::sin(t / 2.0));
}

cplx log_upper(cplx z) {
  cplx w = std::log(z);
  if (w.imag() <= -kPi / 2.0) w += cplx(0.0, 2.0 * kPi);
  return w;
}

cplx m_pole_sum(cplx z, cplx t, const QuadratureSpec &spec) {
  if (std::abs(z - 1.0) < 1e-9)
    throw std::invalid_argument("m_pole_sum: z too close to 1");
  if (!(t.real() < kPi - 1e-9))
    throw std::domain_error("m_pole_sum: Re(t) must stay below pi");
  cplx a = 1.0 - t / kPi;
  // Lerch Phi(z, 1, a) = int_0^1 x^{a-1}/(1 - z x) dx, split at 1/2: the
  // endpoint singularity is summed as a geometric series, the rest quadratured
  cplx head(0.0, 0.0);
  cplx zj = 1.0;
  for (int j = 0; j < 64; ++j) {
    head += zj * std::exp(-(a + double(j)) * std::log(2.0)) / (a + double(j));
    zj *= z;
  }
  auto f = [z, a](double x) -> cplx {
    return std::exp((a - 1.0) * std::log(x)) / (1.0 - z * x);
  };
  cplx phi = head + quad_finite(f, 0.5, 1.0, spec).value;
  return -(std::log(1.0 - z) + z * phi) / t;
}

const ContourSamples &contour_samples(const DirichletCharacter &chi,
                                      double alpha, double eps, int n) {
  static std::map<std::tuple<std::string, double, double, int>, ContourSamples>
      cache;
  auto key = std::make_tuple(chi.label(), alpha, eps, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  double hc = (1.0 + alpha) / 2.0, cc = (1.0 - alpha) / 2.0;
  const auto &gl = gauss_legendre_nodes(n);
  ContourSamples cs;
  cs.s.reserve(n);
  cs.dsw.reserve(n);
  // angle ascending, so the path starts next to s = 1 where the branch anchor
  // lives; the generator hands nodes in descending x
  for (int i = n - 1; i >= 0; --i) {
    double phi = kPi * (gl[i].first + 1.0) / 2.0;
    cs.s.push_back(cplx(hc * std::cos(phi) + cc, eps * std::sin(phi)));
    cs.dsw.push_back(cplx(-hc * std::sin(phi), eps * std::cos(phi)) *
                     (gl[i].second * kPi / 2.0));
  }
  std::vector<cplx> path;
  path.reserve(n + 1);
  path.push_back(cplx(1.0, 0.0));
  path.insert(path.end(), cs.s.begin(), cs.s.end());
  BranchedLogSamples bl = log_l_along_path(chi, path);
  cs.logl.assign(bl.log_values.begin() + 1, bl.log_values.end());
  return cache.emplace(std::move(key), std::move(cs)).first->second;
}

cplx contour_log_integral(const ContourSamples &cs,
                          const std::function<cplx(cplx)> &f) {
  CompensatedCSum acc;
  for (size_t k = 0; k < cs.s.size(); ++k)
    acc.add(cs.dsw[k] * f(cs.s[k]) * cs.logl[k]);
  return -acc.value(); // the contour runs angle pi -> 0
}

cplx l_explicit(const DirichletCharacter &chi, cplx t,
                const CramerEvalParams &params, ExplicitRep rep) {
  if (rep == ExplicitRep::kAuto)
    rep = t.real() > 0.0 ? ExplicitRep::kRight : ExplicitRep::kContinued;
  if (rep == ExplicitRep::kRight && !(t.real() > 0.0))
    throw std::domain_error("l_explicit: right-plane form needs Re(t) > 0");
  if (rep == ExplicitRep::kContinued && t.real() == 0.0 && t.imag() <= 0.0)
    throw std::domain_error("l_explicit: t lies on the ray i(-inf, 0]");
  pole_guard(chi, t, params.P);

  double alpha = params.alpha;
  DirichletCharacter chib = conjugate(chi);
  cplx z = double(chi.parity) * std::exp(-kI * alpha * kPi);
  cplx gconst(euler_gamma() + std::log(2.0 * kPi / double(chi.modulus)),
              -kPi / 2.0);

  if (rep == ExplicitRep::kRight) {
    cplx sum1 = prime_resolvent(chi, 1.0, +1, t, params);
    cplx sum2 = prime_resolvent(chib, 1.0 + alpha, -1, t, params);
    cplx msum = -m_pole_sum(z, -t, params.quad); // poles at t = -m pi
    cplx bracket = kI * t * sum2 - kI * t * msum + kI * log_lambda(chi, alpha) -
                   (1.0 + alpha) * kPi / 2.0 - gconst / t -
                   h_function(-t, alpha, params.quad);
    const ContourSamples &cs = contour_samples(chi, alpha, params.epsilon);
    cplx cint =
        contour_log_integral(cs, [t](cplx s) { return std::exp(kI * s * t); });
    return -(kI * t / (2.0 * kPi)) * std::exp(kI * t / 2.0) * sum1 +
           std::exp(-kI * (alpha + 0.5) * t) / (2.0 * kPi) * bracket -
           (t / (2.0 * kPi)) * std::exp(-kI * t / 2.0) * cint;
  }

  cplx sum1 = prime_resolvent(chib, 1.0, -1, t, params);
  cplx sum2 = prime_resolvent(chi, 1.0 + alpha, +1, t, params);
  cplx msum = m_pole_sum(z, t, params.quad); // poles at t = +n pi
  cplx bracket = kI * t * sum2 - kI * t * msum + kI * log_lambda(chib, alpha) -
                 (1.0 + alpha) * kPi / 2.0 + gconst / t -
                 h_function(t, alpha, params.quad);
  const ContourSamples &cs = contour_samples(chib, alpha, params.epsilon);
  cplx cint =
      contour_log_integral(cs, [t](cplx s) { return std::exp(-kI * s * t); });
  const MuData &mu = cached_mu(chi);
  cplx out = (kI * t / (2.0 * kPi)) * std::exp(-kI * t / 2.0) * sum1 -
             std::exp(kI * (alpha + 0.5) * t) / (2.0 * kPi) * bracket -
             (t / (2.0 * kPi)) * std::exp(kI * t / 2.0) * cint;
  out -= kI * std::exp(-0.5 * double(chi.parity) * kI * t) / (2.0 * std::sin(t));
  out -= double(mu.mu_tau0) *
         (std::exp(kI * mu.tau0 * t) + std::exp(-kI * mu.tau0 * t));
  out -= double(mu.mu0);
  return out;
}

cplx reflection_rhs(const DirichletCharacter &chi, cplx t, const MuData &mu) {
  cplx sine;
  if (t.real() < 0.0)
    sine = -kI * std::exp(-0.5 * double(chi.parity) * kI * t) / (2.0 * std::sin(t));
  else
    sine = kI * std::exp(0.5 * double(chi.parity) * kI * t) / (2.0 * std::sin(t));
  return sine -
         double(mu.mu_tau0) *
             (std::exp(kI * mu.tau0 * t) + std::exp(-kI * mu.tau0 * t)) -
         double(mu.mu0);
}

cplx pole_residue_probe(const DirichletCharacter &chi, long long p, int m,
                        double radius, const CramerEvalParams &params,
                        int nodes) {
  if (radius <= 0.0 || nodes < 16)
    throw std::invalid_argument("pole_residue_probe: bad radius or node count");
  cplx center(0.0, double(m) * std::log(double(p)));
  CompensatedCSum acc;
  for (int k = 0; k < nodes; ++k) {
    double th = 2.0 * kPi * double(k) / double(nodes);
    cplx off = std::polar(radius, th);
    acc.add(l_explicit(chi, center + off, params, ExplicitRep::kContinued) * off);
  }
  return acc.value() / double(nodes);
}

} // namespace ltensor
