#include "ltensor/lfunctions.hpp"
#include "ltensor/primes.hpp"
#include "ltensor/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ltensor {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroTol = 1e-8;
constexpr cplx kI{0.0, 1.0};

cplx l_hurwitz(const DirichletCharacter &chi, cplx s) {
  const long long N = chi.modulus;
  CompensatedCSum acc;
  for (long long a = 1; a <= N; ++a) {
    cplx ch = chi(a);
    if (ch == cplx(0.0, 0.0))
      continue;
    acc.add(ch * hurwitz_zeta(s, cplx((double)a / (double)N, 0.0)));
  }
  return std::exp(-s * std::log((double)N)) * acc.value();
}

cplx l_gamma_integral(const DirichletCharacter &chi, cplx s) {
  const long long N = chi.modulus;
  // g(t) = sum_a chi(a) expm1(-a t) / (-expm1(-N t)); g(0) finite since sum chi(a) = 0;
  // beyond t = 60 the value is below noise and rounding residue would be amplified
  auto g = [&](double t) -> cplx {
    if (t > 60.0)
      return cplx(0.0, 0.0);
    CompensatedCSum num;
    for (long long a = 1; a < N; ++a) {
      cplx ch = chi(a);
      if (ch != cplx(0.0, 0.0))
        num.add(ch * std::expm1(-(double)a * t));
    }
    return num.value() / (-std::expm1(-(double)N * t));
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  spec.decay_hint = 1.0;
  QuadResult q = quad_semi_infinite(
      [&](double t) { return std::exp((s - 1.0) * std::log(t)) * g(t); }, spec);
  return std::exp(-log_gamma(s)) * q.value;
}

cplx l_at_one(const DirichletCharacter &chi) {
  const long long N = chi.modulus;
  CompensatedCSum acc;
  for (long long a = 1; a < N; ++a) {
    cplx ch = chi(a);
    if (ch != cplx(0.0, 0.0))
      acc.add(ch * digamma(cplx((double)a / (double)N, 0.0)));
  }
  return -acc.value() / (double)N;
}

bool is_real_character(const DirichletCharacter &chi) {
  for (const cplx &v : chi.values)
    if (std::abs(v.imag()) > 1e-14)
      return false;
  return true;
}

} // namespace

cplx l_value(const DirichletCharacter &chi, cplx s, LMethod method) {
  switch (method) {
  case LMethod::kHurwitz:
    return l_hurwitz(chi, s);
  case LMethod::kGammaIntegral:
    return l_gamma_integral(chi, s);
  case LMethod::kSeries:
    return l_series(chi, s, 10000000);
  case LMethod::kAuto:
    break;
  }
  if (std::abs(s - 1.0) < 1e-12) {
    if (chi.is_principal())
      throw std::domain_error("l_value: pole at s = 1 for principal chi");
    return l_at_one(chi);
  }
  if (!chi.is_principal() && std::abs(s.imag()) <= 10.0 &&
      (std::abs(s - 1.0) <= 0.1 || s.real() > 1.2))
    return l_gamma_integral(chi, s);
  return l_hurwitz(chi, s);
}

cplx l_series(const DirichletCharacter &chi, cplx s, long long terms) {
  CompensatedCSum acc;
  for (long long n = 1; n <= terms; ++n) {
    cplx ch = chi(n);
    if (ch == cplx(0.0, 0.0))
      continue;
    acc.add(ch * std::exp(-s * std::log((double)n)));
  }
  return acc.value();
}

cplx l_euler(const DirichletCharacter &chi, cplx s, long long limit) {
  return std::exp(dirichlet_log_sum(chi, s, limit));
}

cplx completed_l(const DirichletCharacter &chi, cplx s) {
  const double a4 = (1.0 - chi.parity) * 0.25; // (1 - chi(-1))/4
  const cplx e = s * 0.5 + a4;
  return std::exp(-e * std::log(kPi / (double)chi.modulus) + log_gamma(e)) *
         l_value(chi, s);
}

cplx xi(const DirichletCharacter &chi, cplx s) { return completed_l(chi, s + 0.5); }

cplx root_number(const DirichletCharacter &chi) {
  const int a = chi.parity == 1 ? 0 : 1;
  cplx ia = a == 0 ? cplx(1.0, 0.0) : kI;
  return gauss_sum(chi) / (ia * std::sqrt((double)chi.modulus));
}

double functional_equation_residual(const DirichletCharacter &chi, cplx s) {
  const cplx lhs = l_value(chi, s);
  const cplx om = 1.0 - s;
  const cplx pref = std::exp(-s * std::log((double)chi.modulus) +
                             (s - 1.0) * std::log(2.0 * kPi) + log_gamma(om));
  const cplx phase = std::exp(-kI * (kPi / 2.0) * om) +
                     (double)chi.parity * std::exp(kI * (kPi / 2.0) * om);
  const cplx rhs = pref * gauss_sum(chi) * phase * l_value(conjugate(chi), om);
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

namespace {

// one branch-continuation step: value at u1 on the branch holding v0 at u0
cplx branch_step(const DirichletCharacter &chi, cplx u0, cplx v0, cplx u1, int depth) {
  cplx lv = l_value(chi, u1);
  if (lv == cplx(0.0, 0.0))
    throw std::runtime_error("log_l_along_path: L vanishes on the path");
  cplx principal = std::log(lv);
  double k = std::round((v0.imag() - principal.imag()) / (2.0 * kPi));
  cplx cand = principal + cplx(0.0, 2.0 * kPi * k);
  if (std::abs(cand.imag() - v0.imag()) < 1.2)
    return cand;
  if (depth >= 40) {
    std::ostringstream msg;
    msg << "log_l_along_path: branch tracking failed near u = " << u1.real() << "+"
        << u1.imag() << "i";
    throw std::runtime_error(msg.str());
  }
  cplx mid = branch_step(chi, u0, v0, (u0 + u1) * 0.5, depth + 1);
  return branch_step(chi, (u0 + u1) * 0.5, mid, u1, depth + 1);
}

} // namespace

BranchedLogSamples log_l_along_path(const DirichletCharacter &chi,
                                    const std::vector<cplx> &path,
                                    const QuadratureSpec &) {
  if (path.size() < 2)
    throw std::invalid_argument("log_l_along_path: need at least two points");
  const bool from_back = path.back().real() > path.front().real();
  const cplx anchor = from_back ? path.back() : path.front();
  if (anchor.real() < 1.0 - 1e-9)
    throw std::domain_error("log_l_along_path: no endpoint with Re(u) >= 1");

  // seed the branch where the prime sum converges, then walk to the anchor
  const cplx seed_pt(std::max(1.5, anchor.real()), anchor.imag());
  const cplx prime_log = dirichlet_log_sum(chi, seed_pt, 200000);
  cplx v = std::log(l_value(chi, seed_pt));
  v += cplx(0.0, 2.0 * kPi * std::round((prime_log.imag() - v.imag()) / (2.0 * kPi)));
  if (std::abs(v - prime_log) > 0.5)
    throw std::runtime_error("log_l_along_path: anchor disagrees with the prime log sum");
  cplx u = seed_pt;
  if (std::abs(anchor - seed_pt) > 1e-15) {
    v = branch_step(chi, u, v, anchor, 0);
    u = anchor;
  }

  BranchedLogSamples out;
  out.points.resize(path.size());
  out.log_values.resize(path.size());
  out.windings.resize(path.size());
  const size_t n = path.size();
  for (size_t j = 0; j < n; ++j) {
    const size_t idx = from_back ? n - 1 - j : j;
    const cplx pt = path[idx];
    if (std::abs(pt - u) > 1e-15) {
      v = branch_step(chi, u, v, pt, 0);
      u = pt;
    }
    out.points[idx] = pt;
    out.log_values[idx] = v;
    out.windings[idx] =
        (int)std::lround((v.imag() - std::log(l_value(chi, pt)).imag()) / (2.0 * kPi));
  }
  for (size_t j = 1; j < n; ++j)
    if (std::abs(out.log_values[j].imag() - out.log_values[j - 1].imag()) >= kPi) {
      std::ostringstream msg;
      msg << "log_l_along_path: sampling too coarse between points " << j - 1 << " and "
          << j;
      throw std::runtime_error(msg.str());
    }
  return out;
}

cplx l_log_derivative(const DirichletCharacter &chi, cplx z, double radius) {
  // L'(z) by the Cauchy integral over a circle, then divide by L(z)
  const int n = 128;
  CompensatedCSum acc;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    const cplx e = std::exp(kI * th);
    acc.add(l_value(chi, z + radius * e) * std::exp(-kI * th));
  }
  const cplx deriv = acc.value() / (double)n / radius;
  return deriv / l_value(chi, z);
}

namespace {

double z_function(const DirichletCharacter &chi, const cplx &rot, double t) {
  return (rot * completed_l(chi, cplx(0.5, t))).real();
}

double bisect_zero(const DirichletCharacter &chi, const cplx &rot, double a, double b,
                   double za, double zb) {
  if (za == 0.0)
    return a;
  if (zb == 0.0)
    return b;
  for (int it = 0; it < 200 && b - a > 1e-9; ++it) {
    const double m = 0.5 * (a + b);
    const double zm = z_function(chi, rot, m);
    if (zm == 0.0)
      return m;
    if ((za < 0) != (zm < 0)) {
      b = m;
      zb = zm;
    } else {
      a = m;
      za = zm;
    }
  }
  (void)zb;
  return 0.5 * (a + b);
}

// total argument change of completed_l along the segment [a, b]
double arg_change(const DirichletCharacter &chi, cplx a, cplx b, cplx fa, cplx fb,
                  int depth) {
  const double d = std::arg(fb / fa);
  if (std::abs(d) < 1.2 && std::abs(b - a) <= 0.1)
    return d;
  if (depth >= 45) {
    std::ostringstream msg;
    msg << "verify_zero_count: argument tracking stalled near " << a.real() << "+"
        << a.imag() << "i (reposition T away from a zero)";
    throw std::runtime_error(msg.str());
  }
  const cplx m = (a + b) * 0.5;
  const cplx fm = completed_l(chi, m);
  return arg_change(chi, a, m, fa, fm, depth + 1) +
         arg_change(chi, m, b, fm, fb, depth + 1);
}

} // namespace

ZeroList find_zeros(const DirichletCharacter &chi, double T, double step) {
  if (!chi.primitive || chi.is_principal())
    throw std::domain_error("find_zeros: requires a primitive nonprincipal character");
  if (T <= 0.0 || step <= 0.0)
    throw std::invalid_argument("find_zeros: T and step must be positive");

  const cplx eps = root_number(chi);
  const cplx rot = std::exp(-kI * (std::arg(eps) / 2.0));

  ZeroList list;
  list.label = chi.label();
  list.complete_to = T;

  double t = 1e-6; // stay off t = 0 where mu0 lives
  double zt = z_function(chi, rot, t);
  while (t < T) {
    const double t2 = std::min(t + step, T);
    const double z2 = z_function(chi, rot, t2);
    if ((zt < 0) != (z2 < 0) || z2 == 0.0)
      list.ordinates.push_back(bisect_zero(chi, rot, t, t2, zt, z2));
    t = t2;
    zt = z2;
  }

  MuData mu = mu_data(chi, 1e-6);
  list.mu0 = mu.mu0;
  list.mu_tau0 = mu.mu_tau0;
  list.tau0 = mu.tau0;

  const long long counted = verify_zero_count(chi, T);
  if (counted != (long long)list.ordinates.size()) {
    std::ostringstream msg;
    msg << "find_zeros: scan found " << list.ordinates.size()
        << " ordinates but the argument principle counts " << counted << " up to T = "
        << T;
    throw std::runtime_error(msg.str());
  }
  return list;
}

long long verify_zero_count(const DirichletCharacter &chi, double T) {
  if (T <= 0.0)
    throw std::invalid_argument("verify_zero_count: T must be positive");
  const cplx corners[5] = {cplx(-0.5, 0.0), cplx(1.5, 0.0), cplx(1.5, T),
                           cplx(-0.5, T), cplx(-0.5, 0.0)};
  double total = 0.0;
  cplx f0 = completed_l(chi, corners[0]);
  cplx fprev = f0;
  for (int e = 0; e < 4; ++e) {
    const cplx fnext = e == 3 ? f0 : completed_l(chi, corners[e + 1]);
    total += arg_change(chi, corners[e], corners[e + 1], fprev, fnext, 0);
    fprev = fnext;
  }
  const double winding = total / (2.0 * kPi);
  const long long count = std::llround(winding);
  if (std::abs(winding - (double)count) > 0.05)
    throw std::runtime_error("verify_zero_count: winding number is not an integer");
  return count;
}

MuData mu_data(const DirichletCharacter &chi, double tol) {
  if (!chi.primitive)
    throw std::domain_error("mu_data: requires a primitive character");
  MuData out;
  const double lhalf = std::abs(l_value(chi, cplx(0.5, 0.0)));
  if (lhalf <= tol)
    throw std::runtime_error("mu_data: |L(1/2)| below tolerance, order indeterminate");
  if (is_real_character(chi)) {
    // real zeros in (0, 1/2) can only occur for real chi
    double prev_s = 0.005;
    double prev_v = l_value(chi, cplx(prev_s, 0.0)).real();
    for (double s = 0.01; s < 0.5; s += 0.005) {
      const double v = l_value(chi, cplx(s, 0.0)).real();
      if ((prev_v < 0) != (v < 0) || v == 0.0) {
        double a = prev_s, b = s;
        for (int it = 0; it < 100 && b - a > 1e-10; ++it) {
          const double m = 0.5 * (a + b);
          const double vm = l_value(chi, cplx(m, 0.0)).real();
          if ((vm < 0) == (prev_v < 0))
            a = m;
          else
            b = m;
        }
        out.mu_tau0 = 1;
        out.tau0 = 0.5 - 0.5 * (a + b);
        return out;
      }
      prev_s = s;
      prev_v = v;
    }
  }
  out.mu_tau0 = 0;
  out.tau0 = 0.25;
  return out;
}

void save_zeros(const ZeroList &list, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("save_zeros: cannot write " + path);
  char buf[160];
  std::snprintf(buf, sizeof buf, "label=%s T=%.17g mu0=%d mu_tau0=%d tau0=%.17g\n",
                list.label.c_str(), list.complete_to, list.mu0, list.mu_tau0,
                list.tau0);
  out << buf;
  for (double g : list.ordinates) {
    std::snprintf(buf, sizeof buf, "%.17g\n", g);
    out << buf;
  }
  if (!out)
    throw std::runtime_error("save_zeros: write failed for " + path);
}

ZeroList load_zeros(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_zeros: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_zeros: " + path + ": empty file");
  ZeroList list;
  {
    char label[64];
    if (std::sscanf(line.c_str(), "label=%63s T=%lf mu0=%d mu_tau0=%d tau0=%lf",
                    label, &list.complete_to, &list.mu0, &list.mu_tau0,
                    &list.tau0) != 5)
      throw std::runtime_error("load_zeros: " + path + ": line 1: malformed header");
    list.label = label;
  }
  long long ln = 1;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty())
      continue;
    char *end = nullptr;
    const double g = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || !std::isfinite(g) || g <= 0.0)
      throw std::runtime_error("load_zeros: " + path + ": line " + std::to_string(ln) +
                               ": malformed ordinate");
    if (!list.ordinates.empty() && g <= list.ordinates.back())
      throw std::runtime_error("load_zeros: " + path + ": line " + std::to_string(ln) +
                               ": ordinates must ascend");
    list.ordinates.push_back(g);
  }
  return list;
}

ZeroList ingest_external(const std::string &path, const DirichletCharacter &chi) {
  ZeroList list = load_zeros(path);
  if (list.label != chi.label())
    throw std::runtime_error("ingest_external: " + path + ": label " + list.label +
                             " does not match character " + chi.label());
  for (size_t i = 0; i < list.ordinates.size(); ++i) {
    const double g = list.ordinates[i];
    const double lhat = std::abs(completed_l(chi, cplx(0.5, g)));
    // scale-free companion bound keeps the test meaningful at large heights
    const double scale = std::abs(completed_l(chi, cplx(1.5, g)));
    if (lhat >= kZeroTol || lhat >= kZeroTol * scale) {
      std::ostringstream msg;
      msg << "ingest_external: " << path << ": line " << i + 2
          << ": ordinate is not a zero (|L-hat| = " << lhat << ")";
      throw std::runtime_error(msg.str());
    }
  }
  return list;
}

} // namespace ltensor
