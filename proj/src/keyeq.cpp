#include "ltensor/keyeq.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "ltensor/primes.hpp"
#include "ltensor/quadrature.hpp"
#include "ltensor/special.hpp"

namespace ltensor {

namespace {

const double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// (base)^{-w}; the identities keep every argument inside (-pi/2, pi/2)
cplx inv_pow(cplx base, cplx w) {
  if (!(base.real() > 0.0))
    throw std::domain_error("zero side: power base left the right half-plane");
  return cpow(base, -w);
}

// derivative of the zero-counting function at height x
double density(double x, double n) {
  return std::log(n * x / (2.0 * kPi)) / (2.0 * kPi);
}

// margin for the counting fluctuation left after the density integral
double fluct_margin(double t, double n) {
  return std::log(n * t / (2.0 * kPi)) / kPi + 2.0;
}

// int_T^inf f(x) density(x, n) dx over doubling panels; f decays like
// x^{-decay} with decay > 1; the beyond-cut estimate accumulates into rem
cplx density_integral(const std::function<cplx(double)> &f, double T, double n,
                      double decay, double &rem) {
  const auto &gl = gauss_legendre_nodes(24);
  CompensatedCSum acc;
  double lo = T;
  for (int k = 0; k < 12; ++k) {
    const double mid = 1.5 * lo, half = 0.5 * lo;
    for (const auto &nw : gl) {
      const double x = mid + half * nw.first;
      acc.add(nw.second * half * f(x) * density(x, n));
    }
    lo *= 2.0;
  }
  const double d1 = decay - 1.0;
  rem += std::abs(f(lo)) * lo *
         (density(lo, n) / d1 + 1.0 / (2.0 * kPi * d1 * d1));
  return acc.value();
}

void check_list(const char *who, const ZeroList &list,
                const DirichletCharacter &chi) {
  if (list.label != chi.label())
    throw std::invalid_argument(std::string(who) + ": zero list belongs to " +
                                list.label + ", not " + chi.label());
  if (!(list.complete_to > 0.0))
    throw std::invalid_argument(std::string(who) +
                                ": zero list carries no height");
}

const ZeroList &cached_zeros(const DirichletCharacter &chi, double T) {
  static std::map<std::pair<std::string, double>, ZeroList> cache;
  const auto key = std::make_pair(chi.label(), T);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, find_zeros(chi, T)).first->second;
}

} // namespace

bool region_check(cplx w, cplx s, int r, const KeyEqParams &params) {
  if (r != 1 && r != 2)
    throw std::invalid_argument("region_check: r must be 1 or 2");
  if (!(params.theta > 0.0) || !(params.theta < kPi / 4.0) ||
      !(params.epsilon > 0.0) || !(params.tau_strip >= 0.0))
    throw std::invalid_argument("region_check: bad region parameters");
  const double tt = std::tan(params.theta);
  const double slant = s.real() * tt - s.imag();
  const double rr = double(r);
  return slant > (0.5 * rr + rr * params.tau_strip) * tt && slant < rr * tt &&
         s.real() > rr * (1.0 + params.epsilon) && w.real() > rr;
}

TailedValue zero_side_r1_tailed(cplx w, cplx s, const DirichletCharacter &chi,
                                const ZeroList &zeros,
                                const ZeroList &conj_zeros,
                                double *cut_remainder) {
  check_list("zero_side_r1", zeros, chi);
  check_list("zero_side_r1", conj_zeros, conjugate(chi));
  if (!(w.real() > 1.0))
    throw std::domain_error("zero_side_r1: requires Re(w) > 1");
  const double n = double(chi.modulus);
  const cplx se = s - 0.5;
  CompensatedCSum acc;
  for (double g : zeros.ordinates) acc.add(inv_pow(se - kI * g, w));
  for (double g : conj_zeros.ordinates) acc.add(inv_pow(se + kI * g, w));

  // trivial ladder: entries s + 2n - (3 + chi(-1))/2 with n >= 1
  acc.add(cpow(2.0, -w) *
          hurwitz_zeta(w, 0.5 * (s + 2.0 - 0.5 * (3.0 + chi.parity))));

  // exceptional real zeros on the half-line
  if (zeros.mu_tau0 != 0)
    acc.add(double(zeros.mu_tau0) *
            (inv_pow(se - zeros.tau0, w) + inv_pow(se + zeros.tau0, w)));
  if (zeros.mu0 != 0) acc.add(double(zeros.mu0) * inv_pow(se, w));

  // density completion past each list height
  double rem = 0.0;
  acc.add(density_integral([&](double x) { return inv_pow(se - kI * x, w); },
                           zeros.complete_to, n, w.real(), rem));
  acc.add(density_integral([&](double x) { return inv_pow(se + kI * x, w); },
                           conj_zeros.complete_to, n, w.real(), rem));

  TailedValue out;
  out.value = acc.value();
  out.tail = std::abs(inv_pow(se - kI * zeros.complete_to, w)) *
                 fluct_margin(zeros.complete_to, n) +
             std::abs(inv_pow(se + kI * conj_zeros.complete_to, w)) *
                 fluct_margin(conj_zeros.complete_to, n);
  if (cut_remainder) *cut_remainder += rem;
  return out;
}

cplx zero_side_r1(cplx w, cplx s, const DirichletCharacter &chi,
                  const ZeroList &zeros) {
  return zero_side_r1_tailed(w, s, chi, zeros, zeros).value;
}

TailedValue zero_side_r2_tailed(cplx w, cplx s, const DirichletCharacter &chi1,
                                const DirichletCharacter &chi2,
                                const ZeroList &zeros1,
                                const ZeroList &conj_zeros1,
                                const ZeroList &zeros2,
                                const ZeroList &conj_zeros2,
                                double *cut_remainder) {
  check_list("zero_side_r2", zeros1, chi1);
  check_list("zero_side_r2", conj_zeros1, conjugate(chi1));
  check_list("zero_side_r2", zeros2, chi2);
  check_list("zero_side_r2", conj_zeros2, conjugate(chi2));
  if (!(w.real() > 2.0))
    throw std::domain_error("zero_side_r2: requires Re(w) > 2");
  const double n1 = double(chi1.modulus), n2 = double(chi2.modulus);
  const double rw = w.real();
  const cplx sm = s - 1.0;
  CompensatedCSum acc;
  double rem = 0.0, fl = 0.0;

  // zero x zero over both half-planes; doubly-reflected block enters negated
  for (double g1 : zeros1.ordinates)
    for (double g2 : zeros2.ordinates) acc.add(inv_pow(sm - kI * (g1 + g2), w));
  for (double g1 : conj_zeros1.ordinates)
    for (double g2 : conj_zeros2.ordinates)
      acc.add(-inv_pow(sm + kI * (g1 + g2), w));

  // one-coordinate completions of the double blocks
  auto strip = [&](const std::vector<double> &kept, double far_T, double far_n,
                   int e, double sign) {
    for (double g : kept) {
      acc.add(sign * density_integral(
                         [&](double x) {
                           return inv_pow(sm - double(e) * kI * (g + x), w);
                         },
                         far_T, far_n, rw, rem));
      fl += std::abs(inv_pow(sm - double(e) * kI * (g + far_T), w)) *
            fluct_margin(far_T, far_n);
    }
  };
  strip(zeros1.ordinates, zeros2.complete_to, n2, +1, 1.0);
  strip(zeros2.ordinates, zeros1.complete_to, n1, +1, 1.0);
  strip(conj_zeros1.ordinates, conj_zeros2.complete_to, n2, -1, -1.0);
  strip(conj_zeros2.ordinates, conj_zeros1.complete_to, n1, -1, -1.0);

  // both coordinates past their heights
  auto corner = [&](double ta, double tb, int e, double sign) {
    const auto &glx = gauss_legendre_nodes(24);
    const auto &gly = gauss_legendre_nodes(16);
    CompensatedCSum cacc;
    const double d1 = rw - 1.0;
    double lox = ta;
    for (int kx = 0; kx < 12; ++kx) {
      const double midx = 1.5 * lox, halfx = 0.5 * lox;
      for (const auto &nx : glx) {
        const double x = midx + halfx * nx.first;
        const double wx = nx.second * halfx * density(x, n1);
        CompensatedCSum row;
        double loy = tb;
        for (int ky = 0; ky < 10; ++ky) {
          const double midy = 1.5 * loy, halfy = 0.5 * loy;
          for (const auto &ny : gly) {
            const double y = midy + halfy * ny.first;
            row.add(ny.second * halfy * density(y, n2) *
                    inv_pow(sm - double(e) * kI * (x + y), w));
          }
          loy *= 2.0;
        }
        rem += wx * std::abs(inv_pow(sm - double(e) * kI * (x + loy), w)) *
               loy * (density(loy, n2) / d1 + 1.0 / (2.0 * kPi * d1 * d1));
        cacc.add(wx * row.value());
      }
      lox *= 2.0;
    }
    rem += std::abs(inv_pow(sm - double(e) * kI * (lox + tb), w)) * lox * lox *
           density(lox, n1) * density(lox, n2) / (d1 * (rw - 2.0));
    acc.add(sign * cacc.value());
  };
  corner(zeros1.complete_to, zeros2.complete_to, +1, 1.0);
  corner(conj_zeros1.complete_to, conj_zeros2.complete_to, -1, -1.0);

  // zero x trivial ladder, ladder in closed form, zero coordinate completed
  auto ladder_block = [&](const ZeroList &za, double na, int par_b) {
    const double eb = 0.5 * (3.0 + par_b);
    const cplx tw = cpow(2.0, -w);
    auto g_of = [&](double x) {
      return tw * hurwitz_zeta(w, 1.0 + 0.5 * (s - cplx(0.5, x) - eb));
    };
    for (double g : za.ordinates) acc.add(g_of(g));
    acc.add(density_integral(g_of, za.complete_to, na, rw - 1.0, rem));
    fl += std::abs(g_of(za.complete_to)) * fluct_margin(za.complete_to, na);
  };
  ladder_block(zeros1, n1, chi2.parity);
  ladder_block(zeros2, n2, chi1.parity);

  // exceptional multiplicities of one character against the zeros of the other
  auto mu_zero = [&](const ZeroList &mu_src, const ZeroList &zb, double nb) {
    if (mu_src.mu_tau0 != 0) {
      const double t0 = mu_src.tau0;
      for (double g : zb.ordinates)
        acc.add(double(mu_src.mu_tau0) *
                (inv_pow(sm - kI * g - t0, w) + inv_pow(sm - kI * g + t0, w)));
      for (double t0s : {-t0, t0})
        acc.add(double(mu_src.mu_tau0) *
                density_integral(
                    [&](double x) { return inv_pow(sm - kI * x + t0s, w); },
                    zb.complete_to, nb, rw, rem));
      fl += 2.0 * std::abs(mu_src.mu_tau0) *
            std::abs(inv_pow(sm - kI * zb.complete_to, w)) *
            fluct_margin(zb.complete_to, nb);
    }
    if (mu_src.mu0 != 0) {
      for (double g : zb.ordinates)
        acc.add(double(mu_src.mu0) * inv_pow(sm - kI * g, w));
      acc.add(double(mu_src.mu0) *
              density_integral(
                  [&](double x) { return inv_pow(sm - kI * x, w); },
                  zb.complete_to, nb, rw, rem));
      fl += std::abs(mu_src.mu0) *
            std::abs(inv_pow(sm - kI * zb.complete_to, w)) *
            fluct_margin(zb.complete_to, nb);
    }
  };
  mu_zero(zeros1, zeros2, n2);
  mu_zero(zeros2, zeros1, n1);

  // exceptional multiplicities against the other trivial ladder
  auto mu_ladder_block = [&](const ZeroList &mu_src, int par_b) {
    const cplx tw = cpow(2.0, -w);
    if (mu_src.mu_tau0 != 0)
      for (double t0s : {-mu_src.tau0, mu_src.tau0})
        acc.add(double(mu_src.mu_tau0) * tw *
                hurwitz_zeta(w, 1.0 + 0.5 * (s - 2.0 - 0.5 * par_b + t0s)));
    if (mu_src.mu0 != 0)
      acc.add(double(mu_src.mu0) * tw *
              hurwitz_zeta(w, 1.0 + 0.5 * (s - 2.0 - 0.5 * par_b)));
  };
  mu_ladder_block(zeros1, chi2.parity);
  mu_ladder_block(zeros2, chi1.parity);

  // trivial x trivial ladder in closed form
  const cplx d = s - 3.0 - 0.5 * (chi1.parity + chi2.parity);
  acc.add(cpow(2.0, -w) * (hurwitz_zeta(w - 1.0, 0.5 * d + 2.0) -
                           (0.5 * d + 1.0) * hurwitz_zeta(w, 0.5 * d + 2.0)));

  // exceptional x exceptional constants
  const double m1t = zeros1.mu_tau0, m2t = zeros2.mu_tau0;
  const double m10 = zeros1.mu0, m20 = zeros2.mu0;
  if (m1t != 0.0 && m2t != 0.0)
    for (double s1 : {-zeros1.tau0, zeros1.tau0})
      for (double s2 : {-zeros2.tau0, zeros2.tau0})
        acc.add(m1t * m2t * inv_pow(sm + s1 + s2, w));
  if (m1t != 0.0 && m20 != 0.0)
    acc.add(m1t * m20 *
            (inv_pow(sm - zeros1.tau0, w) + inv_pow(sm + zeros1.tau0, w)));
  if (m2t != 0.0 && m10 != 0.0)
    acc.add(m2t * m10 *
            (inv_pow(sm - zeros2.tau0, w) + inv_pow(sm + zeros2.tau0, w)));
  if (m10 != 0.0 && m20 != 0.0) acc.add(m10 * m20 * inv_pow(sm, w));

  TailedValue out;
  out.value = acc.value();
  out.tail = fl;
  if (cut_remainder) *cut_remainder += rem;
  return out;
}

cplx zero_side_r2(cplx w, cplx s, const DirichletCharacter &chi1,
                  const DirichletCharacter &chi2, const ZeroList &zeros1,
                  const ZeroList &zeros2) {
  return zero_side_r2_tailed(w, s, chi1, chi2, zeros1, zeros1, zeros2, zeros2)
      .value;
}

ResidualReport verify_r1(cplx w, cplx s, const DirichletCharacter &chi,
                         const KeyEqParams &params) {
  if (!params.continued && !region_check(w, s, 1, params))
    throw std::domain_error(
        "verify_r1: (w, s) outside the stated region; set continued to extend");
  const ZeroList &z = cached_zeros(chi, params.T);
  const ZeroList &zc = cached_zeros(conjugate(chi), params.T);
  double rem = 0.0;
  const TailedValue zside = zero_side_r1_tailed(w, s, chi, z, zc, &rem);
  const cplx gw = gamma_fn(w);
  ResidualReport rep;
  rep.lhs = zside.value;
  rep.rhs = -von_mangoldt_sum(chi, s, w, params.P) / gw;
  rep.zero_tail = zside.tail;
  rep.prime_tail = tail_estimate(s, w, params.P) / std::abs(gw);
  rep.quad_error = rem;
  rep.w = w;
  rep.s = s;
  rep.r = 1;
  rep.label1 = chi.label();
  rep.T = params.T;
  rep.P = params.P;
  rep.tolerance = params.tolerance;
  rep.continued = params.continued;
  const double scale = std::abs(rep.lhs) + std::abs(rep.rhs);
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  rep.rel_residual = scale > 0.0 ? rep.abs_residual / scale : 0.0;
  rep.pass = rep.abs_residual < params.tolerance * scale + rep.zero_tail +
                                    rep.prime_tail + rep.quad_error;
  return rep;
}

ResidualReport verify_r2(cplx w, cplx s, const DirichletCharacter &chi1,
                         const DirichletCharacter &chi2,
                         const KeyEqParams &params) {
  if (!params.continued && !region_check(w, s, 2, params))
    throw std::domain_error(
        "verify_r2: (w, s) outside the stated region; set continued to extend");
  const ZeroList &z1 = cached_zeros(chi1, params.T);
  const ZeroList &c1 = cached_zeros(conjugate(chi1), params.T);
  const ZeroList &z2 = cached_zeros(chi2, params.T);
  const ZeroList &c2 = cached_zeros(conjugate(chi2), params.T);
  double tau1_min = 1e9;
  for (const ZeroList *zl : {&z1, &c1, &z2, &c2})
    if (!zl->ordinates.empty()) tau1_min = std::min(tau1_min, zl->ordinates[0]);
  validate_tensor_params(params.tensor, tau1_min);
  double rem = 0.0;
  const TailedValue zside =
      zero_side_r2_tailed(w, s, chi1, chi2, z1, c1, z2, c2, &rem);
  CompensatedCSum es;
  double ptail = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const TailedValue t = e_term_tailed(k, w, s, chi1, chi2, params.tensor);
    es.add(t.value);
    ptail += t.tail;
  }
  const cplx gw = gamma_fn(w);
  ResidualReport rep;
  rep.lhs = zside.value;
  rep.rhs = -es.value() / gw;
  rep.zero_tail = zside.tail;
  rep.prime_tail = ptail / std::abs(gw);
  rep.quad_error = rem;
  rep.w = w;
  rep.s = s;
  rep.r = 2;
  rep.label1 = chi1.label();
  rep.label2 = chi2.label();
  rep.T = params.T;
  rep.P = params.tensor.P;
  rep.tolerance = params.tolerance;
  rep.continued = params.continued;
  const double scale = std::abs(rep.lhs) + std::abs(rep.rhs);
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  rep.rel_residual = scale > 0.0 ? rep.abs_residual / scale : 0.0;
  rep.pass = rep.abs_residual < params.tolerance * scale + rep.zero_tail +
                                    rep.prime_tail + rep.quad_error;
  return rep;
}

} // namespace ltensor
