#include "ltensor/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ltensor {

double euler_gamma() { return 0.57721566490153286060651209008240243; }

double bernoulli_2n(int n) {
  static const double b[13] = {0.0,
                               1.0 / 6,
                               -1.0 / 30,
                               1.0 / 42,
                               -1.0 / 30,
                               5.0 / 66,
                               -691.0 / 2730,
                               7.0 / 6,
                               -3617.0 / 510,
                               43867.0 / 798,
                               -174611.0 / 330,
                               854513.0 / 138,
                               -236364091.0 / 2730};
  if (n < 1 || n > 12) throw std::domain_error("bernoulli_2n: n out of range");
  return b[n];
}

cplx cpow(cplx b, cplx e) { return std::exp(e * std::log(b)); }

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
const double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

cplx log_gamma_lanczos(cplx z) { // Re(z) >= 0.5
  cplx a = kLanczosC[0];
  for (int k = 1; k < 15; ++k) a += kLanczosC[k] / (z - 1.0 + double(k));
  cplx base = z + (kLanczosG - 0.5);
  return 0.5 * std::log(2 * M_PI) + (z - 0.5) * std::log(base) - base + std::log(a);
}

} // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0)
    throw std::domain_error("log_gamma: on cut (-inf, 0]");
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  // shift right; identity log_gamma(z) = log_gamma(z+n) - sum Log(z+k) holds
  // with principal logs on the cut plane
  int n = int(std::ceil(0.5 - z.real()));
  cplx acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) acc += std::log(z + double(k));
  return log_gamma_lanczos(z + double(n)) - acc;
}

cplx gamma_fn(cplx z) {
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() == std::floor(z.real()) &&
      z.real() < 171.0) {
    double r = 1.0;
    for (int k = 2; k < int(z.real()); ++k) r *= k;
    return {r, 0.0};
  }
  return std::exp(log_gamma(z));
}

cplx digamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("digamma: pole at nonpositive integer");
  cplx shift{0.0, 0.0};
  while (z.real() < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  cplx inv2 = 1.0 / (z * z);
  cplx acc{0.0, 0.0};
  cplx p = inv2;
  for (int n = 1; n <= 7; ++n) {
    acc += bernoulli_2n(n) / (2.0 * n) * p;
    p *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - acc;
}

cplx hurwitz_zeta(cplx w, cplx a) {
  if (a.real() <= 0.0) throw std::domain_error("hurwitz_zeta: Re(a) <= 0");
  if (w == cplx{1.0, 0.0}) throw std::domain_error("hurwitz_zeta: pole at w = 1");
  double target = 10.0 + 0.7 * std::abs(w.imag());
  int K = 0;
  while (std::abs(a + double(K)) < target) ++K;
  CompensatedCSum prefix;
  for (int k = 0; k < K; ++k) prefix.add(cpow(a + double(k), -w));
  cplx T = a + double(K);
  cplx logT = std::log(T);
  cplx Tmw = std::exp(-w * logT);
  cplx res = prefix.value() + std::exp((1.0 - w) * logT) / (w - 1.0) + 0.5 * Tmw;
  // Euler-Maclaurin correction: B_{2j}/(2j)! * (w)_{2j-1} * T^{-w-2j+1}
  double fact = 1.0;     // (2j)!
  cplx poch{1.0, 0.0};   // (w)_{2j-1}
  cplx Tpow = Tmw * T;   // T^{-w-2j+1} at j=0 seed
  for (int j = 1; j <= 12; ++j) {
    fact *= (2 * j - 1) * (2 * j);
    if (j == 1)
      poch = w;
    else
      poch *= (w + double(2 * j - 3)) * (w + double(2 * j - 2));
    Tpow /= T * T;
    res += bernoulli_2n(j) / fact * poch * Tpow;
  }
  return res;
}

} // namespace ltensor
