#include "ltensor/primes.hpp"
#include "ltensor/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace ltensor {

namespace {

// sieve of Eratosthenes, segmented so large limits stay cache friendly
std::vector<long long> primes_up_to(long long limit) {
  std::vector<long long> primes;
  if (limit < 2)
    return primes;
  const long long root = (long long)std::sqrt((double)limit) + 1;
  std::vector<bool> small(root + 1, true);
  for (long long i = 2; i <= root; ++i) {
    if (!small[i])
      continue;
    if (i <= limit)
      primes.push_back(i);
    for (long long j = i * i; j <= root; j += i)
      small[j] = false;
  }
  const long long seg = 1 << 16;
  std::vector<bool> block;
  for (long long lo = root + 1; lo <= limit; lo += seg) {
    const long long hi = std::min(lo + seg - 1, limit);
    block.assign(hi - lo + 1, true);
    for (long long p : primes) {
      if (p * p > hi)
        break;
      long long start = ((lo + p - 1) / p) * p;
      if (start < p * p)
        start = p * p;
      for (long long j = start; j <= hi; j += p)
        block[j - lo] = false;
    }
    for (long long n = lo; n <= hi; ++n)
      if (block[n - lo])
        primes.push_back(n);
  }
  return primes;
}

} // namespace

const std::vector<PrimePower> &prime_powers(long long limit) {
  static std::map<long long, std::vector<PrimePower>> cache;
  auto it = cache.find(limit);
  if (it != cache.end())
    return it->second;

  std::vector<PrimePower> out;
  const auto primes = primes_up_to(limit);
  out.reserve(primes.size() + 256);
  for (long long p : primes) {
    const double lp = std::log((double)p);
    long long q = p;
    int m = 1;
    while (true) {
      out.push_back({q, p, m, lp});
      if (q > limit / p)
        break;
      q *= p;
      ++m;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower &a, const PrimePower &b) { return a.value < b.value; });
  return cache.emplace(limit, std::move(out)).first->second;
}

cplx von_mangoldt_sum(const DirichletCharacter &chi, cplx s, cplx w,
                      long long limit, bool force) {
  if (s.real() <= 1.0 && !force)
    throw std::domain_error("von_mangoldt_sum: Re(s) <= 1 needs force");
  CompensatedCSum acc;
  for (const auto &pp : prime_powers(limit)) {
    const cplx ch = chi(pp.value);
    if (ch == cplx(0.0, 0.0))
      continue;
    const double c = pp.m * pp.log_p;
    acc.add(ch * std::exp(-s * c) * std::exp((w - 1.0) * std::log(c)) * pp.log_p);
  }
  return acc.value();
}

cplx dirichlet_log_sum(const DirichletCharacter &chi, cplx s, long long limit) {
  CompensatedCSum acc;
  for (const auto &pp : prime_powers(limit)) {
    const cplx ch = chi(pp.value);
    if (ch == cplx(0.0, 0.0))
      continue;
    acc.add(ch * std::exp(-s * (pp.m * pp.log_p)) / (double)pp.m);
  }
  return acc.value();
}

double tail_estimate(cplx s, cplx w, long long limit) {
  const double sigma = s.real();
  if (sigma <= 1.0)
    return std::numeric_limits<double>::infinity();
  const double logL = std::log((double)limit);
  const double rw = w.real();
  // L^{1-sigma} int_0^inf e^{-(sigma-1)v} (log L + v)^{Re w} dv
  QuadratureSpec spec;
  spec.decay_hint = sigma - 1.0;
  QuadResult q = quad_semi_infinite(
      [&](double v) { return cplx(std::exp(-(sigma - 1.0) * v) * std::pow(logL + v, rw), 0.0); },
      spec);
  return std::exp((1.0 - sigma) * logL) * q.value.real();
}

} // namespace ltensor
