#include "ltensor/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ltensor {

namespace {

long long mod_pow(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> fs;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      fs.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

long long smallest_primitive_root(long long p) {
  if (p == 2) return 1;
  auto qs = prime_factors(p - 1);
  for (long long g = 2;; ++g) {
    bool ok = true;
    for (long long q : qs)
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

// generator data for (Z/p^e)^*
CharComponent make_component(long long p, int e) {
  CharComponent c;
  c.p = p;
  c.e = e;
  c.pe = 1;
  for (int i = 0; i < e; ++i) c.pe *= p;
  if (p == 2) {
    if (e == 1) return c; // trivial group
    if (e == 2) {
      c.gens = {3};
      c.orders = {2};
    } else {
      long long ord5 = c.pe / 4; // 2^{e-2}
      c.gens = {c.pe - 1, 5};
      c.orders = {2, ord5};
    }
  } else {
    long long g = smallest_primitive_root(p);
    if (e > 1 && mod_pow(g, p - 1, p * p) == 1) g += p;
    long long phi = c.pe / p * (p - 1);
    c.gens = {g % c.pe};
    c.orders = {phi};
  }
  c.exps.assign(c.gens.size(), 0);
  return c;
}

// discrete logs of n w.r.t. the component's generator tuple
std::vector<long long> component_dlog(const CharComponent &c, long long n) {
  n %= c.pe;
  std::vector<long long> d(c.gens.size(), 0);
  if (c.gens.empty()) return d;
  if (c.gens.size() == 1) {
    long long cur = 1;
    for (long long j = 0; j < c.orders[0]; ++j) {
      if (cur == n) {
        d[0] = j;
        return d;
      }
      cur = cur * c.gens[0] % c.pe;
    }
  } else {
    for (long long j0 = 0; j0 < c.orders[0]; ++j0) {
      long long base = mod_pow(c.gens[0], j0, c.pe);
      long long cur = base;
      for (long long j1 = 0; j1 < c.orders[1]; ++j1) {
        if (cur == n) {
          d[0] = j0;
          d[1] = j1;
          return d;
        }
        cur = cur * c.gens[1] % c.pe;
      }
    }
  }
  throw std::domain_error("component_dlog: element not in unit group");
}

void fill_values(DirichletCharacter &chi) {
  long long N = chi.modulus;
  chi.values.assign(N, cplx{0.0, 0.0});
  if (N == 1) {
    chi.values.assign(1, cplx{1.0, 0.0});
    return;
  }
  long long lam = 1;
  for (auto &c : chi.comps)
    for (long long o : c.orders) lam = std::lcm(lam, o);
  // root table e^{2 pi i j / lam}; snap the exact axis values so that
  // character sums cancel exactly where they do analytically
  std::vector<cplx> root(lam);
  for (long long j = 0; j < lam; ++j) {
    cplx r = std::polar(1.0, 2.0 * M_PI * double(j) / double(lam));
    double re = r.real(), im = r.imag();
    if (std::abs(re) < 1e-15) re = 0.0;
    if (std::abs(re - 1.0) < 1e-15) re = 1.0;
    if (std::abs(re + 1.0) < 1e-15) re = -1.0;
    if (std::abs(im) < 1e-15) im = 0.0;
    if (std::abs(im - 1.0) < 1e-15) im = 1.0;
    if (std::abs(im + 1.0) < 1e-15) im = -1.0;
    root[j] = cplx(re, im);
  }
  for (long long n = 0; n < N; ++n) {
    if (std::gcd(n, N) != 1) continue;
    long long t = 0;
    for (auto &c : chi.comps) {
      auto d = component_dlog(c, n);
      for (size_t i = 0; i < c.gens.size(); ++i)
        t = (t + c.exps[i] * d[i] % lam * (lam / c.orders[i])) % lam;
    }
    chi.values[n] = root[t];
  }
}

void fill_invariants(DirichletCharacter &chi) {
  long long N = chi.modulus;
  chi.parity = (N > 1) ? int(std::lround(chi.values[N - 1].real())) : 1;
  // conductor: smallest divisor f with chi trivial on units = 1 mod f
  chi.conductor = N;
  for (long long f = 1; f <= N; ++f) {
    if (N % f != 0) continue;
    bool ok = true;
    for (long long n = 1; n < N && ok; ++n) {
      if (std::gcd(n, N) != 1 || n % f != 1 % f) continue;
      if (std::abs(chi.values[n] - cplx{1.0, 0.0}) > 1e-9) ok = false;
    }
    if (ok) {
      chi.conductor = f;
      break;
    }
  }
  chi.primitive = (chi.conductor == N);
}

void set_index_from_exps(DirichletCharacter &chi) {
  long long k = 0;
  for (auto &c : chi.comps)
    for (size_t i = 0; i < c.gens.size(); ++i) k = k * c.orders[i] + c.exps[i];
  chi.index = k;
}

DirichletCharacter build_character(long long N, long long k) {
  DirichletCharacter chi;
  chi.modulus = N;
  long long rem = N;
  for (long long p = 2; p <= rem; ++p) {
    if (rem % p != 0) continue;
    int e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    chi.comps.push_back(make_component(p, e));
  }
  // digits, most significant first
  std::vector<long long *> slots;
  std::vector<long long> radix;
  for (auto &c : chi.comps)
    for (size_t i = 0; i < c.gens.size(); ++i) {
      slots.push_back(&c.exps[i]);
      radix.push_back(c.orders[i]);
    }
  long long kk = k;
  for (int i = int(slots.size()) - 1; i >= 0; --i) {
    *slots[i] = kk % radix[i];
    kk /= radix[i];
  }
  if (kk != 0) throw std::domain_error("character index out of range");
  chi.index = k;
  fill_values(chi);
  fill_invariants(chi);
  return chi;
}

} // namespace

long long euler_phi(long long n) {
  long long r = n;
  for (long long p : prime_factors(n)) r -= r / p;
  return r;
}

cplx DirichletCharacter::operator()(long long n) const {
  n %= modulus;
  if (n < 0) n += modulus;
  return values[n];
}

cplx DirichletCharacter::at_prime_power(long long p, int m) const {
  long long n = 1 % modulus;
  long long base = p % modulus;
  for (int i = 0; i < m; ++i) n = n * base % modulus;
  return values[n];
}

std::string DirichletCharacter::label() const {
  return std::to_string(modulus) + "." + std::to_string(index);
}

bool DirichletCharacter::is_principal() const {
  for (auto &c : comps)
    for (long long x : c.exps)
      if (x != 0) return false;
  return true;
}

std::vector<DirichletCharacter> enumerate_characters(long long N) {
  if (N < 1) throw std::domain_error("enumerate_characters: modulus must be positive");
  long long count = euler_phi(N);
  std::vector<DirichletCharacter> out;
  out.reserve(count);
  for (long long k = 0; k < count; ++k) out.push_back(build_character(N, k));
  return out;
}

DirichletCharacter character_from_label(const std::string &label) {
  auto dot = label.find('.');
  if (dot == std::string::npos)
    throw std::domain_error("character label must be of the form N.k");
  long long N = std::stoll(label.substr(0, dot));
  long long k = std::stoll(label.substr(dot + 1));
  if (N < 1 || k < 0 || k >= euler_phi(N))
    throw std::domain_error("character label out of range: " + label);
  return build_character(N, k);
}

CharacterInvariants character_invariants(const DirichletCharacter &chi) {
  CharacterInvariants inv;
  inv.conductor = chi.conductor;
  inv.parity = chi.parity;
  inv.primitive = chi.primitive;
  inv.order = 1;
  for (auto &c : chi.comps)
    for (size_t i = 0; i < c.gens.size(); ++i)
      if (c.exps[i] != 0)
        inv.order = std::lcm(inv.order, c.orders[i] / std::gcd(c.orders[i], c.exps[i]));
  return inv;
}

cplx gauss_sum(const DirichletCharacter &chi) {
  long long N = chi.modulus;
  CompensatedCSum acc;
  for (long long n = 1; n <= N; ++n)
    acc.add(chi(n) * std::polar(1.0, 2.0 * M_PI * double(n) / double(N)));
  return acc.value();
}

DirichletCharacter conjugate(const DirichletCharacter &chi) {
  DirichletCharacter c = chi;
  for (auto &comp : c.comps)
    for (size_t i = 0; i < comp.gens.size(); ++i)
      if (comp.exps[i] != 0) comp.exps[i] = comp.orders[i] - comp.exps[i];
  set_index_from_exps(c);
  for (auto &v : c.values) v = std::conj(v);
  fill_invariants(c);
  return c;
}

} // namespace ltensor
