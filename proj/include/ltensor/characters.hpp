#pragma once
#include <string>
#include <vector>

#include "ltensor/summation.hpp"

namespace ltensor {

// one prime-power block of (Z/N)^*
struct CharComponent {
  long long pe = 1, p = 1;
  int e = 0;
  std::vector<long long> gens;   // generators, most significant digit first
  std::vector<long long> orders; // matching orders
  std::vector<long long> exps;   // character exponents
};

struct DirichletCharacter {
  long long modulus = 1;
  long long index = 0; // k in the "N.k" label
  std::vector<CharComponent> comps;
  std::vector<cplx> values; // chi(n) for n = 0..N-1
  long long conductor = 1;
  int parity = 1; // chi(-1)
  bool primitive = true;

  cplx operator()(long long n) const;
  cplx at_prime_power(long long p, int m) const;
  std::string label() const;
  bool is_principal() const;
};

struct CharacterInvariants {
  long long conductor = 1;
  int parity = 1;
  bool primitive = true;
  long long order = 1; // order in the dual group
};

std::vector<DirichletCharacter> enumerate_characters(long long N);
DirichletCharacter character_from_label(const std::string &label);
CharacterInvariants character_invariants(const DirichletCharacter &chi);
cplx gauss_sum(const DirichletCharacter &chi);
DirichletCharacter conjugate(const DirichletCharacter &chi);

long long euler_phi(long long n);

} // namespace ltensor
