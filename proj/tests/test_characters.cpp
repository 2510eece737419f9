#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "ltensor/characters.hpp"

using namespace ltensor;

static double cdist(cplx a, cplx b) { return std::abs(a - b); }

TEST_CASE("enumeration counts match the group order") {
  for (long long N : {1, 2, 3, 4, 5, 8, 12, 24, 36, 49, 60, 97, 100}) {
    auto chars = enumerate_characters(N);
    CHECK((long long)chars.size() == euler_phi(N));
    for (size_t k = 0; k < chars.size(); ++k) CHECK(chars[k].index == (long long)k);
  }
}

TEST_CASE("mod 4 and mod 3 families") {
  auto c4 = enumerate_characters(4);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].is_principal());
  CHECK(!c4[0].primitive);
  CHECK(c4[1].primitive);
  CHECK(c4[1].parity == -1);
  CHECK(c4[1].conductor == 4);
  CHECK(cdist(c4[1](1), {1, 0}) < 1e-15);
  CHECK(cdist(c4[1](3), {-1, 0}) < 1e-15);
  CHECK(cdist(c4[1](2), {0, 0}) < 1e-15);
  CHECK(c4[1].label() == "4.1");

  auto chi3 = character_from_label("3.1");
  CHECK(chi3.parity == -1);
  CHECK(chi3.primitive);
  CHECK(cdist(chi3(2), {-1, 0}) < 1e-15);
}

TEST_CASE("mod 5 quartic character and conjugation") {
  auto chi = character_from_label("5.1");
  auto inv = character_invariants(chi);
  CHECK(inv.order == 4);
  CHECK(cdist(chi(2), {0, 1}) < 1e-15); // 2 is the least primitive root mod 5
  auto bar = conjugate(chi);
  CHECK(bar.label() == "5.3");
  CHECK(cdist(bar(2), {0, -1}) < 1e-15);
  for (int n = 0; n < 5; ++n) CHECK(cdist(bar(n), std::conj(chi(n))) < 1e-15);
  CHECK(conjugate(bar).label() == "5.1");
}

TEST_CASE("gauss sums") {
  CHECK(cdist(gauss_sum(character_from_label("4.1")), {0, 2}) < 1e-12);
  CHECK(cdist(gauss_sum(character_from_label("3.1")), {0, std::sqrt(3.0)}) < 1e-12);
  for (long long N = 3; N <= 50; ++N) {
    for (auto &chi : enumerate_characters(N)) {
      if (!chi.primitive) continue;
      cplx g = gauss_sum(chi);
      CHECK(std::abs(std::norm(g) - double(N)) < 1e-10);
      // G(conj chi) = chi(-1) conj(G(chi))
      cplx gbar = gauss_sum(conjugate(chi));
      CHECK(cdist(gbar, double(chi.parity) * std::conj(g)) < 1e-10);
    }
  }
}

TEST_CASE("orthogonality") {
  for (long long N : {4, 5, 12, 21}) {
    auto chars = enumerate_characters(N);
    for (auto &a : chars)
      for (auto &b : chars) {
        CompensatedCSum acc;
        for (long long n = 0; n < N; ++n) acc.add(a(n) * std::conj(b(n)));
        double expect = (a.index == b.index) ? double(euler_phi(N)) : 0.0;
        CHECK(std::abs(acc.value() - expect) < 1e-10);
      }
  }
}

TEST_CASE("conductors of induced characters") {
  std::multiset<long long> conds;
  for (auto &chi : enumerate_characters(8)) conds.insert(chi.conductor);
  CHECK(conds == std::multiset<long long>{1, 4, 8, 8});
  // mod 12 = 4 * 3, first (mod-4) digit most significant
  auto c12 = enumerate_characters(12);
  REQUIRE(c12.size() == 4);
  CHECK(c12[1].conductor == 3);
  CHECK(c12[2].conductor == 4);
  CHECK(c12[3].conductor == 12);
}

TEST_CASE("prime power evaluation without overflow") {
  auto chi = character_from_label("4.1");
  CHECK(cdist(chi.at_prime_power(3, 2), {1, 0}) < 1e-15);
  CHECK(cdist(chi.at_prime_power(3, 3), {-1, 0}) < 1e-15);
  CHECK(cdist(chi.at_prime_power(999983, 3), chi(999983 % 4 == 3 ? 3 : 1)) < 1e-15);
  CHECK(cdist(chi.at_prime_power(2, 5), {0, 0}) < 1e-15);
}

TEST_CASE("power of two component structure") {
  auto c16 = enumerate_characters(16);
  CHECK(c16.size() == 8);
  int prim = 0;
  for (auto &chi : c16)
    if (chi.primitive) ++prim;
  CHECK(prim == 4); // phi(16) - phi(8) = 4 primitive mod 16
}
