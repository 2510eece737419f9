#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ltensor/characters.hpp"
#include "ltensor/primes.hpp"

using namespace ltensor;

static double cdist(cplx a, cplx b) { return std::abs(a - b); }

TEST_CASE("prime power listing") {
  CHECK(prime_powers(1).empty());

  const auto &small = prime_powers(4);
  REQUIRE(small.size() == 3);
  CHECK(small[0].value == 2);
  CHECK(small[1].value == 3);
  CHECK(small[2].value == 4);
  CHECK(small[2].p == 2);
  CHECK(small[2].m == 2);

  const auto &hundred = prime_powers(100);
  CHECK(hundred.size() == 35); // 25 primes plus ten higher powers
  std::set<long long> values;
  for (size_t i = 0; i < hundred.size(); ++i) {
    const auto &pp = hundred[i];
    if (i > 0) CHECK(hundred[i - 1].value < pp.value);
    CHECK(pp.value == (long long)std::llround(std::pow((double)pp.p, pp.m)));
    CHECK(pp.log_p == doctest::Approx(std::log((double)pp.p)).epsilon(1e-15));
    values.insert(pp.value);
  }
  for (long long v : {64, 81, 27, 49})
    CHECK(values.count(v) == 1);
  CHECK(values.count(6) == 0);

  // same limit hands back the same cached list
  CHECK(&prime_powers(100) == &hundred);

  long long primes_to_million = 0;
  for (const auto &pp : prime_powers(1000000))
    if (pp.m == 1) ++primes_to_million;
  CHECK(primes_to_million == 78498);
}

TEST_CASE("von Mangoldt sum small example") {
  auto chi4 = character_from_label("4.1");
  // only 3 survives below 5: chi(3) 3^{-2} log 3
  cplx v = von_mangoldt_sum(chi4, 2.0, 1.0, 4);
  CHECK(cdist(v, cplx(-std::log(3.0) / 9.0, 0.0)) < 1e-16);

  CHECK_THROWS_AS(von_mangoldt_sum(chi4, cplx(0.8, 5.0), 1.0, 100), std::domain_error);
  cplx forced = von_mangoldt_sum(chi4, cplx(0.8, 5.0), 1.0, 100, true);
  CHECK(std::isfinite(forced.real()));
}

TEST_CASE("log sum derivative matches the weighted sum") {
  auto chi3 = character_from_label("3.1");
  const cplx s(2.3, 0.4);
  const double h = 1e-5;
  cplx fd = (dirichlet_log_sum(chi3, s - h, 10000) - dirichlet_log_sum(chi3, s + h, 10000)) / (2.0 * h);
  cplx direct = von_mangoldt_sum(chi3, s, 1.0, 10000);
  CHECK(cdist(fd, direct) < 1e-8);
}

TEST_CASE("exponentiated log sums hit known L-values") {
  auto chi4 = character_from_label("4.1");
  auto chi3 = character_from_label("3.1");

  // Catalan's constant via L(2, chi4)
  cplx catalan = std::exp(dirichlet_log_sum(chi4, 2.0, 1000000));
  CHECK(cdist(catalan, cplx(0.9159655941772190151, 0.0)) < 2e-7);

  cplx l25 = std::exp(dirichlet_log_sum(chi4, 2.5, 1000000));
  CHECK(cdist(l25, cplx(0.9486221740370547074, 0.0)) < 1e-10);

  cplx l3 = std::exp(dirichlet_log_sum(chi3, cplx(2.0, 1.0), 1000000));
  CHECK(cdist(l3, cplx(0.8184060382427947823, 0.1297075790465633113)) < 2e-7);
}

TEST_CASE("tail estimate bounds the dropped terms") {
  auto chi3 = character_from_label("3.1");
  double b3 = tail_estimate(2.0, 1.0, 1000);
  double b6 = tail_estimate(2.0, 1.0, 1000000);
  CHECK(b6 > 0.0);
  CHECK(b3 > b6);

  cplx full = von_mangoldt_sum(chi3, 2.0, 1.0, 1000000);
  cplx cut = von_mangoldt_sum(chi3, 2.0, 1.0, 1000);
  CHECK(std::abs(full - cut) < b3);

  CHECK(std::isinf(tail_estimate(1.0, 1.0, 1000)));
}
