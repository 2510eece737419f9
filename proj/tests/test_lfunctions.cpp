#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ltensor/lfunctions.hpp"
#include "ltensor/primes.hpp"

using namespace ltensor;

static double cdist(cplx a, cplx b) { return std::abs(a - b); }
static constexpr double kPi = 3.14159265358979323846;

TEST_CASE("continuation hits reference values") {
  auto chi4 = character_from_label("4.1");
  auto chi3 = character_from_label("3.1");
  auto chi5 = character_from_label("5.1");

  CHECK(cdist(l_value(chi4, 0.5), cplx(0.6676914571896091766587, 0)) < 1e-11);
  CHECK(cdist(l_value(chi4, cplx(1.5, 2)), cplx(1.052660603928116194439, 0.1454124811076492183743)) < 1e-11);
  CHECK(cdist(l_value(chi4, cplx(0.3, 14)), cplx(1.69468703116727955083, 1.987524922506682700281)) < 1e-10);
  CHECK(cdist(l_value(chi4, 2.5), cplx(0.9486221740370547074457, 0)) < 1e-11);
  CHECK(cdist(l_value(chi3, 0.5), cplx(0.4808675576968286261812, 0)) < 1e-11);
  CHECK(cdist(l_value(chi3, cplx(2, 1)), cplx(0.8184060382427947822526, 0.129707579046563311329)) < 1e-11);
  CHECK(cdist(l_value(chi3, cplx(0.4, 8)), cplx(-0.1321491404504118275075, -0.02549627090203458941776)) < 1e-10);
  CHECK(cdist(l_value(chi5, cplx(0.6, 3)), cplx(1.876752864853713899641, 0.1068287941784072721221)) < 1e-10);
  CHECK(cdist(l_value(chi5, 2.5), cplx(0.9777750100653229683059, 0.1154007238685409888665)) < 1e-11);

  // exact special point
  CHECK(cdist(l_value(chi4, 1.0), cplx(kPi / 4.0, 0)) < 1e-12);
  CHECK(cdist(l_value(chi3, 1.0), cplx(0.6045997880780726168647, 0)) < 1e-12);
}

TEST_CASE("evaluation routes agree on overlaps") {
  auto chi4 = character_from_label("4.1");
  auto chi3 = character_from_label("3.1");
  for (cplx s : {cplx(3, 0), cplx(2.5, 0.7), cplx(1.5, 2), cplx(1.05, 0.02)}) {
    CHECK(cdist(l_value(chi4, s, LMethod::kHurwitz), l_value(chi4, s, LMethod::kGammaIntegral)) < 1e-10);
    CHECK(cdist(l_value(chi3, s, LMethod::kHurwitz), l_value(chi3, s, LMethod::kGammaIntegral)) < 1e-10);
  }
  CHECK(cdist(l_euler(chi4, 3.0, 1000000), l_value(chi4, 3.0, LMethod::kHurwitz)) < 1e-10);
  CHECK(cdist(l_series(chi4, 2.5, 10000000), l_value(chi4, 2.5)) < 1e-10);
  // near s = 1 the Hurwitz poles cancel across the character sum
  CHECK(cdist(l_value(chi4, cplx(1.0, 1e-7)), l_value(chi4, cplx(1.0, 1e-7), LMethod::kHurwitz)) < 1e-8);
}

TEST_CASE("completed function and functional equation") {
  auto chi4 = character_from_label("4.1");
  auto chi3 = character_from_label("3.1");
  auto chi5 = character_from_label("5.1");

  CHECK(cdist(xi(chi4, 0.25), completed_l(chi4, 0.75)) == 0.0);
  CHECK(std::abs(completed_l(chi4, 2.0)) > 0.0);
  CHECK(std::abs(completed_l(chi4, cplx(0.5, 6.02094890469759665))) < 1e-8);

  CHECK(cdist(root_number(chi4), cplx(1, 0)) < 1e-12);
  CHECK(cdist(root_number(chi3), cplx(1, 0)) < 1e-12);
  CHECK(cdist(root_number(chi5), cplx(0.8506508083520399322, 0.5257311121191336060)) < 1e-12);

  for (cplx s : {cplx(0.3, 2), cplx(0.5, 1.3), cplx(0.7, -0.4), cplx(-0.2, 1)}) {
    CHECK(functional_equation_residual(chi4, s) < 1e-8);
    CHECK(functional_equation_residual(chi3, s) < 1e-8);
    CHECK(functional_equation_residual(chi5, s) < 1e-8);
  }

  // rotated completed function is real on the critical line, complex chi included
  for (double t : {0.9, 3.3, 7.7}) {
    cplx eps = root_number(chi5);
    cplx z = std::exp(cplx(0, -std::arg(eps) / 2.0)) * completed_l(chi5, cplx(0.5, t));
    CHECK(std::abs(z.imag()) < 1e-10 * std::abs(z));
  }
}

TEST_CASE("zero finder matches reference ordinates and counts") {
  auto chi4 = character_from_label("4.1");
  ZeroList z4 = find_zeros(chi4, 100.0);
  REQUIRE(z4.ordinates.size() == 50);
  CHECK(std::abs(z4.ordinates[0] - 6.02094890469759665) < 2e-9);
  CHECK(std::abs(z4.ordinates[1] - 10.2437703041665545) < 2e-9);
  CHECK(std::abs(z4.ordinates[5] - 21.4506113439834605) < 2e-9);
  CHECK(std::abs(z4.ordinates[49] - 98.7553004157545277) < 2e-9);
  CHECK(z4.mu0 == 0);
  CHECK(z4.mu_tau0 == 0);
  CHECK(z4.tau0 == 0.25);

  // step halving leaves refined ordinates in place
  ZeroList z4h = find_zeros(chi4, 30.0, 0.025);
  ZeroList z4c = find_zeros(chi4, 30.0, 0.05);
  REQUIRE(z4h.ordinates.size() == z4c.ordinates.size());
  for (size_t i = 0; i < z4h.ordinates.size(); ++i)
    CHECK(std::abs(z4h.ordinates[i] - z4c.ordinates[i]) < 1e-6);

  auto chi3 = character_from_label("3.1");
  ZeroList z3 = find_zeros(chi3, 40.0);
  REQUIRE(z3.ordinates.size() >= 6);
  CHECK(std::abs(z3.ordinates[0] - 8.03973715568146668) < 2e-9);
  CHECK(std::abs(z3.ordinates[5] - 24.0594148564934508) < 2e-9);

  auto chi5 = character_from_label("5.1");
  ZeroList z5 = find_zeros(chi5, 12.0);
  REQUIRE(z5.ordinates.size() == 2);
  CHECK(std::abs(z5.ordinates[0] - 6.18357819545085391) < 2e-9);
  CHECK(std::abs(z5.ordinates[1] - 8.45722917442323072) < 2e-9);

  CHECK(verify_zero_count(chi4, 5.0) == 0);
  CHECK(verify_zero_count(chi4, 30.0) == 10); // zero4[9] = 29.656…, zero4[10] = 32.59…
  long long c60 = verify_zero_count(chi4, 60.0);
  CHECK(c60 >= 10);
  CHECK(verify_zero_count(chi4, 100.0) == 50);

  // conjugate pair: a positive ordinate of chi reflects to the conjugate character
  CHECK(std::abs(completed_l(conjugate(chi5), cplx(0.5, -z5.ordinates[0]))) < 1e-8);
}

TEST_CASE("mu data at desk scale") {
  auto chi4 = character_from_label("4.1");
  MuData m4 = mu_data(chi4, 1e-6);
  CHECK(m4.mu0 == 0);
  CHECK(m4.mu_tau0 == 0);
  CHECK(m4.tau0 == 0.25);
  CHECK(std::abs(l_value(chi4, 0.5)) > 0.6);

  MuData m3 = mu_data(character_from_label("3.1"), 1e-6);
  CHECK(m3.mu_tau0 == 0);
  MuData m5 = mu_data(character_from_label("5.1"), 1e-6);
  CHECK(m5.mu_tau0 == 0);
  CHECK(m5.tau0 == 0.25);
}

TEST_CASE("zero cache round trip and ingestion") {
  auto chi4 = character_from_label("4.1");
  ZeroList z4 = find_zeros(chi4, 30.0);
  const std::string path = "zeros_roundtrip_tmp.txt";
  save_zeros(z4, path);
  ZeroList back = load_zeros(path);
  CHECK(back.label == z4.label);
  CHECK(back.complete_to == z4.complete_to);
  CHECK(back.mu0 == z4.mu0);
  CHECK(back.tau0 == z4.tau0);
  REQUIRE(back.ordinates.size() == z4.ordinates.size());
  for (size_t i = 0; i < back.ordinates.size(); ++i)
    CHECK(back.ordinates[i] == z4.ordinates[i]);

  // second save of the loaded list is byte-identical
  const std::string path2 = "zeros_roundtrip_tmp2.txt";
  save_zeros(back, path2);
  std::ifstream f1(path), f2(path2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());

  ZeroList ok = ingest_external(path, chi4);
  CHECK(ok.ordinates.size() == z4.ordinates.size());

  // corrupt one ordinate and expect a rejection naming the line
  ZeroList bad = z4;
  bad.ordinates[2] += 1e-3;
  const std::string badpath = "zeros_bad_tmp.txt";
  save_zeros(bad, badpath);
  bool threw = false;
  try {
    ingest_external(badpath, chi4);
  } catch (const std::runtime_error &e) {
    threw = true;
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK(threw);

  CHECK_THROWS(load_zeros("no_such_zeros_file.txt"));
  std::remove(path.c_str());
  std::remove(path2.c_str());
  std::remove(badpath.c_str());
}

TEST_CASE("branch-tracked log along paths") {
  auto chi4 = character_from_label("4.1");

  std::vector<cplx> seg;
  for (int k = 0; k <= 10; ++k)
    seg.push_back(cplx(1.5 + 0.15 * k, 0.0));
  BranchedLogSamples flat = log_l_along_path(chi4, seg);
  for (size_t i = 0; i < flat.points.size(); ++i) {
    CHECK(std::abs(flat.log_values[i].imag()) < 1e-12);
    CHECK(flat.windings[i] == 0);
  }
  CHECK(cdist(flat.log_values[0], dirichlet_log_sum(chi4, 1.5, 1000000)) < 2e-4);
  CHECK(cdist(flat.log_values[0], std::log(l_value(chi4, 1.5))) < 1e-11);

  // upper semi-ellipse from -alpha to 1, clear of all zeros
  const double alpha = 0.3, eps = 0.5;
  std::vector<cplx> arc;
  for (int k = 0; k <= 64; ++k) {
    const double phi = kPi - kPi * k / 64.0;
    arc.push_back(cplx((1.0 + alpha) / 2.0 * std::cos(phi) + (1.0 - alpha) / 2.0,
                       eps * std::sin(phi)));
  }
  BranchedLogSamples ell = log_l_along_path(chi4, arc);
  for (int w : ell.windings)
    CHECK(w == 0);
  for (size_t i = 1; i < ell.log_values.size(); ++i)
    CHECK(std::abs(ell.log_values[i].imag() - ell.log_values[i - 1].imag()) < kPi);
  CHECK(std::abs(ell.log_values.front().imag()) < 1e-9); // L(-0.3) is real positive

  CHECK_THROWS_AS(log_l_along_path(chi4, std::vector<cplx>{cplx(0.2, 0), cplx(0.9, 0)}),
                  std::domain_error);
}

TEST_CASE("logarithmic derivative") {
  auto chi4 = character_from_label("4.1");
  cplx direct = -von_mangoldt_sum(chi4, 2.5, 1.0, 1000000);
  CHECK(cdist(l_log_derivative(chi4, 2.5), direct) < 2e-9);

  const double h = 1e-5;
  auto chi3 = character_from_label("3.1");
  cplx z(2.2, 0.6);
  cplx fd = (std::log(l_value(chi3, z + h)) - std::log(l_value(chi3, z - h))) / (2.0 * h);
  CHECK(cdist(l_log_derivative(chi3, z), fd) < 1e-8);
}
