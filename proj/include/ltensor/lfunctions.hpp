#pragma once
#include <string>
#include <vector>

#include "ltensor/characters.hpp"
#include "ltensor/quadrature.hpp"
#include "ltensor/summation.hpp"

namespace ltensor {

// zeros with positive ordinate, ascending; complete up to height complete_to
struct ZeroList {
  std::string label;
  std::vector<double> ordinates;
  double complete_to = 0.0;
  int mu0 = 0;      // order of a zero at s = 1/2
  int mu_tau0 = 0;  // order of real zeros at 1/2 +- tau0
  double tau0 = 0.25;
};

struct MuData {
  int mu0 = 0;
  int mu_tau0 = 0;
  double tau0 = 0.25;
};

// samples of log L(u) along a path with a continuous imaginary part
struct BranchedLogSamples {
  std::vector<cplx> points;
  std::vector<cplx> log_values;
  std::vector<int> windings; // offset from the principal branch in units of 2*pi
};

enum class LMethod { kAuto, kHurwitz, kGammaIntegral, kSeries };

// analytic continuation of L(s, chi); kAuto picks the route by region
cplx l_value(const DirichletCharacter &chi, cplx s, LMethod method = LMethod::kAuto);

// literal truncations, for oracle use in the absolute-convergence region
cplx l_series(const DirichletCharacter &chi, cplx s, long long terms);
cplx l_euler(const DirichletCharacter &chi, cplx s, long long limit);

// (pi/N)^{-(s/2 + (1-chi(-1))/4)} Gamma(s/2 + (1-chi(-1))/4) L(s, chi)
cplx completed_l(const DirichletCharacter &chi, cplx s);
cplx xi(const DirichletCharacter &chi, cplx s);

cplx root_number(const DirichletCharacter &chi); // G(chi)/(i^a sqrt(N))

// |LHS - RHS| / (|LHS| + |RHS|) of the asymmetric functional equation
double functional_equation_residual(const DirichletCharacter &chi, cplx s);

// branch anchored at the endpoint of largest Re (>= 1) by the prime log sum
BranchedLogSamples log_l_along_path(const DirichletCharacter &chi,
                                    const std::vector<cplx> &path,
                                    const QuadratureSpec &spec = {});

// L'/L via a Cauchy circle for L'; needs a zero-free neighbourhood
cplx l_log_derivative(const DirichletCharacter &chi, cplx z, double radius = 0.3);

ZeroList find_zeros(const DirichletCharacter &chi, double T, double step = 0.05);

// argument-principle count over [-1/2, 3/2] x [0, T]
long long verify_zero_count(const DirichletCharacter &chi, double T);

MuData mu_data(const DirichletCharacter &chi, double tol = 1e-6);

void save_zeros(const ZeroList &list, const std::string &path);
ZeroList load_zeros(const std::string &path);
ZeroList ingest_external(const std::string &path, const DirichletCharacter &chi);

} // namespace ltensor
