#pragma once
#include <vector>

#include "ltensor/characters.hpp"
#include "ltensor/cramer.hpp"
#include "ltensor/quadrature.hpp"

namespace ltensor {

// upper half-ellipse from 1 to -alpha, phi running pi -> 0
struct ContourSpec {
  double center = 0.25;     // (1 - alpha) / 2
  double horizontal = 0.75; // (1 + alpha) / 2
  double vertical = 1.0;    // epsilon^(r)
  std::vector<double> phi;  // Gauss-Legendre angles on (0, pi), ascending
  std::vector<double> weights;
};

ContourSpec contour_spec(double alpha, double eps, int n = 96);
cplx contour_point(const ContourSpec &spec, double phi);

struct TensorEvalParams {
  CramerEvalParams cramer1;
  CramerEvalParams cramer2;
  double alpha = 0.5;    // shared by both characters
  double epsilon2 = 1.0; // min of the two half-heights
  double theta2 = 0.39269908169872414;
  long long P = 50000; // prime-power cutoff of the outer sums
  double T = 150.0;
  QuadratureSpec quad;
};

TensorEvalParams make_tensor_params(const CramerEvalParams &c1,
                                    const CramerEvalParams &c2);

// throws std::invalid_argument on mismatched alphas, epsilon2/theta2 not the
// minima, or epsilon2 at or above tau1_min (lowest first ordinate involved)
void validate_tensor_params(const TensorEvalParams &params, double tau1_min);

// k-th Euler-product term at level w, outer sums truncated at params.P with
// a reported tail bound; throws std::domain_error when Re(s) is at or below
// the convergence abscissa of term k
TailedValue e_term_tailed(int k, cplx w, cplx s, const DirichletCharacter &chi1,
                          const DirichletCharacter &chi2,
                          const TensorEvalParams &params);
cplx e_term(int k, cplx w, cplx s, const DirichletCharacter &chi1,
            const DirichletCharacter &chi2, const TensorEvalParams &params);

// inner-sum route of the sixth term swapped for the closed form
// -(L'/L)(s - u, chi_a) under the contour integral; oracle for tests
cplx e6_log_derivative_route(cplx w, cplx s, const DirichletCharacter &chi1,
                             const DirichletCharacter &chi2,
                             const TensorEvalParams &params);

// exp of the compensated sum of all ten terms at w = 0; Re(s) > 2
TailedValue tensor_square_tailed(cplx s, const DirichletCharacter &chi1,
                                 const DirichletCharacter &chi2,
                                 const TensorEvalParams &params);
cplx tensor_square(cplx s, const DirichletCharacter &chi1,
                   const DirichletCharacter &chi2,
                   const TensorEvalParams &params);

// per-prime-power slice of sum_k E_k(w, s) next to the contour probe
// 2 pi i e^{-pi i w / 2} Res_{t = i m log p} e^{i(s-1)t} l_1(t) l_2(t) t^{w-1}
// with l_j the series of the conjugate characters
struct ResidueContribution {
  cplx formula{0.0, 0.0};
  cplx probe{0.0, 0.0};
};

ResidueContribution residue_contribution(long long p, int m, cplx w, cplx s,
                                         const DirichletCharacter &chi1,
                                         const DirichletCharacter &chi2,
                                         const TensorEvalParams &params,
                                         double radius = 0.12,
                                         int nodes = 256);

} // namespace ltensor
