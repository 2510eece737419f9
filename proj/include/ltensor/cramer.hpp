#pragma once
#include <functional>
#include <vector>

#include "ltensor/characters.hpp"
#include "ltensor/lfunctions.hpp"
#include "ltensor/quadrature.hpp"

namespace ltensor {

struct CramerEvalParams {
  double alpha = 0.5;   // 0 < alpha < 1
  double epsilon = 1.0; // contour half-height, below the first ordinate
  double theta = 0.39269908169872414; // atan(1)/2
  double T = 150.0;                   // zero-sum truncation height
  long long P = 100000;               // prime-power cutoff
  QuadratureSpec quad;
};

// throws std::invalid_argument unless 0<alpha<1, 0<theta<pi/4,
// tan(theta) < epsilon and 0 < epsilon < tau1 (first positive ordinate
// among the character and its conjugate)
void validate_cramer_params(const CramerEvalParams &params, double tau1);

struct TailedValue {
  cplx value{0.0, 0.0};
  double tail = 0.0; // bound on the dropped part; reported, never absorbed
};

// l_chi(t) = sum over ordinates gamma > 0 of e^{-gamma t}, truncated at the
// height the list is complete to; Re t > 0 required
TailedValue l_zero_sum(const DirichletCharacter &chi, cplx t,
                       const ZeroList &zeros);

// V(c) = int_0^inf [u + c(1 - e^{-alpha u})] / ((e^u - 1)(u + c)) du, c > 0
double v_function(double c, double alpha, const QuadratureSpec &spec = {});
double v_function_derivative(double c, double alpha,
                             const QuadratureSpec &spec = {});

// H(t) = (1/t) int_0^inf [u - it(1 - e^{-alpha u})] / ((e^u - 1)(u - it)) du,
// analytic off the ray i(-inf, 0]; a kernel pole drifting onto [0, inf) is
// subtracted and reintegrated in closed form unless plain is set
cplx h_function(cplx t, double alpha, const QuadratureSpec &spec = {},
                bool plain = false);

// I_parity(t): direct kernel integral for Re t > 0, continued across the
// imaginary axis by the kernel-pole residue; parity = chi(-1)
cplx i_function(int parity, cplx t, const QuadratureSpec &spec = {});

// J_parity(t) = I_parity(t) + log t / (4 sin(t/2)), arg t in (-pi/2, 3pi/2)
cplx j_function(int parity, cplx t, const QuadratureSpec &spec = {});

// principal log shifted so the argument lands in (-pi/2, 3pi/2]
cplx log_upper(cplx z);

// S(z, t) = sum_{n>=1} z^n / (n (t - n pi)) for |z| = 1, z != 1, Re t < pi,
// through the integral form of the Lerch transcendent
cplx m_pole_sum(cplx z, cplx t, const QuadratureSpec &spec = {});

// branch-tracked log L on the upper half-ellipse through 1 and -alpha with
// half-height eps; nodes are Gauss-Legendre in the angle, cached per
// (character, alpha, eps, n)
struct ContourSamples {
  std::vector<cplx> s;    // nodes, angle ascending (s runs 1 -> -alpha)
  std::vector<cplx> dsw;  // s'(phi) times the quadrature weight
  std::vector<cplx> logl; // continued log L at the nodes
};
const ContourSamples &contour_samples(const DirichletCharacter &chi,
                                      double alpha, double eps, int n = 96);

// integral over the half-ellipse, angle pi -> 0, of f(s) log L(s, chi) ds
cplx contour_log_integral(const ContourSamples &cs,
                          const std::function<cplx(cplx)> &f);

enum class ExplicitRep {
  kAuto,      // right-plane form for Re t > 0, continued form otherwise
  kRight,     // valid on Re t > 0
  kContinued, // valid off the ray i(-inf, 0]
};

// prime-side closed form of l_chi(t)
cplx l_explicit(const DirichletCharacter &chi, cplx t,
                const CramerEvalParams &params,
                ExplicitRep rep = ExplicitRep::kAuto);

// right-hand side of l_chi(t) + l_conj(-t); the sine term flips sign with
// the half-plane of t
cplx reflection_rhs(const DirichletCharacter &chi, cplx t, const MuData &mu);

// (1/2 pi i) circle integral of l_chi around the pole at i m log p
cplx pole_residue_probe(const DirichletCharacter &chi, long long p, int m,
                        double radius, const CramerEvalParams &params,
                        int nodes = 256);

} // namespace ltensor
