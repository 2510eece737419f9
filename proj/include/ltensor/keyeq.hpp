#pragma once
#include <string>

#include "ltensor/characters.hpp"
#include "ltensor/lfunctions.hpp"
#include "ltensor/tensor.hpp"

namespace ltensor {

struct KeyEqParams {
  double theta = 0.05;      // slant of the power-sum rays
  double epsilon = 0.06;    // margin above the convergence abscissa
  double tau_strip = 0.25;  // exceptional-shift bound entering the strip window
  double T = 150.0;         // zero-list height
  long long P = 100000;     // prime cutoff for the order-1 prime side
  double tolerance = 1e-3;
  bool continued = false;   // permit s outside the slanted strip
  TensorEvalParams tensor;  // order-2 prime side
};

struct ResidualReport {
  cplx lhs{0.0, 0.0};  // zero-and-ladder side
  cplx rhs{0.0, 0.0};  // prime side
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // abs_residual / (|lhs| + |rhs|)
  double zero_tail = 0.0;     // post-completion counting fluctuation
  double prime_tail = 0.0;
  double quad_error = 0.0;    // completion-integral cut remainders
  cplx w{0.0, 0.0};
  cplx s{0.0, 0.0};
  int r = 0;
  std::string label1, label2;
  double T = 0.0;
  long long P = 0;
  double tolerance = 0.0;
  bool continued = false;
  bool pass = false;  // abs_residual < tolerance * (|lhs| + |rhs|) + all tails
};

// slanted-strip window, abscissa bound and Re(w) bound for the order-r identity
bool region_check(cplx w, cplx s, int r, const KeyEqParams &params = {});

// zero sums over both half-planes (below-axis slots reflect the conjugate
// lists), trivial ladders in closed form, exceptional multiplicities, and
// density-integral completion of everything beyond the list heights; value
// carries the completed sum, tail the fluctuation margin
TailedValue zero_side_r1_tailed(cplx w, cplx s, const DirichletCharacter &chi,
                                const ZeroList &zeros, const ZeroList &conj_zeros,
                                double *cut_remainder = nullptr);
TailedValue zero_side_r2_tailed(cplx w, cplx s, const DirichletCharacter &chi1,
                                const DirichletCharacter &chi2,
                                const ZeroList &zeros1, const ZeroList &conj_zeros1,
                                const ZeroList &zeros2, const ZeroList &conj_zeros2,
                                double *cut_remainder = nullptr);

// real-character shorthand: the conjugate list coincides
cplx zero_side_r1(cplx w, cplx s, const DirichletCharacter &chi,
                  const ZeroList &zeros);
cplx zero_side_r2(cplx w, cplx s, const DirichletCharacter &chi1,
                  const DirichletCharacter &chi2, const ZeroList &zeros1,
                  const ZeroList &zeros2);

// zero side against the prime side; zero lists found and cached internally
ResidualReport verify_r1(cplx w, cplx s, const DirichletCharacter &chi,
                         const KeyEqParams &params = {});
ResidualReport verify_r2(cplx w, cplx s, const DirichletCharacter &chi1,
                         const DirichletCharacter &chi2,
                         const KeyEqParams &params = {});

} // namespace ltensor
