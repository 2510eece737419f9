#pragma once
#include "ltensor/summation.hpp"

namespace ltensor {

double euler_gamma();
double bernoulli_2n(int n); // B_{2n}, n = 1..12

// principal continuation on C minus (-inf, 0]
cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx digamma(cplx z);

// Euler-Maclaurin; requires Re(a) > 0 and w != 1
cplx hurwitz_zeta(cplx w, cplx a);

// exp(e * Log(b)), principal branch
cplx cpow(cplx b, cplx e);

} // namespace ltensor
