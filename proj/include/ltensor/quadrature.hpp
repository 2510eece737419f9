#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "ltensor/summation.hpp"

namespace ltensor {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_refinements = 10;
  double decay_hint = 1.0; // e^{-decay_hint * x} scale for semi-infinite integrands
};

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  int refinements = 0;
};

// tanh-sinh on [a,b]
QuadResult quad_finite(const std::function<cplx(double)> &f, double a, double b,
                       const QuadratureSpec &spec = {});

// exp-sinh on [0, inf)
QuadResult quad_semi_infinite(const std::function<cplx(double)> &f,
                              const QuadratureSpec &spec = {});

// exp-sinh on [0, inf) for an integrand with one simple pole just off the
// path; residue/(x - pole) is removed over a unit window around Re(pole) and
// its integral added back in closed form
QuadResult quad_semi_infinite_pole(const std::function<cplx(double)> &f,
                                   cplx pole, cplx residue,
                                   const QuadratureSpec &spec = {});

// piecewise tanh-sinh along the polyline through the given waypoints
QuadResult quad_path(const std::function<cplx(cplx)> &f,
                     const std::vector<cplx> &path,
                     const QuadratureSpec &spec = {});

// nodes/weights on [-1,1], cached per n
const std::vector<std::pair<double, double>> &gauss_legendre_nodes(int n);

} // namespace ltensor
