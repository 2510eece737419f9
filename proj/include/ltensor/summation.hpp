#pragma once
#include <cmath>
#include <complex>

namespace ltensor {

using cplx = std::complex<double>;

// Neumaier variant of compensated summation.
struct CompensatedSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct CompensatedCSum {
  CompensatedSum re, im;
  void add(const cplx &z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

} // namespace ltensor
