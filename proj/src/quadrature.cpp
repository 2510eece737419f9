#include "ltensor/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ltensor {

namespace {

constexpr double kUmax = 3.8; // tanh((pi/2) sinh 3.8) rounds to 1 in double
constexpr double kPiHalf = 1.5707963267948966;

// one trapezoid level; odd_only adds only the nodes new to step h
template <typename Term>
cplx level_sum(double h, bool odd_only, Term &&term) {
  CompensatedCSum acc;
  if (!odd_only) acc.add(term(0.0));
  int stride = odd_only ? 2 : 1;
  for (int sgn : {+1, -1})
    for (int k = 1; k * h <= kUmax; k += stride)
      acc.add(term(sgn * k * h));
  return acc.value();
}

template <typename Term>
QuadResult refine_loop(const QuadratureSpec &spec, Term &&term) {
  QuadResult res;
  double h = 0.5;
  cplx s = level_sum(h, false, term) * h;
  double err = std::abs(s);
  int L = 0;
  while (L < spec.max_refinements) {
    double h2 = h / 2;
    cplx odd = level_sum(h2, true, term);
    cplx s2 = s / 2.0 + odd * h2;
    err = std::abs(s2 - s);
    s = s2;
    h = h2;
    ++L;
    if (err <= spec.abs_tol || err <= spec.rel_tol * std::abs(s)) break;
  }
  res.value = s;
  res.error = err;
  res.refinements = L;
  return res;
}

} // namespace

QuadResult quad_finite(const std::function<cplx(double)> &f, double a, double b,
                       const QuadratureSpec &spec) {
  if (!(b > a)) {
    if (a == b) return {};
    QuadResult r = quad_finite(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  double w = b - a;
  auto term = [&](double u) -> cplx {
    double y = kPiHalf * std::sinh(u);
    double sig, dist_b;
    if (y >= 0) {
      double e = std::exp(-2 * y);
      sig = 1.0 / (1.0 + e);
      dist_b = e / (1.0 + e);
    } else {
      double e = std::exp(2 * y);
      sig = e / (1.0 + e);
      dist_b = 1.0 / (1.0 + e);
    }
    double wt = w * 2.0 * kPiHalf * std::cosh(u) * sig * dist_b;
    if (wt == 0.0 || !std::isfinite(wt)) return {0.0, 0.0};
    double x = (sig <= 0.5) ? a + w * sig : b - w * dist_b;
    if (x <= a || x >= b) return {0.0, 0.0};
    return f(x) * wt;
  };
  return refine_loop(spec, term);
}

QuadResult quad_semi_infinite(const std::function<cplx(double)> &f,
                              const QuadratureSpec &spec) {
  double lam = spec.decay_hint > 0 ? spec.decay_hint : 1.0;
  auto term = [&](double u) -> cplx {
    double sh = kPiHalf * std::sinh(u);
    if (sh > 700.0) return {0.0, 0.0};
    double x = std::exp(sh) / lam;
    double wt = kPiHalf * std::cosh(u) * x;
    if (x < 1e-300 || !std::isfinite(wt)) return {0.0, 0.0};
    cplx v = f(x) * wt;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {0.0, 0.0};
    return v;
  };
  return refine_loop(spec, term);
}

QuadResult quad_semi_infinite_pole(const std::function<cplx(double)> &f,
                                   cplx pole, cplx residue,
                                   const QuadratureSpec &spec) {
  if (pole.imag() == 0.0 && pole.real() >= 0.0)
    throw std::domain_error("quad_semi_infinite_pole: pole on the path");
  double lo = std::max(0.0, pole.real() - 1.0);
  double hi = std::max(pole.real() + 1.0, lo + 0.5);
  auto bare = [&](double x) { return f(x) - residue / (cplx(x, 0.0) - pole); };
  QuadResult mid = quad_finite(bare, lo, hi, spec);
  QuadResult head;
  if (lo > 0.0) head = quad_finite(f, 0.0, lo, spec);
  auto shifted = [&](double v) { return f(v + hi); };
  QuadResult tail = quad_semi_infinite(shifted, spec);
  QuadResult out;
  out.value = mid.value + head.value + tail.value +
              residue * (std::log(cplx(hi, 0.0) - pole) -
                         std::log(cplx(lo, 0.0) - pole));
  out.error = mid.error + head.error + tail.error;
  out.refinements = std::max({mid.refinements, head.refinements, tail.refinements});
  return out;
}

QuadResult quad_path(const std::function<cplx(cplx)> &f,
                     const std::vector<cplx> &path, const QuadratureSpec &spec) {
  if (path.size() < 2) throw std::domain_error("quad_path: need at least 2 waypoints");
  QuadResult total;
  CompensatedCSum acc;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    cplx z0 = path[i], dz = path[i + 1] - path[i];
    auto g = [&](double s) { return f(z0 + s * dz) * dz; };
    QuadResult r = quad_finite(g, 0.0, 1.0, spec);
    acc.add(r.value);
    total.error += r.error;
    total.refinements = std::max(total.refinements, r.refinements);
  }
  total.value = acc.value();
  return total;
}

const std::vector<std::pair<double, double>> &gauss_legendre_nodes(int n) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < n; ++i) {
    // Newton from Chebyshev initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return cache.emplace(n, std::move(nw)).first->second;
}

} // namespace ltensor
