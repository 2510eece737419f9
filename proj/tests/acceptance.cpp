#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "ltensor/characters.hpp"
#include "ltensor/cramer.hpp"
#include "ltensor/keyeq.hpp"
#include "ltensor/lfunctions.hpp"
#include "ltensor/quadrature.hpp"
#include "ltensor/special.hpp"
#include "ltensor/summation.hpp"
#include "ltensor/tensor.hpp"

using namespace ltensor;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
const char *kFile = "tests/acceptance.cpp";
int failures = 0;

struct CheckFail {
  int line;
  std::string msg;
};

#define ACCEPT(cond, ...)                                                      \
  do {                                                                         \
    if (!(cond)) {                                                             \
      std::ostringstream os__;                                                 \
      os__ << __VA_ARGS__;                                                     \
      throw CheckFail{__LINE__, os__.str()};                                   \
    }                                                                          \
  } while (0)

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void criterion(const char *name, double budget_s,
               const std::function<std::string()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const std::string detail = body();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > budget_s) {
      ++failures;
      std::printf("[FAIL] %s:0 %s took %.1fs, over the %.0fs budget\n", kFile,
                  name, secs, budget_s);
    } else {
      std::printf("[PASS] %s (%s; %.1fs)\n", name, detail.c_str(), secs);
    }
  } catch (const CheckFail &f) {
    ++failures;
    std::printf("[FAIL] %s:%d %s\n", kFile, f.line, f.msg.c_str());
  } catch (const std::exception &e) {
    ++failures;
    std::printf("[FAIL] %s:0 unexpected exception in '%s': %s\n", kFile, name,
                e.what());
  }
  std::fflush(stdout);
}

TensorEvalParams tensor_params(double alpha, double eps, long long P) {
  CramerEvalParams c1, c2;
  c1.alpha = c2.alpha = alpha;
  c1.epsilon = c2.epsilon = eps;
  TensorEvalParams par = make_tensor_params(c1, c2);
  par.P = P;
  return par;
}

std::string character_layer() {
  int primitive_count = 0;
  double worst_gauss = 0.0;
  for (long long n = 1; n <= 50; ++n)
    for (const auto &chi : enumerate_characters(n)) {
      if (!chi.primitive) continue;
      ++primitive_count;
      const double dev = std::abs(std::norm(gauss_sum(chi)) - double(n));
      ACCEPT(dev < 1e-10, "gauss norm deviation " << dev << " for "
                                                  << chi.label());
      worst_gauss = std::max(worst_gauss, dev);
    }
  double worst_orth = 0.0;
  for (long long n = 1; n <= 50; ++n) {
    const auto chars = enumerate_characters(n);
    for (const auto &a : chars)
      for (const auto &b : chars) {
        CompensatedCSum acc;
        for (long long m = 0; m < n; ++m) acc.add(a(m) * std::conj(b(m)));
        const double expect = a.index == b.index ? double(euler_phi(n)) : 0.0;
        const double dev = std::abs(acc.value() - expect);
        ACCEPT(dev < 1e-10, "orthogonality residual " << dev << " between "
                                                      << a.label() << " and "
                                                      << b.label());
        worst_orth = std::max(worst_orth, dev);
      }
  }
  return std::to_string(primitive_count) +
         " primitive characters to modulus 50, gauss deviation <= " +
         num(worst_gauss) + ", orthogonality <= " + num(worst_orth);
}

std::string l_continuation() {
  double worst_route = 0.0, worst_fe = 0.0;
  for (const char *label : {"3.1", "4.1", "5.1"}) {
    const auto chi = character_from_label(label);
    for (int j = 0; j < 20; ++j) {
      const cplx s(3.0 + 0.1 * j, -2.0 + 0.2 * j);
      const double dev =
          std::abs(l_euler(chi, s, 300000) - l_value(chi, s, LMethod::kHurwitz));
      ACCEPT(dev < 1e-10,
             "route disagreement " << dev << " for " << label << " at Re s = "
                                   << s.real());
      worst_route = std::max(worst_route, dev);
    }
    for (int j = 0; j < 20; ++j) {
      const cplx s(0.15 + 0.04 * j, -1.0 + 0.105 * j);
      const double fe = functional_equation_residual(chi, s);
      ACCEPT(fe < 1e-8, "functional-equation residual " << fe << " for "
                                                        << label);
      worst_fe = std::max(worst_fe, fe);
    }
  }
  return "20-point product/ladder agreement <= " + num(worst_route) +
         ", strip functional equation <= " + num(worst_fe);
}

std::string zeros_layer() {
  std::ostringstream detail;
  for (const char *label : {"4.1", "3.1"}) {
    const auto chi = character_from_label(label);
    const ZeroList z = find_zeros(chi, 100.0);
    const long long counted = verify_zero_count(chi, 100.0);
    ACCEPT(counted == (long long)z.ordinates.size(),
           label << ": scan found " << z.ordinates.size()
                 << " zeros but the argument principle counts " << counted);
    const ZeroList fine = find_zeros(chi, 100.0, 0.025);
    ACCEPT(fine.ordinates.size() == z.ordinates.size(),
           label << ": zero count changed under step halving");
    double shift = 0.0;
    for (size_t i = 0; i < z.ordinates.size(); ++i)
      shift = std::max(shift, std::abs(z.ordinates[i] - fine.ordinates[i]));
    ACCEPT(shift < 1e-6, label << ": ordinate moved " << shift
                               << " under step halving");
    detail << label << ": " << z.ordinates.size() << " zeros, stable to "
           << num(shift) << "; ";
  }
  return detail.str();
}

std::string cramer_layer() {
  const auto chi4 = character_from_label("4.1");
  const CramerEvalParams par;
  const ZeroList z4 = find_zeros(chi4, 200.0);
  double worst_series = 0.0;
  for (cplx t : {cplx(1.0, 0.0), cplx(0.5, 0.0), cplx(2.0, 0.0),
                 cplx(1.2, 0.4), cplx(3.0, 0.0)}) {
    const TailedValue zs = l_zero_sum(chi4, t, z4);
    const double dev = std::abs(l_explicit(chi4, t, par) - zs.value);
    ACCEPT(dev < zs.tail + 1e-4, "series disagreement " << dev << " at t = ("
                                                        << t.real() << ", "
                                                        << t.imag() << ")");
    worst_series = std::max(worst_series, dev);
  }
  const MuData mu4 = mu_data(chi4);
  double worst_refl = 0.0;
  for (cplx t : {cplx(-0.8, 0.4), cplx(-1.2, -0.7), cplx(-2.0, 0.1),
                 cplx(0.9, 0.25), cplx(1.7, -0.3), cplx(2.5, 0.5)}) {
    const cplx lhs = l_explicit(chi4, t, par) + l_explicit(chi4, -t, par);
    const double dev = std::abs(lhs - reflection_rhs(chi4, t, mu4));
    ACCEPT(dev < 1e-4, "reflection residual " << dev << " at t = ("
                                              << t.real() << ", " << t.imag()
                                              << ")");
    worst_refl = std::max(worst_refl, dev);
  }
  double worst_kernel = 0.0;
  for (cplx t : {cplx(-1.0, 0.5), cplx(1.0, -0.5)})
    for (int parity : {-1, +1}) {
      const cplx sum = j_function(parity, t) + j_function(parity, -t);
      const double sgn = t.real() < 0.0 ? 1.0 : -1.0;
      const cplx rhs =
          -sgn * kPi * kI * std::exp(-sgn * 0.5 * double(parity) * kI * t) /
              (2.0 * std::sin(t)) +
          sgn * kI * kPi / (4.0 * std::sin(t / 2.0));
      const double dev = std::abs(sum - rhs);
      ACCEPT(dev < 1e-8, "kernel reflection residual " << dev << " at parity "
                                                       << parity);
      worst_kernel = std::max(worst_kernel, dev);
    }
  double worst_small = 0.0;
  for (double r : {1e-2, 1e-3, 1e-4}) {
    const cplx t = std::polar(r, kPi / 4.0);
    const cplx expr = l_explicit(chi4, t, par) +
                      std::log(t) / (2.0 * kPi * t) +
                      (std::log(2.0 * kPi / 4.0) + euler_gamma()) /
                          (2.0 * kPi * t);
    ACCEPT(std::abs(expr) < 10.0, "small-t normalized value " << std::abs(expr)
                                                              << " at |t| = "
                                                              << r);
    worst_small = std::max(worst_small, std::abs(expr));
  }
  return "series gap <= " + num(worst_series) + ", reflection <= " +
         num(worst_refl) + ", kernel identity <= " + num(worst_kernel) +
         ", small-t bounded by " + num(worst_small);
}

std::string residue_oracles() {
  const auto chi4 = character_from_label("4.1");
  const auto chi3 = character_from_label("3.1");
  const CramerEvalParams par;
  double worst_probe = 0.0;
  for (long long p : {3, 5}) {
    const cplx probe = pole_residue_probe(chi4, p, 1, 0.1, par);
    const cplx slice =
        -chi4(p) * std::log(double(p)) / (2.0 * kPi * std::sqrt(double(p)));
    const double rel = std::abs(probe - slice) / std::abs(slice);
    ACCEPT(rel < 1e-5, "probe relative error " << rel << " at p = " << p);
    worst_probe = std::max(worst_probe, rel);
  }
  const TensorEvalParams tp = tensor_params(0.5, 1.0, 50000);
  const cplx w(3.0, 0.0), s(5.0, 0.16);
  double worst_slice = 0.0;
  for (long long p : {3, 5}) {
    const ResidueContribution rc =
        residue_contribution(p, 1, w, s, chi3, chi4, tp, 0.12, 96);
    const double rel = std::abs(rc.formula - rc.probe) / std::abs(rc.probe);
    ACCEPT(rel < 1e-5, "residue slice relative error " << rel << " at p = "
                                                       << p);
    worst_slice = std::max(worst_slice, rel);
  }
  return "circle probes <= " + num(worst_probe) +
         " relative, formula-vs-probe slices <= " + num(worst_slice);
}

std::string key_equation_r1() {
  const auto chi4 = character_from_label("4.1");
  KeyEqParams p;
  p.T = 150.0;
  p.P = 1000000;
  const ResidualReport rep =
      verify_r1(cplx(3.0, 0.0), cplx(4.0, 0.155), chi4, p);
  ACCEPT(rep.rel_residual < 1e-3, "relative residual " << rep.rel_residual
                                                       << " at w = 3");
  ACCEPT(rep.pass, "residual exceeds tolerance plus reported tails");
  KeyEqParams pc = p;
  pc.continued = true;
  const ResidualReport had = verify_r1(cplx(2.0, 0.0), cplx(3.0, 0.0), chi4, pc);
  const double h = 1e-3;
  const cplx oracle = -(l_log_derivative(chi4, cplx(3.0 + h, 0.0)) -
                        l_log_derivative(chi4, cplx(3.0 - h, 0.0))) /
                      (2.0 * h);
  const double dev = std::abs(had.lhs - oracle);
  ACCEPT(dev < 1e-3, "second-derivative cross-check off by " << dev);
  return "zeros vs primes residual " + num(rep.rel_residual) +
         " relative, Hadamard cross-check gap " + num(dev);
}

std::string key_equation_r2() {
  const auto chi3 = character_from_label("3.1");
  const auto chi4 = character_from_label("4.1");
  KeyEqParams p;
  p.T = 150.0;
  p.tensor.P = 100000;
  const ResidualReport a =
      verify_r2(cplx(3.0, 0.0), cplx(5.0, 0.16), chi3, chi4, p);
  ACCEPT(a.rel_residual < 1e-2, "relative residual " << a.rel_residual
                                                     << " at w = 3");
  const ResidualReport b =
      verify_r2(cplx(4.0, 0.0), cplx(5.0, 0.16), chi3, chi4, p);
  ACCEPT(b.rel_residual < 1e-3, "relative residual " << b.rel_residual
                                                     << " at w = 4");
  return "zero pairs vs ten series: " + num(a.rel_residual) + " at w = 3, " +
         num(b.rel_residual) + " at w = 4";
}

std::string tensor_invariance() {
  const auto chi3 = character_from_label("3.1");
  const auto chi4 = character_from_label("4.1");
  const cplx s(3.0, 0.0);
  cplx v[4];
  int i = 0;
  for (double alpha : {0.3, 0.6})
    for (double eps : {0.4, 0.8})
      v[i++] = tensor_square(s, chi3, chi4, tensor_params(alpha, eps, 20000));
  double worst = 0.0;
  for (int j = 1; j < 4; ++j) {
    const double rel = std::abs(v[j] - v[0]) / std::abs(v[0]);
    ACCEPT(rel < 1e-6, "parameter dependence " << rel << " in configuration "
                                               << j);
    worst = std::max(worst, rel);
  }
  const TensorEvalParams par = tensor_params(0.5, 1.0, 400000);
  const double route = std::abs(e_term(6, cplx(0.0, 0.0), 3.0, chi3, chi4, par) -
                                e6_log_derivative_route(0.0, 3.0, chi3, chi4,
                                                        par));
  ACCEPT(route < 1e-8, "sixth-term route disagreement " << route);
  return "contour/width invariance <= " + num(worst) +
         " relative over 4 configurations, sixth-term routes within " +
         num(route);
}

std::string numeric_kernels() {
  double worst_rec = 0.0;
  for (cplx z : {cplx(0.3, 0.7), cplx(-1.7, 2.2), cplx(2.5, -3.0),
                 cplx(0.9, 14.0)}) {
    const cplx lhs = gamma_fn(z + 1.0);
    const double rel = std::abs(lhs - z * gamma_fn(z)) / std::abs(lhs);
    ACCEPT(rel < 1e-12, "gamma recurrence residual " << rel);
    worst_rec = std::max(worst_rec, rel);
  }
  double worst_dig = 0.0;
  const double h = 1e-4;
  for (cplx z : {cplx(1.3, 0.4), cplx(3.0, -2.0), cplx(0.5, 5.0)}) {
    const cplx fd = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
    const double dev = std::abs(fd - digamma(z));
    ACCEPT(dev < 1e-6, "digamma finite-difference gap " << dev);
    worst_dig = std::max(worst_dig, dev);
  }
  double worst_shift = 0.0;
  for (cplx w : {cplx(2.3, 1.1), cplx(4.0, -0.5), cplx(1.5, 20.0)})
    for (cplx a : {cplx(0.3, 0.0), cplx(0.7, 0.2), cplx(1.9, -1.0)}) {
      const double dev =
          std::abs(hurwitz_zeta(w, a) - cpow(a, -w) - hurwitz_zeta(w, a + 1.0));
      ACCEPT(dev < 1e-11, "hurwitz shift residual " << dev);
      worst_shift = std::max(worst_shift, dev);
    }
  const double psi = kPi / 4.0;
  const cplx eip(std::cos(psi), std::sin(psi));
  QuadratureSpec spec;
  spec.decay_hint = std::cos(psi);
  const QuadResult ray = quad_semi_infinite(
      [&](double x) -> cplx {
        const cplx t = x * eip;
        return std::exp(-t) * t * eip;
      },
      spec);
  const double ray_dev = std::abs(ray.value - cplx(1.0, 0.0));
  ACCEPT(ray_dev < 1e-10, "rotated-ray gamma residual " << ray_dev);
  return "gamma recurrence <= " + num(worst_rec) + ", digamma <= " +
         num(worst_dig) + ", hurwitz shift <= " + num(worst_shift) +
         ", rotated ray <= " + num(ray_dev);
}

} // namespace

int main() {
  criterion("character layer: gauss norms and orthogonality", 1.0,
            character_layer);
  criterion("continuation routes and functional equation", 10.0,
            l_continuation);
  criterion("zero finder: counts and step stability", 120.0, zeros_layer);
  criterion("zero series vs prime series, reflection, kernels, small t", 300.0,
            cramer_layer);
  criterion("residue oracles: circle probes vs closed slices", 300.0,
            residue_oracles);
  criterion("key equation, order one", 120.0, key_equation_r1);
  criterion("key equation, order two", 600.0, key_equation_r2);
  criterion("tensor square invariance and sixth-term routes", 600.0,
            tensor_invariance);
  criterion("numeric kernels: gamma, digamma, hurwitz, rotated ray", 10.0,
            numeric_kernels);
  std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
