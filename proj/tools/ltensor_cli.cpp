#include <cstdio>
#include <limits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ltensor/cramer.hpp"
#include "ltensor/keyeq.hpp"
#include "ltensor/lfunctions.hpp"
#include "ltensor/tensor.hpp"

using namespace ltensor;
using nlohmann::json;

namespace {

struct CliConfig {
  double alpha = 0.5;
  double epsilon = 1.0;
  double theta = 0.39269908169872414;
  long long prime_limit = 100000;
  double zero_height = 150.0;
  double tol = 1e-3;
  bool continued = false;
  std::string format = "json";
  std::string cache_dir = ".ltensor-cache";
  int threads = 1;
};

std::string trim(const std::string &text) {
  const auto a = text.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = text.find_last_not_of(" \t\r");
  return text.substr(a, b - a + 1);
}

double parse_double(const std::string &text, const std::string &what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    used = std::string::npos;
  }
  if (used != text.size())
    throw std::invalid_argument("malformed " + what + ": '" + text + "'");
  return v;
}

long long parse_int(const std::string &text, const std::string &what) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception &) {
    used = std::string::npos;
  }
  if (used != text.size())
    throw std::invalid_argument("malformed " + what + ": '" + text + "'");
  return v;
}

bool read_double(const std::string &text, double &out) {
  size_t used = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception &) {
    return false;
  }
  return used == text.size();
}

// literal form a+bi with no spaces; either part may be absent
cplx parse_complex(const std::string &text) {
  std::string t = text;
  double re = 0.0, im = 0.0;
  bool ok = !t.empty();
  if (ok && t.back() != 'i') {
    ok = read_double(t, re);
  } else if (ok) {
    t.pop_back();
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;)
      if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
        split = i;
        break;
      }
    std::string im_part = t;
    if (split != std::string::npos) {
      ok = read_double(t.substr(0, split), re);
      im_part = t.substr(split);
    }
    if (im_part.empty() || im_part == "+")
      im = 1.0;
    else if (im_part == "-")
      im = -1.0;
    else
      ok = ok && read_double(im_part, im);
  }
  if (!ok)
    throw std::invalid_argument("malformed complex literal (expected a+bi): '" +
                                text + "'");
  return cplx(re, im);
}

// lo:hi:step, endpoints inclusive
std::vector<double> parse_grid(const std::string &text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("malformed grid (expected lo:hi:step): '" +
                                text + "'");
  const double lo = parse_double(text.substr(0, c1), "grid bound");
  const double hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid bound");
  const double step = parse_double(text.substr(c2 + 1), "grid step");
  if (!(step > 0.0) || hi < lo)
    throw std::invalid_argument("empty grid: '" + text + "'");
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + 0.5 * step; ++k)
    out.push_back(lo + k * step);
  return out;
}

void load_config_file(const std::string &path, CliConfig &cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(no);
    if (eq == std::string::npos)
      throw std::invalid_argument(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "alpha")
      cfg.alpha = parse_double(val, "alpha");
    else if (key == "epsilon")
      cfg.epsilon = parse_double(val, "epsilon");
    else if (key == "theta")
      cfg.theta = parse_double(val, "theta");
    else if (key == "prime_limit")
      cfg.prime_limit = parse_int(val, "prime_limit");
    else if (key == "zero_height")
      cfg.zero_height = parse_double(val, "zero_height");
    else if (key == "tol")
      cfg.tol = parse_double(val, "tol");
    else if (key == "continued")
      cfg.continued = val == "1" || val == "true";
    else if (key == "format") {
      if (val != "csv" && val != "json")
        throw std::invalid_argument(where + ": format must be csv or json");
      cfg.format = val;
    } else if (key == "cache_dir")
      cfg.cache_dir = val;
    else if (key == "threads")
      cfg.threads = int(parse_int(val, "threads"));
    else
      throw std::invalid_argument(where + ": unknown config key '" + key + "'");
  }
}

CramerEvalParams cramer_from(const CliConfig &cfg) {
  CramerEvalParams par;
  par.alpha = cfg.alpha;
  par.epsilon = cfg.epsilon;
  par.theta = cfg.theta;
  par.T = cfg.zero_height;
  par.P = cfg.prime_limit;
  return par;
}

TensorEvalParams tensor_from(const CliConfig &cfg) {
  TensorEvalParams par = make_tensor_params(cramer_from(cfg), cramer_from(cfg));
  par.P = cfg.prime_limit;
  par.T = cfg.zero_height;
  return par;
}

std::string cache_path(const CliConfig &cfg, const std::string &label) {
  return cfg.cache_dir + "/" + label + ".zeros";
}

// disk cache is reused when it already reaches the requested height
ZeroList obtain_zeros(const DirichletCharacter &chi, double T,
                      const CliConfig &cfg) {
  const std::string path = cache_path(cfg, chi.label());
  if (std::filesystem::exists(path)) {
    ZeroList cached = load_zeros(path);
    if (cached.label == chi.label() && cached.complete_to >= T) return cached;
  }
  ZeroList fresh = find_zeros(chi, T);
  std::filesystem::create_directories(cfg.cache_dir);
  save_zeros(fresh, path);
  return fresh;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json params_json(const CliConfig &cfg) {
  json j;
  j["alpha"] = cfg.alpha;
  j["epsilon"] = cfg.epsilon;
  j["theta"] = cfg.theta;
  j["prime_limit"] = cfg.prime_limit;
  j["zero_height"] = cfg.zero_height;
  return j;
}

json report_json(const ResidualReport &rep) {
  json j;
  j["r"] = rep.r;
  j["label1"] = rep.label1;
  if (!rep.label2.empty()) j["label2"] = rep.label2;
  j["w"] = cplx_json(rep.w);
  j["s"] = cplx_json(rep.s);
  j["lhs"] = cplx_json(rep.lhs);
  j["rhs"] = cplx_json(rep.rhs);
  j["abs_residual"] = rep.abs_residual;
  j["rel_residual"] = rep.rel_residual;
  j["zero_tail"] = rep.zero_tail;
  j["prime_tail"] = rep.prime_tail;
  j["quad_error"] = rep.quad_error;
  j["T"] = rep.T;
  j["P"] = rep.P;
  j["tolerance"] = rep.tolerance;
  j["continued"] = rep.continued;
  j["pass"] = rep.pass;
  return j;
}

int emit_report(const ResidualReport &rep) {
  std::cout << report_json(rep).dump(2) << "\n";
  std::printf("%s rel_residual=%.6e abs_residual=%.6e zero_tail=%.6e "
              "prime_tail=%.6e quad_error=%.6e\n",
              rep.pass ? "PASS" : "FAIL", rep.rel_residual, rep.abs_residual,
              rep.zero_tail, rep.prime_tail, rep.quad_error);
  return rep.pass ? 0 : 1;
}

int cmd_chars(long long N, const CliConfig &cfg) {
  const auto chars = enumerate_characters(N);
  if (cfg.format == "csv") {
    std::printf("label,conductor,parity,order,primitive,gauss_re,gauss_im\n");
    for (const auto &chi : chars) {
      const auto inv = character_invariants(chi);
      const cplx g = gauss_sum(chi);
      std::printf("%s,%lld,%d,%lld,%d,%.17g,%.17g\n", chi.label().c_str(),
                  inv.conductor, inv.parity, inv.order, int(inv.primitive),
                  g.real(), g.imag());
    }
    return 0;
  }
  json rows = json::array();
  for (const auto &chi : chars) {
    const auto inv = character_invariants(chi);
    json row;
    row["label"] = chi.label();
    row["conductor"] = inv.conductor;
    row["parity"] = inv.parity;
    row["order"] = inv.order;
    row["primitive"] = inv.primitive;
    row["gauss_sum"] = cplx_json(gauss_sum(chi));
    rows.push_back(row);
  }
  std::cout << rows.dump(2) << "\n";
  return 0;
}

int cmd_zeros(const std::string &label, const CliConfig &cfg) {
  const auto chi = character_from_label(label);
  const ZeroList z = obtain_zeros(chi, cfg.zero_height, cfg);
  if (cfg.format == "csv") {
    std::printf("index,ordinate\n");
    for (size_t i = 0; i < z.ordinates.size(); ++i)
      std::printf("%zu,%.17g\n", i + 1, z.ordinates[i]);
    return 0;
  }
  json j;
  j["label"] = z.label;
  j["complete_to"] = z.complete_to;
  j["count"] = z.ordinates.size();
  j["mu0"] = z.mu0;
  j["mu_tau0"] = z.mu_tau0;
  j["tau0"] = z.tau0;
  json first = json::array();
  for (size_t i = 0; i < z.ordinates.size() && i < 8; ++i)
    first.push_back(z.ordinates[i]);
  j["first"] = first;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_lvalue(const std::string &label, const std::string &s_text,
               const CliConfig &cfg) {
  const auto chi = character_from_label(label);
  const cplx s = parse_complex(s_text);
  const cplx l = l_value(chi, s);
  const cplx hat = completed_l(chi, s);
  // the reflected side sits on the log-gamma cut for real s outside (0, 1)
  double fe = std::numeric_limits<double>::quiet_NaN();
  bool have_fe = true;
  try {
    fe = functional_equation_residual(chi, s);
  } catch (const std::domain_error &) {
    have_fe = false;
  }
  if (cfg.format == "csv") {
    std::printf("label,s_re,s_im,l_re,l_im,completed_re,completed_im,"
                "fe_residual\n");
    std::printf("%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                chi.label().c_str(), s.real(), s.imag(), l.real(), l.imag(),
                hat.real(), hat.imag(), fe);
    return 0;
  }
  json j;
  j["label"] = chi.label();
  j["s"] = cplx_json(s);
  j["l"] = cplx_json(l);
  j["completed"] = cplx_json(hat);
  if (have_fe)
    j["fe_residual"] = fe;
  else
    j["fe_residual"] = nullptr;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_theta(const std::string &label, const std::string &grid_text,
              const CliConfig &cfg) {
  const auto chi = character_from_label(label);
  const ZeroList z = obtain_zeros(chi, cfg.zero_height, cfg);
  const CramerEvalParams par = cramer_from(cfg);
  std::printf("t_re,t_im,method,value_re,value_im,tail\n");
  for (double t : parse_grid(grid_text)) {
    const TailedValue zs = l_zero_sum(chi, cplx(t, 0.0), z);
    std::printf("%.17g,%.17g,zero_sum,%.17g,%.17g,%.17g\n", t, 0.0,
                zs.value.real(), zs.value.imag(), zs.tail);
    const cplx ex = l_explicit(chi, cplx(t, 0.0), par);
    std::printf("%.17g,%.17g,explicit,%.17g,%.17g,%.17g\n", t, 0.0, ex.real(),
                ex.imag(), 0.0);
  }
  return 0;
}

int cmd_tensor_eval(const std::string &label1, const std::string &label2,
                    const std::string &s_text, const CliConfig &cfg) {
  const auto chi1 = character_from_label(label1);
  const auto chi2 = character_from_label(label2);
  const cplx s = parse_complex(s_text);
  const TensorEvalParams par = tensor_from(cfg);
  const TailedValue v = tensor_square_tailed(s, chi1, chi2, par);
  json terms = json::array();
  for (int k = 1; k <= 10; ++k)
    terms.push_back(cplx_json(e_term(k, cplx(0.0, 0.0), s, chi1, chi2, par)));
  json j;
  j["label1"] = chi1.label();
  j["label2"] = chi2.label();
  j["s"] = cplx_json(s);
  j["value"] = cplx_json(v.value);
  j["per_term"] = terms;
  j["error_estimate"] = v.tail;
  j["params"] = params_json(cfg);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string &label1, const std::string &label2,
              const std::string &grid_text, const CliConfig &cfg) {
  const auto chi1 = character_from_label(label1);
  const auto chi2 = character_from_label(label2);
  const TensorEvalParams par = tensor_from(cfg);
  std::printf("s_re,s_im,value_re,value_im,error_estimate");
  for (int k = 1; k <= 10; ++k) std::printf(",e%d_re,e%d_im", k, k);
  std::printf("\n");
  for (double sr : parse_grid(grid_text)) {
    const cplx s(sr, 0.0);
    const TailedValue v = tensor_square_tailed(s, chi1, chi2, par);
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g", sr, 0.0, v.value.real(),
                v.value.imag(), v.tail);
    for (int k = 1; k <= 10; ++k) {
      const cplx e = e_term(k, cplx(0.0, 0.0), s, chi1, chi2, par);
      std::printf(",%.17g,%.17g", e.real(), e.imag());
    }
    std::printf("\n");
  }
  return 0;
}

int cmd_verify_r1(const std::string &label, const std::string &w_text,
                  const std::string &s_text, const CliConfig &cfg) {
  const auto chi = character_from_label(label);
  KeyEqParams kp;
  kp.T = cfg.zero_height;
  kp.P = cfg.prime_limit;
  kp.tolerance = cfg.tol;
  kp.continued = cfg.continued;
  return emit_report(
      verify_r1(parse_complex(w_text), parse_complex(s_text), chi, kp));
}

int cmd_verify_r2(const std::string &label1, const std::string &label2,
                  const std::string &w_text, const std::string &s_text,
                  const CliConfig &cfg) {
  const auto chi1 = character_from_label(label1);
  const auto chi2 = character_from_label(label2);
  KeyEqParams kp;
  kp.T = cfg.zero_height;
  kp.P = cfg.prime_limit;
  kp.tolerance = cfg.tol;
  kp.continued = cfg.continued;
  kp.tensor = tensor_from(cfg);
  return emit_report(verify_r2(parse_complex(w_text), parse_complex(s_text),
                               chi1, chi2, kp));
}

} // namespace

int main(int argc, char **argv) {
  CliConfig cfg;
  if (const char *env = std::getenv("LTENSOR_CACHE_DIR")) cfg.cache_dir = env;

  // the config file seeds the defaults; explicit flags override it
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc)
      config_path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0)
      config_path = a.substr(9);
  }
  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
  } catch (const std::exception &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"absolute tensor square of two Dirichlet L-functions: "
               "evaluation and key-equation verification"};
  app.require_subcommand(1);
  std::string config_sink;
  app.add_option("--config", config_sink, "key=value parameter file");

  std::string label1, label2, s_text, w_text, grid_text;
  long long modulus = 0;

  auto add_common = [&](CLI::App *sc) {
    sc->add_option("--config", config_sink, "key=value parameter file");
    sc->add_option("--alpha", cfg.alpha, "contour width parameter in (0,1)");
    sc->add_option("--epsilon", cfg.epsilon, "contour half-height");
    sc->add_option("--theta", cfg.theta, "slant of the prime-side rays");
    sc->add_option("--prime-limit", cfg.prime_limit, "prime-power cutoff");
    sc->add_option("--zero-height", cfg.zero_height, "zero-list height");
    sc->add_option("--tol", cfg.tol, "verification tolerance");
    sc->add_flag("--continued", cfg.continued,
                 "allow spots outside the slanted strip");
    sc->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--cache-dir", cfg.cache_dir, "zero-cache directory");
    return sc;
  };

  auto *sc_chars = add_common(
      app.add_subcommand("chars", "list the characters of a modulus"));
  sc_chars->add_option("N", modulus, "modulus")->required();

  auto *sc_zeros = add_common(
      app.add_subcommand("zeros", "compute or load zeros up to a height"));
  sc_zeros->add_option("label", label1, "character label N.k")->required();

  auto *sc_lvalue = add_common(app.add_subcommand(
      "l-value", "L, completed L and functional-equation residual"));
  sc_lvalue->add_option("label", label1, "character label N.k")->required();
  sc_lvalue->add_option("--s", s_text, "evaluation spot a+bi")->required();

  auto *sc_theta = add_common(app.add_subcommand(
      "theta", "zero-sum vs prime-side series of l_chi as CSV"));
  sc_theta->add_option("label", label1, "character label N.k")->required();
  sc_theta->add_option("--t-grid", grid_text, "real grid lo:hi:step")
      ->required();

  auto *sc_tensor = add_common(app.add_subcommand(
      "tensor-eval", "tensor-square value with per-term breakdown"));
  sc_tensor->add_option("label1", label1, "first character")->required();
  sc_tensor->add_option("label2", label2, "second character")->required();
  sc_tensor->add_option("--s", s_text, "evaluation spot a+bi")->required();

  auto *sc_sweep = add_common(app.add_subcommand(
      "sweep", "tensor-square values over a real s grid as CSV"));
  sc_sweep->add_option("label1", label1, "first character")->required();
  sc_sweep->add_option("label2", label2, "second character")->required();
  sc_sweep->add_option("--s-grid", grid_text, "real grid lo:hi:step")
      ->required();

  auto *sc_r1 = add_common(app.add_subcommand(
      "verify-r1", "order-one identity: zeros against primes"));
  sc_r1->add_option("label", label1, "character label N.k")->required();
  sc_r1->add_option("--w", w_text, "power-sum level a+bi")->required();
  sc_r1->add_option("--s", s_text, "evaluation spot a+bi")->required();

  auto *sc_r2 = add_common(app.add_subcommand(
      "verify-r2", "order-two identity: zero pairs against the ten series"));
  sc_r2->add_option("label1", label1, "first character")->required();
  sc_r2->add_option("label2", label2, "second character")->required();
  sc_r2->add_option("--w", w_text, "power-sum level a+bi")->required();
  sc_r2->add_option("--s", s_text, "evaluation spot a+bi")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_chars->parsed()) return cmd_chars(modulus, cfg);
    if (sc_zeros->parsed()) return cmd_zeros(label1, cfg);
    if (sc_lvalue->parsed()) return cmd_lvalue(label1, s_text, cfg);
    if (sc_theta->parsed()) return cmd_theta(label1, grid_text, cfg);
    if (sc_tensor->parsed())
      return cmd_tensor_eval(label1, label2, s_text, cfg);
    if (sc_sweep->parsed()) return cmd_sweep(label1, label2, grid_text, cfg);
    if (sc_r1->parsed()) return cmd_verify_r1(label1, w_text, s_text, cfg);
    if (sc_r2->parsed())
      return cmd_verify_r2(label1, label2, w_text, s_text, cfg);
  } catch (const std::exception &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
