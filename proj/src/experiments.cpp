#include "nct/experiments.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nct/powers.hpp"

namespace nct {

using nlohmann::json;

namespace {

const std::vector<std::string> kKinds = {
    "spectrum",  "compose-check",  "parametrix-study", "resolvent-sweep", "minimal-growth",
    "schatten",  "power",          "abs",              "trace-chain",     "phi-check"};

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_param(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  return Complex(j.value("re", 0.0), j.value("im", 0.0));
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name);
  if (!f) throw ConfigError("cannot open output file " + (dir / name).string());
  f << std::setprecision(17);
  return f;
}

std::vector<Complex> lambda_grid_from(const json& p) {
  double t_lo = p.value("t_lo", 10.0), t_hi = p.value("t_hi", 1e4);
  int count = p.value("count", 12);
  double arg = p.value("arg", 3.14159265358979323846);
  std::vector<Complex> grid;
  for (int i = 0; i < count; ++i)
    grid.push_back(std::polar(t_lo * std::pow(t_hi / t_lo, double(i) / (count - 1)), arg));
  return grid;
}

}  // namespace

std::string ExperimentConfig::hash() const {
  json j{{"theta", std::vector<std::vector<double>>()},
         {"cutoff", cutoff},
         {"margin", margin},
         {"operator", operator_src},
         {"kind", kind},
         {"seed", seed},
         {"params", params_json}};
  for (int r = 0; r < theta->n(); ++r) {
    std::vector<double> row;
    for (int c = 0; c < theta->n(); ++c) row.push_back(theta->entry(r, c));
    j["theta"].push_back(row);
  }
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(j.dump());
  return os.str();
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
  std::ifstream f(path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  if (!j.contains("theta") || !j["theta"].is_array())
    throw ConfigError("config: missing theta matrix");
  int n = int(j["theta"].size());
  Eigen::MatrixXd th(n, n);
  for (int r = 0; r < n; ++r) {
    if (int(j["theta"][r].size()) != n) throw ConfigError("config: theta must be square");
    for (int c = 0; c < n; ++c) th(r, c) = j["theta"][r][c].get<double>();
  }
  cfg.theta = ThetaMatrix::make(n, th);  // validates antisymmetry

  cfg.cutoff = j.value("cutoff", 8);
  if (cfg.cutoff < 2) throw ConfigError("config: cutoff must be >= 2");
  cfg.margin = j.value("margin", cfg.cutoff / 2);
  cfg.operator_src = j.value("operator", "");
  cfg.kind = j.value("kind", "");
  if (std::find(kKinds.begin(), kKinds.end(), cfg.kind) == kKinds.end())
    throw ConfigError("config: unknown experiment kind '" + cfg.kind + "'");
  cfg.seed = j.value("seed", 1u);
  cfg.params_json = j.value("params", json::object()).dump();
  cfg.out_dir = j.value("out", std::string("out/") + cfg.kind);
  return cfg;
}

DiffOp random_diffop(const ThetaPtr& theta, int max_order, int support, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ks(-support, support);
  const int n = theta->n();
  DiffOp op = diffop_zero(theta);
  for (int m = 0; m <= max_order; ++m) {
    for (const auto& alpha : multi_orders(n, m)) {
      // sparse random coefficient: three lattice monomials
      NcElement::CoeffMap cm;
      for (int t = 0; t < 3; ++t) {
        MultiIndex k(n);
        for (int jj = 0; jj < n; ++jj) k[jj] = ks(rng);
        cm[k] = Complex(u(rng), u(rng));
      }
      DiffOp term = diffop_mult(NcElement(theta, std::move(cm)));
      for (int jj = 0; jj < n; ++jj)
        for (int r = 0; r < alpha[jj]; ++r) term = term * diffop_delta(theta, jj);
      op = op + term;
    }
  }
  return op;
}

ClassicalSymbol diffop_symbol(const DiffOp& op) { return differential_symbol(op.theta, op.terms); }

namespace {

int run_spectrum(const ExperimentConfig& cfg, json& report) {
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  TruncatedOperator T = quantize(diffop_symbol(ast.normalized), cfg.cutoff);
  auto ev = eigenvalues(T);
  auto csv = open_out(cfg.out_dir, "spectrum.csv");
  csv << "re,im\n";
  for (Complex z : ev) csv << z.real() << "," << z.imag() << "\n";
  report["eigenvalue_count"] = ev.size();
  report["min_modulus"] = std::abs(ev.front());
  report["max_modulus"] = std::abs(ev.back());
  return 0;
}

int run_compose_check(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  int pairs = p.value("pairs", 20);
  int max_order = p.value("max_order", 2);
  int support = p.value("support", 2);
  double tol = p.value("tol", 1e-10);

  auto csv = open_out(cfg.out_dir, "compose.csv");
  csv << "pair,interior_error\n";
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    DiffOp a = random_diffop(cfg.theta, max_order, support, cfg.seed + 2 * i);
    DiffOp b = random_diffop(cfg.theta, max_order, support, cfg.seed + 2 * i + 1);
    ClassicalSymbol ra = diffop_symbol(a), rb = diffop_symbol(b);
    int J = int(ra.order() + rb.order());
    TruncatedOperator lhs = quantize(sharp(ra, rb, J), cfg.cutoff);
    TruncatedOperator rhs = compose(quantize(ra, cfg.cutoff), quantize(rb, cfg.cutoff));
    double err = interior_norm(lhs, rhs, cfg.margin);
    worst = std::max(worst, err);
    csv << i << "," << err << "\n";
  }
  report["max_interior_error"] = worst;
  report["tolerance"] = tol;
  return worst <= tol ? 0 : 2;
}

int run_parametrix_study(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  Complex lambda = complex_param(p.value("lambda", json(-100.0)));
  int Jmax = p.value("J", 3);

  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  ClassicalSymbol sym = diffop_symbol(ast.normalized);
  auto residuals = parametrix_residuals(sym, Jmax, lambda, cfg.cutoff, cfg.margin);

  auto csv = open_out(cfg.out_dir, "residuals.csv");
  csv << "J,interior_residual\n";
  for (int j = 0; j <= Jmax; ++j) csv << j << "," << residuals[j] << "\n";
  report["lambda"] = complex_json(lambda);
  report["residuals"] = residuals;
  return 0;
}

int run_resolvent_sweep(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  int J = p.value("J", 2);
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  ClassicalSymbol sym = diffop_symbol(ast.normalized);
  ResolventReport rep =
      resolvent_vs_parametrix(sym, J, lambda_grid_from(p), cfg.cutoff, cfg.margin);

  auto csv = open_out(cfg.out_dir, "sweep.csv");
  csv << "lambda_re,lambda_im,exact_norm,difference_norm";
  for (int j = 0; j <= J; ++j) csv << ",residual_J" << j;
  csv << "\n";
  for (size_t i = 0; i < rep.lambda_grid.size(); ++i) {
    csv << rep.lambda_grid[i].real() << "," << rep.lambda_grid[i].imag() << ","
        << rep.exact_norms[i] << "," << rep.difference_norms[i];
    for (double r : rep.residuals[i]) csv << "," << r;
    csv << "\n";
  }
  report["difference_fit_exponent"] = rep.difference_fit.exponent;
  report["difference_fit_residual"] = rep.difference_fit.residual;
  report["skipped"] = rep.skipped;
  return rep.lambda_grid.empty() ? 2 : 0;
}

int run_minimal_growth(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  std::vector<double> rays = p.value("rays", std::vector<double>{3.14159265358979323846});
  double t_lo = p.value("t_lo", 10.0), t_hi = p.value("t_hi", 1e4);
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  TruncatedOperator T = quantize(diffop_symbol(ast.normalized), cfg.cutoff);

  auto csv = open_out(cfg.out_dir, "rays.csv");
  csv << "ray_arg,exponent,fit_residual\n";
  json fits = json::array();
  bool ok = true;
  for (double arg : rays) {
    DecayFit fit = minimal_growth_check(T, arg, t_lo, t_hi);
    csv << arg << "," << fit.exponent << "," << fit.residual << "\n";
    fits.push_back({{"arg", arg}, {"exponent", fit.exponent}, {"residual", fit.residual}});
    if (std::abs(fit.exponent + 1.0) > 0.05) ok = false;
  }
  report["fits"] = fits;
  report["pass_band"] = "-1 +/- 0.05";
  return ok ? 0 : 2;
}

int run_schatten(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  Complex lambda = complex_param(p.value("lambda", json(-1.0)));
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  TruncatedOperator T = quantize(diffop_symbol(ast.normalized), cfg.cutoff);
  SchattenFit fit = schatten_tail(exact_resolvent(T, lambda));

  auto csv = open_out(cfg.out_dir, "singular_values.csv");
  csv << "index,sigma\n";
  for (size_t i = 0; i < fit.singular_values.size(); ++i)
    csv << i << "," << fit.singular_values[i] << "\n";
  report["slope"] = fit.slope;
  report["fit_residual"] = fit.residual;
  report["window"] = {fit.window_lo, fit.window_hi};
  return 0;
}

int run_power(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  Complex z = complex_param(p.value("z", json{{"re", -0.5}, {"im", 0.0}}));
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  TruncatedOperator T = quantize(diffop_symbol(ast.normalized), cfg.cutoff);

  TruncatedOperator Ps = power_spectral(T, z);
  ContourPowerResult Pc = power_contour(T, z);
  double dev = op_norm(TruncatedOperator(T.theta(), T.box(), Ps.matrix() - Pc.op.matrix()));
  report["z"] = complex_json(z);
  report["route_deviation"] = dev;
  report["contour_error_estimate"] = Pc.error_estimate;
  report["shift_m"] = Pc.shift_m;
  report["throat_r"] = Pc.r;
  report["t_max"] = Pc.t_max;
  return dev <= p.value("tol", 1e-6) ? 0 : 2;
}

int run_abs(const ExperimentConfig& cfg, json& report) {
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  ClassicalSymbol sym = diffop_symbol(ast.normalized);
  TruncatedOperator T = quantize(sym, cfg.cutoff);
  AbsValueResult res = abs_value(T, sym);
  double sq_dev = op_norm(TruncatedOperator(
      T.theta(), T.box(),
      res.op.matrix() * res.op.matrix() - adjoint_op(T).matrix() * T.matrix()));
  double herm_dev =
      op_norm(TruncatedOperator(T.theta(), T.box(), res.op.matrix() - res.op.matrix().adjoint()));
  report["square_deviation"] = sq_dev;
  report["hermitian_deviation"] = herm_dev;
  return sq_dev <= 1e-8 && herm_dev <= 1e-10 ? 0 : 2;
}

int run_trace_chain(const ExperimentConfig& cfg, json& report) {
  json p = json::parse(cfg.params_json);
  int resolvents = p.value("resolvents", 2);
  OperatorAst ast = parse_operator(cfg.operator_src, cfg.theta);
  ClassicalSymbol sym = diffop_symbol(ast.normalized);
  TruncatedOperator T = quantize(sym, cfg.cutoff);

  std::vector<TruncatedOperator> factors(resolvents + 1, identity_op(cfg.theta, cfg.cutoff));
  std::vector<double> orders(resolvents + 1, 0.0);
  DecayFit fit = trace_chain(factors, orders, T, sym.order(), lambda_grid_from(p));
  report["exponent"] = fit.exponent;
  report["fit_residual"] = fit.residual;
  report["resolvents"] = resolvents;
  return 0;
}

int run_phi_check(const ExperimentConfig& cfg, json& report) {
  PhiProfile profile;
  profile.check_radius = 2 * cfg.cutoff;
  PhiInterpolant phi = build_phi(cfg.theta->n(), profile);  // throws PrecisionError on failure
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.theta->n());
  report["phi_at_zero"] = phi(zero);
  report["checked_radius"] = profile.check_radius;
  report["check_tol"] = profile.check_tol;
  auto csv = open_out(cfg.out_dir, "phi_slice.csv");
  csv << "x,phi1d\n";
  for (int i = 0; i <= 200; ++i) {
    double x = -2.0 + i * 0.02;
    csv << x << "," << phi.eval1d(x) << "\n";
  }
  return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, bool verbose) {
  json report{{"kind", cfg.kind},
              {"config_hash", cfg.hash()},
              {"library_version", kLibraryVersion},
              {"cutoff", cfg.cutoff},
              {"margin", cfg.margin},
              {"seed", cfg.seed},
              {"operator", cfg.operator_src},
              {"params", json::parse(cfg.params_json)}};
  int code = 0;
  try {
    if (cfg.kind == "spectrum") code = run_spectrum(cfg, report);
    else if (cfg.kind == "compose-check") code = run_compose_check(cfg, report);
    else if (cfg.kind == "parametrix-study") code = run_parametrix_study(cfg, report);
    else if (cfg.kind == "resolvent-sweep") code = run_resolvent_sweep(cfg, report);
    else if (cfg.kind == "minimal-growth") code = run_minimal_growth(cfg, report);
    else if (cfg.kind == "schatten") code = run_schatten(cfg, report);
    else if (cfg.kind == "power") code = run_power(cfg, report);
    else if (cfg.kind == "abs") code = run_abs(cfg, report);
    else if (cfg.kind == "trace-chain") code = run_trace_chain(cfg, report);
    else if (cfg.kind == "phi-check") code = run_phi_check(cfg, report);
    else throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
  } catch (const Error& e) {
    report["error"] = e.what();
    code = 2;
  }
  report["exit_code"] = code;
  auto f = open_out(cfg.out_dir, "report.json");
  f << report.dump(2) << "\n";
  if (verbose) std::cout << report.dump(2) << "\n";
  return code;
}

}  // namespace nct
