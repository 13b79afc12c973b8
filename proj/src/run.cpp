#include "semikit/run.hpp"

#include "semikit/chernoff.hpp"
#include "semikit/plot.hpp"
#include "semikit/quasifeynman.hpp"
#include "semikit/rates.hpp"
#include "semikit/resolvent.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace semikit {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
  int status = kExitOk;
  std::string error;
  json results = json::object();
};

void write_text(const fs::path& path, const std::string& text)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write " + path.string());
  os << text;
}

void write_solution(const fs::path& dir, const GridFunction& f)
{
  std::ostringstream os;
  write_csv(os, f);
  write_text(dir / "solution.csv", os.str());
}

void write_summary(const fs::path& dir, const std::string& command, const json& inputs,
                   const Outcome& outcome)
{
  json summary;
  summary["tool"] = "semikit";
  summary["version"] = kVersion;
  summary["command"] = command;
  summary["exit_code"] = outcome.status;
  summary["status"] = outcome.status == kExitOk                 ? "ok"
                      : outcome.status == kExitContractViolation ? "contract_violation"
                                                                 : "error";
  summary["error"] = outcome.error.empty() ? json(nullptr) : json(outcome.error);
  summary["inputs"] = inputs;
  summary["results"] = outcome.results;
  fs::create_directories(dir);
  write_text(dir / "summary.json", summary.dump(2) + "\n");
}

void write_log(const fs::path& dir, const std::string& command, double seconds, int status)
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ofstream os(dir / "run.log", std::ios::app);
  os << fmt::format("{} semikit {} {} exit={} elapsed={:.3f}s\n", stamp, kVersion, command,
                    status, seconds);
}

ChernoffScheme make_scheme(const RunConfig& cfg, const OperatorCoefficients& coeffs)
{
  switch (cfg.scheme.kind) {
    case SchemeSpec::Kind::shift: return shift_scheme(coeffs);
    case SchemeSpec::Kind::integral: return integral_scheme(coeffs, cfg.scheme.hermite_order);
    case SchemeSpec::Kind::exact: {
      const auto sym = as_constant(coeffs);
      if (!sym)
        throw std::invalid_argument("exact scheme needs constant coefficients");
      return exact_scheme(*sym);
    }
  }
  throw std::logic_error("unhandled scheme kind");
}

/// Multiplier semigroup for constant coefficients, dense matrix exponential
/// otherwise (N <= 1024).
std::optional<std::pair<std::string, EvolutionFn>> make_reference(
    const RunConfig& cfg, const OperatorCoefficients& coeffs)
{
  if (!cfg.use_oracle)
    return std::nullopt;
  if (const auto sym = as_constant(coeffs)) {
    return std::pair{std::string("multiplier"),
                     EvolutionFn([sym = *sym](double t, const GridFunction& u) {
                       return multiplier_semigroup(sym, t, u);
                     })};
  }
  if (coeffs.grid().size() > kDenseOracleMaxPoints)
    return std::nullopt;
  auto dense = std::make_shared<DenseEvolution>(coeffs);
  return std::pair{std::string("dense"),
                   EvolutionFn([dense](double t, const GridFunction& u) { return (*dense)(t, u); })};
}

Outcome run_evolve(const RunConfig& cfg, const fs::path& dir)
{
  const auto coeffs = cfg.coefficients();
  const auto scheme = make_scheme(cfg, coeffs);
  const auto u0 = cfg.initial.sample(cfg.grid());
  const auto u = chernoff_iterate(scheme, cfg.t, cfg.n, u0);
  write_solution(dir, u);

  Outcome out;
  out.results["scheme"] = scheme.label;
  out.results["t"] = cfg.t;
  out.results["n"] = cfg.n;
  out.results["sup_norm"] = sup_norm(u);
  out.results["l2_norm"] = l2_norm(u);
  if (const auto ref = make_reference(cfg, coeffs)) {
    const auto exact = ref->second(cfg.t, u0);
    out.results["oracle"] = ref->first;
    out.results["sup_error"] = sup_norm(u - exact);
    out.results["l2_error"] = l2_norm(u - exact);
  } else {
    out.results["oracle"] = "none";
  }
  return out;
}

json rate_json(const RateReport& report)
{
  return {{"order", report.fitted_order},
          {"quality", report.fit_quality},
          {"classification", to_string(report.classification)},
          {"usable_points", report.usable_points},
          {"reached_floor", report.reached_floor},
          {"floor", report.curve.floor}};
}

void write_rate_artifacts(const fs::path& dir, const ErrorCurve& curve, const std::string& title)
{
  std::ostringstream os;
  write_rate_csv(os, curve);
  write_text(dir / "rate.csv", os.str());
  write_text(dir / "plot.svg", emit_plot(curve, title).svg);
}

Outcome run_rate(const RunConfig& cfg, const fs::path& dir)
{
  const auto coeffs = cfg.coefficients();
  const auto scheme = make_scheme(cfg, coeffs);
  const auto u0 = cfg.initial.sample(cfg.grid());
  const auto ref = make_reference(cfg, coeffs);
  if (!ref)
    throw std::invalid_argument("oracle: no reference evolution available for this configuration");
  const auto curve = error_curve(scheme, ref->second, cfg.t, cfg.ns, u0, cfg.norm);
  const auto report = fit_order(curve);
  write_rate_artifacts(dir, curve, fmt::format("{} scheme, t = {}", scheme.label, cfg.t));

  Outcome out;
  out.results["scheme"] = scheme.label;
  out.results["oracle"] = ref->first;
  out.results["norm"] = to_string(cfg.norm);
  out.results["rate"] = rate_json(report);
  if (cfg.subspace_order) {
    std::vector<double> comparison;
    for (int n : cfg.ns)
      comparison.push_back(std::pow(static_cast<double>(n), -*cfg.subspace_order));
    const auto verdict = subspace_test(curve, comparison);
    out.results["subspace"] = {{"comparison_order", *cfg.subspace_order},
                               {"ratios", verdict.ratios},
                               {"consistent", verdict.consistent},
                               {"note", verdict.note}};
  }
  return out;
}

Outcome run_tangency(const RunConfig& cfg, const fs::path& dir)
{
  const auto coeffs = cfg.coefficients();
  const auto scheme = make_scheme(cfg, coeffs);
  const auto f = cfg.initial.sample(cfg.grid());
  const auto report = verify_tangency(scheme, coeffs, f, cfg.t_values);
  const double w = verify_growth_bound(scheme, {f}, {1.0, 0.5, 0.1, 0.01});

  std::string csv = "t,residual\n";
  for (std::size_t i = 0; i < report.t_values.size(); ++i)
    csv += fmt::format("{:.17g},{:.17g}\n", report.t_values[i], report.residuals[i]);
  write_text(dir / "tangency.csv", csv);

  Outcome out;
  out.results["scheme"] = scheme.label;
  out.results["order"] = report.order;
  out.results["fit_quality"] = report.fit_quality;
  out.results["degenerate"] = report.degenerate;
  out.results["growth_bound_estimate"] = w;
  out.results["growth_bound_hint"] = scheme.growth_bound_hint;
  if (w > scheme.growth_bound_hint + 0.1) {
    out.status = kExitContractViolation;
    out.error = fmt::format("empirical growth bound {} exceeds declared {} + 0.1", w,
                            scheme.growth_bound_hint);
  }
  return out;
}

Outcome run_schrodinger(const RunConfig& cfg, const fs::path& dir)
{
  const auto grid = cfg.grid();
  const auto s = strang_heat_potential_scheme(cfg.potential.sample(grid));
  const auto u0 = cfg.initial.sample(grid);
  const auto& qf = cfg.quasi_feynman;
  const double norm0 = l2_norm(u0);
  const double step = cfg.t / cfg.n;

  std::string drift_csv = "step,l2_norm,drift\n";
  double max_drift = 0.0;
  GridFunction u = u0;
  for (int k = 1; k <= cfg.n; ++k) {
    u = remizov_exponential(s, step, qf.a, u, qf.tol, qf.max_terms);
    const double nk = l2_norm(u);
    const double drift = norm0 > 0.0 ? std::abs(nk - norm0) / norm0 : nk;
    max_drift = std::max(max_drift, drift);
    drift_csv += fmt::format("{},{:.17g},{:.17g}\n", k, nk, drift);
  }
  write_solution(dir, u);
  write_text(dir / "norm_drift.csv", drift_csv);

  Outcome out;
  out.results["t"] = cfg.t;
  out.results["n"] = cfg.n;
  out.results["a"] = qf.a;
  out.results["tol"] = qf.tol;
  out.results["initial_norm"] = norm0;
  out.results["final_norm"] = l2_norm(u);
  out.results["max_norm_drift"] = max_drift;
  if (cfg.use_oracle && grid.size() <= kDenseOracleMaxPoints) {
    // exp(-i a t H) u0; -H is the generator assembled from (a=1, b=0, c=-V).
    const auto exact = oracle_evolve(s.minus_h_coefficients(), cfg.t, u0, Complex(0.0, qf.a));
    out.results["oracle"] = "dense";
    out.results["l2_error"] = l2_norm(u - exact);
  } else {
    out.results["oracle"] = "none";
  }
  if (max_drift > qf.max_norm_drift) {
    out.status = kExitContractViolation;
    out.error = fmt::format("norm drift {:.3e} exceeds max_norm_drift {:.3e}", max_drift,
                            qf.max_norm_drift);
  }
  return out;
}

Outcome run_resolvent(const RunConfig& cfg, const fs::path& dir)
{
  const auto coeffs = cfg.coefficients();
  const auto scheme = make_scheme(cfg, coeffs);
  const auto g = cfg.rhs.sample(cfg.grid());
  ResolventRequest req{cfg.lambda, g, cfg.n, cfg.quadrature};
  const auto f = resolvent_solve(scheme, req);
  write_solution(dir, f);

  const double w = scheme.growth_bound_hint;
  const double t_max = cfg.quadrature.t_max.value_or(default_t_max(cfg.lambda, w));
  Outcome out;
  out.results["scheme"] = scheme.label;
  out.results["lambda"] = {cfg.lambda.real(), cfg.lambda.imag()};
  out.results["growth_bound"] = w;
  out.results["t_max"] = t_max;
  out.results["truncation_estimate"] = truncation_estimate(cfg.lambda, w, t_max);
  out.results["panels"] = cfg.quadrature.panels;
  out.results["nodes_per_panel"] = cfg.quadrature.nodes_per_panel;
  out.results["n"] = cfg.n;
  out.results["residual"] = elliptic_residual(coeffs, cfg.lambda, f, g);
  if (const auto sym = as_constant(coeffs)) {
    const auto& grid = g.grid();
    const auto exact = apply_fourier_multiplier(g, [&](int k) {
      return 1.0 / (cfg.lambda - sym->a0 * grid.second_derivative_symbol(k) -
                    sym->b0 * grid.first_derivative_symbol(k) - sym->c0);
    });
    out.results["fourier_error"] = sup_norm(f - exact);
  }
  return out;
}

Outcome run_scalar(const RunConfig& cfg, const fs::path& dir)
{
  const double limit = std::exp(cfg.t * cfg.scalar_l);
  ErrorCurve curve;
  curve.t = cfg.t;
  curve.ns = cfg.ns;
  curve.floor = kRelativeAccuracyFloor * std::max(1.0, std::abs(limit));
  std::string csv = "n,value,error\n";
  for (int n : cfg.ns) {
    const double v = scalar_chernoff(cfg.scalar_l, cfg.t, n);
    curve.errors.push_back(std::abs(v - limit));
    csv += fmt::format("{},{:.17g},{:.17g}\n", n, v, curve.errors.back());
  }
  write_text(dir / "scalar.csv", csv);
  write_rate_artifacts(dir, curve, fmt::format("(1 + t l / n)^n, l = {}, t = {}", cfg.scalar_l, cfg.t));

  Outcome out;
  out.results["limit"] = limit;
  out.results["final_error"] = curve.errors.back();
  out.results["rate"] = rate_json(fit_order(curve));
  return out;
}

int configured_threads(const RunConfig& cfg)
{
  if (cfg.document.contains("threads"))
    return cfg.threads;
  if (const char* env = std::getenv("SEMIKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<int>(v);
  }
  return cfg.threads;
}

}  // namespace

int run(const RunConfig& cfg)
{
  const fs::path dir = cfg.output_dir;
  const auto started = std::chrono::steady_clock::now();
  omp_set_num_threads(configured_threads(cfg));

  Outcome outcome;
  try {
    fs::create_directories(dir);
    switch (cfg.command) {
      case Command::evolve: outcome = run_evolve(cfg, dir); break;
      case Command::rate: outcome = run_rate(cfg, dir); break;
      case Command::tangency: outcome = run_tangency(cfg, dir); break;
      case Command::schrodinger: outcome = run_schrodinger(cfg, dir); break;
      case Command::resolvent: outcome = run_resolvent(cfg, dir); break;
      case Command::scalar: outcome = run_scalar(cfg, dir); break;
    }
  } catch (const SeriesNotConverged& e) {
    outcome.status = kExitContractViolation;
    outcome.error = e.what();
  } catch (const std::exception& e) {
    outcome.status = kExitConfigError;
    outcome.error = e.what();
  }
  write_summary(dir, to_string(cfg.command), cfg.document, outcome);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  write_log(dir, to_string(cfg.command), elapsed.count(), outcome.status);
  return outcome.status;
}

int cli_main(const std::vector<std::string>& args)
{
  CLI::App app{"semikit: Chernoff approximations of operator semigroups", "semikit"};
  app.allow_extras();
  std::string command_name;
  std::string config_path;
  app.add_option("command", command_name,
                 "evolve | schrodinger | tangency | rate | resolvent | scalar")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration");
  app.footer("Any config key can be overridden with --dotted.key=value.");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }
  const auto overrides = app.remaining();

  std::string text = "{}";
  json raw = json::object();
  Outcome failure;
  failure.status = kExitConfigError;
  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is)
        throw ConfigError({fmt::format("config: cannot read '{}'", config_path)});
      std::ostringstream ss;
      ss << is.rdbuf();
      text = ss.str();
    }
    raw = json::parse(text, nullptr, false);
    if (raw.is_discarded())
      raw = json::object();
    const auto command = parse_command(command_name);
    if (!command)
      throw ConfigError({fmt::format("command: unknown command '{}'", command_name)});
    const auto cfg = parse_config(text, overrides, command);
    const int status = run(cfg);
    if (status != kExitOk)
      fmt::print(stderr, "semikit: {} finished with exit status {} (see {}/summary.json)\n",
                 command_name, status, cfg.output_dir);
    return status;
  } catch (const std::exception& e) {
    failure.error = e.what();
  }

  // Best effort to honour output_dir when the config is invalid.
  std::string out_dir = "semikit-out";
  try {
    apply_overrides(raw, overrides);
  } catch (const std::exception&) {
  }
  if (raw.is_object() && raw.contains("output_dir") && raw["output_dir"].is_string() &&
      !raw["output_dir"].get<std::string>().empty())
    out_dir = raw["output_dir"].get<std::string>();
  fmt::print(stderr, "semikit: {}\n", failure.error);
  try {
    write_summary(out_dir, command_name, raw, failure);
  } catch (const std::exception& e) {
    fmt::print(stderr, "semikit: could not write summary: {}\n", e.what());
  }
  return kExitConfigError;
}

}  // namespace semikit
