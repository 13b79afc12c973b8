#include "semikit/config.hpp"

#include "semikit/rates.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace semikit {

using nlohmann::json;

std::string to_string(Command c)
{
  switch (c) {
    case Command::evolve: return "evolve";
    case Command::schrodinger: return "schrodinger";
    case Command::tangency: return "tangency";
    case Command::rate: return "rate";
    case Command::resolvent: return "resolvent";
    case Command::scalar: return "scalar";
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& s)
{
  for (auto c : {Command::evolve, Command::schrodinger, Command::tangency, Command::rate,
                 Command::resolvent, Command::scalar}) {
    if (to_string(c) == s)
      return c;
  }
  return std::nullopt;
}

FunctionSpec FunctionSpec::constant(double v)
{
  return FunctionSpec(std::vector<double>{v});
}

GridFunction FunctionSpec::sample(const SpatialGrid& grid) const
{
  if (const auto* e = std::get_if<Expression>(&source_))
    return sample_real(grid, [e](double x) { return (*e)(x); });
  const auto& values = std::get<std::vector<double>>(source_);
  if (values.size() == 1)
    return sample_real(grid, [v = values[0]](double) { return v; });
  if (static_cast<int>(values.size()) != grid.size())
    throw std::invalid_argument(
        fmt::format("{} inline samples for a grid of {} points", values.size(), grid.size()));
  GridFunction f(grid);
  for (int j = 0; j < grid.size(); ++j)
    f[j] = values[j];
  f.check_finite();
  return f;
}

json FunctionSpec::to_json() const
{
  if (const auto* e = std::get_if<Expression>(&source_))
    return e->text();
  const auto& values = std::get<std::vector<double>>(source_);
  if (values.size() == 1)
    return values[0];
  return values;
}

OperatorCoefficients RunConfig::coefficients() const
{
  const auto g = grid();
  return {a.sample(g), b.sample(g), c.sample(g)};
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::invalid_argument([&] {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors)
          msg += "\n  " + e;
        return msg;
      }()),
      errors_(std::move(errors))
{
}

void apply_overrides(json& doc, const std::vector<std::string>& overrides)
{
  for (const auto& item : overrides) {
    std::string text = item;
    if (text.rfind("--", 0) == 0)
      text = text.substr(2);
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError({fmt::format("override '{}': expected --key=value", item)});
    const auto key = text.substr(0, eq);
    const auto raw = text.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded())
      value = raw;

    json* node = &doc;
    std::stringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.'))
      parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!node->is_object())
        *node = json::object();
      node = &(*node)[parts[i]];
    }
    if (!node->is_object())
      *node = json::object();
    (*node)[parts.back()] = value;
  }
}

namespace {

std::string join(const std::string& prefix, const std::string& key)
{
  return prefix.empty() ? key : prefix + "." + key;
}

/// Collects field-level errors instead of stopping at the first one.
class Reader
{
 public:
  std::vector<std::string> errors;

  void error(const std::string& path, const std::string& what)
  {
    errors.push_back(fmt::format("{}: {}", path, what));
  }

  void check_keys(const json& obj, const std::string& prefix,
                  std::initializer_list<const char*> allowed)
  {
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
      if (!known.contains(key))
        error(join(prefix, key), "unknown key");
    }
  }

  const json* object(const json& obj, const std::string& key, const std::string& path)
  {
    if (!obj.contains(key))
      return nullptr;
    if (!obj[key].is_object()) {
      error(path, "expected an object");
      return nullptr;
    }
    return &obj[key];
  }

  /// Numbers, or constant expressions such as "2*pi".
  void number(const json& obj, const std::string& key, const std::string& path, double& out)
  {
    if (!obj.contains(key))
      return;
    const auto& v = obj[key];
    if (v.is_number()) {
      out = v.get<double>();
    } else if (v.is_string()) {
      try {
        const auto e = Expression::parse(v.get<std::string>());
        if (e.depends_on_x()) {
          error(path, "constant expression must not depend on x");
          return;
        }
        out = e(0.0);
      } catch (const ExpressionError& ex) {
        error(path, ex.what());
        return;
      }
    } else {
      error(path, "expected a number");
      return;
    }
    if (!std::isfinite(out))
      error(path, "must be finite");
  }

  void integer(const json& obj, const std::string& key, const std::string& path, int& out)
  {
    if (!obj.contains(key))
      return;
    const auto& v = obj[key];
    if (v.is_number_integer())
      out = v.get<int>();
    else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>())
      out = static_cast<int>(v.get<double>());
    else
      error(path, "expected an integer");
  }

  void string(const json& obj, const std::string& key, const std::string& path, std::string& out)
  {
    if (!obj.contains(key))
      return;
    if (obj[key].is_string())
      out = obj[key].get<std::string>();
    else
      error(path, "expected a string");
  }

  void function(const json& obj, const std::string& key, const std::string& path,
                FunctionSpec& out)
  {
    if (!obj.contains(key))
      return;
    const auto& v = obj[key];
    try {
      if (v.is_number()) {
        out = FunctionSpec::constant(v.get<double>());
      } else if (v.is_string()) {
        out = FunctionSpec(Expression::parse(v.get<std::string>()));
      } else if (v.is_array() && !v.empty() &&
                 std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
        out = FunctionSpec(v.get<std::vector<double>>());
      } else {
        error(path, "expected an expression string, a number or an array of samples");
      }
    } catch (const ExpressionError& ex) {
      error(path, ex.what());
    }
  }

  template <class T>
  void number_list(const json& obj, const std::string& key, const std::string& path,
                   std::vector<T>& out)
  {
    if (!obj.contains(key))
      return;
    const auto& v = obj[key];
    if (!v.is_array() || v.empty() ||
        !std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
      error(path, "expected a nonempty array of numbers");
      return;
    }
    out = v.get<std::vector<T>>();
  }

  void complex(const json& obj, const std::string& key, const std::string& path, Complex& out)
  {
    if (!obj.contains(key))
      return;
    const auto& v = obj[key];
    if (v.is_number()) {
      out = {v.get<double>(), 0.0};
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out = {v[0].get<double>(), v[1].get<double>()};
    } else if (v.is_string()) {
      double re = 0.0, im = 0.0;
      char comma = 0;
      std::istringstream is(v.get<std::string>());
      if (!(is >> re) || !(is >> comma) || comma != ',' || !(is >> im) || !(is >> std::ws).eof())
        error(path, "expected \"re,im\"");
      else
        out = {re, im};
    } else {
      error(path, "expected a number, [re, im] or \"re,im\"");
    }
  }
};

std::vector<double> default_t_values()
{
  std::vector<double> t;
  for (int i = 0; i <= 6; ++i)
    t.push_back(std::pow(10.0, -1.0 - i / 3.0));
  return t;
}

// Sampling checks that need the grid; skipped when the grid itself is invalid.
void validate_sampled(Reader& r, const RunConfig& cfg, const SpatialGrid& grid)
{
  auto try_sample = [&](const FunctionSpec& spec, const std::string& path) -> std::optional<GridFunction> {
    try {
      return spec.sample(grid);
    } catch (const std::exception& e) {
      r.error(path, e.what());
      return std::nullopt;
    }
  };

  const bool parabolic = cfg.command == Command::evolve || cfg.command == Command::rate ||
                         cfg.command == Command::tangency || cfg.command == Command::resolvent;
  if (parabolic) {
    const auto a = try_sample(cfg.a, "coefficients.a");
    const auto b = try_sample(cfg.b, "coefficients.b");
    const auto c = try_sample(cfg.c, "coefficients.c");
    if (a && cfg.scheme.kind != SchemeSpec::Kind::exact) {
      for (int j = 0; j < grid.size(); ++j) {
        if ((*a)[j].real() < 0.0) {
          r.error("coefficients.a", fmt::format("negative at node {} (x = {})", j, grid.node(j)));
          break;
        }
      }
    }
    if (a && b && c) {
      const OperatorCoefficients coeffs(*a, *b, *c);
      const auto sym = as_constant(coeffs);
      if (cfg.scheme.kind == SchemeSpec::Kind::exact && !sym)
        r.error("scheme.kind", "exact scheme needs constant coefficients with a >= 0");
      const bool dense_ok = grid.size() <= kDenseOracleMaxPoints;
      if (cfg.command == Command::rate && !cfg.use_oracle)
        r.error("oracle", "rate study needs a reference; 'none' is not allowed");
      else if (cfg.command == Command::rate && !sym && !dense_ok)
        r.error("oracle", "rate study needs a reference: constant coefficients or n_points <= 1024");
      if (cfg.command == Command::resolvent) {
        const double w = std::max(0.0, coeffs.max_c());
        if (!(cfg.lambda.real() > w)) {
          r.error("lambda", fmt::format("Re(lambda) = {} must exceed growth bound {}",
                                        cfg.lambda.real(), w));
        } else if (cfg.quadrature.t_max &&
                   truncation_estimate(cfg.lambda, w, *cfg.quadrature.t_max) >
                       kLaplaceTruncationTol) {
          r.error("quadrature.t_max", "too short: truncation estimate above 1e-10");
        }
      }
    }
  }
  if (cfg.command == Command::evolve || cfg.command == Command::rate ||
      cfg.command == Command::tangency || cfg.command == Command::schrodinger) {
    if (const auto u0 = try_sample(cfg.initial, "initial");
        u0 && cfg.command == Command::tangency && sup_norm(*u0) == 0.0)
      r.error("initial", "must not vanish identically");
  }
  if (cfg.command == Command::resolvent)
    try_sample(cfg.rhs, "rhs");
  if (cfg.command == Command::schrodinger)
    try_sample(cfg.potential, "potential");
}

}  // namespace

RunConfig parse_config(json doc, std::optional<Command> command_hint)
{
  Reader r;
  RunConfig cfg;
  if (!doc.is_object())
    throw ConfigError({"config: top level must be a JSON object"});

  r.check_keys(doc, "",
               {"command", "grid", "coefficients", "potential", "initial", "rhs", "scheme", "t",
                "n", "ns", "norm", "t_values", "lambda", "quadrature", "quasi_feynman", "scalar",
                "subspace_order", "oracle", "output_dir", "threads"});

  std::string command_name;
  r.string(doc, "command", "command", command_name);
  if (!command_name.empty()) {
    if (auto c = parse_command(command_name))
      cfg.command = *c;
    else
      r.error("command", fmt::format("unknown command '{}'", command_name));
    if (command_hint && parse_command(command_name) && *command_hint != cfg.command)
      r.error("command", fmt::format("config says '{}' but '{}' was requested", command_name,
                                     to_string(*command_hint)));
  } else if (command_hint) {
    cfg.command = *command_hint;
  } else {
    r.error("command", "missing");
  }
  doc["command"] = to_string(cfg.command);

  if (const auto* grid = r.object(doc, "grid", "grid")) {
    r.check_keys(*grid, "grid", {"x0", "period", "n_points"});
    r.number(*grid, "x0", "grid.x0", cfg.x0);
    r.number(*grid, "period", "grid.period", cfg.period);
    r.integer(*grid, "n_points", "grid.n_points", cfg.n_points);
  }
  if (!(cfg.period > 0.0))
    r.error("grid.period", "must be positive");
  if (cfg.n_points < 4)
    r.error("grid.n_points", "must be at least 4");

  if (const auto* coeffs = r.object(doc, "coefficients", "coefficients")) {
    r.check_keys(*coeffs, "coefficients", {"a", "b", "c"});
    r.function(*coeffs, "a", "coefficients.a", cfg.a);
    r.function(*coeffs, "b", "coefficients.b", cfg.b);
    r.function(*coeffs, "c", "coefficients.c", cfg.c);
  }
  r.function(doc, "potential", "potential", cfg.potential);
  r.function(doc, "initial", "initial", cfg.initial);
  r.function(doc, "rhs", "rhs", cfg.rhs);

  if (const auto* scheme = r.object(doc, "scheme", "scheme")) {
    r.check_keys(*scheme, "scheme", {"kind", "hermite_order"});
    std::string kind = "shift";
    r.string(*scheme, "kind", "scheme.kind", kind);
    if (kind == "shift")
      cfg.scheme.kind = SchemeSpec::Kind::shift;
    else if (kind == "integral")
      cfg.scheme.kind = SchemeSpec::Kind::integral;
    else if (kind == "exact")
      cfg.scheme.kind = SchemeSpec::Kind::exact;
    else
      r.error("scheme.kind", fmt::format("unknown scheme '{}' (shift, integral, exact)", kind));
    r.integer(*scheme, "hermite_order", "scheme.hermite_order", cfg.scheme.hermite_order);
    if (cfg.scheme.hermite_order < 2)
      r.error("scheme.hermite_order", "must be at least 2");
  }

  r.number(doc, "t", "t", cfg.t);
  if (!(cfg.t >= 0.0))
    r.error("t", "must be nonnegative");
  cfg.n = cfg.command == Command::resolvent ? 64 : 256;
  r.integer(doc, "n", "n", cfg.n);
  if (cfg.n < 1)
    r.error("n", "must be at least 1");

  cfg.ns = default_ladder();
  r.number_list(doc, "ns", "ns", cfg.ns);
  for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
    if (cfg.ns[i] < 1 || (i > 0 && cfg.ns[i] <= cfg.ns[i - 1])) {
      r.error("ns", "must be positive and strictly increasing");
      break;
    }
  }

  std::string norm_name = "sup";
  r.string(doc, "norm", "norm", norm_name);
  if (norm_name == "sup" || norm_name == "l2")
    cfg.norm = parse_norm_kind(norm_name);
  else
    r.error("norm", "expected 'sup' or 'l2'");

  cfg.t_values = default_t_values();
  r.number_list(doc, "t_values", "t_values", cfg.t_values);
  if (cfg.command == Command::tangency) {
    bool ok = cfg.t_values.size() >= 4;
    for (std::size_t i = 0; ok && i < cfg.t_values.size(); ++i)
      ok = cfg.t_values[i] > 0.0 && (i == 0 || cfg.t_values[i] < cfg.t_values[i - 1]);
    if (!ok)
      r.error("t_values", "need at least 4 positive, strictly decreasing values");
    else if (cfg.t_values.front() / cfg.t_values.back() < 100.0 * (1 - 1e-12))
      r.error("t_values", "must span at least two decades");
  }

  r.complex(doc, "lambda", "lambda", cfg.lambda);
  if (const auto* quad = r.object(doc, "quadrature", "quadrature")) {
    r.check_keys(*quad, "quadrature", {"t_max", "panels", "nodes_per_panel"});
    if (quad->contains("t_max")) {
      double t_max = 0.0;
      r.number(*quad, "t_max", "quadrature.t_max", t_max);
      if (!(t_max > 0.0))
        r.error("quadrature.t_max", "must be positive");
      cfg.quadrature.t_max = t_max;
    }
    r.integer(*quad, "panels", "quadrature.panels", cfg.quadrature.panels);
    r.integer(*quad, "nodes_per_panel", "quadrature.nodes_per_panel",
              cfg.quadrature.nodes_per_panel);
    if (cfg.quadrature.panels < 1)
      r.error("quadrature.panels", "must be at least 1");
    if (cfg.quadrature.nodes_per_panel < 1)
      r.error("quadrature.nodes_per_panel", "must be at least 1");
  }

  if (const auto* qf = r.object(doc, "quasi_feynman", "quasi_feynman")) {
    r.check_keys(*qf, "quasi_feynman", {"a", "tol", "max_terms", "max_norm_drift"});
    r.number(*qf, "a", "quasi_feynman.a", cfg.quasi_feynman.a);
    r.number(*qf, "tol", "quasi_feynman.tol", cfg.quasi_feynman.tol);
    r.integer(*qf, "max_terms", "quasi_feynman.max_terms", cfg.quasi_feynman.max_terms);
    r.number(*qf, "max_norm_drift", "quasi_feynman.max_norm_drift",
             cfg.quasi_feynman.max_norm_drift);
    if (cfg.quasi_feynman.a == 0.0)
      r.error("quasi_feynman.a", "must be nonzero");
    if (!(cfg.quasi_feynman.tol > 0.0))
      r.error("quasi_feynman.tol", "must be positive");
    if (cfg.quasi_feynman.max_terms < 1)
      r.error("quasi_feynman.max_terms", "must be at least 1");
    if (!(cfg.quasi_feynman.max_norm_drift >= 0.0))
      r.error("quasi_feynman.max_norm_drift", "must be nonnegative");
  }

  if (const auto* scalar = r.object(doc, "scalar", "scalar")) {
    r.check_keys(*scalar, "scalar", {"l"});
    r.number(*scalar, "l", "scalar.l", cfg.scalar_l);
  }

  if (doc.contains("subspace_order")) {
    double k = 0.0;
    r.number(doc, "subspace_order", "subspace_order", k);
    cfg.subspace_order = k;
  }

  std::string oracle = "auto";
  r.string(doc, "oracle", "oracle", oracle);
  if (oracle == "auto" || oracle == "none")
    cfg.use_oracle = oracle == "auto";
  else
    r.error("oracle", "expected 'auto' or 'none'");

  r.string(doc, "output_dir", "output_dir", cfg.output_dir);
  if (cfg.output_dir.empty())
    r.error("output_dir", "must not be empty");
  r.integer(doc, "threads", "threads", cfg.threads);
  if (cfg.threads < 1)
    r.error("threads", "must be at least 1");

  if (cfg.period > 0.0 && cfg.n_points >= 4 && std::isfinite(cfg.x0))
    validate_sampled(r, cfg, cfg.grid());

  if (!r.errors.empty())
    throw ConfigError(std::move(r.errors));
  cfg.document = std::move(doc);
  return cfg;
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides,
                       std::optional<Command> command_hint)
{
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw ConfigError({"config: malformed JSON"});
  apply_overrides(doc, overrides);
  return parse_config(std::move(doc), command_hint);
}

}  // namespace semikit
