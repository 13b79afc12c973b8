#pragma once

#include "semikit/expression.hpp"
#include "semikit/grid.hpp"
#include "semikit/operators.hpp"
#include "semikit/resolvent.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace semikit {

enum class Command { evolve, schrodinger, tangency, rate, resolvent, scalar };

std::string to_string(Command c);
std::optional<Command> parse_command(const std::string& s);

/// A coefficient, potential or initial datum: a closed-form expression or
/// inline samples (one per grid node).
class FunctionSpec
{
 public:
  explicit FunctionSpec(Expression e) : source_(std::move(e)) {}
  explicit FunctionSpec(std::vector<double> samples) : source_(std::move(samples)) {}
  static FunctionSpec constant(double v);

  GridFunction sample(const SpatialGrid& grid) const;
  nlohmann::json to_json() const;

 private:
  std::variant<Expression, std::vector<double>> source_;
};

struct SchemeSpec
{
  enum class Kind { shift, integral, exact };
  Kind kind = Kind::shift;
  int hermite_order = 20;
};

struct QuasiFeynmanSpec
{
  double a = 1.0;
  double tol = 1e-12;
  int max_terms = 200;
  double max_norm_drift = 1e-6;
};

struct RunConfig
{
  Command command = Command::evolve;
  double x0 = 0.0;
  double period = 2.0 * 3.14159265358979323846;
  int n_points = 128;

  FunctionSpec a = FunctionSpec::constant(1.0);
  FunctionSpec b = FunctionSpec::constant(0.0);
  FunctionSpec c = FunctionSpec::constant(0.0);
  FunctionSpec potential = FunctionSpec::constant(0.0);
  FunctionSpec initial = FunctionSpec(Expression::parse("cos(x)"));
  FunctionSpec rhs = FunctionSpec(Expression::parse("cos(x)"));

  SchemeSpec scheme;
  double t = 1.0;
  int n = 256;  // 64 for resolvent unless given
  std::vector<int> ns;
  NormKind norm = NormKind::sup;
  std::vector<double> t_values;
  Complex lambda{2.0, 0.0};
  LaplaceQuadrature quadrature;
  QuasiFeynmanSpec quasi_feynman;
  double scalar_l = 1.0;
  std::optional<double> subspace_order;
  bool use_oracle = true;
  std::string output_dir = "semikit-out";
  int threads = 1;

  /// The validated input document (after overrides), echoed into summary.json.
  nlohmann::json document;

  SpatialGrid grid() const { return {x0, period, n_points}; }
  OperatorCoefficients coefficients() const;
};

/// Every field-level problem found while validating a config.
class ConfigError : public std::invalid_argument
{
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Applies `key.path=value` overrides to a JSON document. Values that parse as
/// JSON are used as such, anything else is taken as a string.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Parses and validates a JSON config. command_hint (from the command line)
/// fills in or must agree with the document's `command`.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                       std::optional<Command> command_hint = std::nullopt);
RunConfig parse_config(nlohmann::json doc, std::optional<Command> command_hint = std::nullopt);

}  // namespace semikit
