#include "doctest.h"

#include "semikit/config.hpp"
#include "semikit/rates.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace semikit;
using nlohmann::json;

namespace {

std::vector<std::string> errors_of(const json& doc, std::optional<Command> hint = std::nullopt)
{
  try {
    parse_config(doc, hint);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errors, const std::string& field)
{
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.rfind(field + ":", 0) == 0; });
}

}  // namespace

TEST_CASE("minimal evolve config takes the defaults")
{
  const auto cfg = parse_config(json{{"command", "evolve"}});
  CHECK(cfg.command == Command::evolve);
  CHECK(cfg.n_points == 128);
  CHECK(cfg.period == doctest::Approx(semikit::testing::kTwoPi));
  CHECK(cfg.n == 256);
  CHECK(cfg.t == 1.0);
  CHECK(cfg.scheme.kind == SchemeSpec::Kind::shift);
  CHECK(cfg.ns == default_ladder());
  CHECK(cfg.t_values.size() == 7);
  const auto u0 = cfg.initial.sample(cfg.grid());
  CHECK(u0[0] == Complex(1.0, 0.0));
  const auto coeffs = cfg.coefficients();
  CHECK(coeffs.min_a() == 1.0);
}

TEST_CASE("resolvent defaults to n = 64")
{
  CHECK(parse_config(json::object(), Command::resolvent).n == 64);
  CHECK(parse_config(json{{"n", 10}}, Command::resolvent).n == 10);
}

TEST_CASE("field errors name the field")
{
  CHECK(mentions(errors_of({{"command", "evolve"}, {"grid", {{"period", -1}}}}), "grid.period"));
  CHECK(mentions(errors_of({{"command", "evolve"}, {"foo", 1}}), "foo"));
  CHECK(mentions(errors_of({{"command", "evolve"}, {"grid", {{"nn", 1}}}}), "grid.nn"));
  CHECK(mentions(errors_of({{"command", "evolve"}, {"t", "soon"}}), "t"));
  CHECK(mentions(errors_of({{"command", "warp"}}), "command"));
  CHECK(mentions(errors_of(json::object()), "command"));
  CHECK(mentions(errors_of({{"command", "rate"}, {"ns", {8, 4}}}), "ns"));
  CHECK(mentions(errors_of({{"command", "evolve"}, {"scheme", {{"kind", "magic"}}}}),
                 "scheme.kind"));
  CHECK(mentions(errors_of({{"command", "evolve"}, {"coefficients", {{"a", "cos(x)"}}}}),
                 "coefficients.a"));
  CHECK(mentions(errors_of({{"command", "evolve"}, {"coefficients", {{"a", "sin("}}}}),
                 "coefficients.a"));
  CHECK(mentions(errors_of({{"command", "evolve"},
                            {"scheme", {{"kind", "exact"}}},
                            {"coefficients", {{"b", "cos(x)"}}}}),
                 "scheme.kind"));
  CHECK(mentions(errors_of({{"command", "resolvent"}, {"lambda", 0.5}, {"coefficients", {{"c", 1}}}}),
                 "lambda"));
  CHECK(mentions(errors_of({{"command", "tangency"}, {"initial", 0}}), "initial"));
  CHECK(mentions(errors_of({{"command", "tangency"}, {"t_values", {0.1, 0.05, 0.02, 0.01}}}),
                 "t_values"));
  CHECK(mentions(errors_of({{"command", "rate"}, {"oracle", "none"}}), "oracle"));
}

TEST_CASE("every problem is reported at once")
{
  const auto errs = errors_of({{"command", "evolve"}, {"grid", {{"period", -1}}}, {"foo", 1}, {"n", 0}});
  CHECK(errs.size() >= 3);
}

TEST_CASE("command line hint must agree with the document")
{
  CHECK(mentions(errors_of({{"command", "evolve"}}, Command::rate), "command"));
  CHECK(parse_config(json::object(), Command::scalar).command == Command::scalar);
}

TEST_CASE("overrides use dotted paths and JSON values")
{
  json doc = {{"grid", {{"n_points", 32}}}};
  apply_overrides(doc, {"--grid.period=3.5", "--scheme.kind=integral", "--ns=[4,8,16]",
                        "--coefficients.a=1+0.5*sin(x)"});
  CHECK(doc["grid"]["n_points"] == 32);
  CHECK(doc["grid"]["period"] == 3.5);
  CHECK(doc["scheme"]["kind"] == "integral");
  CHECK(doc["ns"] == json({4, 8, 16}));
  CHECK(doc["coefficients"]["a"] == "1+0.5*sin(x)");
  const auto cfg = parse_config(doc.dump(), {}, Command::evolve);
  CHECK(cfg.scheme.kind == SchemeSpec::Kind::integral);
  CHECK(cfg.document["grid"]["period"] == 3.5);
}

TEST_CASE("sampled function specs")
{
  const auto grid = make_grid(0.0, 1.0, 4);
  json doc = {{"command", "evolve"},
              {"grid", {{"period", 1.0}, {"n_points", 4}}},
              {"initial", {1.0, 2.0, 3.0, 4.0}},
              {"coefficients", {{"a", 0.25}}}};
  const auto cfg = parse_config(doc);
  const auto u0 = cfg.initial.sample(grid);
  CHECK(u0[2] == Complex(3.0, 0.0));
  CHECK(cfg.coefficients().min_a() == 0.25);
  doc["initial"] = {1.0, 2.0};
  CHECK(mentions(errors_of(doc), "initial"));
}

TEST_CASE("malformed JSON")
{
  CHECK_THROWS_AS(parse_config(std::string("{ nope")), ConfigError);
}
