#include <doctest.h>

#include <sstream>

#include "qnet_cli/cli.hpp"

using namespace qnet;

namespace {

std::string run_to_string(const cli::RunConfig& cfg, int workers = 1) {
  std::ostringstream out, err;
  const int rc = cli::run(cfg, out, err, workers);
  REQUIRE(rc == 0);
  return out.str();
}

}  // namespace

TEST_CASE("minimal configs validate and fill defaults") {
  auto r = cli::validate_config(R"({"command": "interface-report"})");
  REQUIRE(r.config.has_value());
  CHECK(r.diagnostics.empty());
  CHECK(r.config->seed == 0);
  CHECK(r.config->trials == 1000);
  CHECK(r.config->output_format == "csv");
  CHECK(r.config->payload.at("emitter").at("eta_out") == 1.0);
  CHECK(r.config->payload.at("emitter").at("geometry") == "waveguide");
}

TEST_CASE("serialization round-trip is idempotent") {
  const std::string raw = R"({
    "command": "repeater-2way", "seed": 7, "trials": 50,
    "payload": {"total_distance_km": 20, "n_links": 2,
                "emitter": {"gamma_1d": 0.95, "gamma_rad": 0.05}}
  })";
  auto first = cli::validate_config(raw);
  REQUIRE(first.config.has_value());
  const std::string canon = cli::serialize_config(*first.config);
  auto second = cli::validate_config(canon);
  REQUIRE(second.config.has_value());
  CHECK(cli::serialize_config(*second.config) == canon);
}

TEST_CASE("diagnostics carry field paths") {
  auto neg = cli::validate_config(
      R"({"command": "interface-report", "payload": {"emitter": {"gamma_dp": -0.5}}})");
  REQUIRE_FALSE(neg.config.has_value());
  REQUIRE(neg.diagnostics.size() == 1);
  CHECK(neg.diagnostics[0].find("payload.emitter.gamma_dp") == 0);

  auto odd = cli::validate_config(
      R"({"command": "repeater-2way", "payload": {"total_distance_km": 30, "n_links": 3}})");
  REQUIRE_FALSE(odd.config.has_value());
  REQUIRE(odd.diagnostics.size() == 1);
  CHECK(odd.diagnostics[0].find("payload.n_links") == 0);
  CHECK(odd.diagnostics[0].find("power of two") != std::string::npos);

  auto unknown = cli::validate_config(
      R"({"command": "bsa-bench", "payload": {"bsa": {"kind": "linear-optics", "fancy": 1}}})");
  REQUIRE_FALSE(unknown.config.has_value());
  CHECK(unknown.diagnostics[0].find("payload.bsa.fancy") == 0);

  auto garbage = cli::validate_config("not json at all");
  REQUIRE_FALSE(garbage.config.has_value());

  auto badcmd = cli::validate_config(R"({"command": "launch-rockets"})");
  REQUIRE_FALSE(badcmd.config.has_value());
}

TEST_CASE("sweep configs reject unknown parameters and bad values") {
  auto ok = cli::validate_config(R"({
    "command": "sweep",
    "sweep_axis": {"parameter": "bsa.emitter.beta", "values": [0.6, 0.8, 1.0]},
    "payload": {"target": "bsa-bench", "bsa": {"kind": "active-two-spin"}}
  })");
  REQUIRE(ok.config.has_value());

  auto unknown = cli::validate_config(R"({
    "command": "sweep",
    "sweep_axis": {"parameter": "bsa.nonsense", "values": [1.0]},
    "payload": {"target": "bsa-bench", "bsa": {"kind": "active-two-spin"}}
  })");
  REQUIRE_FALSE(unknown.config.has_value());
  CHECK(unknown.diagnostics[0].find("sweep_axis.parameter") == 0);

  auto empty = cli::validate_config(R"({
    "command": "sweep",
    "sweep_axis": {"parameter": "bsa.emitter.beta", "values": []},
    "payload": {"target": "bsa-bench", "bsa": {"kind": "active-two-spin"}}
  })");
  REQUIRE_FALSE(empty.config.has_value());

  auto missing_axis = cli::validate_config(
      R"({"command": "sweep", "payload": {"target": "bsa-bench"}})");
  REQUIRE_FALSE(missing_axis.config.has_value());

  auto out_of_range = cli::validate_config(R"({
    "command": "sweep",
    "sweep_axis": {"parameter": "bsa.emitter.eta_out", "values": [0.5, 1.5]},
    "payload": {"target": "bsa-bench", "bsa": {"kind": "active-two-spin"}}
  })");
  REQUIRE_FALSE(out_of_range.config.has_value());
}

TEST_CASE("bsa-bench beta sweep reproduces the (2 beta - 1)^2 column") {
  auto r = cli::validate_config(R"({
    "command": "sweep",
    "sweep_axis": {"parameter": "bsa.emitter.beta", "values": [0.6, 0.8, 1.0]},
    "payload": {"target": "bsa-bench", "bsa": {"kind": "active-two-spin"}}
  })");
  REQUIRE(r.config.has_value());
  const std::string csv = run_to_string(*r.config);
  CHECK(csv.find("bsa.emitter.beta,0.6,0.04,0") != std::string::npos);
  CHECK(csv.find("bsa.emitter.beta,0.8,0.36,0") != std::string::npos);
  CHECK(csv.find("bsa.emitter.beta,1,1,0") != std::string::npos);
  CHECK(csv.find("# config ") != std::string::npos);  // full config echo
}

TEST_CASE("interface-report emits the figure-of-merit columns") {
  auto r = cli::validate_config(R"({
    "command": "interface-report", "output_format": "json",
    "payload": {"emitter": {"gamma_1d": 0.9, "gamma_rad": 0.08,
                            "gamma_nonrad": 0.02, "gamma_dp": 0.1}}
  })");
  REQUIRE(r.config.has_value());
  auto doc = cli::Json::parse(run_to_string(*r.config));
  CHECK(doc.at("columns")[0] == "beta");
  CHECK(doc.at("rows")[0][0].get<double>() == doctest::Approx(0.9));
  CHECK(doc.at("rows")[0][1].get<double>() == doctest::Approx(0.9 / 1.1));
  CHECK(doc.at("config").at("command") == "interface-report");
}

TEST_CASE("repeater output is deterministic for a seed and worker count") {
  auto r = cli::validate_config(R"({
    "command": "repeater-2way", "seed": 77, "trials": 300,
    "payload": {"total_distance_km": 20, "n_links": 2,
                "emitter": {"gamma_1d": 1.0}}
  })");
  REQUIRE(r.config.has_value());
  const std::string a = run_to_string(*r.config, 1);
  const std::string b = run_to_string(*r.config, 1);
  const std::string c = run_to_string(*r.config, 3);
  CHECK(a == b);
  CHECK(a == c);

  auto other = *r.config;
  other.seed = 78;
  CHECK(run_to_string(other, 1) != a);
}

TEST_CASE("runtime failures are reported with exit code 2") {
  auto r = cli::validate_config(R"({
    "command": "repeater-2way", "trials": 5,
    "payload": {"total_distance_km": 20, "n_links": 2,
                "emitter": {"eta_out": 0.0}, "max_attempts": 100}
  })");
  REQUIRE(r.config.has_value());
  std::ostringstream out, err;
  CHECK(cli::run(*r.config, out, err, 1) == 2);
  CHECK(err.str().find("error:") == 0);
}
