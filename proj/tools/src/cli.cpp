#include "qnet_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "qnet/cluster/emission.hpp"

namespace qnet::cli {

namespace {

constexpr const char* kBuildTag = "qnet-0.1.0";

using Diags = std::vector<std::string>;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void fail(Diags& diags, const std::string& path, const std::string& message) {
  diags.push_back(path + ": " + message);
}

void check_unknown_keys(const Json& in, const std::string& path,
                        const std::vector<std::string>& allowed, Diags& diags) {
  if (!in.is_object()) return;
  for (const auto& [key, value] : in.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(diags, path + "." + key, "unknown field");
}

double num_field(const Json& in, Json& out, const std::string& path, const std::string& key,
                 double fallback, Diags& diags, double lo, double hi, bool integral = false) {
  double v = fallback;
  if (in.is_object() && in.contains(key)) {
    const Json& j = in.at(key);
    if (!j.is_number()) {
      fail(diags, path + "." + key, "must be a number");
    } else {
      v = j.get<double>();
    }
  }
  if (v < lo || v > hi)
    fail(diags, path + "." + key,
         "must be in [" + fmt(lo) + ", " + fmt(hi) + "]");
  if (integral && v != std::floor(v)) fail(diags, path + "." + key, "must be an integer");
  if (integral)
    out[key] = static_cast<int64_t>(v);
  else
    out[key] = v;
  return v;
}

bool bool_field(const Json& in, Json& out, const std::string& path, const std::string& key,
                bool fallback, Diags& diags) {
  bool v = fallback;
  if (in.is_object() && in.contains(key)) {
    const Json& j = in.at(key);
    if (!j.is_boolean())
      fail(diags, path + "." + key, "must be a boolean");
    else
      v = j.get<bool>();
  }
  out[key] = v;
  return v;
}

std::string enum_field(const Json& in, Json& out, const std::string& path, const std::string& key,
                       const std::string& fallback, const std::vector<std::string>& allowed,
                       Diags& diags) {
  std::string v = fallback;
  if (in.is_object() && in.contains(key)) {
    const Json& j = in.at(key);
    if (!j.is_string()) {
      fail(diags, path + "." + key, "must be a string");
    } else {
      v = j.get<std::string>();
    }
  }
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string options;
    for (const auto& a : allowed) options += (options.empty() ? "" : ", ") + a;
    fail(diags, path + "." + key, "must be one of {" + options + "}");
  }
  out[key] = v;
  return v;
}

// --- payload schemas (normalization + validation) ---------------------------

Json check_emitter(const Json& in, const std::string& path, Diags& diags) {
  Json out = Json::object();
  const interface::EmitterParams d;
  check_unknown_keys(in, path,
                     {"gamma_rad", "gamma_nonrad", "gamma_dp", "gamma_1d", "g", "kappa", "t_coh",
                      "delta_omega", "eta_in", "eta_out", "geometry"},
                     diags);
  const double inf = std::numeric_limits<double>::infinity();
  num_field(in, out, path, "gamma_rad", d.gamma_rad, diags, 0.0, inf);
  num_field(in, out, path, "gamma_nonrad", d.gamma_nonrad, diags, 0.0, inf);
  num_field(in, out, path, "gamma_dp", d.gamma_dp, diags, 0.0, inf);
  num_field(in, out, path, "gamma_1d", d.gamma_1d, diags, 0.0, inf);
  num_field(in, out, path, "g", d.g, diags, 0.0, inf);
  num_field(in, out, path, "kappa", d.kappa, diags, 0.0, inf);
  const double t_coh = num_field(in, out, path, "t_coh", d.t_coh, diags, 0.0, inf);
  if (t_coh <= 0.0) fail(diags, path + ".t_coh", "must be > 0");
  num_field(in, out, path, "delta_omega", d.delta_omega, diags, 0.0, inf);
  num_field(in, out, path, "eta_in", d.eta_in, diags, 0.0, 1.0);
  num_field(in, out, path, "eta_out", d.eta_out, diags, 0.0, 1.0);
  const std::string geo =
      enum_field(in, out, path, "geometry", "waveguide", {"waveguide", "cavity"}, diags);
  if (diags.empty()) {
    // Geometry-dependent cross-field rules live in the module validator.
    try {
      interface::EmitterParams p;
      p.gamma_rad = out["gamma_rad"];
      p.gamma_nonrad = out["gamma_nonrad"];
      p.gamma_dp = out["gamma_dp"];
      p.gamma_1d = out["gamma_1d"];
      p.g = out["g"];
      p.kappa = out["kappa"];
      p.t_coh = out["t_coh"];
      p.delta_omega = out["delta_omega"];
      p.eta_in = out["eta_in"];
      p.eta_out = out["eta_out"];
      p.geometry = geo == "cavity" ? interface::Geometry::Cavity : interface::Geometry::Waveguide;
      p.validate();
    } catch (const std::exception& e) {
      fail(diags, path, e.what());
    }
  }
  return out;
}

interface::EmitterParams emitter_from(const Json& e) {
  interface::EmitterParams p;
  p.gamma_rad = e.at("gamma_rad");
  p.gamma_nonrad = e.at("gamma_nonrad");
  p.gamma_dp = e.at("gamma_dp");
  p.gamma_1d = e.at("gamma_1d");
  p.g = e.at("g");
  p.kappa = e.at("kappa");
  p.t_coh = e.at("t_coh");
  p.delta_omega = e.at("delta_omega");
  p.eta_in = e.at("eta_in");
  p.eta_out = e.at("eta_out");
  p.geometry = e.at("geometry") == "cavity" ? interface::Geometry::Cavity
                                            : interface::Geometry::Waveguide;
  return p;
}

Json check_bsa(const Json& in, const std::string& path, Diags& diags) {
  Json out = Json::object();
  check_unknown_keys(in, path,
                     {"kind", "aux_photons", "concatenations", "n_emitters",
                      "pulse_width_sigma_omega", "delta_gamma_1d", "emitter"},
                     diags);
  const double inf = std::numeric_limits<double>::infinity();
  enum_field(in, out, path, "kind", "linear-optics",
             {"linear-optics", "cavity-cz", "active-two-spin", "passive-sorter",
              "passive-cz-chain", "active-sfg"},
             diags);
  const double aux = num_field(in, out, path, "aux_photons", 0, diags, 0, 4, true);
  if (aux != 0 && aux != 4) fail(diags, path + ".aux_photons", "must be 0 or 4");
  num_field(in, out, path, "concatenations", 1, diags, 1, 64, true);
  num_field(in, out, path, "n_emitters", 1, diags, 1, 1e9, true);
  num_field(in, out, path, "pulse_width_sigma_omega", 0.0, diags, 0.0, inf);
  num_field(in, out, path, "delta_gamma_1d", 0.0, diags, 0.0, inf);
  out["emitter"] = check_emitter(in.is_object() && in.contains("emitter") ? in.at("emitter") : Json::object(),
                                 path + ".emitter", diags);
  return out;
}

analyzers::BsaModel bsa_from(const Json& b) {
  analyzers::BsaModel m;
  const std::string kind = b.at("kind");
  if (kind == "linear-optics") m.kind = analyzers::BsaKind::LinearOptics;
  if (kind == "cavity-cz") m.kind = analyzers::BsaKind::CavityCZ;
  if (kind == "active-two-spin") m.kind = analyzers::BsaKind::ActiveTwoSpin;
  if (kind == "passive-sorter") m.kind = analyzers::BsaKind::PassiveSorter;
  if (kind == "passive-cz-chain") m.kind = analyzers::BsaKind::PassiveCZChain;
  if (kind == "active-sfg") m.kind = analyzers::BsaKind::ActiveSFG;
  m.aux_photons = b.at("aux_photons").get<int>();
  m.concatenations = b.at("concatenations").get<int>();
  m.n_emitters = b.at("n_emitters").get<int>();
  m.pulse_width_sigma_omega = b.at("pulse_width_sigma_omega");
  m.delta_gamma_1d = b.at("delta_gamma_1d");
  m.emitter = emitter_from(b.at("emitter"));
  return m;
}

Json check_link(const Json& in, const std::string& path, Diags& diags) {
  Json out = Json::object();
  check_unknown_keys(in, path, {"attenuation_db_per_km", "signal_speed_km_per_s"}, diags);
  const double inf = std::numeric_limits<double>::infinity();
  num_field(in, out, path, "attenuation_db_per_km", 0.2, diags, 0.0, inf);
  const double v = num_field(in, out, path, "signal_speed_km_per_s", 2.0e5, diags, 0.0, inf);
  if (v <= 0.0) fail(diags, path + ".signal_speed_km_per_s", "must be > 0");
  return out;
}

Json check_cluster_payload(const Json& in, const std::string& path, Diags& diags) {
  Json out = Json::object();
  check_unknown_keys(in, path, {"n_photons", "cycle_time", "intermediate_rotation", "emitter"},
                     diags);
  num_field(in, out, path, "n_photons", 2, diags, 1, qsim::max_qubits() - 1, true);
  num_field(in, out, path, "cycle_time", 1e-9, diags, 0.0,
            std::numeric_limits<double>::infinity());
  bool_field(in, out, path, "intermediate_rotation", false, diags);
  out["emitter"] = check_emitter(in.is_object() && in.contains("emitter") ? in.at("emitter") : Json::object(),
                                 path + ".emitter", diags);
  return out;
}

Json check_repeater_payload(const Json& in, const std::string& path, bool one_way, Diags& diags) {
  Json out = Json::object();
  std::vector<std::string> allowed = {"total_distance_km", "n_links", "link", "emitter", "bsa",
                                      "attempt_rate"};
  if (one_way)
    allowed.insert(allowed.end(), {"code"});
  else
    allowed.insert(allowed.end(), {"purification_rounds", "max_attempts"});
  check_unknown_keys(in, path, allowed, diags);
  const double inf = std::numeric_limits<double>::infinity();
  const double total = num_field(in, out, path, "total_distance_km", 100.0, diags, 0.0, inf);
  if (total <= 0.0) fail(diags, path + ".total_distance_km", "must be > 0");
  const double n_links = num_field(in, out, path, "n_links", 1, diags, 1, 1 << 20, true);
  if (!one_way) {
    const auto n = static_cast<uint64_t>(n_links);
    if ((n & (n - 1)) != 0)
      fail(diags, path + ".n_links", "two-way nesting requires a power of two");
    num_field(in, out, path, "purification_rounds", 0, diags, 0, 64, true);
    num_field(in, out, path, "max_attempts", 1e8, diags, 1, 1e15, true);
  }
  num_field(in, out, path, "attempt_rate", 1.0e6, diags, 0.0, inf);
  if (out["attempt_rate"].get<double>() <= 0.0) fail(diags, path + ".attempt_rate", "must be > 0");
  out["link"] = check_link(in.is_object() && in.contains("link") ? in.at("link") : Json::object(),
                           path + ".link", diags);
  out["emitter"] = check_emitter(in.is_object() && in.contains("emitter") ? in.at("emitter") : Json::object(),
                                 path + ".emitter", diags);
  out["bsa"] = check_bsa(in.is_object() && in.contains("bsa") ? in.at("bsa") : Json::object(),
                         path + ".bsa", diags);
  if (one_way) {
    Json code = Json::object();
    const Json& cin = in.is_object() && in.contains("code") ? in.at("code") : Json::object();
    check_unknown_keys(cin, path + ".code", {"n_blocks", "block_size"}, diags);
    num_field(cin, code, path + ".code", "n_blocks", 2, diags, 1, 64, true);
    num_field(cin, code, path + ".code", "block_size", 2, diags, 1, 64, true);
    out["code"] = code;
  }
  return out;
}

repeater::RepeaterConfig repeater_from(const Json& p, bool one_way) {
  repeater::RepeaterConfig cfg;
  cfg.total_distance_km = p.at("total_distance_km");
  cfg.n_links = p.at("n_links").get<int>();
  cfg.link.length_km = cfg.total_distance_km / cfg.n_links;
  cfg.link.attenuation_db_per_km = p.at("link").at("attenuation_db_per_km");
  cfg.link.signal_speed_km_per_s = p.at("link").at("signal_speed_km_per_s");
  cfg.emitter = emitter_from(p.at("emitter"));
  cfg.bsa = bsa_from(p.at("bsa"));
  cfg.attempt_rate = p.at("attempt_rate");
  if (one_way) {
    cfg.mode = repeater::Mode::OneWay;
  } else {
    cfg.purification_rounds = p.at("purification_rounds").get<int>();
    cfg.max_attempts = p.at("max_attempts").get<uint64_t>();
  }
  return cfg;
}

const std::vector<std::string> kRunnableCommands = {
    "interface-report", "bsa-bench", "cluster-gen", "repeater-2way", "repeater-1way"};

Json check_payload(const std::string& command, const Json& in, const std::string& path,
                   Diags& diags) {
  if (command == "interface-report") {
    Json out = Json::object();
    check_unknown_keys(in, path, {"emitter"}, diags);
    out["emitter"] = check_emitter(in.is_object() && in.contains("emitter") ? in.at("emitter") : Json::object(),
                                   path + ".emitter", diags);
    return out;
  }
  if (command == "bsa-bench") {
    Json out = Json::object();
    check_unknown_keys(in, path, {"bsa"}, diags);
    out["bsa"] = check_bsa(in.is_object() && in.contains("bsa") ? in.at("bsa") : Json::object(),
                           path + ".bsa", diags);
    return out;
  }
  if (command == "cluster-gen") return check_cluster_payload(in, path, diags);
  if (command == "repeater-2way") return check_repeater_payload(in, path, false, diags);
  if (command == "repeater-1way") return check_repeater_payload(in, path, true, diags);
  fail(diags, path, "unsupported command");
  return Json::object();
}

/// Resolve a dotted sweep-parameter path and write `value`; the virtual knob
/// "emitter.beta" splits the total decay rate into gamma_1d / gamma_rad.
void apply_sweep_value(Json& payload, const std::string& parameter, double value, Diags& diags) {
  if (parameter.size() > 5 && parameter.substr(parameter.size() - 5) == ".beta") {
    std::string prefix = parameter.substr(0, parameter.size() - 5);
    Json* node = &payload;
    size_t start = 0;
    while (start < prefix.size()) {
      const size_t dot = prefix.find('.', start);
      const std::string key = prefix.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!node->is_object() || !node->contains(key)) {
        fail(diags, "sweep_axis.parameter", "unknown parameter '" + parameter + "'");
        return;
      }
      node = &node->at(key);
      start = dot == std::string::npos ? prefix.size() : dot + 1;
    }
    if (value < 0.0 || value > 1.0) {
      fail(diags, "sweep_axis.values", "beta must be in [0, 1]");
      return;
    }
    (*node)["gamma_1d"] = value;
    (*node)["gamma_rad"] = 1.0 - value;
    return;
  }
  Json* node = &payload;
  size_t start = 0;
  for (;;) {
    const size_t dot = parameter.find('.', start);
    const std::string key =
        parameter.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(key)) {
      fail(diags, "sweep_axis.parameter", "unknown parameter '" + parameter + "'");
      return;
    }
    node = &node->at(key);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (!node->is_number()) {
    fail(diags, "sweep_axis.parameter", "'" + parameter + "' is not a numeric parameter");
    return;
  }
  *node = value;
}

// --- execution --------------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;  // arrays of numbers/strings
};

double key_fraction_from_fidelity(double fidelity) {
  const double qber = std::clamp(1.0 - fidelity, 0.0, 0.5);
  return repeater::qkd_key_fraction(qber);
}

Table run_interface_report(const Json& payload) {
  const auto p = emitter_from(payload.at("emitter"));
  Table t;
  t.columns = {"beta", "beta_coh", "cooperativity", "cooperativity_coh", "c_efficiency",
               "reflection"};
  // Waveguide and cavity interfaces are characterized by different columns
  // (beta vs cooperativity); the inapplicable ones are reported as 0.
  double b = 0.0, b_coh = 0.0, c = 0.0, c_coh = 0.0, eff = 0.0;
  if (p.geometry == interface::Geometry::Waveguide) {
    b = interface::beta(p);
    b_coh = interface::beta_coh(p);
  } else {
    c = interface::cooperativity(p);
    c_coh = interface::cooperativity(p, true);
    eff = interface::cavity_decay_fraction(c);
  }
  t.rows.push_back(Json::array({b, b_coh, c, c_coh, eff, interface::emitter_reflection(p)}));
  return t;
}

Table run_bsa_bench(const Json& payload) {
  const auto m = bsa_from(payload.at("bsa"));
  Table t;
  t.columns = {"success_prob", "error_prob"};
  t.rows.push_back(Json::array({analyzers::bsa_success_prob(m), analyzers::bsa_error_prob(m)}));
  return t;
}

Table run_cluster_gen(const Json& payload) {
  cluster::EmissionConfig cfg;
  cfg.n_photons = payload.at("n_photons").get<int>();
  cfg.cycle_time = payload.at("cycle_time");
  cfg.intermediate_rotation = payload.at("intermediate_rotation");
  cfg.emitter = emitter_from(payload.at("emitter"));
  const auto h = cfg.intermediate_rotation ? cluster::emit_1d_cluster(cfg) : cluster::emit_ghz(cfg);
  const auto gens = cfg.intermediate_rotation ? cluster::cluster_stabilizers(cfg.n_photons)
                                              : cluster::ghz_stabilizers(cfg.n_photons);
  Table t;
  t.columns = {"generator", "expected", "measured", "herald_probability"};
  for (const auto& g : gens)
    t.rows.push_back(Json::array(
        {g.letters, 1.0, qsim::stabilizer_expectation(h.state, g), h.herald_probability}));
  return t;
}

Table run_repeater_2way(const Json& payload, uint64_t seed, uint64_t trials, int workers) {
  const auto cfg = repeater_from(payload, false);
  const auto r = repeater::simulate_two_way(cfg, seed, trials, workers);
  Table t;
  t.columns = {"rate_hz", "fidelity",  "mean_wait_s", "wait_stddev_s",
               "wait_min_s", "wait_max_s", "trials",    "key_fraction"};
  t.rows.push_back(Json::array({r.rate_hz, r.fidelity, r.mean_wait_s, r.wait_distribution.stddev,
                                r.wait_distribution.min, r.wait_distribution.max, r.trials,
                                key_fraction_from_fidelity(r.fidelity)}));
  return t;
}

Table run_repeater_1way(const Json& payload) {
  const auto cfg = repeater_from(payload, true);
  repeater::ParityCode code;
  code.n_blocks = payload.at("code").at("n_blocks").get<int>();
  code.block_size = payload.at("code").at("block_size").get<int>();
  const auto r = repeater::simulate_one_way(cfg, code);
  Table t;
  t.columns = {"rate_hz", "fidelity", "latency_s", "key_fraction"};
  t.rows.push_back(Json::array(
      {r.rate_hz, r.fidelity, r.mean_wait_s, key_fraction_from_fidelity(r.fidelity)}));
  return t;
}

Table run_command(const std::string& command, const Json& payload, uint64_t seed, uint64_t trials,
                  int workers) {
  if (command == "interface-report") return run_interface_report(payload);
  if (command == "bsa-bench") return run_bsa_bench(payload);
  if (command == "cluster-gen") return run_cluster_gen(payload);
  if (command == "repeater-2way") return run_repeater_2way(payload, seed, trials, workers);
  return run_repeater_1way(payload);
}

Json config_echo(const RunConfig& cfg) {
  Json j = Json::object();
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["output_path"] = cfg.output_path;
  j["output_format"] = cfg.output_format;
  if (cfg.sweep_axis) {
    j["sweep_axis"] = Json::object();
    j["sweep_axis"]["parameter"] = cfg.sweep_axis->parameter;
    j["sweep_axis"]["values"] = cfg.sweep_axis->values;
  }
  j["payload"] = cfg.payload;
  return j;
}

void render_csv(const RunConfig& cfg, const Table& t, std::ostream& out) {
  out << "# build " << kBuildTag << " seed " << cfg.seed << "\n";
  out << "# config " << config_echo(cfg).dump() << "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      const Json& cell = row[i];
      if (cell.is_string())
        out << cell.get<std::string>();
      else if (cell.is_number_float())
        out << fmt(cell.get<double>());
      else
        out << cell.dump();
    }
    out << "\n";
  }
}

void render_json(const RunConfig& cfg, const Table& t, std::ostream& out) {
  Json root = Json::object();
  root["build"] = kBuildTag;
  root["config"] = config_echo(cfg);
  root["columns"] = t.columns;
  root["rows"] = t.rows;
  out << root.dump(2) << "\n";
}

}  // namespace

ParseOutcome validate_config(const std::string& raw_text) {
  ParseOutcome out;
  Json doc = Json::parse(raw_text, nullptr, false);
  if (doc.is_discarded()) {
    out.diagnostics.push_back("(document): not valid JSON");
    return out;
  }
  if (!doc.is_object()) {
    out.diagnostics.push_back("(document): top level must be an object");
    return out;
  }
  Diags& diags = out.diagnostics;
  check_unknown_keys(doc, "(document)",
                     {"command", "seed", "trials", "output_path", "output_format", "sweep_axis",
                      "payload"},
                     diags);

  RunConfig cfg;
  {
    Json tmp = Json::object();
    std::vector<std::string> commands = kRunnableCommands;
    commands.push_back("sweep");
    cfg.command = enum_field(doc, tmp, "(document)", "command", "", commands, diags);
    cfg.output_format = enum_field(doc, tmp, "(document)", "output_format", "csv", {"csv", "json"},
                                   diags);
    cfg.seed = static_cast<uint64_t>(
        num_field(doc, tmp, "(document)", "seed", 0, diags, 0, 1.8e19, true));
    cfg.trials = static_cast<uint64_t>(
        num_field(doc, tmp, "(document)", "trials", 1000, diags, 1, 1e12, true));
  }
  if (doc.contains("output_path")) {
    if (!doc.at("output_path").is_string())
      fail(diags, "output_path", "must be a string");
    else
      cfg.output_path = doc.at("output_path").get<std::string>();
  }

  if (doc.contains("sweep_axis")) {
    const Json& s = doc.at("sweep_axis");
    check_unknown_keys(s, "sweep_axis", {"parameter", "values"}, diags);
    SweepAxis axis;
    if (!s.is_object() || !s.contains("parameter") || !s.at("parameter").is_string())
      fail(diags, "sweep_axis.parameter", "must be a string");
    else
      axis.parameter = s.at("parameter").get<std::string>();
    if (!s.is_object() || !s.contains("values") || !s.at("values").is_array() ||
        s.at("values").empty()) {
      fail(diags, "sweep_axis.values", "must be a nonempty array of numbers");
    } else {
      for (const auto& v : s.at("values")) {
        if (!v.is_number()) {
          fail(diags, "sweep_axis.values", "must be a nonempty array of numbers");
          break;
        }
        axis.values.push_back(v.get<double>());
      }
    }
    cfg.sweep_axis = std::move(axis);
  }

  const Json& raw_payload = doc.contains("payload") ? doc.at("payload") : Json::object();
  if (cfg.command == "sweep") {
    if (!cfg.sweep_axis) fail(diags, "sweep_axis", "required for the sweep command");
    Json in = raw_payload;
    std::string target;
    if (!in.is_object() || !in.contains("target") || !in.at("target").is_string() ||
        std::find(kRunnableCommands.begin(), kRunnableCommands.end(),
                  in.value("target", "")) == kRunnableCommands.end()) {
      fail(diags, "payload.target", "must name a runnable command");
    } else {
      target = in.at("target").get<std::string>();
      in.erase("target");
      cfg.payload = Json::object();
      cfg.payload["target"] = target;
      Json normalized = check_payload(target, in, "payload", diags);
      for (auto& [k, v] : normalized.items()) cfg.payload[k] = v;
      // Reject unknown sweep parameters and out-of-range values up front.
      if (cfg.sweep_axis && diags.empty()) {
        for (double v : cfg.sweep_axis->values) {
          Json probe = cfg.payload;
          probe.erase("target");
          apply_sweep_value(probe, cfg.sweep_axis->parameter, v, diags);
          if (!diags.empty()) break;
          Diags probe_diags;
          check_payload(target, probe, "payload", probe_diags);
          for (const auto& d : probe_diags)
            fail(diags, "sweep_axis.values",
                 "value " + fmt(v) + " violates " + d);
          if (!diags.empty()) break;
        }
      }
    }
  } else if (!cfg.command.empty()) {
    if (cfg.sweep_axis) fail(diags, "sweep_axis", "only valid with the sweep command");
    cfg.payload = check_payload(cfg.command, raw_payload, "payload", diags);
  }

  if (diags.empty()) out.config = std::move(cfg);
  return out;
}

std::string serialize_config(const RunConfig& cfg) { return config_echo(cfg).dump(2) + "\n"; }

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, int workers) {
  try {
    Table table;
    if (cfg.command == "sweep") {
      const std::string target = cfg.payload.at("target");
      bool first = true;
      for (double v : cfg.sweep_axis->values) {
        Json payload = cfg.payload;
        payload.erase("target");
        Diags diags;
        apply_sweep_value(payload, cfg.sweep_axis->parameter, v, diags);
        if (!diags.empty()) throw std::invalid_argument(diags.front());
        Table t = run_command(target, payload, cfg.seed, cfg.trials, workers);
        if (first) {
          table.columns = {"sweep_parameter", "sweep_value"};
          table.columns.insert(table.columns.end(), t.columns.begin(), t.columns.end());
          first = false;
        }
        for (auto& row : t.rows) {
          Json full = Json::array({cfg.sweep_axis->parameter, v});
          for (auto& cell : row) full.push_back(std::move(cell));
          table.rows.push_back(std::move(full));
        }
      }
    } else {
      table = run_command(cfg.command, cfg.payload, cfg.seed, cfg.trials, workers);
    }
    if (cfg.output_format == "json")
      render_json(cfg, table, out);
    else
      render_csv(cfg, table, out);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int workers_from_env() {
  const char* v = std::getenv("QNET_WORKERS");
  if (!v) return 1;
  const int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

}  // namespace qnet::cli
