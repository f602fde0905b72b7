#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogsim/edge/edc.hpp"
#include "fogsim/errors.hpp"
#include "fogsim/net/amf.hpp"
#include "fogsim/net/pipes.hpp"
#include "fogsim/net/radio_params.hpp"
#include "fogsim/phy/bandwidth.hpp"
#include "fogsim/trace.hpp"
#include "fogsim/ue/service.hpp"

namespace fogsim::scenario {

struct ApConfig {
  std::string id;
  net::NodePosition position;
  // optional per-AP antenna overrides; NaN means "use the radio defaults"
  double tx_power_dbm = std::numeric_limits<double>::quiet_NaN();
  double gain_db = std::numeric_limits<double>::quiet_NaN();
  double noise_temp_k = std::numeric_limits<double>::quiet_NaN();
  double bandwidth_hz = std::numeric_limits<double>::quiet_NaN();
  std::string share_strategy = "even_share";
};

struct UeConfig {
  std::string id;
  std::vector<std::string> services;
  MobilityTrace trace{"", {TraceSample{}}};
};

struct ScenarioConfig {
  double duration_s = 60.0;
  std::uint64_t seed = 1;
  double mobility_update_period_s = 1.0;
  net::RadioParams radio = net::RadioParams::with_default_tables();
  net::CrosshaulParams crosshaul;
  net::NodePosition core_position;
  net::AmfPolicy amf_policy = net::AmfPolicy::allow_all();
  std::vector<ue::ServiceConfig> services;
  std::map<std::string, double> response_bits;  // per service
  std::vector<ApConfig> aps;
  std::vector<edge::EdcParams> edcs;
  std::vector<UeConfig> ues;
  std::set<std::string> transducers{"delay",    "power",  "bandwidth", "mcs",
                                    "access",   "sessions", "warnings"};
  bool events_stream = false;  // raw port log; large, opt-in

  const ue::ServiceConfig* find_service(const std::string& id) const {
    for (const auto& s : services) {
      if (s.id == id) return &s;
    }
    return nullptr;
  }
};

struct LoadResult {
  std::optional<ScenarioConfig> config;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty() && config.has_value(); }
};

namespace detail {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& violations)
      : violations_(violations) {}

  void error(const std::string& where, const std::string& what) {
    violations_.push_back(where + ": " + what);
  }

  double number(const nlohmann::json& j, const std::string& key, double fallback,
                const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) {
      error(where + "." + key, "must be a number");
      return fallback;
    }
    return j[key].get<double>();
  }

  double positive(const nlohmann::json& j, const std::string& key,
                  double fallback, const std::string& where) {
    double v = number(j, key, fallback, where);
    if (!(v > 0.0)) {
      error(where + "." + key, "must be positive");
      return fallback;
    }
    return v;
  }

  std::string text(const nlohmann::json& j, const std::string& key,
                   const std::string& fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) {
      error(where + "." + key, "must be a string");
      return fallback;
    }
    return j[key].get<std::string>();
  }

 private:
  std::vector<std::string>& violations_;
};

inline void parse_radio(const nlohmann::json& j, Reader& r,
                        net::RadioParams& radio) {
  radio.carrier_hz = r.positive(j, "carrier_hz", radio.carrier_hz, "radio");
  radio.channel_bandwidth_hz = r.positive(j, "channel_bandwidth_hz",
                                          radio.channel_bandwidth_hz, "radio");
  radio.ap_tx_power_dbm =
      r.number(j, "ap_tx_power_dbm", radio.ap_tx_power_dbm, "radio");
  radio.ap_gain_db = r.number(j, "ap_gain_db", radio.ap_gain_db, "radio");
  radio.ap_noise_temp_k =
      r.positive(j, "ap_noise_temp_k", radio.ap_noise_temp_k, "radio");
  radio.ue_tx_power_dbm =
      r.number(j, "ue_tx_power_dbm", radio.ue_tx_power_dbm, "radio");
  radio.ue_gain_db = r.number(j, "ue_gain_db", radio.ue_gain_db, "radio");
  radio.ue_noise_temp_k =
      r.positive(j, "ue_noise_temp_k", radio.ue_noise_temp_k, "radio");
  radio.pss_period_s = r.positive(j, "pss_period_s", radio.pss_period_s, "radio");
  radio.rrc_period_s = r.positive(j, "rrc_period_s", radio.rrc_period_s, "radio");
  radio.handover_hysteresis_db = r.number(j, "handover_hysteresis_db",
                                          radio.handover_hysteresis_db, "radio");
  radio.control_bits = r.positive(j, "control_bits", radio.control_bits, "radio");
  radio.discovery_window_s = r.positive(j, "discovery_window_s",
                                        2.0 * radio.pss_period_s, "radio");
  radio.deny_backoff_s =
      r.positive(j, "deny_backoff_s", radio.deny_backoff_s, "radio");
  radio.request_timeout_s =
      r.positive(j, "request_timeout_s", radio.request_timeout_s, "radio");
  if (j.contains("downlink_mcs_csv")) {
    try {
      radio.downlink_table = std::make_shared<phy::McsTable>(
          phy::McsTable::from_csv(j["downlink_mcs_csv"].get<std::string>()));
    } catch (const std::exception& e) {
      r.error("radio.downlink_mcs_csv", e.what());
    }
  }
  if (j.contains("uplink_mcs_csv")) {
    try {
      radio.uplink_table = std::make_shared<phy::McsTable>(
          phy::McsTable::from_csv(j["uplink_mcs_csv"].get<std::string>()));
    } catch (const std::exception& e) {
      r.error("radio.uplink_mcs_csv", e.what());
    }
  }
}

inline std::optional<MobilityTrace> parse_trace(const nlohmann::json& j,
                                                const std::string& ue_id,
                                                Reader& r,
                                                const std::string& where) {
  std::vector<TraceSample> samples;
  if (!j.is_array() || j.empty()) {
    r.error(where, "trace must be a non-empty array of [t, x, y]");
    return std::nullopt;
  }
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3) {
      r.error(where, "trace rows must be [t, x, y]");
      return std::nullopt;
    }
    samples.push_back(
        {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  try {
    return MobilityTrace(ue_id, std::move(samples));
  } catch (const ConfigError& e) {
    r.error(where, e.what());
    return std::nullopt;
  }
}

}  // namespace detail

inline LoadResult parse_scenario(const nlohmann::json& j) {
  LoadResult result;
  detail::Reader r(result.violations);
  ScenarioConfig cfg;

  if (!j.is_object()) {
    r.error("$", "scenario must be a JSON object");
    return result;
  }

  cfg.duration_s = r.number(j, "duration_s", cfg.duration_s, "$");
  if (!(cfg.duration_s > 0.0)) r.error("duration_s", "must be positive");
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  cfg.mobility_update_period_s = r.positive(
      j, "mobility_update_period_s", cfg.mobility_update_period_s, "$");

  if (j.contains("radio")) detail::parse_radio(j["radio"], r, cfg.radio);

  if (j.contains("crosshaul")) {
    const auto& x = j["crosshaul"];
    cfg.crosshaul.rate_bps =
        r.positive(x, "rate_bps", cfg.crosshaul.rate_bps, "crosshaul");
    cfg.crosshaul.carrier_hz =
        r.positive(x, "carrier_hz", cfg.crosshaul.carrier_hz, "crosshaul");
    cfg.crosshaul.tx_power_dbm =
        r.number(x, "tx_power_dbm", cfg.crosshaul.tx_power_dbm, "crosshaul");
  }
  cfg.crosshaul.control_bits = cfg.radio.control_bits;

  if (j.contains("core")) {
    const auto& c = j["core"];
    cfg.core_position = {r.number(c, "x_m", 0.0, "core"),
                         r.number(c, "y_m", 0.0, "core")};
    if (c.contains("amf_policy")) {
      if (c["amf_policy"].is_string()) {
        if (c["amf_policy"] != "allow_all") {
          r.error("core.amf_policy", "must be \"allow_all\" or a UE id list");
        }
      } else if (c["amf_policy"].is_array()) {
        std::set<std::string> ids;
        for (const auto& id : c["amf_policy"]) ids.insert(id.get<std::string>());
        cfg.amf_policy = net::AmfPolicy::allow_only(std::move(ids));
      } else {
        r.error("core.amf_policy", "must be \"allow_all\" or a UE id list");
      }
    }
  }

  for (std::size_t i = 0; j.contains("services") && i < j["services"].size(); ++i) {
    const auto& s = j["services"][i];
    const std::string where = "services[" + std::to_string(i) + "]";
    ue::ServiceConfig svc;
    svc.id = r.text(s, "id", "", where);
    if (svc.id.empty()) r.error(where, "missing id");
    svc.session_messages = static_cast<int>(
        r.positive(s, "session_messages", svc.session_messages, where));
    svc.request_period_s =
        r.positive(s, "request_period_s", svc.request_period_s, where);
    svc.message_bits = r.positive(s, "message_bits", svc.message_bits, where);
    svc.create_timeout_s =
        r.positive(s, "create_timeout_s", svc.create_timeout_s, where);
    svc.idle_time_s = r.positive(s, "idle_time_s", svc.idle_time_s, where);
    svc.resource_share =
        r.positive(s, "resource_share", svc.resource_share, where);
    if (svc.resource_share > 1.0) r.error(where + ".resource_share", "must be <= 1");
    svc.control_bits = cfg.radio.control_bits;
    cfg.response_bits[svc.id] =
        r.positive(s, "response_bits", 1000.0, where);
    cfg.services.push_back(std::move(svc));
  }

  auto parse_aps = [&](const nlohmann::json& arr) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& a = arr[i];
      const std::string where = "aps[" + std::to_string(i) + "]";
      ApConfig ap;
      ap.id = r.text(a, "id", "", where);
      if (ap.id.empty()) r.error(where, "missing id");
      ap.position = {r.number(a, "x_m", 0.0, where), r.number(a, "y_m", 0.0, where)};
      ap.tx_power_dbm = r.number(a, "tx_power_dbm", ap.tx_power_dbm, where);
      ap.gain_db = r.number(a, "gain_db", ap.gain_db, where);
      ap.noise_temp_k = r.number(a, "noise_temp_k", ap.noise_temp_k, where);
      ap.bandwidth_hz = r.number(a, "bandwidth_hz", ap.bandwidth_hz, where);
      ap.share_strategy = r.text(a, "share_strategy", ap.share_strategy, where);
      try {
        phy::make_share_strategy(ap.share_strategy);
      } catch (const ConfigError& e) {
        r.error(where + ".share_strategy", e.what());
      }
      cfg.aps.push_back(std::move(ap));
    }
  };
  if (j.contains("aps")) parse_aps(j["aps"]);

  auto parse_edcs = [&](const nlohmann::json& arr) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& e = arr[i];
      const std::string where = "edcs[" + std::to_string(i) + "]";
      edge::EdcParams edc;
      edc.id = r.text(e, "id", "", where);
      if (edc.id.empty()) r.error(where, "missing id");
      edc.position = {r.number(e, "x_m", 0.0, where), r.number(e, "y_m", 0.0, where)};
      edc.pu_count = static_cast<int>(r.positive(e, "pu_count", 1.0, where));
      if (e.contains("dvfs_table")) {
        edc.dvfs_table.clear();
        int index = 0;
        for (const auto& d : e["dvfs_table"]) {
          edge::DvfsConfig cfg_row;
          cfg_row.index = index++;
          cfg_row.max_utilization = r.positive(d, "max_utilization", 1.0, where);
          cfg_row.idle_w = r.number(d, "idle_w", 50.0, where);
          cfg_row.slope_w_per_util = r.number(d, "slope_w_per_util", 50.0, where);
          edc.dvfs_table.push_back(cfg_row);
        }
        try {
          edge::validate_dvfs_table(edc.dvfs_table);
        } catch (const ConfigError& err) {
          r.error(where + ".dvfs_table", err.what());
        }
      }
      edc.latencies.power_on_s =
          r.positive(e, "power_on_s", edc.latencies.power_on_s, where);
      edc.latencies.power_off_s =
          r.positive(e, "power_off_s", edc.latencies.power_off_s, where);
      edc.latencies.session_start_s =
          r.positive(e, "session_start_s", edc.latencies.session_start_s, where);
      edc.latencies.session_stop_s =
          r.positive(e, "session_stop_s", edc.latencies.session_stop_s, where);
      edc.latencies.request_s =
          r.positive(e, "request_s", edc.latencies.request_s, where);
      edc.dispatch_strategy =
          r.text(e, "dispatch_strategy", edc.dispatch_strategy, where);
      try {
        edge::make_dispatch_strategy(edc.dispatch_strategy);
      } catch (const ConfigError& err) {
        r.error(where + ".dispatch_strategy", err.what());
      }
      edc.hardware_policy =
          r.text(e, "hardware_policy", edc.hardware_policy, where);
      try {
        edge::parse_hardware_policy(edc.hardware_policy);
      } catch (const ConfigError& err) {
        r.error(where + ".hardware_policy", err.what());
      }
      edc.power_model = r.text(e, "power_model", edc.power_model, where);
      try {
        edge::make_power_model(edc.power_model);
      } catch (const ConfigError& err) {
        r.error(where + ".power_model", err.what());
      }
      cfg.edcs.push_back(std::move(edc));
    }
  };
  if (j.contains("edcs")) parse_edcs(j["edcs"]);

  for (std::size_t i = 0; j.contains("ues") && i < j["ues"].size(); ++i) {
    const auto& u = j["ues"][i];
    const std::string where = "ues[" + std::to_string(i) + "]";
    UeConfig ue_cfg;
    ue_cfg.id = r.text(u, "id", "", where);
    if (ue_cfg.id.empty()) r.error(where, "missing id");
    if (u.contains("services")) {
      for (const auto& s : u["services"]) {
        ue_cfg.services.push_back(s.get<std::string>());
      }
    }
    if (u.contains("trace")) {
      auto trace = detail::parse_trace(u["trace"], ue_cfg.id, r, where + ".trace");
      if (trace) ue_cfg.trace = std::move(*trace);
    } else {
      r.error(where, "missing trace");
    }
    cfg.ues.push_back(std::move(ue_cfg));
  }

  if (j.contains("transducers")) {
    cfg.transducers.clear();
    const std::set<std::string> known{"delay", "power",    "bandwidth", "mcs",
                                      "access", "sessions", "warnings",  "events"};
    for (const auto& t : j["transducers"]) {
      const auto name = t.get<std::string>();
      if (known.count(name) == 0) {
        r.error("transducers", "unknown stream '" + name + "'");
      } else if (name == "events") {
        cfg.events_stream = true;
      } else {
        cfg.transducers.insert(name);
      }
    }
  }

  // cross-reference checks
  std::set<std::string> ids;
  auto unique_id = [&](const std::string& id, const std::string& where) {
    if (!id.empty() && !ids.insert(id).second) {
      r.error(where, "duplicate id '" + id + "'");
    }
  };
  std::set<std::string> service_ids;
  for (const auto& s : cfg.services) service_ids.insert(s.id);
  for (const auto& ap : cfg.aps) unique_id(ap.id, "aps");
  for (const auto& edc : cfg.edcs) unique_id(edc.id, "edcs");
  for (const auto& ue_cfg : cfg.ues) {
    unique_id(ue_cfg.id, "ues");
    for (const auto& svc : ue_cfg.services) {
      if (service_ids.count(svc) == 0) {
        r.error("ues", ue_cfg.id + " references unknown service '" + svc + "'");
      }
    }
  }
  if (cfg.aps.empty()) r.error("aps", "at least one access point required");
  if (cfg.edcs.empty()) r.error("edcs", "at least one EDC required");

  if (result.violations.empty()) result.config = std::move(cfg);
  return result;
}

inline LoadResult load_scenario(const std::string& path) {
  LoadResult result;
  std::ifstream in(path);
  if (!in) {
    result.violations.push_back("cannot open scenario file: " + path);
    return result;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    result.violations.push_back(std::string("malformed JSON: ") + e.what());
    return result;
  }
  if (j.contains("include_placement")) {
    const auto placement_path = j["include_placement"].get<std::string>();
    std::ifstream pin(placement_path);
    if (!pin) {
      result.violations.push_back("cannot open placement file: " + placement_path);
      return result;
    }
    try {
      nlohmann::json placement;
      pin >> placement;
      for (const char* key : {"aps", "edcs"}) {
        if (!placement.contains(key)) continue;
        if (!j.contains(key)) j[key] = nlohmann::json::array();
        for (const auto& entry : placement[key]) j[key].push_back(entry);
      }
    } catch (const std::exception& e) {
      result.violations.push_back(std::string("malformed placement JSON: ") +
                                  e.what());
      return result;
    }
  }
  auto parsed = parse_scenario(j);
  return parsed;
}

}  // namespace fogsim::scenario
