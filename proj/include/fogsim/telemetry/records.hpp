#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>

namespace fogsim::telemetry {

// Typed rows emitted by models on their telemetry ports and fanned in to the
// transducer sink, which serializes them as CSV streams.

struct PuPowerSample {
  std::string edc_id;
  int pu = 0;
  std::string status;
  int dvfs_index = 0;
  double utilization = 0.0;
  double watts = 0.0;
};

struct BandwidthSample {
  std::string ap_id;
  std::string ue_id;
  double bandwidth_hz = 0.0;
  double dl_efficiency_bps_hz = 0.0;
  double bit_rate_bps = 0.0;  // downlink share x efficiency, sender-computed
};

struct McsSample {
  std::string ap_id;
  std::string ue_id;
  std::string direction;  // "ul" or "dl"
  int index = 0;
  std::string name;
  double efficiency_bps_hz = 0.0;
  double snr_db = 0.0;
};

struct DelaySample {
  std::string ue_id;
  std::string service_id;
  std::string kind;  // "create" | "request" | "remove"
  std::uint64_t seq = 0;
  double delay_s = 0.0;
};

struct SessionEvent {
  std::string kind;  // request|granted|rejected|active|close_request|closed
  std::string ue_id;
  std::string service_id;
  std::string edc_id;
  int pu = -1;
  std::string pu_status_at_dispatch;
};

struct AccessEvent {
  std::string kind;  // connected|disconnected|handover
  std::string ue_id;
  std::string ap_id;
};

struct Warning {
  std::string source;
  std::string text;
};

using Record = std::variant<PuPowerSample, BandwidthSample, McsSample,
                            DelaySample, SessionEvent, AccessEvent, Warning>;

inline std::ostream& operator<<(std::ostream& os, const Record& r) {
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PuPowerSample>) {
          os << "power{" << v.edc_id << "/" << v.pu << " " << v.status << " "
             << v.watts << "W}";
        } else if constexpr (std::is_same_v<T, BandwidthSample>) {
          os << "bandwidth{" << v.ue_id << "@" << v.ap_id << " "
             << v.bandwidth_hz << "}";
        } else if constexpr (std::is_same_v<T, McsSample>) {
          os << "mcs{" << v.ue_id << " " << v.direction << " " << v.name
             << "}";
        } else if constexpr (std::is_same_v<T, DelaySample>) {
          os << "delay{" << v.ue_id << "/" << v.service_id << " " << v.kind
             << " " << v.delay_s << "}";
        } else if constexpr (std::is_same_v<T, SessionEvent>) {
          os << "session{" << v.kind << " " << v.ue_id << "/" << v.service_id
             << "}";
        } else if constexpr (std::is_same_v<T, AccessEvent>) {
          os << "access{" << v.kind << " " << v.ue_id << "@" << v.ap_id << "}";
        } else {
          os << "warning{" << v.source << ": " << v.text << "}";
        }
      },
      r);
  return os;
}

}  // namespace fogsim::telemetry
