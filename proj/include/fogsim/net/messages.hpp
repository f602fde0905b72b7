#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fogsim/phy/packet.hpp"

namespace fogsim::net {

// Latest receive power per access point, as measured by one device.
using SignalReport = std::vector<std::pair<std::string, double>>;

inline std::ostream& operator<<(std::ostream& os, const SignalReport& r) {
  os << "[";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0) os << " ";
    os << r[i].first << "=" << r[i].second;
  }
  return os << "]";
}

struct PssBeacon {
  std::string ap_id;
  double x_m = 0.0;
  double y_m = 0.0;
  friend std::ostream& operator<<(std::ostream& os, const PssBeacon& m) {
    return os << "pss{" << m.ap_id << "}";
  }
};

struct AccessRequest {
  std::string ue_id;
  SignalReport measurements;  // lets the AP pick the initial downlink MCS
  friend std::ostream& operator<<(std::ostream& os, const AccessRequest& m) {
    return os << "access_request{" << m.ue_id << "}";
  }
};

struct AccessResponse {
  std::string ue_id;
  std::string ap_id;
  bool granted = false;
  friend std::ostream& operator<<(std::ostream& os, const AccessResponse& m) {
    return os << "access_response{" << m.ue_id << "@" << m.ap_id
              << (m.granted ? " grant" : " deny") << "}";
  }
};

struct DisconnectRequest {
  std::string ue_id;
  friend std::ostream& operator<<(std::ostream& os, const DisconnectRequest& m) {
    return os << "disconnect_request{" << m.ue_id << "}";
  }
};

struct DisconnectResponse {
  std::string ue_id;
  std::string ap_id;
  friend std::ostream& operator<<(std::ostream& os,
                                  const DisconnectResponse& m) {
    return os << "disconnect_response{" << m.ue_id << "@" << m.ap_id << "}";
  }
};

struct RrcReport {
  std::string ue_id;
  SignalReport measurements;
  friend std::ostream& operator<<(std::ostream& os, const RrcReport& m) {
    return os << "rrc{" << m.ue_id << " " << m.measurements << "}";
  }
};

struct HandoverRequest {
  std::string ue_id;
  std::string source_ap;
  std::string target_ap;
  SignalReport measurements;
  friend std::ostream& operator<<(std::ostream& os, const HandoverRequest& m) {
    return os << "ho_request{" << m.ue_id << " " << m.source_ap << ">"
              << m.target_ap << "}";
  }
};

struct HandoverResponse {
  std::string ue_id;
  std::string source_ap;
  std::string target_ap;
  bool accepted = false;
  friend std::ostream& operator<<(std::ostream& os, const HandoverResponse& m) {
    return os << "ho_response{" << m.ue_id << " " << m.source_ap << ">"
              << m.target_ap << (m.accepted ? " ok" : " refused") << "}";
  }
};

struct HandoverCommand {
  std::string ue_id;
  std::string source_ap;
  std::string target_ap;
  friend std::ostream& operator<<(std::ostream& os, const HandoverCommand& m) {
    return os << "ho_command{" << m.ue_id << " to " << m.target_ap << "}";
  }
};

struct HandoverComplete {
  std::string ue_id;
  std::string prev_ap;
  friend std::ostream& operator<<(std::ostream& os, const HandoverComplete& m) {
    return os << "ho_complete{" << m.ue_id << " from " << m.prev_ap << "}";
  }
};

struct AmfRequest {
  std::string ue_id;
  std::string ap_id;
  friend std::ostream& operator<<(std::ostream& os, const AmfRequest& m) {
    return os << "amf_request{" << m.ue_id << " via " << m.ap_id << "}";
  }
};

struct AmfResponse {
  std::string ue_id;
  std::string ap_id;
  bool granted = false;
  friend std::ostream& operator<<(std::ostream& os, const AmfResponse& m) {
    return os << "amf_response{" << m.ue_id << (m.granted ? " grant" : " deny")
              << "}";
  }
};

// Per-service free session slots plus instantaneous power, pushed by every
// EDC to the SDN controller whenever its state changes.
struct EdcReport {
  std::string edc_id;
  double power_w = 0.0;
  std::vector<std::pair<std::string, int>> free_slots;  // service -> slots
  friend std::ostream& operator<<(std::ostream& os, const EdcReport& m) {
    os << "edc_report{" << m.edc_id << " " << m.power_w << "W";
    for (const auto& [svc, n] : m.free_slots) os << " " << svc << ":" << n;
    return os << "}";
  }
};

struct SdnUpdate {
  std::string ap_id;
  std::vector<std::pair<std::string, std::vector<std::string>>>
      routes;  // service -> ranked EDC ids
  friend std::ostream& operator<<(std::ostream& os, const SdnUpdate& m) {
    os << "sdn_update{" << m.ap_id;
    for (const auto& [svc, edcs] : m.routes) {
      os << " " << svc << ":";
      for (std::size_t i = 0; i < edcs.size(); ++i) {
        os << (i ? "," : "") << edcs[i];
      }
    }
    return os << "}";
  }
};

// AP-decided uplink settings a device must adopt.
struct RadioConfig {
  std::string ue_id;
  std::string ap_id;
  double bandwidth_hz = 0.0;
  int ul_mcs_index = 0;
  std::string ul_mcs_name;
  double ul_efficiency_bps_hz = 0.0;
  friend std::ostream& operator<<(std::ostream& os, const RadioConfig& m) {
    return os << "radio_config{" << m.ue_id << " bw=" << m.bandwidth_hz
              << " ul=" << m.ul_mcs_name << "}";
  }
};

struct CreateSessionRequest {
  std::string ue_id;
  std::string service_id;
  std::string via_ap;  // stamped by the forwarding AP
  friend std::ostream& operator<<(std::ostream& os,
                                  const CreateSessionRequest& m) {
    return os << "create_session{" << m.ue_id << "/" << m.service_id << "}";
  }
};

struct CreateSessionResponse {
  std::string ue_id;
  std::string service_id;
  std::string edc_id;
  bool granted = false;
  friend std::ostream& operator<<(std::ostream& os,
                                  const CreateSessionResponse& m) {
    return os << "create_session_response{" << m.ue_id << "/" << m.service_id
              << "@" << m.edc_id << (m.granted ? " grant" : " reject") << "}";
  }
};

struct RemoveSessionRequest {
  std::string ue_id;
  std::string service_id;
  std::string edc_id;  // session affinity
  std::string via_ap;
  friend std::ostream& operator<<(std::ostream& os,
                                  const RemoveSessionRequest& m) {
    return os << "remove_session{" << m.ue_id << "/" << m.service_id << "}";
  }
};

struct RemoveSessionResponse {
  std::string ue_id;
  std::string service_id;
  std::string edc_id;
  bool ok = false;
  friend std::ostream& operator<<(std::ostream& os,
                                  const RemoveSessionResponse& m) {
    return os << "remove_session_response{" << m.ue_id << "/" << m.service_id
              << "}";
  }
};

struct ServiceRequest {
  std::string ue_id;
  std::string service_id;
  std::uint64_t seq = 0;
  std::string edc_id;  // session affinity
  std::string via_ap;
  friend std::ostream& operator<<(std::ostream& os, const ServiceRequest& m) {
    return os << "request{" << m.ue_id << "/" << m.service_id << "#" << m.seq
              << "}";
  }
};

struct ServiceResponse {
  std::string ue_id;
  std::string service_id;
  std::uint64_t seq = 0;
  std::string edc_id;
  bool ok = false;
  friend std::ostream& operator<<(std::ostream& os, const ServiceResponse& m) {
    return os << "response{" << m.ue_id << "/" << m.service_id << "#" << m.seq
              << (m.ok ? "" : " unknown_session") << "}";
  }
};

struct PositionUpdate {
  std::string node_id;
  double x_m = 0.0;
  double y_m = 0.0;
  friend std::ostream& operator<<(std::ostream& os, const PositionUpdate& m) {
    return os << "position{" << m.node_id << " " << m.x_m << "," << m.y_m
              << "}";
  }
};

using Payload =
    std::variant<PssBeacon, AccessRequest, AccessResponse, DisconnectRequest,
                 DisconnectResponse, RrcReport, HandoverRequest,
                 HandoverResponse, HandoverCommand, HandoverComplete,
                 AmfRequest, AmfResponse, EdcReport, SdnUpdate, RadioConfig,
                 CreateSessionRequest, CreateSessionResponse,
                 RemoveSessionRequest, RemoveSessionResponse, ServiceRequest,
                 ServiceResponse>;

inline std::ostream& operator<<(std::ostream& os, const Payload& p) {
  std::visit([&os](const auto& m) { os << m; }, p);
  return os;
}

using PhysicalPacket = phy::BasicPhysicalPacket<Payload>;

}  // namespace fogsim::net
