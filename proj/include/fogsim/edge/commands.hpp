#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace fogsim::edge {

enum class PuStatus {
  off,
  powering_on,
  on,
  starting_session,
  stopping_session,
  powering_off,
};

inline const char* to_string(PuStatus s) {
  switch (s) {
    case PuStatus::off: return "off";
    case PuStatus::powering_on: return "powering_on";
    case PuStatus::on: return "on";
    case PuStatus::starting_session: return "starting_session";
    case PuStatus::stopping_session: return "stopping_session";
    case PuStatus::powering_off: return "powering_off";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, PuStatus s) {
  return os << to_string(s);
}

// Reservation of processing-unit resources for one device service stream.
struct SessionRef {
  std::string ue_id;
  std::string service_id;
  double share = 0.0;  // fraction of one processing unit

  std::pair<std::string, std::string> key() const {
    return {ue_id, service_id};
  }
  friend std::ostream& operator<<(std::ostream& os, const SessionRef& s) {
    return os << s.ue_id << "/" << s.service_id;
  }
};

enum class SessionState { requested, active, closing };

inline const char* to_string(SessionState s) {
  switch (s) {
    case SessionState::requested: return "requested";
    case SessionState::active: return "active";
    case SessionState::closing: return "closing";
  }
  return "?";
}

struct PuCommand {
  enum class Kind { power_on, power_off, start_session, stop_session };
  Kind kind = Kind::power_on;
  SessionRef session;  // meaningful for the session commands

  friend std::ostream& operator<<(std::ostream& os, const PuCommand& c) {
    switch (c.kind) {
      case Kind::power_on: return os << "power_on";
      case Kind::power_off: return os << "power_off";
      case Kind::start_session: return os << "start_session{" << c.session << "}";
      case Kind::stop_session: return os << "stop_session{" << c.session << "}";
    }
    return os;
  }
};

struct PuNotice {
  enum class Kind {
    powered_on,
    powered_off,
    session_started,
    session_stopped,
    power_update,
  };
  int pu = 0;
  Kind kind = Kind::power_update;
  SessionRef session;
  PuStatus status = PuStatus::off;
  double utilization = 0.0;
  double power_w = 0.0;

  friend std::ostream& operator<<(std::ostream& os, const PuNotice& n) {
    const char* k = "power_update";
    switch (n.kind) {
      case Kind::powered_on: k = "powered_on"; break;
      case Kind::powered_off: k = "powered_off"; break;
      case Kind::session_started: k = "session_started"; break;
      case Kind::session_stopped: k = "session_stopped"; break;
      case Kind::power_update: break;
    }
    return os << "pu" << n.pu << ":" << k << "{" << n.status << " u="
              << n.utilization << " " << n.power_w << "W}";
  }
};

}  // namespace fogsim::edge
