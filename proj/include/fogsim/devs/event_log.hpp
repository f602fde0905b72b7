#pragma once

#include <string>
#include <vector>

#include "fogsim/devs/component.hpp"
#include "fogsim/devs/time.hpp"

namespace fogsim::devs {

struct EventRecord {
  double time;
  std::string port;   // full path of the originating atomic output port
  std::string value;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Receives every value emitted on an atomic output port, in deterministic
// order. Implementations must not mutate models.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void on_event(SimTime t, const PortBase& port,
                        std::size_t bag_index) = 0;
};

class EventLog final : public EventSink {
 public:
  void on_event(SimTime t, const PortBase& port, std::size_t k) override {
    records_.push_back({t.seconds(), port.full_path(), port.value_string(k)});
  }

  const std::vector<EventRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<EventRecord> records_;
};

}  // namespace fogsim::devs
