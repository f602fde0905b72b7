#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fogsim/devs/component.hpp"
#include "fogsim/devs/time.hpp"

namespace fogsim::devs {

// Atomic model behavior contract.
//
// time_advance() must be a pure function of the current state. output() is
// invoked exactly once per internal or confluent transition, immediately
// before it, and must only write to output ports. Inputs for external and
// confluent transitions are read from the input port bags.
class Atomic : public Component {
 public:
  using Component::Component;

  virtual SimTime time_advance() const = 0;
  virtual void output() = 0;
  virtual void internal_transition() = 0;
  virtual void external_transition(SimTime elapsed) = 0;
  virtual void confluent_transition() {
    internal_transition();
    external_transition(SimTime::zero());
  }

  // Called once by the coordinator when the run ends; sinks use it to flush.
  virtual void on_simulation_end(SimTime /*end*/) {}

  const std::vector<PortBase*>& input_ports() const { return inputs_; }
  const std::vector<PortBase*>& output_ports() const { return outputs_; }

  bool has_input() const {
    for (const auto* p : inputs_) {
      if (!p->empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fault(const std::string& detail) const {
    throw SimulationFault(full_path(), detail);
  }

 protected:
  template <typename T>
  Port<T>& add_input(std::string name) {
    return add_port<T>(std::move(name), PortDirection::input, inputs_);
  }
  template <typename T>
  Port<T>& add_output(std::string name) {
    return add_port<T>(std::move(name), PortDirection::output, outputs_);
  }

 private:
  template <typename T>
  Port<T>& add_port(std::string name, PortDirection dir,
                    std::vector<PortBase*>& registry) {
    for (const auto* p : registry) {
      if (p->name() == name) {
        throw ConfigError("duplicate port '" + name + "' on " + full_path());
      }
    }
    auto port = std::make_unique<Port<T>>(this, std::move(name), dir);
    auto& ref = *port;
    owned_.push_back(std::move(port));
    registry.push_back(&ref);
    return ref;
  }

  std::vector<std::unique_ptr<PortBase>> owned_;
  std::vector<PortBase*> inputs_;
  std::vector<PortBase*> outputs_;
};

}  // namespace fogsim::devs
