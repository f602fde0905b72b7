#pragma once

#include <stdexcept>
#include <string>

namespace fogsim {

// Scenario or model wiring problem detected before the clock starts.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Illegal transition or routing failure during a run. Carries the full
// model path and the simulation time at which it was raised.
class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(std::string model_path, std::string detail)
      : std::runtime_error(model_path + ": " + detail),
        model_path_(std::move(model_path)),
        detail_(std::move(detail)) {}

  const std::string& model_path() const { return model_path_; }
  const std::string& detail() const { return detail_; }

  void set_time(double t) { time_ = t; }
  double time() const { return time_; }

 private:
  std::string model_path_;
  std::string detail_;
  double time_ = -1.0;
};

}  // namespace fogsim
