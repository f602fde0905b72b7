#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/edge/commands.hpp"
#include "fogsim/edge/dvfs.hpp"
#include "fogsim/errors.hpp"

namespace fogsim::edge {

// Resource-manager view of one processing unit at dispatch time. Committed
// utilization counts every dispatched share, including sessions still being
// created, so concurrent dispatches cannot oversubscribe.
struct PuSnapshot {
  int id = 0;
  PuStatus status = PuStatus::off;
  double committed_utilization = 0.0;
};

inline bool fits(const PuSnapshot& pu, double share) {
  return pu.committed_utilization + share <= 1.0 + kShareEpsilon;
}

inline bool is_warm(PuStatus s) {
  return s != PuStatus::off && s != PuStatus::powering_off;
}

// Session dispatching policy; returns the chosen unit or nothing (reject).
class DispatchStrategy {
 public:
  virtual ~DispatchStrategy() = default;
  virtual std::optional<int> pick(const std::vector<PuSnapshot>& pus,
                                  double share) const = 0;
  virtual std::string name() const = 0;
};

// Spreads load: lowest committed utilization wins, regardless of power
// state. Ties go to the lowest unit id.
class MinimumWorkloadStrategy final : public DispatchStrategy {
 public:
  std::optional<int> pick(const std::vector<PuSnapshot>& pus,
                          double share) const override {
    const PuSnapshot* best = nullptr;
    for (const auto& pu : pus) {
      if (!fits(pu, share)) continue;
      if (best == nullptr ||
          pu.committed_utilization < best->committed_utilization) {
        best = &pu;
      }
    }
    if (best == nullptr) return std::nullopt;
    return best->id;
  }
  std::string name() const override { return "minimum_workload"; }
};

// Packs load: highest committed utilization among warm units that still fit;
// only when no warm unit fits does it wake a powered-off one.
class MaximumWorkloadStrategy final : public DispatchStrategy {
 public:
  std::optional<int> pick(const std::vector<PuSnapshot>& pus,
                          double share) const override {
    const PuSnapshot* best = nullptr;
    for (const auto& pu : pus) {
      if (!is_warm(pu.status) || !fits(pu, share)) continue;
      if (best == nullptr ||
          pu.committed_utilization > best->committed_utilization) {
        best = &pu;
      }
    }
    if (best != nullptr) return best->id;
    for (const auto& pu : pus) {  // cold fallback, lowest id first
      if (!is_warm(pu.status) && fits(pu, share)) return pu.id;
    }
    return std::nullopt;
  }
  std::string name() const override { return "maximum_workload"; }
};

inline std::unique_ptr<DispatchStrategy> make_dispatch_strategy(
    const std::string& name) {
  if (name == "minimum_workload") {
    return std::make_unique<MinimumWorkloadStrategy>();
  }
  if (name == "maximum_workload") {
    return std::make_unique<MaximumWorkloadStrategy>();
  }
  throw ConfigError("unknown dispatch strategy: " + name);
}

enum class HardwarePolicy { always_on, power_off_idle };

inline HardwarePolicy parse_hardware_policy(const std::string& name) {
  if (name == "always_on") return HardwarePolicy::always_on;
  if (name == "power_off_idle") return HardwarePolicy::power_off_idle;
  throw ConfigError("unknown hardware policy: " + name);
}

inline const char* to_string(HardwarePolicy p) {
  return p == HardwarePolicy::always_on ? "always_on" : "power_off_idle";
}

}  // namespace fogsim::edge
