#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fogsim/errors.hpp"

namespace fogsim::edge {

// Slack absorbed by float sums of session shares (e.g. five 0.2 shares).
inline constexpr double kShareEpsilon = 1e-9;

// One hardware configuration of a processing unit: how much of the nominal
// resources it can serve and the coefficients of its power curve.
struct DvfsConfig {
  int index = 0;
  double max_utilization = 1.0;  // fraction of nominal resources usable
  double idle_w = 0.0;
  double slope_w_per_util = 0.0;
};

inline void validate_dvfs_table(const std::vector<DvfsConfig>& table) {
  if (table.empty()) throw ConfigError("DVFS table must not be empty");
  bool full = false;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].index != static_cast<int>(i)) {
      throw ConfigError("DVFS configs must be indexed 0..n-1 in order");
    }
    if (table[i].max_utilization == 1.0) full = true;
    if (table[i].max_utilization <= 0.0 || table[i].max_utilization > 1.0) {
      throw ConfigError("DVFS max_utilization must be in (0, 1]");
    }
  }
  if (!full) {
    throw ConfigError("DVFS table needs a config with max_utilization = 1");
  }
}

// Lowest-index configuration able to serve the current utilization: the
// cheapest mode that still meets computing demand.
inline const DvfsConfig& select_dvfs(const std::vector<DvfsConfig>& table,
                                     double utilization) {
  for (const auto& cfg : table) {
    if (cfg.max_utilization + kShareEpsilon >= utilization) return cfg;
  }
  return table.back();
}

// Instantaneous power of a powered-on processing unit. The reference
// hardware model is unpublished, so the curve is pluggable; the default is
// affine in utilization with per-DVFS-config coefficients.
class PowerModel {
 public:
  virtual ~PowerModel() = default;
  virtual double watts(double utilization, const DvfsConfig& cfg) const = 0;
  virtual std::string name() const = 0;
};

class AffinePowerModel final : public PowerModel {
 public:
  double watts(double utilization, const DvfsConfig& cfg) const override {
    return cfg.idle_w + cfg.slope_w_per_util * utilization;
  }
  std::string name() const override { return "affine"; }
};

inline std::shared_ptr<const PowerModel> make_power_model(
    const std::string& name) {
  if (name == "affine") return std::make_shared<AffinePowerModel>();
  throw ConfigError("unknown power model: " + name);
}

}  // namespace fogsim::edge
