#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "fogsim/errors.hpp"

namespace fogsim::phy {

// Splits an access point's radio bandwidth among its connected devices.
class BandwidthShareStrategy {
 public:
  virtual ~BandwidthShareStrategy() = default;
  virtual std::map<std::string, double> share(
      double total_hz, const std::set<std::string>& connected) const = 0;
  virtual std::string name() const = 0;
};

// Default policy: every connected device gets total/n.
class EvenShareStrategy final : public BandwidthShareStrategy {
 public:
  std::map<std::string, double> share(
      double total_hz, const std::set<std::string>& connected) const override {
    std::map<std::string, double> shares;
    if (connected.empty()) return shares;
    const double each = total_hz / static_cast<double>(connected.size());
    for (const auto& id : connected) shares[id] = each;
    return shares;
  }
  std::string name() const override { return "even_share"; }
};

inline std::map<std::string, double> share_bandwidth(
    double total_hz, const std::set<std::string>& connected) {
  if (total_hz < 0.0) throw ConfigError("total bandwidth must be >= 0");
  return EvenShareStrategy().share(total_hz, connected);
}

inline std::unique_ptr<BandwidthShareStrategy> make_share_strategy(
    const std::string& name) {
  if (name == "even_share") return std::make_unique<EvenShareStrategy>();
  throw ConfigError("unknown bandwidth share strategy: " + name);
}

}  // namespace fogsim::phy
