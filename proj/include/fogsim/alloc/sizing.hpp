#pragma once

#include "fogsim/errors.hpp"

namespace fogsim::alloc {

struct FederationSize {
  int edc_count = 0;
  int pus_per_edc = 0;

  friend bool operator==(const FederationSize&, const FederationSize&) = default;
};

// Each EDC is sized to absorb the whole peak on its own; the replication
// factor then fixes how many such EDCs are deployed.
inline FederationSize size_federation(int peak_concurrent_sessions,
                                      int sessions_per_pu,
                                      int replication_factor) {
  if (peak_concurrent_sessions < 1 || sessions_per_pu < 1 ||
      replication_factor < 1) {
    throw ConfigError("size_federation needs all inputs >= 1");
  }
  const int pus =
      (peak_concurrent_sessions + sessions_per_pu - 1) / sessions_per_pu;
  return {replication_factor, pus};
}

// Heuristic AP count: aim for a target number of devices per AP (10 keeps
// each device at a tenth of the channel in the reference scenario).
inline int suggest_ap_count(int peak_concurrent_ues, int target_ues_per_ap = 10) {
  if (peak_concurrent_ues < 1 || target_ues_per_ap < 1) {
    throw ConfigError("suggest_ap_count needs positive inputs");
  }
  return (peak_concurrent_ues + target_ues_per_ap - 1) / target_ues_per_ap;
}

}  // namespace fogsim::alloc
