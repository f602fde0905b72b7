#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fogsim/errors.hpp"

namespace fogsim {

struct TraceSample {
  double t = 0.0;
  double x_m = 0.0;
  double y_m = 0.0;

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

// Location history of one device: strictly increasing timestamps, at least
// one sample. Positions outside the sampled span clamp to the nearest end;
// a device outside its window is treated as parked.
class MobilityTrace {
 public:
  MobilityTrace(std::string ue_id, std::vector<TraceSample> samples)
      : ue_id_(std::move(ue_id)), samples_(std::move(samples)) {
    if (samples_.empty()) {
      throw ConfigError("trace for " + ue_id_ + " has no samples");
    }
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      if (!(samples_[i].t > samples_[i - 1].t)) {
        throw ConfigError("trace for " + ue_id_ +
                          " has non-increasing timestamps");
      }
    }
  }

  const std::string& ue_id() const { return ue_id_; }
  const std::vector<TraceSample>& samples() const { return samples_; }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }

  TraceSample position_at(double t) const {
    if (t <= samples_.front().t) {
      return {t, samples_.front().x_m, samples_.front().y_m};
    }
    if (t >= samples_.back().t) {
      return {t, samples_.back().x_m, samples_.back().y_m};
    }
    auto hi = std::upper_bound(
        samples_.begin(), samples_.end(), t,
        [](double value, const TraceSample& s) { return value < s.t; });
    auto lo = hi - 1;
    const double f = (t - lo->t) / (hi->t - lo->t);
    return {t, lo->x_m + f * (hi->x_m - lo->x_m),
            lo->y_m + f * (hi->y_m - lo->y_m)};
  }

 private:
  std::string ue_id_;
  std::vector<TraceSample> samples_;
};

}  // namespace fogsim
