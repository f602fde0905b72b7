#pragma once

#include <string>
#include <utility>

#include "fogsim/devs/timed.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/trace.hpp"

namespace fogsim::ue {

// Trace-driven location source: publishes the interpolated position every
// update period, skipping periods where the device has not moved. Outside
// the trace span the device is parked at the nearest endpoint.
class Mobility final : public devs::TimedAtomic {
 public:
  Mobility(std::string name, MobilityTrace trace, double update_period_s)
      : TimedAtomic(std::move(name)),
        position_out(add_output<net::PositionUpdate>("position_out")),
        trace_(std::move(trace)),
        period_(update_period_s) {
    schedule_in(devs::SimTime::zero());
  }

  void output() override {
    const auto p = trace_.position_at(imminent_time().seconds());
    position_out.send(net::PositionUpdate{trace_.ue_id(), p.x_m, p.y_m});
  }

  void on_internal() override {
    const auto current = trace_.position_at(now().seconds());
    last_x_ = current.x_m;
    last_y_ = current.y_m;
    // advance to the next tick where the position actually changes
    while (true) {
      ++tick_;
      const double t = static_cast<double>(tick_) * period_;
      if (t > trace_.end_time()) {
        passivate();
        return;
      }
      const auto next = trace_.position_at(t);
      if (next.x_m != last_x_ || next.y_m != last_y_) {
        schedule_at(devs::SimTime(t));
        return;
      }
    }
  }

  void on_external() override {}

  const MobilityTrace& trace() const { return trace_; }

  devs::Port<net::PositionUpdate>& position_out;

 private:
  MobilityTrace trace_;
  double period_;
  long tick_ = 0;
  double last_x_ = 0.0;
  double last_y_ = 0.0;
};

}  // namespace fogsim::ue
