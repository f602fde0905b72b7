#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

#include "fogsim/errors.hpp"

namespace fogsim::devs {

// Simulation time in seconds. Non-negative, with an infinity sentinel used
// as the time advance of passive models. Comparisons are exact: scenario
// latencies are plain decimals and the kernel never needs a tolerance.
class SimTime {
 public:
  constexpr SimTime() : seconds_(0.0) {}
  constexpr explicit SimTime(double seconds) : seconds_(seconds) {
    if (!(seconds >= 0.0)) {  // also rejects NaN
      throw ConfigError("SimTime must be non-negative");
    }
  }

  static constexpr SimTime zero() { return SimTime(); }
  static constexpr SimTime infinity() {
    SimTime t;
    t.seconds_ = std::numeric_limits<double>::infinity();
    return t;
  }

  constexpr double seconds() const { return seconds_; }
  constexpr bool is_infinite() const {
    return seconds_ == std::numeric_limits<double>::infinity();
  }

  friend constexpr auto operator<=>(SimTime a, SimTime b) = default;

  friend constexpr SimTime operator+(SimTime a, SimTime b) {
    SimTime t;
    t.seconds_ = a.seconds_ + b.seconds_;
    return t;
  }
  // Remaining-time arithmetic; clamps tiny negative residue from float
  // subtraction of equal-by-construction times to zero.
  friend constexpr SimTime operator-(SimTime a, SimTime b) {
    if (a.is_infinite()) return b.is_infinite() ? zero() : infinity();
    SimTime t;
    t.seconds_ = a.seconds_ >= b.seconds_ ? a.seconds_ - b.seconds_ : 0.0;
    return t;
  }

  friend std::ostream& operator<<(std::ostream& os, SimTime t) {
    if (t.is_infinite()) return os << "inf";
    return os << t.seconds_;
  }

 private:
  double seconds_;
};

}  // namespace fogsim::devs
