#pragma once

#include "fogsim/devs/atomic.hpp"
#include "fogsim/devs/time.hpp"

namespace fogsim::devs {

// Atomic with a local clock and a single countdown. Transitions reduce to
// three hooks; the base keeps now() and the countdown consistent so models
// can schedule by absolute or relative time. Most fog models also keep an
// internal calendar and re-arm via schedule_at(calendar.front()).
class TimedAtomic : public Atomic {
 public:
  using Atomic::Atomic;

  SimTime time_advance() const final { return sigma_; }

  void internal_transition() final {
    clock_ = clock_ + sigma_;
    sigma_ = SimTime::infinity();
    on_internal();
  }

  void external_transition(SimTime elapsed) final {
    clock_ = clock_ + elapsed;
    if (!sigma_.is_infinite()) sigma_ = sigma_ - elapsed;
    on_external();
  }

  void confluent_transition() final {
    clock_ = clock_ + sigma_;
    sigma_ = SimTime::infinity();
    on_confluent();
  }

 protected:
  SimTime now() const { return clock_; }
  // Time the pending internal event fires; only meaningful inside output().
  SimTime imminent_time() const { return clock_ + sigma_; }

  void schedule_in(SimTime dt) { sigma_ = dt; }
  void schedule_at(SimTime t) { sigma_ = t - clock_; }
  void passivate() { sigma_ = SimTime::infinity(); }

  virtual void on_internal() = 0;
  virtual void on_external() = 0;
  virtual void on_confluent() {
    on_internal();
    on_external();
  }

 private:
  SimTime clock_ = SimTime::zero();
  SimTime sigma_ = SimTime::infinity();
};

}  // namespace fogsim::devs
