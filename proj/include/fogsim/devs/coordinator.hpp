#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fogsim/devs/atomic.hpp"
#include "fogsim/devs/coupled.hpp"
#include "fogsim/devs/event_log.hpp"
#include "fogsim/devs/time.hpp"

namespace fogsim::devs {

struct CoordinatorOptions {
  EventSink* sink = nullptr;
  // Upper bound on successive microsteps at one timestamp; exceeding it is
  // treated as a zero-delay algebraic loop.
  std::size_t max_microsteps = 1'000'000;
};

// Sequential Parallel-DEVS coordinator.
//
// The hierarchy is flattened at construction: every atomic output port gets
// a precomputed list of atomic input ports reached by following couplings
// through coupled-model boundaries. At each step all imminent models emit
// outputs before any transition runs; simultaneously imminent models are
// ordered by full model path, so runs are reproducible.
class Coordinator {
 public:
  explicit Coordinator(Coupled& root, CoordinatorOptions opts = {})
      : root_(root), opts_(opts) {
    collect_atomics(root_);
    std::sort(atomics_.begin(), atomics_.end(),
              [](const Entry& a, const Entry& b) { return a.path < b.path; });
    flatten_routes();
    for (auto& e : atomics_) {
      e.next = e.last + advance_of(*e.model);
    }
  }

  SimTime now() const { return now_; }

  // Processes every event with time <= until, in non-decreasing time order.
  void run_until(SimTime until) {
    std::size_t microsteps = 0;
    SimTime prev_tn = SimTime::zero();
    while (true) {
      SimTime tn = next_event_time();
      if (tn.is_infinite() || tn > until) break;
      if (tn == prev_tn) {
        if (++microsteps > opts_.max_microsteps) {
          throw SimulationFault(root_.full_path(),
                                "zero-delay loop: over " +
                                    std::to_string(opts_.max_microsteps) +
                                    " microsteps at t=" +
                                    std::to_string(tn.seconds()));
        }
      } else {
        microsteps = 0;
        prev_tn = tn;
      }
      step(tn);
    }
    now_ = until.is_infinite() ? now_ : until;
    for (auto& e : atomics_) {
      e.model->on_simulation_end(now_);
    }
  }

 private:
  struct Entry {
    Atomic* model;
    std::string path;
    SimTime last;  // time of the most recent transition
    SimTime next;  // absolute time of the next internal event
  };

  void collect_atomics(Coupled& node) {
    for (const auto& child : node.children()) {
      if (auto* atomic = dynamic_cast<Atomic*>(child.get())) {
        atomics_.push_back(
            {atomic, atomic->full_path(), SimTime::zero(), SimTime::zero()});
      } else if (auto* coupled = dynamic_cast<Coupled*>(child.get())) {
        collect_atomics(*coupled);
      }
    }
  }

  void collect_couplings(const Coupled& node,
                         std::map<const PortBase*, std::vector<PortBase*>>& g) {
    for (const auto& [src, dst] : node.couplings()) g[src].push_back(dst);
    for (const auto& child : node.children()) {
      if (auto* coupled = dynamic_cast<const Coupled*>(child.get())) {
        collect_couplings(*coupled, g);
      }
    }
  }

  void flatten_routes() {
    std::map<const PortBase*, std::vector<PortBase*>> graph;
    collect_couplings(root_, graph);
    for (auto& e : atomics_) {
      for (PortBase* out : e.model->output_ports()) {
        std::vector<PortBase*> reached;
        std::vector<const PortBase*> frontier{out};
        std::vector<const PortBase*> seen{out};
        while (!frontier.empty()) {
          const PortBase* p = frontier.back();
          frontier.pop_back();
          auto it = graph.find(p);
          if (it == graph.end()) continue;
          for (PortBase* next : it->second) {
            if (std::find(seen.begin(), seen.end(), next) != seen.end()) {
              continue;
            }
            seen.push_back(next);
            if (dynamic_cast<Atomic*>(next->owner()) != nullptr &&
                next->direction() == PortDirection::input) {
              reached.push_back(next);
            } else {
              frontier.push_back(next);
            }
          }
        }
        std::sort(reached.begin(), reached.end(),
                  [](const PortBase* a, const PortBase* b) {
                    return a->full_path() < b->full_path();
                  });
        if (!reached.empty()) routes_.emplace_back(out, std::move(reached));
      }
    }
    std::sort(routes_.begin(), routes_.end(),
              [](const auto& a, const auto& b) {
                return a.first->full_path() < b.first->full_path();
              });
    for (std::size_t i = 0; i < routes_.size(); ++i) {
      route_index_[routes_[i].first] = i;
    }
  }

  SimTime next_event_time() const {
    SimTime tn = SimTime::infinity();
    for (const auto& e : atomics_) {
      if (e.next < tn) tn = e.next;
    }
    return tn;
  }

  SimTime advance_of(Atomic& m) const {
    SimTime ta = m.time_advance();  // SimTime construction rejects negatives
    return ta;
  }

  void step(SimTime tn) {
    now_ = tn;
    imminent_.clear();
    for (auto& e : atomics_) {
      if (e.next == tn) imminent_.push_back(&e);
    }

    for (Entry* e : imminent_) {
      try {
        e->model->output();
      } catch (SimulationFault& f) {
        f.set_time(tn.seconds());
        throw;
      }
    }

    // Log, then route along flattened couplings.
    for (Entry* e : imminent_) {
      for (PortBase* out : e->model->output_ports()) {
        if (out->empty()) continue;
        if (opts_.sink != nullptr) {
          for (std::size_t k = 0; k < out->size(); ++k) {
            opts_.sink->on_event(tn, *out, k);
          }
        }
        auto it = route_index_.find(out);
        if (it == route_index_.end()) continue;
        for (PortBase* dst : routes_[it->second].second) {
          out->copy_bag_to(*dst);
        }
      }
    }

    for (auto& e : atomics_) {
      const bool imm = e.next == tn;
      const bool has_in = e.model->has_input();
      if (!imm && !has_in) continue;
      try {
        if (imm && has_in) {
          e.model->confluent_transition();
        } else if (imm) {
          e.model->internal_transition();
        } else {
          e.model->external_transition(tn - e.last);
        }
      } catch (SimulationFault& f) {
        f.set_time(tn.seconds());
        throw;
      }
      e.last = tn;
      e.next = tn + advance_of(*e.model);
      for (PortBase* in : e.model->input_ports()) in->clear();
    }
    for (Entry* e : imminent_) {
      for (PortBase* out : e->model->output_ports()) out->clear();
    }
  }

  Coupled& root_;
  CoordinatorOptions opts_;
  SimTime now_ = SimTime::zero();
  std::vector<Entry> atomics_;
  std::vector<std::pair<PortBase*, std::vector<PortBase*>>> routes_;
  std::map<const PortBase*, std::size_t> route_index_;
  std::vector<Entry*> imminent_;
};

// Runs a root model to completion and returns the full event log.
inline EventLog simulate(Coupled& root, SimTime until) {
  EventLog log;
  Coordinator coordinator(root, {.sink = &log});
  coordinator.run_until(until);
  return log;
}

}  // namespace fogsim::devs
