#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/devs/atomic.hpp"
#include "fogsim/devs/component.hpp"
#include "fogsim/devs/time.hpp"

namespace fogsim::devs {

// Hierarchical composition of atomic and coupled models. Couplings are
// validated on insertion; the three legal shapes are
//   parent input  -> child input   (external input coupling)
//   child output  -> child input   (internal coupling, distinct children)
//   child output  -> parent output (external output coupling)
class Coupled : public Component {
 public:
  using Component::Component;

  template <typename T, typename... Args>
  T& add(Args&&... args) {
    static_assert(std::is_base_of_v<Component, T>);
    auto child = std::make_unique<T>(std::forward<Args>(args)...);
    T& ref = *child;
    adopt(std::move(child));
    return ref;
  }

  Component& adopt(std::unique_ptr<Component> child) {
    if (child->parent_ != nullptr) {
      throw ConfigError("component '" + child->name() + "' already owned");
    }
    for (const auto& c : children_) {
      if (c->name() == child->name()) {
        throw ConfigError("duplicate child '" + child->name() + "' in " +
                          full_path());
      }
    }
    child->parent_ = this;
    children_.push_back(std::move(child));
    return *children_.back();
  }

  template <typename T>
  Port<T>& add_input(std::string name) {
    return add_port<T>(std::move(name), PortDirection::input);
  }
  template <typename T>
  Port<T>& add_output(std::string name) {
    return add_port<T>(std::move(name), PortDirection::output);
  }

  void couple(PortBase& src, PortBase& dst) {
    validate_coupling(src, dst);
    if (src.value_type() != dst.value_type()) {
      throw ConfigError("coupling type mismatch: " + src.full_path() + " -> " +
                        dst.full_path());
    }
    couplings_.emplace_back(&src, &dst);
  }

  const std::vector<std::unique_ptr<Component>>& children() const {
    return children_;
  }
  const std::vector<std::pair<PortBase*, PortBase*>>& couplings() const {
    return couplings_;
  }
  const std::vector<PortBase*>& input_ports() const { return inputs_; }
  const std::vector<PortBase*>& output_ports() const { return outputs_; }

 private:
  bool is_child(const Component* c) const {
    for (const auto& child : children_) {
      if (child.get() == c) return true;
    }
    return false;
  }

  void validate_coupling(const PortBase& src, const PortBase& dst) const {
    const bool src_here = src.owner() == this;
    const bool dst_here = dst.owner() == this;
    const bool src_child = is_child(src.owner());
    const bool dst_child = is_child(dst.owner());

    const bool eic = src_here && src.direction() == PortDirection::input &&
                     dst_child && dst.direction() == PortDirection::input;
    const bool ic = src_child && src.direction() == PortDirection::output &&
                    dst_child && dst.direction() == PortDirection::input &&
                    src.owner() != dst.owner();
    const bool eoc = src_child && src.direction() == PortDirection::output &&
                     dst_here && dst.direction() == PortDirection::output;
    if (!eic && !ic && !eoc) {
      throw ConfigError("illegal coupling in " + full_path() + ": " +
                        src.full_path() + " -> " + dst.full_path());
    }
  }

  template <typename T>
  Port<T>& add_port(std::string name, PortDirection dir) {
    auto& registry = dir == PortDirection::input ? inputs_ : outputs_;
    for (const auto* p : registry) {
      if (p->name() == name) {
        throw ConfigError("duplicate port '" + name + "' on " + full_path());
      }
    }
    auto port = std::make_unique<Port<T>>(this, std::move(name), dir);
    auto& ref = *port;
    owned_ports_.push_back(std::move(port));
    registry.push_back(&ref);
    return ref;
  }

  std::vector<std::unique_ptr<Component>> children_;
  std::vector<std::unique_ptr<PortBase>> owned_ports_;
  std::vector<PortBase*> inputs_;
  std::vector<PortBase*> outputs_;
  std::vector<std::pair<PortBase*, PortBase*>> couplings_;
};

inline std::string Component::full_path() const {
  if (parent_ == nullptr) return name_;
  return parent_->full_path() + "." + name_;
}

}  // namespace fogsim::devs
