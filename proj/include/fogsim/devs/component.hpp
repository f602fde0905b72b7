#pragma once

#include <concepts>
#include <sstream>
#include <string>
#include <typeinfo>
#include <vector>

#include "fogsim/errors.hpp"

namespace fogsim::devs {

class Coupled;

// Node of the model hierarchy. The full path ("root.edc_0.pu_3") names a
// model uniquely and drives all deterministic tie-breaking in the kernel.
class Component {
 public:
  explicit Component(std::string name) : name_(std::move(name)) {
    if (name_.empty() || name_.find('.') != std::string::npos) {
      throw ConfigError("component name must be non-empty and dot-free: '" +
                        name_ + "'");
    }
  }
  virtual ~Component() = default;

  Component(const Component&) = delete;
  Component& operator=(const Component&) = delete;

  const std::string& name() const { return name_; }
  Coupled* parent() const { return parent_; }

  std::string full_path() const;

 private:
  friend class Coupled;
  std::string name_;
  Coupled* parent_ = nullptr;
};

template <typename T>
concept Streamable = requires(std::ostream& os, const T& v) {
  { os << v } -> std::convertible_to<std::ostream&>;
};

enum class PortDirection { input, output };

// Type-erased port base. A port carries a bag of values produced or received
// within a single simulation step; the coordinator clears all bags between
// steps.
class PortBase {
 public:
  PortBase(Component* owner, std::string name, PortDirection dir)
      : owner_(owner), name_(std::move(name)), dir_(dir) {}
  virtual ~PortBase() = default;

  PortBase(const PortBase&) = delete;
  PortBase& operator=(const PortBase&) = delete;

  Component* owner() const { return owner_; }
  const std::string& name() const { return name_; }
  PortDirection direction() const { return dir_; }
  std::string full_path() const { return owner_->full_path() + ":" + name_; }

  virtual bool empty() const = 0;
  virtual std::size_t size() const = 0;
  virtual void clear() = 0;
  virtual const std::type_info& value_type() const = 0;
  // Appends this port's bag to a compatible destination port.
  virtual void copy_bag_to(PortBase& dst) const = 0;
  // Renders the k-th bag value for the event log.
  virtual std::string value_string(std::size_t k) const = 0;

 private:
  Component* owner_;
  std::string name_;
  PortDirection dir_;
};

template <typename T>
class Port final : public PortBase {
 public:
  using PortBase::PortBase;

  void send(T value) { bag_.push_back(std::move(value)); }
  const std::vector<T>& bag() const { return bag_; }

  bool empty() const override { return bag_.empty(); }
  std::size_t size() const override { return bag_.size(); }
  void clear() override { bag_.clear(); }
  const std::type_info& value_type() const override { return typeid(T); }

  void copy_bag_to(PortBase& dst) const override {
    auto* typed = dynamic_cast<Port<T>*>(&dst);
    if (typed == nullptr) {
      throw ConfigError("coupling type mismatch: " + full_path() + " -> " +
                        dst.full_path());
    }
    typed->bag_.insert(typed->bag_.end(), bag_.begin(), bag_.end());
  }

  std::string value_string(std::size_t k) const override {
    if constexpr (Streamable<T>) {
      std::ostringstream oss;
      oss << bag_[k];
      return oss.str();
    } else {
      return std::string("<") + typeid(T).name() + ">";
    }
  }

 private:
  std::vector<T> bag_;
};

}  // namespace fogsim::devs
