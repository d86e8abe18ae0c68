#pragma once

#include <stdexcept>
#include <string>

namespace agmec {

// Caller broke a documented precondition (malformed action, unsorted input, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Learned state no longer satisfies its own consistency checks.
class InternalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected configuration; the message always names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& why)
      : std::runtime_error("config key '" + key + "': " + why), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace agmec
