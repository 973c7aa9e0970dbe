#pragma once

#include <stdexcept>
#include <string>

namespace galspec {

// Enumeration would exceed the configured budget; the CLI maps this to its
// own exit code instead of treating it as a generic failure.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace galspec
