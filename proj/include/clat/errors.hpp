#pragma once
#include <stdexcept>
#include <string>

namespace clat {

// Error taxonomy. Everything derives from std::runtime_error so callers can
// catch coarsely; the CLI maps each type to its exit code.

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct convergence_error : std::runtime_error {
    long terms_used;
    convergence_error(const std::string& msg, long terms)
        : std::runtime_error(msg + " (after " + std::to_string(terms) + " terms)"),
          terms_used(terms) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace clat
