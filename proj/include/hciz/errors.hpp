#pragma once

#include <stdexcept>
#include <string>

namespace hciz {

// Error taxonomy shared by the library and the CLI exit codes:
//   domain_error -> 2, precision_error -> 3, cache_error -> 4,
//   crosscheck_error -> 5.  internal_error signals a bug, not bad input.

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct cache_error : std::runtime_error {
    explicit cache_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct crosscheck_error : std::runtime_error {
    explicit crosscheck_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace hciz
